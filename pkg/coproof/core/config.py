"""
coproof.core.config — paths and tunables, single source of truth.

Resolution priority for the project root:
1. COPROOF_HOME env var (explicit override)
2. Dev mode: parent of this package has pyproject.toml + coproof/corpus/ → use that directory
3. Default: ~/.coproof/

Tunables are read from the environment after loading the .env file.
"""

import logging
import os
from pathlib import Path

from dotenv import load_dotenv

logger = logging.getLogger(__name__)

_pkg_dir = Path(__file__).resolve().parent          # coproof/core/
_pkg_root = _pkg_dir.parent                         # coproof/
_candidate_root = _pkg_root.parent                  # parent of coproof/


def _detect_project_root() -> Path:
    # 1. Explicit env var
    env_home = os.environ.get("COPROOF_HOME")
    if env_home:
        return Path(env_home)

    # 2. Dev mode: checkout with manifest and bundled corpus
    if (_candidate_root / "pyproject.toml").is_file() and (_pkg_root / "corpus").is_dir():
        return _candidate_root

    # 3. Default: ~/.coproof/
    return Path.home() / ".coproof"


PROJECT_ROOT: Path = _detect_project_root()
PROOFS_DIR: Path = PROJECT_ROOT / "proofs"
PACKAGE_DIR: Path = _pkg_root
CORPUS_DIR: Path = _pkg_root / "corpus"
GRAMMAR_PATH: Path = _pkg_root / "syntax" / "grammar.lark"


def get_env_path() -> str:
    """Return the .env file path.

    Dev mode: coproof/.env (inside package dir)
    Installed mode: PROJECT_ROOT/.env
    """
    dev_env = _pkg_root / ".env"
    if dev_env.is_file():
        return str(dev_env)
    return str(PROJECT_ROOT / ".env")


def get_corpus_path(name: str) -> str:
    """Return path to a bundled corpus file."""
    return str(CORPUS_DIR / name)


def _int_setting(key: str, default: int) -> int:
    raw = os.getenv(key)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"{key}={raw!r} is not an integer, using {default}")
        return default
    if value < 0:
        logger.warning(f"{key}={value} is negative, using {default}")
        return default
    return value


load_dotenv(get_env_path())

DEFAULT_FUEL: int = _int_setting("COPROOF_FUEL", 10_000)
MAX_DEPTH: int = _int_setting("COPROOF_MAX_DEPTH", 64)
COLP_BOUND: int = _int_setting("COPROOF_COLP_BOUND", 32)
TRUNCATION_DEPTH: int = _int_setting("COPROOF_DEPTH", 4)
LEN_BOUND: int = _int_setting("COPROOF_LEN_BOUND", 4)
RATIONAL_BUDGET: int = _int_setting("COPROOF_RATIONAL_BUDGET", 256)
LOG_LEVEL: str = os.getenv("COPROOF_LOG_LEVEL", "WARNING").upper()
