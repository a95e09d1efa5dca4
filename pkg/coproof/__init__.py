"""coproof — coinductive uniform proofs for logic programs."""

__version__ = "0.1.0"

from .core.config import PROJECT_ROOT, CORPUS_DIR  # noqa: F401,E402
from .core.errors import CoproofError  # noqa: F401,E402
