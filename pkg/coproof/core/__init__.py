"""coproof.core — configuration, errors and the command-line entry point."""

from .config import PROJECT_ROOT, CORPUS_DIR, PACKAGE_DIR  # noqa: F401
from .errors import CoproofError  # noqa: F401
