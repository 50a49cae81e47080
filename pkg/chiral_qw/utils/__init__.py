from .logging import *
from .parallel import *
from .path import *

__all__ = [
    "config_logger",
    "logger_wraps",
    "pmap",
    "atomic_write",
    "resolve_output_dir",
]
