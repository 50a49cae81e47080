"""
Utility functions for working with output paths
"""

import os
import tempfile
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, TextIO

from .. import constants as c


@contextmanager
def atomic_write(path: str | Path, newline: str | None = "") -> Iterator[TextIO]:
    """
    Open a temporary file next to `path` for writing, moved onto `path` on success

    Readers never observe a half-written file; on error the temporary file is
    removed and `path` is left untouched.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline=newline) as file:
            yield file
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.remove(tmp_name)
        raise


def resolve_output_dir(
    output_dir: str | Path | None = None, default: str | Path = "./figures"
) -> Path:
    """
    Output directory from the explicit value, else the environment variable, else `default`
    """
    return Path(output_dir or os.environ.get(c.OUTPUT_DIR_ENV) or default)
