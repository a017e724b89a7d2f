"""Checksummed on-disk cache of polynomials.

Each entry is one text file: a tag line ``<KIND> <key> sha256=<hex>``
followed by a POLY block.  Writes go to a temporary file that is renamed
into place, so a reader never sees a partial entry.
"""

from __future__ import annotations

import hashlib
import logging
import os
import tempfile
from pathlib import Path

from .core import polytext

log = logging.getLogger(__name__)


def entry_path(cache_dir, kind: str, key) -> Path:
    return Path(cache_dir) / kind / f"{key}.poly"


def write_entry(path: Path, tag: str, key, poly, names) -> None:
    body = polytext.dumps(poly, names)
    digest = hashlib.sha256(body.encode()).hexdigest()
    text = f"{tag} {key} sha256={digest}\n{body}"
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_entry(path: Path, tag: str, key):
    """The cached polynomial, or None if missing or failing validation."""
    if not path.exists():
        return None
    try:
        text = path.read_text()
        head, body = text.split("\n", 1)
        parts = head.split()
        if len(parts) != 3 or parts[0] != tag or parts[1] != str(key) or not parts[2].startswith("sha256="):
            raise ValueError("bad tag line")
        if hashlib.sha256(body.encode()).hexdigest() != parts[2][len("sha256="):]:
            raise ValueError("checksum mismatch")
        poly, _ = polytext.loads(body)
        return poly
    except (ValueError, OSError) as exc:
        log.warning("discarding corrupt cache entry %s: %s", path, exc)
        return None
