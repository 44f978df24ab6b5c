"""
Access to the JSON files of the witness catalog. Every file is checked
against the MD5 hash recorded in checksums.json before it is parsed.
"""
from __future__ import annotations

import json
from pathlib import Path

from mfcas import conf
from mfcas.exceptions import ChecksumMismatch, ParseError, UnknownEntry
from mfcas.log import get_logger
from mfcas.utils import md5_matches, md5sum

logger = get_logger(__name__)


def data_dir() -> Path:
    return Path(conf.CATALOG["DATA_DIR"])


def checksums() -> dict:
    path = Path(conf.CATALOG["CHECKSUMS_FILE"])
    if not path.exists():
        raise UnknownEntry(f"no checksum file at {path}")
    return json.loads(path.read_text())


def load_data(filename: str) -> dict:
    """
    Reads one catalog file.

    Raises:
        UnknownEntry: when the file is not listed in the checksum file.
        ChecksumMismatch: when its content has changed.
        ParseError: when it is not valid JSON.
    """
    expected = checksums().get(filename)
    if expected is None:
        raise UnknownEntry(f"{filename} is not part of the catalog")

    path = data_dir() / filename
    if not md5_matches(expected, path):
        found = md5sum(path) if path.exists() else "missing file"
        raise ChecksumMismatch(f"{path}: expected MD5 {expected}, found {found}")

    logger.debug(f"Loading {path}")
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, location=f"{filename}, line {e.lineno}") from e


def verify_checksums() -> dict:
    """{file name: True when the file matches its recorded hash}."""
    return {
        name: md5_matches(expected, data_dir() / name)
        for name, expected in sorted(checksums().items())
    }
