import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Mapping, TextIO, Union

import pandas as pd

logger = logging.getLogger(__name__)

HASH_PREFIX = "# config_sha256="


def config_hash(payload: Union[str, bytes, Mapping[str, Any]]) -> str:
    """SHA-256 of a config text, or of a mapping serialized with sorted keys."""
    if isinstance(payload, Mapping):
        payload = json.dumps(payload, sort_keys=True, default=str)
    if isinstance(payload, str):
        payload = payload.encode("utf-8")
    return hashlib.sha256(payload).hexdigest()


class CsvWriter:
    """Writes tables as a config-hash comment line followed by a header row."""

    def __init__(self, config_sha256: str):
        self.config_sha256 = config_sha256

    def dump(self, frame: pd.DataFrame, stream: TextIO) -> None:
        stream.write(f"{HASH_PREFIX}{self.config_sha256}\n")
        frame.to_csv(stream, index=False, lineterminator="\n")

    def write(self, frame: pd.DataFrame, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            self.dump(frame, f)
        logger.info(f"wrote {len(frame)} rows to {path}")
        return path


def read_csv(path: Union[str, Path]) -> pd.DataFrame:
    return pd.read_csv(path, comment="#")


def read_config_hash(path: Union[str, Path]) -> str:
    with open(path, "r", encoding="utf-8") as f:
        first = f.readline().strip()
    if not first.startswith(HASH_PREFIX):
        return ""
    return first[len(HASH_PREFIX):]
