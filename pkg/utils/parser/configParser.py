import logging
from pathlib import Path
from typing import Union

import yaml
from pydantic import ValidationError

from adm.errors import ConfigError
from adm.structs.config import SimConfig
from utils.parser.baseParser import BaseParser, Source

logger = logging.getLogger(__name__)


class SimConfigParser(BaseParser[SimConfig]):
    """Load a SimConfig from a JSON or YAML file, a text blob or a mapping.

    JSON is read through the YAML loader, so both formats share one path.
    """

    def parse(self, input: Union[Source, dict]) -> SimConfig:
        if isinstance(input, dict):
            return self._validate(input, "<dict>")
        if isinstance(input, Path):
            return self._validate(self._load(self._read(input)), str(input))
        if isinstance(input, bytes):
            input = input.decode("utf-8")
        if isinstance(input, str) and "\n" not in input and Path(input).suffix in (".json", ".yaml", ".yml"):
            return self._validate(self._load(self._read(Path(input))), input)
        return self._validate(self._load(input), "<text>")

    @staticmethod
    def _read(path: Path) -> str:
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            return path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from e

    @staticmethod
    def _load(text: str) -> dict:
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as e:
            raise ConfigError(f"config is not valid JSON/YAML: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError("config must be a mapping")
        # the root config.yaml nests the experiment under "simulation"
        return data.get("simulation", data)

    @staticmethod
    def _validate(data: dict, origin: str) -> SimConfig:
        try:
            cfg = SimConfig.model_validate(data)
        except ValidationError as e:
            raise ConfigError(f"invalid config {origin}: {e}") from e
        logger.debug(f"loaded config from {origin}: n={cfg.n} nu={cfg.nu} N_list={cfg.N_list}")
        return cfg
