from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Generic, TypeVar, Union

T = TypeVar('T')

Source = Union[str, Path, bytes]


class BaseParser(ABC, Generic[T]):
    @abstractmethod
    def parse(self, input: Source) -> T:
        return None

    def parseFile(self, path: Union[str, Path]) -> T:
        return self.parse(Path(path))

    @property
    def inputType(self) -> Any:
        return Source

    @property
    def outputType(self) -> Any:
        return T
