from utils.parser.baseParser import BaseParser
from utils.parser.configParser import SimConfigParser
from utils.parser.snapshotParser import SnapshotParser, write_snapshot

__all__ = ["BaseParser", "SimConfigParser", "SnapshotParser", "write_snapshot"]
