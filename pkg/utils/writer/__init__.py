from utils.writer.csvWriter import CsvWriter, config_hash, read_config_hash, read_csv

__all__ = ["CsvWriter", "config_hash", "read_config_hash", "read_csv"]
