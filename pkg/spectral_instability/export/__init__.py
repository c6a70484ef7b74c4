"""
Artifact writers for external plotting.
"""

from .writers import read_csv, read_json, write_csv, write_json

__all__ = ["read_csv", "read_json", "write_csv", "write_json"]
