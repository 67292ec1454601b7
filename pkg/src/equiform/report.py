"""Deterministic machine-readable reports."""

import hashlib
import json

SCHEMA_VERSION = 1


def input_digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


class ReportDocument:
    """Per-command results for one input; serializes to canonical JSON."""

    def __init__(self, tool_version: str, source_text: str):
        self.tool_version = tool_version
        self.digest = input_digest(source_text)
        self.results = {}

    def add(self, command: str, payload):
        self.results[command] = payload
        return self

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "tool_version": self.tool_version,
            "input_digest": self.digest,
            "results": self.results,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2,
                          default=str) + "\n"


def betti_rows(betti: dict):
    """Rows (homological degree, internal degree, dimension), sorted."""
    return [(i, j, betti[(i, j)]) for (i, j) in sorted(betti)]


def write_csv(path, header, rows):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(str(x) for x in row) + "\n")
