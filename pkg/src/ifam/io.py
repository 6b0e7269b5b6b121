"""`.fam` family files and the JSON report envelope."""

from __future__ import annotations

import json
import os
import time
from pathlib import Path

from ifam import __version__
from ifam.constructions import Family
from ifam.graphspace import decode

SCHEMA = 1


class FamilyFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def format_family(family: Family) -> str:
    lines = [f"n={family.n}"] + [g.encode() for g in family]
    return "\n".join(lines) + "\n"


def parse_family(text: str) -> Family:
    n = None
    members = []
    seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            if not line.startswith("n=") or ";" in line:
                raise FamilyFileError(lineno, f"expected header 'n=<k>', got {line!r}")
            try:
                n = int(line[2:])
            except ValueError:
                raise FamilyFileError(lineno, f"bad vertex count in {line!r}") from None
            if n < 1:
                raise FamilyFileError(lineno, "vertex count must be >= 1")
            continue
        try:
            g = decode(line, n)
        except ValueError as exc:
            raise FamilyFileError(lineno, str(exc)) from None
        key = g.encode()
        if key in seen:
            raise FamilyFileError(lineno, f"duplicate of line {seen[key]}")
        seen[key] = lineno
        members.append(g)
    if n is None:
        raise FamilyFileError(1, "missing header 'n=<k>'")
    return Family(n, frozenset(members))


def read_family(path: str | os.PathLike) -> Family:
    return parse_family(Path(path).read_text(encoding="utf-8"))


def write_family(family: Family, path: str | os.PathLike) -> None:
    Path(path).write_text(format_family(family), encoding="utf-8", newline="\n")


def _timestamp() -> str:
    # SOURCE_DATE_EPOCH pins the timestamp so reports are byte-reproducible
    epoch = os.environ.get("SOURCE_DATE_EPOCH")
    when = int(epoch) if epoch else int(time.time())
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime(when))


def envelope(command: list[str], kind: str, payload) -> dict:
    return {
        "schema": SCHEMA,
        "tool": "ifam",
        "version": __version__,
        "command": command,
        "timestamp": _timestamp(),
        "kind": kind,
        "payload": payload,
    }


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
