"""JSON configuration files and versioned analysis reports.

Coordinates are written as exact rational strings, never as JSON numbers.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Dict, List, Optional, Tuple

from .errors import FileFormatError, IncidenceError, SchemaVersionError
from .geometry import Configuration, HomogeneousTriple, LINE, POINT, format_rational, parse_rational
from .rigidity import PinningSystem

SCHEMA_VERSION = 1
REPORT_SCHEMA = "report/v1"


@dataclass
class ConfigurationFile:
    config: Configuration
    pins: PinningSystem = field(default_factory=PinningSystem)
    metadata: Dict[str, Any] = field(default_factory=dict)


def _triple_from(entry: Any, kind: str, where: str) -> Tuple[str, HomogeneousTriple]:
    if not isinstance(entry, dict) or "id" not in entry or "coords" not in entry:
        raise FileFormatError(f"{where}: expected an object with 'id' and 'coords'")
    ident, coords = entry["id"], entry["coords"]
    if not isinstance(ident, str) or not ident:
        raise FileFormatError(f"{where}: id must be a non-empty string")
    if not isinstance(coords, list) or len(coords) != 3 or not all(isinstance(c, str) for c in coords):
        raise FileFormatError(f"{where} ({ident}): coords must be three rational strings")
    try:
        vals = [parse_rational(c) for c in coords]
        return ident, HomogeneousTriple(*vals, kind=kind)
    except ValueError as exc:
        raise FileFormatError(f"{where} ({ident}): {exc}") from None


def _id_list(obj: Any, where: str) -> List[str]:
    if obj is None:
        return []
    if not isinstance(obj, list) or not all(isinstance(v, str) for v in obj):
        raise FileFormatError(f"{where}: expected a list of ids")
    return list(obj)


def parse(text: str) -> ConfigurationFile:
    """Parse and fully validate the contents of a configuration file."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"JSON syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                              line=exc.lineno, column=exc.colno) from None
    if not isinstance(doc, dict):
        raise FileFormatError("top level must be a JSON object")
    version = doc.get("schemaVersion")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(f"unsupported schemaVersion {version!r} (this reader understands {SCHEMA_VERSION})")
    for key in ("points", "lines", "incidences"):
        if not isinstance(doc.get(key), list):
            raise FileFormatError(f"missing or non-list field {key!r}")

    points = dict(_triple_from(e, POINT, f"points[{i}]") for i, e in enumerate(doc["points"]))
    lines = dict(_triple_from(e, LINE, f"lines[{i}]") for i, e in enumerate(doc["lines"]))
    if len(points) != len(doc["points"]) or len(lines) != len(doc["lines"]):
        raise FileFormatError("duplicate point or line id")
    incidences = []
    for i, pair in enumerate(doc["incidences"]):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, str) for v in pair)):
            raise FileFormatError(f"incidences[{i}]: expected [point-id, line-id]")
        incidences.append((pair[0], pair[1]))
    try:
        config = Configuration.build(points, lines, incidences)
    except IncidenceError:
        raise
    except ValueError as exc:
        raise FileFormatError(str(exc)) from None

    raw_pins = doc.get("pins") or {}
    if not isinstance(raw_pins, dict):
        raise FileFormatError("pins must be an object")
    pins = PinningSystem(_id_list(raw_pins.get("points"), "pins.points"),
                         _id_list(raw_pins.get("lines"), "pins.lines"))
    unknown = (set(pins.points) - set(points)) | (set(pins.lines) - set(lines))
    if unknown:
        raise FileFormatError(f"pins reference unknown ids: {sorted(unknown)}")
    meta = doc.get("metadata") or {}
    if not isinstance(meta, dict):
        raise FileFormatError("metadata must be an object")
    return ConfigurationFile(config, pins, meta)


def read(path) -> ConfigurationFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse(text)


def load(path) -> Configuration:
    return read(path).config


def _encode_triple(ident: str, t: HomogeneousTriple) -> Dict[str, Any]:
    return {"id": ident, "coords": [format_rational(c) for c in t.coords]}


def dumps(config: Configuration, pins: Optional[PinningSystem] = None,
          metadata: Optional[Dict[str, Any]] = None) -> str:
    doc: Dict[str, Any] = {
        "schemaVersion": SCHEMA_VERSION,
        "points": [_encode_triple(p, config.point_coords[p]) for p in config.points],
        "lines": [_encode_triple(l, config.line_coords[l]) for l in config.lines],
        "incidences": [[p, l] for p, l in config.incidences],
    }
    if pins:
        doc["pins"] = {
            "points": [p for p in config.points if p in pins.points],
            "lines": [l for l in config.lines if l in pins.lines],
        }
    if metadata:
        doc["metadata"] = metadata
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def atomic_write(path, text: str) -> None:
    """Write via a sibling temp file and rename, so readers never see a partial file."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".projrig-", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(config: Configuration, path, pins: Optional[PinningSystem] = None,
         metadata: Optional[Dict[str, Any]] = None) -> None:
    atomic_write(path, dumps(config, pins, metadata))


def report_schema() -> Dict[str, Any]:
    text = resources.files("projrig").joinpath("schemas/report-v1.json").read_text(encoding="utf-8")
    return json.loads(text)


def make_report(command: str, source: Optional[str], **sections: Any) -> Dict[str, Any]:
    """Report envelope; sections keep the order they are passed in."""
    out: Dict[str, Any] = {"schema": REPORT_SCHEMA, "command": command, "source": source}
    for k, v in sections.items():
        if v is not None:
            out[k] = v
    return out


def dump_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
