"""Landmark file readers/writers and JSON report documents.

CSV files carry one landmark per row with header ``config,landmark,x,y[,z]``.
WKT files carry one ``POLYGON((...))`` per line, optionally prefixed by an id
and a tab or semicolon. Landmarks correspond across configurations by order.
"""

from __future__ import annotations

import csv
import enum
import hashlib
import io
import json
import math
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from .errors import MissingColumn, NonNumeric, ParseError, RaggedConfigurations
from .geometry import Configuration

SCHEMA_VERSION = "1.0"


class FileFormat(enum.Enum):
    CSV = "csv"
    WKT = "wkt"


@dataclass(frozen=True)
class LandmarkFile:
    format: FileFormat
    configurations: list[Configuration]
    source_path: str

    def __post_init__(self) -> None:
        shapes = {c.shape for c in self.configurations}
        if len(shapes) > 1:
            raise RaggedConfigurations(f"configurations differ in shape: {sorted(shapes)}")

    def get(self, id: str) -> Configuration:
        for c in self.configurations:
            if c.id == id:
                return c
        raise KeyError(f"no configuration named {id!r} in {self.source_path}")

    @property
    def ids(self) -> list[str]:
        return [c.id for c in self.configurations]


def fmt(x: float) -> str:
    """17 significant digits: lossless for binary64."""
    return format(float(x), ".17g")


def _number(text: str, where: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise NonNumeric(f"{where}: {text!r} is not a number") from None
    if not math.isfinite(value):
        raise NonNumeric(f"{where}: {text!r} is not finite")
    return value


def read_csv_text(text: str, source: str = "<string>") -> LandmarkFile:
    reader = csv.DictReader(io.StringIO(text))
    header = [h.strip() for h in (reader.fieldnames or [])]
    reader.fieldnames = header
    for col in ("config", "landmark", "x", "y"):
        if col not in header:
            raise MissingColumn(f"{source}: missing column {col!r}")
    dims = ["x", "y", "z"] if "z" in header else ["x", "y"]

    groups: dict[str, list[tuple[float, list[float]]]] = {}
    for lineno, row in enumerate(reader, start=2):
        where = f"{source}:{lineno}"
        cid = (row["config"] or "").strip()
        if not cid:
            raise ParseError(f"{where}: empty config id")
        idx = _number(row["landmark"], where)
        coords = [_number(row[d] if row[d] is not None else "", where) for d in dims]
        groups.setdefault(cid, []).append((idx, coords))

    if not groups:
        raise ParseError(f"{source}: no landmark rows")
    sizes = {cid: len(rows) for cid, rows in groups.items()}
    if len(set(sizes.values())) > 1:
        raise RaggedConfigurations(f"{source}: landmark counts differ: {sizes}")
    configs = []
    for cid, rows in groups.items():
        rows.sort(key=lambda r: r[0])
        configs.append(Configuration(cid, np.array([r[1] for r in rows])))
    return LandmarkFile(FileFormat.CSV, configs, source)


def parse_csv(path: str | Path) -> LandmarkFile:
    path = Path(path)
    return read_csv_text(path.read_text(encoding="utf-8"), str(path))


def write_csv(configs: Iterable[Configuration], path: str | Path | None = None) -> str:
    configs = list(configs)
    k = configs[0].k if configs else 2
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["config", "landmark", "x", "y", "z"][: 2 + k])
    for c in configs:
        for i, row in enumerate(c.coords, start=1):
            writer.writerow([c.id, i, *(fmt(v) for v in row)])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text


_WKT_RE = re.compile(r"^\s*POLYGON\s*(Z\s*)?\(\s*\((?P<ring>[^()]*)\)\s*\)\s*$", re.IGNORECASE)


def parse_wkt_polygon(text: str, id: str = "polygon") -> Configuration:
    """Landmarks of a single-ring WKT polygon, closing vertex dropped."""
    if re.search(r"\)\s*,\s*\(", text):
        raise ParseError("polygons with interior rings are not supported")
    m = _WKT_RE.match(text)
    if not m:
        raise ParseError(f"not a single-ring WKT polygon: {text[:60]!r}")
    points = []
    for part in m.group("ring").split(","):
        fields = part.split()
        if len(fields) not in (2, 3):
            raise ParseError(f"bad vertex {part.strip()!r}")
        points.append([_number(f, "WKT vertex") for f in fields])
    if len({len(p) for p in points}) != 1:
        raise ParseError("vertices have mixed dimensions")
    if len(points) < 4:
        raise ParseError(f"a ring needs at least 4 points (3 landmarks), got {len(points)}")
    if points[0] != points[-1]:
        raise ParseError("ring is not closed (first vertex != last vertex)")
    return Configuration(id, np.array(points[:-1]))


def to_wkt(conf: Configuration) -> str:
    ring = [*conf.coords, conf.coords[0]]
    tag = "POLYGON Z" if conf.k == 3 else "POLYGON"
    return f"{tag}((" + ", ".join(" ".join(fmt(v) for v in row) for row in ring) + "))"


def read_wkt_text(text: str, source: str = "<string>") -> LandmarkFile:
    configs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        m = re.match(r"^([^\t;]+?)\s*[\t;]\s*(POLYGON.*)$", line, re.IGNORECASE)
        cid, wkt = (m.group(1), m.group(2)) if m else (f"polygon{len(configs) + 1}", line)
        try:
            configs.append(parse_wkt_polygon(wkt, cid))
        except ParseError as exc:
            raise ParseError(f"{source}:{lineno}: {exc}") from None
    if not configs:
        raise ParseError(f"{source}: no polygons")
    return LandmarkFile(FileFormat.WKT, configs, source)


def load_landmarks(path: str | Path) -> LandmarkFile:
    """Read a CSV or WKT landmark file, choosing the format by extension."""
    path = Path(path)
    if path.suffix.lower() in (".wkt", ".txt"):
        return read_wkt_text(path.read_text(encoding="utf-8"), str(path))
    return parse_csv(path)


def bundled_arrows_path() -> Path:
    return Path(str(resources.files("morphokit") / "data" / "arrows.csv"))


def load_arrows() -> LandmarkFile:
    """The four 7-landmark arrow-tip configurations (punta1, punta3, punta5, punta6)."""
    return parse_csv(bundled_arrows_path())


def file_digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"


@dataclass
class ReportDocument:
    command: str
    options: dict
    results: dict
    inputs: dict[str, str] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION
    created_at: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "options": self.options,
            "results": self.results,
            "timestamps": {"created_at": self.created_at},
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "ReportDocument":
        d = json.loads(text)
        return cls(
            command=d["command"],
            options=d["options"],
            results=d["results"],
            inputs=d["inputs"],
            schema_version=d["schema_version"],
            created_at=d["timestamps"]["created_at"],
        )
