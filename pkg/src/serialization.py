"""JSON files for instances and solutions.

Instance schema (version 1)::

    {"version": 1, "kind": "explicit|uniform|unit-disk|disk|kpartite", "r": 3,
     "points": [{"id": "p0", "x": 0, "y": 4, "r": 1, "class": "S0"}, ...],
     "demands": [["p0", "p1"], ...]}

``demands`` is present only for explicit instances; the other kinds are
re-materialized on load. Coordinates and radii are JSON integers, or
``"p/q"`` strings when they are not integral.
"""

from __future__ import annotations

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, StrictInt, StrictStr, ValidationError

from src.errors import InstanceError
from src.geometry import Coord, Demand, DemandKind, Instance, Point, Solution, as_coord

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

Number = Union[StrictInt, StrictStr]


class PointRecord(BaseModel):
    """One input point as stored on disk."""

    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    id: str = Field(..., min_length=1)
    x: Number
    y: Number
    r: Optional[Number] = None
    label: Optional[str] = Field(default=None, alias="class")


class InstanceRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = SCHEMA_VERSION
    kind: DemandKind = DemandKind.EXPLICIT
    r: Optional[Number] = None
    points: List[PointRecord] = Field(default_factory=list)
    demands: Optional[List[Tuple[str, str]]] = None


class AuxRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str = Field(..., min_length=1)
    x: Number
    y: Number


class SolutionRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    version: Literal[1] = SCHEMA_VERSION
    points: List[AuxRecord] = Field(default_factory=list)


def _location(loc: Tuple[Union[int, str], ...]) -> str:
    out = ""
    for part in loc:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out


def _from_validation(exc: ValidationError) -> InstanceError:
    first = exc.errors()[0]
    where = _location(first["loc"]) or "document"
    extra = f" (and {exc.error_count() - 1} more)" if exc.error_count() > 1 else ""
    return InstanceError(f"{first['msg']}{extra}", field=where)


def _parse_json(text: str, source: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", field=source) from exc


def _coord(value: Union[int, str], where: str) -> Coord:
    try:
        return as_coord(value)
    except InstanceError as exc:
        raise InstanceError(exc.message, field=where) from exc


def _dump(value: Coord) -> Union[int, str]:
    value = as_coord(value)
    return value if isinstance(value, int) else f"{value.numerator}/{value.denominator}"


def instance_from_record(record: InstanceRecord) -> Instance:
    points: List[Point] = []
    for i, p in enumerate(record.points):
        radius = None if p.r is None else Fraction(_coord(p.r, f"points[{i}].r"))
        points.append(
            Point(p.id, _coord(p.x, f"points[{i}].x"), _coord(p.y, f"points[{i}].y"), radius, p.label)
        )
    radius = None if record.r is None else Fraction(_coord(record.r, "r"))
    if record.kind is DemandKind.EXPLICIT:
        demands = [Demand(a, b) for a, b in record.demands or []]
        return Instance.build(points, DemandKind.EXPLICIT, radius, demands)
    if record.demands is not None:
        raise InstanceError(f"{record.kind.value} instances must not list demands", field="demands")
    return Instance.build(points, record.kind, radius)


def instance_to_record(instance: Instance) -> InstanceRecord:
    points = [
        PointRecord(
            id=p.id,
            x=_dump(p.x),
            y=_dump(p.y),
            r=None if p.radius is None else _dump(p.radius),
            label=p.label,
        )
        for p in instance.points
    ]
    demands = [[d.a, d.b] for d in instance.demands] if instance.kind is DemandKind.EXPLICIT else None
    return InstanceRecord(
        kind=instance.kind,
        r=None if instance.radius is None else _dump(instance.radius),
        points=points,
        demands=demands,
    )


def parse_instance(text: str, source: str = "instance") -> Instance:
    """Parse an instance document.

    Raises:
        InstanceError: On invalid JSON (with line and column), an unknown or
            missing field (with its location, e.g. ``points[3].x``), or a
            semantic violation such as duplicate ids.
    """
    data = _parse_json(text, source)
    try:
        record = InstanceRecord.model_validate(data)
    except ValidationError as exc:
        raise _from_validation(exc) from exc
    return instance_from_record(record)


def dumps_instance(instance: Instance) -> str:
    payload = instance_to_record(instance).model_dump(mode="json", by_alias=True, exclude_none=True)
    return json.dumps(payload, indent=2) + "\n"


def load_instance(path: Union[str, Path]) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}", field="path") from exc
    instance = parse_instance(text, source=str(path))
    logger.debug("loaded %s: %d points, %d demands", path, len(instance.points), len(instance.demands))
    return instance


def save_instance(instance: Instance, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_instance(instance), encoding="utf-8")
    return path


def parse_solution(text: str, source: str = "solution") -> Solution:
    data = _parse_json(text, source)
    try:
        record = SolutionRecord.model_validate(data)
    except ValidationError as exc:
        raise _from_validation(exc) from exc
    aux = [
        Point(q.id, _coord(q.x, f"points[{i}].x"), _coord(q.y, f"points[{i}].y"))
        for i, q in enumerate(record.points)
    ]
    return Solution(tuple(aux))


def dumps_solution(solution: Solution) -> str:
    record = SolutionRecord(points=[AuxRecord(id=q.id, x=_dump(q.x), y=_dump(q.y)) for q in solution.aux])
    return json.dumps(record.model_dump(mode="json"), indent=2) + "\n"


def load_solution(path: Union[str, Path]) -> Solution:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}", field="path") from exc
    return parse_solution(text, source=str(path))


def save_solution(solution: Solution, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_solution(solution), encoding="utf-8")
    return path
