"""Plain-text formats.

Disk file::

    dim=2
    0.0,0.0,1.0        # x, y, radius
    2.0,0.0,1.0

Point file: one point per line, comma separated, optional ``dim=`` header.

Filtration file: one simplex per line, ``v0 v1 ...;weight`` with the weight
printed to 12 significant digits, in filtration order.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable

import numpy as np

from .complex import WeightedComplex, check_simplex, faces, filtration_steps
from .geometry import DiskSystem


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based, 0 when the whole file is at fault."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def _number(text: str, line: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"not a number: {text.strip()!r}", line) from None
    if not math.isfinite(value):
        raise ParseError(f"non-finite value {text.strip()!r}", line)
    return value


def _content_lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _header(line: str, n: int) -> int:
    key, _, value = line.partition("=")
    if key.strip() != "dim":
        raise ParseError(f"expected header 'dim=<d>', got {line!r}", n)
    try:
        dim = int(value)
    except ValueError:
        raise ParseError(f"bad dimension {value.strip()!r}", n) from None
    if dim < 1:
        raise ParseError(f"dimension must be positive, got {dim}", n)
    return dim


def parse_disks(text: str) -> DiskSystem:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty disk file")
    n, first = lines[0]
    dim = _header(first, n)
    centers, radii = [], []
    for n, line in lines[1:]:
        fields = line.split(",")
        if len(fields) != dim + 1:
            raise ParseError(f"expected {dim + 1} fields, got {len(fields)}", n)
        values = [_number(f, n) for f in fields]
        if values[-1] <= 0:
            raise ParseError(f"radius must be positive, got {fields[-1].strip()}", n)
        centers.append(values[:-1])
        radii.append(values[-1])
    if not radii:
        raise ParseError("no disks in file", n)
    return DiskSystem.from_arrays(np.array(centers).reshape(-1, dim), radii)


def format_disks(system: DiskSystem) -> str:
    out = [f"dim={system.dim}"]
    for c, r in zip(system.centers.tolist(), system.radii.tolist()):
        out.append(",".join(repr(float(x)) for x in c + [r]))
    return "\n".join(out) + "\n"


def read_disks(path) -> DiskSystem:
    return parse_disks(Path(path).read_text())


def write_disks(system: DiskSystem, path) -> None:
    Path(path).write_text(format_disks(system))


def parse_points(text: str) -> np.ndarray:
    lines = list(_content_lines(text))
    if lines and lines[0][1].startswith("dim"):
        dim = _header(lines[0][1], lines[0][0])
        lines = lines[1:]
    else:
        dim = None
    points = []
    for n, line in lines:
        fields = line.replace(",", " ").split()
        if dim is None:
            dim = len(fields)
        if len(fields) != dim:
            raise ParseError(f"expected {dim} coordinates, got {len(fields)}", n)
        points.append([_number(f, n) for f in fields])
    if not points:
        raise ParseError("no points in file")
    return np.array(points, dtype=float)


def read_points(path) -> np.ndarray:
    return parse_points(Path(path).read_text())


def format_filtration(complex_: WeightedComplex) -> str:
    lines = [" ".join(map(str, s)) + f";{w:.12g}" for w, s in filtration_steps(complex_)]
    return "".join(line + "\n" for line in lines)


def write_filtration(complex_: WeightedComplex, path) -> None:
    Path(path).write_text(format_filtration(complex_))


def parse_filtration(text: str) -> list[tuple[tuple[int, ...], float]]:
    steps = []
    for n, line in _content_lines(text):
        verts, sep, weight = line.partition(";")
        if not sep:
            raise ParseError("missing ';' between vertices and weight", n)
        try:
            simplex = check_simplex(int(v) for v in verts.split())
        except ValueError as exc:
            raise ParseError(str(exc), n) from None
        steps.append((simplex, _number(weight, n)))
    return steps


def check_filtration(steps: Iterable[tuple[tuple[int, ...], float]]) -> list[str]:
    """Problems with a filtration listing; empty when every prefix is a complex."""
    problems = []
    seen: set[tuple[int, ...]] = set()
    last = -math.inf
    for pos, (simplex, weight) in enumerate(steps, start=1):
        if weight < last:
            problems.append(f"step {pos}: weight {weight} below previous {last}")
        last = max(last, weight)
        if simplex in seen:
            problems.append(f"step {pos}: duplicate simplex {simplex}")
        missing = [f for f in faces(simplex) if f not in seen]
        if missing:
            problems.append(f"step {pos}: {simplex} listed before its face {missing[0]}")
        seen.add(simplex)
    return problems
