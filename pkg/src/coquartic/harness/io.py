"""Flat-file formats: tensor JSON, polynomial text, point pairs."""

from __future__ import annotations

import json
from pathlib import Path

import mpmath

from ..errors import ParseError
from ..exactalg.hp import to_mpc
from ..exactalg.multipoly import MultiPoly
from ..exactalg.quadext import QuadExtElem
from ..exactalg.rational import format_rational, parse_rational
from ..points import ProjectivePoint
from ..tritensor import Tritensor


def tritensor_from_data(data) -> Tritensor:
    if not isinstance(data, dict) or "m" not in data:
        raise ParseError("tensor JSON must be an object with key 'm'")
    m = data["m"]
    if not isinstance(m, list) or len(m) != 4:
        raise ParseError(f"axis 0: expected a list of length 4, got {_describe(m)}")
    out = []
    for i, slab in enumerate(m):
        if not isinstance(slab, list) or len(slab) != 4:
            raise ParseError(f"axis 1 at m[{i}]: expected a list of length 4, got {_describe(slab)}")
        rows = []
        for j, fibre in enumerate(slab):
            if not isinstance(fibre, list) or len(fibre) != 4:
                raise ParseError(f"axis 2 at m[{i}][{j}]: expected a list of length 4, got {_describe(fibre)}")
            vals = []
            for k, v in enumerate(fibre):
                if isinstance(v, bool) or not isinstance(v, (str, int)):
                    raise ParseError(f"m[{i}][{j}][{k}]: expected a rational string, got {v!r}")
                try:
                    vals.append(parse_rational(str(v)))
                except ParseError as exc:
                    raise ParseError(f"m[{i}][{j}][{k}]: {exc}") from None
            rows.append(vals)
        out.append(rows)
    try:
        return Tritensor(out)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _describe(v) -> str:
    if isinstance(v, list):
        return f"list of length {len(v)}"
    return type(v).__name__


def parse_tritensor(path: str | Path) -> Tritensor:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return tritensor_from_data(data)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def emit_tritensor(T: Tritensor, path: str | Path) -> None:
    Path(path).write_text(json.dumps(T.to_json(), indent=1) + "\n")


def parse_poly_file(path: str | Path) -> MultiPoly:
    text = " ".join(Path(path).read_text().split())
    return MultiPoly.from_text(text)


def _parse_coord(v, exact: bool):
    if exact:
        if isinstance(v, dict):
            return QuadExtElem(parse_rational(str(v["a"])), parse_rational(str(v.get("b", "0"))), int(v.get("d", 1)))
        return parse_rational(str(v))
    if isinstance(v, list) and len(v) == 2:
        return mpmath.mpc(mpmath.mpf(str(v[0])), mpmath.mpf(str(v[1])))
    s = str(v)
    if "/" in s:
        return to_mpc(parse_rational(s))
    return mpmath.mpc(mpmath.mpf(s))


def parse_pair(path: str | Path, exact: bool, precision: int = 256) -> tuple[ProjectivePoint, ProjectivePoint]:
    """``{"pair": [[c0, c1, c2, c3], [c0, c1, c2, c3]]}``; exact coordinates are rational strings."""
    data = json.loads(Path(path).read_text())
    pts = data.get("pair") if isinstance(data, dict) else None
    if not isinstance(pts, list) or len(pts) != 2:
        raise ParseError(f"{path}: expected {{'pair': [point, point]}}")
    out = []
    with mpmath.workprec(precision):
        for n, p in enumerate(pts):
            if not isinstance(p, list) or len(p) != 4:
                raise ParseError(f"{path}: point {n} must have 4 coordinates")
            try:
                out.append(ProjectivePoint(_parse_coord(c, exact) for c in p))
            except (ValueError, TypeError) as exc:
                raise ParseError(f"{path}: point {n}: {exc}") from None
    return out[0], out[1]


def coord_to_json(c, digits: int = 40):
    if isinstance(c, QuadExtElem):
        if c.is_rational():
            return format_rational(c.a)
        return {"a": format_rational(c.a), "b": format_rational(c.b), "d": c.d}
    if isinstance(c, mpmath.mpc):
        return [mpmath.nstr(c.real, digits), mpmath.nstr(c.imag, digits)]
    return format_rational(c)


def point_to_json(p: ProjectivePoint, digits: int = 40) -> list:
    return [coord_to_json(c, digits) for c in p.normalized().coords]
