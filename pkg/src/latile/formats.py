"""Text formats: cluster point files, tiling JSON and analysis reports.

Every number written is an integer or an exact rational ``{"num", "den"}``,
and JSON keys are sorted so equal data always serializes to equal bytes.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .cluster import Cluster, PrismDecomposition
from .errors import DomainError
from .lattice import Sublattice
from .spectral import RationalLineFamily, RationalTorusPoint
from .tiler import PeriodicTiling


class FormatError(ValueError):
    """Input text that does not describe the expected object."""


def parse_cluster(text: str) -> Cluster:
    """One point per line, whitespace separated integers, ``#`` comments."""
    points = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            points.append(tuple(int(x) for x in line.split()))
        except ValueError:
            raise FormatError(f"line {lineno}: expected integers, got {raw!r}") from None
        if len(points[-1]) != len(points[0]):
            raise FormatError(f"line {lineno}: expected {len(points[0])} coordinates")
    if not points:
        raise FormatError("no points found")
    if len(set(points)) != len(points):
        raise FormatError("duplicate points")
    try:
        return Cluster(points)
    except DomainError as exc:
        raise FormatError(str(exc)) from None


def read_cluster(path: str | Path) -> Cluster:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_cluster(text)


def format_cluster(cluster: Cluster) -> str:
    return "".join(" ".join(map(str, p)) + "\n" for p in cluster.points)


def rational(x) -> dict:
    x = Fraction(x)
    return {"den": x.denominator, "num": x.numerator}


def tiling_to_dict(tiling: PeriodicTiling) -> dict:
    return {
        "dim": tiling.dim,
        "period": [list(b) for b in tiling.period.basis],
        "reps": [list(r) for r in tiling.reps],
    }


def tiling_from_dict(data: dict) -> PeriodicTiling:
    try:
        dim = int(data["dim"])
        basis = [tuple(int(x) for x in b) for b in data["period"]]
        reps = [tuple(int(x) for x in r) for r in data["reps"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed tiling: {exc}") from None
    if any(len(v) != dim for v in basis + reps):
        raise FormatError("tiling vectors do not match its dimension")
    try:
        period = Sublattice.span(basis, dim)
        return PeriodicTiling(period, reps)
    except DomainError as exc:
        raise FormatError(str(exc)) from None


_INT_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")
_RATIONAL = re.compile(r'\{\s*"den": (\d+),\s*"num": (-?\d+)\s*\}')


def dumps(data) -> str:
    """Indented JSON with sorted keys; integer lists and rationals stay on one line."""
    text = json.dumps(data, indent=2, sort_keys=True)
    text = _INT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
    text = _RATIONAL.sub(lambda m: '{"den": %s, "num": %s}' % m.groups(), text)
    return text + "\n"


def emit_tiling(tiling: PeriodicTiling) -> str:
    return dumps(tiling_to_dict(tiling))


def parse_tiling(text: str) -> PeriodicTiling:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise FormatError("a tiling file holds a JSON object")
    return tiling_from_dict(data)


def read_tiling(path: str | Path) -> PeriodicTiling:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_tiling(text)


def point_to_list(rho: RationalTorusPoint) -> list:
    return [rational(c) for c in rho.coords]


def family_to_dict(h, family: RationalLineFamily) -> dict:
    return {
        "directions": [list(v) for v in family.directions],
        "h": list(h),
        "points": [point_to_list(r) for r in family.points],
    }


def prism_to_dict(prism: PrismDecomposition | None):
    if prism is None:
        return None
    return {
        "axis": list(prism.axis),
        "base": [list(b) for b in prism.base.basis],
        "foundation": [list(a) for a in prism.foundation],
        "offsets": list(prism.offsets),
        "translate": list(prism.translate),
    }


def report_to_dict(result, tiling_file: str | None = None) -> dict:
    """JSON-ready summary of a classification."""
    w = result.witness
    witness: dict = {}
    notes: list[str] = []
    for name in ("g0", "g1", "normal"):
        if hasattr(w, name):
            witness[name] = list(getattr(w, name))
    if hasattr(w, "scaling"):
        witness["scaling"] = w.scaling
    if hasattr(w, "line"):
        rho, v = w.line
        witness["line"] = {"direction": list(v), "point": point_to_list(rho)}
    if hasattr(w, "families"):
        witness["families"] = [family_to_dict(h, fam) for h, fam in w.families]
    if hasattr(w, "note"):
        notes.append(w.note)
    constructive = result.constructive
    tiling = result.tiling
    if not constructive:
        status = "not_applicable"
    elif tiling is None:
        status = "unknown"
    else:
        status = "found"
    return {
        "case": result.case,
        "cluster": [list(p) for p in result.cluster.points],
        "delta": [list(g) for g in result.delta.vectors],
        "divisible_dirs": [list(g) for g in result.divisible_dirs],
        "notes": notes,
        "prime": result.p,
        "prism": prism_to_dict(getattr(w, "prism", None)),
        "tiling": tiling_to_dict(tiling) if tiling is not None else None,
        "tiling_file": tiling_file,
        "tiling_status": status,
        "witness": witness,
    }
