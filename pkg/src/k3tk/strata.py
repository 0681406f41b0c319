"""Boundary strata of the degree-2 pair space and of the GIT quotient of sextics.

Everything here is static data plus small pieces of logic on top of it:
descriptor matching, Baily–Borel targets, closure posets, dimension audits
recomputed from constituent counts, and byte-stable exports.

Stratum ids are ASCII (``II1``, ``IIIalpha``, ``Z1``, ``tau``); the usual
symbols (``II₁``, ``IIIα``, ``τ``) are accepted as aliases.
"""

from __future__ import annotations

import csv
import io
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .anticanonical import NumericalProfile, is_hyperbolic, riemann_roch_dim
from .lattice import highest_root_coefficients, wp_moduli_signature

DATA_VERSION = "1"

GIT, KIRWAN, PAIRS = "GIT", "GIT-blowup", "pairs"

A17, E7D10, D16A1, E8E8A1, III_POINT = "II_A17", "II_E7+D10", "II_D16+A1", "II_2E8+A1", "III_point"
BB_COMPONENTS = (A17, E7D10, D16A1, E8E8A1, III_POINT)


class StrataError(ValueError):
    pass


# ---------------------------------------------------------------------------
# descriptors

KINDS = ("plane", "quadric", "dP1", "dP2", "scroll", "elliptic-ruled", "cone", "rational")
_CYCLE = re.compile(r"^cycle\((\d+)\)$")
_T = re.compile(r"^T_?\{?(\d+),(\d+),(\d+)\}?$")
_SING_ALIASES = {
    "none": "none", "": "none",
    "E8~": "E8~", "Ẽ8": "E8~", "~E8": "E8~", "E~8": "E8~", "Ẽ₈": "E8~",
    "E7~": "E7~", "Ẽ7": "E7~", "~E7": "E7~", "E~7": "E7~", "Ẽ₇": "E7~",
    "A1": "A1", "degenerate-cusp": "degenerate-cusp",
}


def normalize_singularity(s: str) -> str:
    s = s.strip().replace(" ", "")
    if s in _SING_ALIASES:
        return _SING_ALIASES[s]
    m = _T.match(s)
    if m:
        p, q, r = sorted(int(x) for x in m.groups())
        if not is_hyperbolic(p, q, r):
            raise StrataError(f"T_{{{p},{q},{r}}} is not a cusp (1/p+1/q+1/r must be < 1)")
        return f"T_{{{p},{q},{r}}}"
    raise StrataError(f"unknown singularity {s!r}")


def normalize_double_curve(s: str) -> str:
    s = s.strip()
    if s in ("smooth-elliptic", "nodal", "none"):
        return s
    m = _CYCLE.match(s)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise StrataError("a cycle has at least one component")
        return "nodal" if n == 1 else f"cycle({n})"
    raise StrataError(f"unknown double curve {s!r}")


@dataclass(frozen=True)
class PairDescriptor:
    """Generic-point description of a stable pair, ignoring the divisor H.

    ``non_normal[i]`` marks a component given through its normalization
    (the component glues to itself along part of the double curve).
    """

    kinds: tuple[str, ...]
    double_curve: str
    singularity: str = "none"
    non_normal: tuple[bool, ...] = ()

    def __post_init__(self):
        kinds = tuple(self.kinds)
        nn = tuple(bool(x) for x in self.non_normal) or (False,) * len(kinds)
        if len(nn) != len(kinds):
            raise StrataError("non_normal flags must match the components")
        for k in kinds:
            if k not in KINDS:
                raise StrataError(f"unknown component kind {k!r}")
        # component order carries no meaning
        pairs = sorted(zip(kinds, nn))
        object.__setattr__(self, "kinds", tuple(k for k, _ in pairs))
        object.__setattr__(self, "non_normal", tuple(f for _, f in pairs))
        object.__setattr__(self, "double_curve", normalize_double_curve(self.double_curve))
        object.__setattr__(self, "singularity", normalize_singularity(self.singularity))
        problems = self.problems()
        if problems:
            raise StrataError("inconsistent descriptor: " + "; ".join(problems))

    @property
    def components(self) -> int:
        return len(self.kinds)

    @property
    def type(self) -> str:
        if self.double_curve == "smooth-elliptic" or self.singularity in ("E7~", "E8~"):
            return "II"
        return "III"

    def problems(self) -> list[str]:
        out = []
        if not self.kinds:
            out.append("no components")
        if self.components > 1 and self.double_curve == "none":
            out.append("several components need a double curve")
        elliptic = self.singularity in ("E7~", "E8~")
        if elliptic and self.double_curve not in ("none", "smooth-elliptic"):
            out.append("a simple elliptic singularity is a Type II feature")
        cusp = self.singularity.startswith("T_") or self.singularity == "degenerate-cusp"
        if cusp and self.double_curve == "smooth-elliptic":
            out.append("cusp singularities do not occur with a smooth elliptic double curve")
        if self.double_curve == "none" and self.singularity == "none":
            out.append("a normal surface without double curve or singularity is not a boundary point")
        return out

    def to_json(self) -> dict:
        return {
            "kinds": list(self.kinds),
            "double_curve": self.double_curve,
            "singularity": self.singularity,
            "non_normal": list(self.non_normal),
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "PairDescriptor":
        try:
            return cls(
                tuple(obj["kinds"]),
                obj["double_curve"],
                obj.get("singularity", "none"),
                tuple(obj.get("non_normal", ())),
            )
        except (KeyError, TypeError) as exc:
            raise StrataError(f"malformed descriptor: {exc}") from None


def _desc(kinds, curve, sing="none", nn=()) -> PairDescriptor:
    return PairDescriptor(tuple(kinds), curve, sing, tuple(nn))


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class StratumRecord:
    id: str
    description: str
    dim: int
    space: str
    bb_target: str | None = None
    descriptor: PairDescriptor | None = None
    contained_in: tuple[str, ...] = ()
    components: tuple[str, ...] = ()  # irreducible components when reducible
    anchor: str = ""  # table row the record reproduces
    notes: str = ""

    def __post_init__(self):
        if self.dim < 0:
            raise StrataError(f"{self.id}: negative dimension")
        if self.bb_target is not None and self.bb_target not in BB_COMPONENTS:
            raise StrataError(f"{self.id}: unknown Baily-Borel component {self.bb_target}")

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "dim": self.dim,
            "space": self.space,
            "bb_target": self.bb_target,
            "descriptor": self.descriptor.to_json() if self.descriptor else None,
            "contained_in": list(self.contained_in),
            "components": list(self.components),
            "anchor": self.anchor,
            "notes": self.notes,
        }


_STAB = "positive-dimensional stabilizer; dimension stored as tabulated, not recomputed"

_TYPE_II = [
    StratumRecord("II1", "X = V1 ∪_E V2 with both V_i planes", 3, PAIRS, A17,
                  _desc(["plane", "plane"], "smooth-elliptic"), anchor="boundary:1"),
    StratumRecord("II2", "X = V1 ∪_E V2 with both V_i degree 1 del Pezzo surfaces", 19, PAIRS, E8E8A1,
                  _desc(["dP1", "dP1"], "smooth-elliptic"), anchor="boundary:2"),
    StratumRecord("II3", "normalization a quadric in P^3 with double curve E", 4, PAIRS, D16A1,
                  _desc(["quadric"], "smooth-elliptic", nn=[True]), anchor="boundary:3"),
    StratumRecord("II4", "normalization a degree 2 del Pezzo surface with double curve E", 10, PAIRS, E7D10,
                  _desc(["dP2"], "smooth-elliptic", nn=[True]), anchor="boundary:4"),
    StratumRecord("II5", "rational surface with a simple elliptic singularity of type E8~", 12, PAIRS, E8E8A1,
                  _desc(["rational"], "none", "E8~"), anchor="boundary:5"),
    StratumRecord("II6", "rational surface with a simple elliptic singularity of type E7~", 13, PAIRS, E7D10,
                  _desc(["rational"], "none", "E7~"), anchor="boundary:6"),
]

_TYPE_III = [
    StratumRecord("III1", "two planes glued along a nodal cubic", 2, PAIRS, III_POINT,
                  _desc(["plane", "plane"], "nodal"), contained_in=("II1",), anchor="boundary:1"),
    StratumRecord("III2", "two degree 1 del Pezzo surfaces glued along a nodal curve", 18, PAIRS, III_POINT,
                  _desc(["dP1", "dP1"], "nodal"), contained_in=("II2",), anchor="boundary:2"),
    StratumRecord("III3", "quadric normalization, double curve nodal or two conics", 3, PAIRS, III_POINT,
                  contained_in=("II3",), components=("IIIgamma", "IIIdelta"), anchor="boundary:3",
                  notes="reducible: the union of two irreducible components"),
    StratumRecord("III4", "degree 2 del Pezzo normalization with nodal double curve", 9, PAIRS, III_POINT,
                  _desc(["dP2"], "nodal", nn=[True]), contained_in=("II4",), anchor="boundary:4"),
    StratumRecord("III5", "rational surface with a T_{2,3,7} cusp", 11, PAIRS, III_POINT,
                  _desc(["rational"], "none", "T_{2,3,7}"), contained_in=("II5",), anchor="boundary:5"),
    StratumRecord("III6", "rational surface with a T_{2,4,5} cusp", 12, PAIRS, III_POINT,
                  _desc(["rational"], "none", "T_{2,4,5}"), contained_in=("II6",), anchor="boundary:6"),
]

_INCIDENCE = [
    StratumRecord("IIIalpha", "two planes glued along a reducible cubic (conic plus line)", 1, PAIRS, III_POINT,
                  _desc(["plane", "plane"], "cycle(2)"), ("III1", "IIIbeta", "IIIdelta"), anchor="incidence:alpha"),
    StratumRecord("IIIbeta", "degree 2 del Pezzo normalization with an A1 point on D", 8, PAIRS, III_POINT,
                  _desc(["dP2"], "nodal", "A1", nn=[True]), ("III4", "III6"), anchor="incidence:beta"),
    StratumRecord("IIIgamma", "quadric normalization, D the union of two conics", 3, PAIRS, III_POINT,
                  _desc(["quadric"], "cycle(2)", nn=[True]), ("II3", "IIIbeta"), anchor="incidence:gamma",
                  notes="irreducible component of III3"),
    StratumRecord("IIIdelta", "quadric normalization, D a nodal quartic", 3, PAIRS, III_POINT,
                  _desc(["quadric"], "nodal", nn=[True]), ("II3", "III5"), anchor="incidence:delta",
                  notes="irreducible component of III3"),
    StratumRecord("IIIepsilon", "quadric normalization, D a conic plus two lines", 2, PAIRS, III_POINT,
                  _desc(["quadric"], "cycle(3)", nn=[True]), ("IIIgamma", "IIIdelta"), anchor="incidence:epsilon"),
    StratumRecord("IIIphi", "degree 1 del Pezzo glued to a non-normal plane along a nodal curve", 9, PAIRS, III_POINT,
                  _desc(["dP1", "plane"], "nodal", nn=[False, True]), ("III2", "III5"), anchor="incidence:phi"),
    StratumRecord("IIIzeta'", "two non-normal planes glued along a nodal curve", 0, PAIRS, III_POINT,
                  _desc(["plane", "plane"], "nodal", nn=[True, True]), ("IIIphi",), anchor="incidence:zeta'",
                  notes=_STAB),
    StratumRecord("IIIzeta", "two planes glued along a triangle of lines", 0, PAIRS, III_POINT,
                  _desc(["plane", "plane"], "cycle(3)"), ("IIIalpha", "IIIepsilon"), anchor="incidence:zeta",
                  notes=_STAB),
]

_GIT = [
    StratumRecord("Z1", "three conics pairwise tangent at two points (two E8~ points)", 2, GIT, E8E8A1,
                  anchor="sextics:Z1"),
    StratumRecord("Z2", "double line plus a quartic, x0^2 f4(x1, x2) type (E7~ points)", 1, GIT, E7D10,
                  anchor="sextics:Z2"),
    StratumRecord("Z3", "double conic plus a transversal conic", 2, GIT, D16A1, anchor="sextics:Z3"),
    StratumRecord("Z4", "double cubic", 1, GIT, A17, anchor="sextics:Z4"),
    StratumRecord("tau", "double conic plus a tangent conic", 1, GIT, III_POINT, contained_in=("Z1", "Z3"), anchor="sextics:tau"),
    StratumRecord("zeta", "(x0 x1 x2)^2, stabilizer a 2-torus", 0, GIT, III_POINT, contained_in=("Z1", "Z2", "Z3", "Z4", "tau"),
                  anchor="sextics:zeta"),
    StratumRecord("omega", "triple conic, stabilizer SL(2)", 0, GIT, None, contained_in=("tau",), anchor="sextics:omega"),
]

_KIRWAN = [
    StratumRecord("Z1", _GIT[0].description, 2, KIRWAN, E8E8A1, anchor="sextics:Z1"),
    StratumRecord("Z2", _GIT[1].description, 1, KIRWAN, E7D10, anchor="sextics:Z2"),
    StratumRecord("Z3", _GIT[2].description, 2, KIRWAN, D16A1, anchor="sextics:Z3"),
    StratumRecord("Z4", _GIT[3].description, 1, KIRWAN, A17, anchor="sextics:Z4"),
    StratumRecord("tau", _GIT[4].description, 1, KIRWAN, III_POINT, contained_in=("Z1", "Z3"), anchor="sextics:tau"),
    StratumRecord("zeta", _GIT[5].description, 0, KIRWAN, III_POINT, contained_in=("Z1", "Z2", "Z3", "Z4", "tau"),
                  anchor="sextics:zeta"),
    StratumRecord("U1", "unigonal: three quartic rational normal curves tangent at two points", 1, KIRWAN, E8E8A1,
                  contained_in=("Z1",), anchor="unigonal:U1"),
    StratumRecord("U3", "unigonal: two quartic rational normal curves, one doubled, transversal", 1, KIRWAN, D16A1,
                  contained_in=("Z3",), anchor="unigonal:U3"),
    StratumRecord("xi", "unigonal: two quartic rational normal curves, one doubled, tangent at two points", 0,
                  KIRWAN, III_POINT, contained_in=("U1", "U3", "tau"), anchor="unigonal:xi"),
]

_ALIASES = {
    "τ": "tau", "ζ": "zeta", "ω": "omega", "ξ": "xi", "Z₁": "Z1", "Z₂": "Z2", "Z₃": "Z3", "Z₄": "Z4",
    "U₁": "U1", "U₃": "U3",
}
for _i, _sub in enumerate("₁₂₃₄₅₆", start=1):
    _ALIASES[f"II{_sub}"] = f"II{_i}"
    _ALIASES[f"III{_sub}"] = f"III{_i}"
for _g, _name in zip("αβγδεφ", ("alpha", "beta", "gamma", "delta", "epsilon", "phi")):
    _ALIASES[f"III{_g}"] = f"III{_name}"
    _ALIASES[f"III_{_name}"] = f"III{_name}"
_ALIASES.update({"IIIζ": "IIIzeta", "IIIζ′": "IIIzeta'", "IIIζ'": "IIIzeta'", "III_zeta": "IIIzeta",
                 "III_zeta'": "IIIzeta'"})


def normalize_id(sid: str) -> str:
    sid = sid.strip()
    return _ALIASES.get(sid, sid)


def table1() -> list[StratumRecord]:
    return list(_TYPE_II)


def type_iii_components() -> list[StratumRecord]:
    return list(_TYPE_III)


def table2() -> list[StratumRecord]:
    return list(_INCIDENCE)


def pair_strata() -> dict[str, StratumRecord]:
    return {r.id: r for r in _TYPE_II + _TYPE_III + _INCIDENCE}


def git_strata(space: str = GIT) -> dict[str, StratumRecord]:
    if space == GIT:
        return {r.id: r for r in _GIT}
    if space == KIRWAN:
        return {r.id: r for r in _KIRWAN}
    raise StrataError(f"unknown GIT space {space!r}")


def get(sid: str, space: str = PAIRS) -> StratumRecord:
    sid = normalize_id(sid)
    table = pair_strata() if space == PAIRS else git_strata(space)
    try:
        return table[sid]
    except KeyError:
        raise StrataError(f"unknown stratum {sid!r} in {space}") from None


# ---------------------------------------------------------------------------
# descriptor lookup and Baily-Borel targets


def _descriptor_index() -> dict[PairDescriptor, str]:
    out = {}
    for r in _TYPE_II + _TYPE_III + _INCIDENCE:
        if r.descriptor is None:
            continue
        if r.descriptor in out:  # the data must be unambiguous
            raise StrataError(f"descriptor of {r.id} duplicates {out[r.descriptor]}")
        out[r.descriptor] = r.id
    return out


def stratum_of(d: PairDescriptor) -> StratumRecord:
    """The stratum whose generic point has descriptor ``d``.

    For the reducible III3 the matching irreducible component is returned.
    """
    sid = _descriptor_index().get(d)
    if sid is None:
        raise StrataError(f"no degree-2 boundary stratum has generic descriptor {d.to_json()}")
    return pair_strata()[sid]


def bb_target(sid: str) -> str:
    rec = get(sid, PAIRS)
    assert rec.bb_target is not None
    return rec.bb_target


def bb_preimages() -> dict[str, tuple[str, ...]]:
    """Type II strata over each Type II Baily–Borel component."""
    out: dict[str, list[str]] = {}
    for r in _TYPE_II:
        out.setdefault(r.bb_target, []).append(r.id)
    return {k: tuple(v) for k, v in sorted(out.items())}


def git_to_pairs(sid: str, space: str = GIT) -> tuple[str, ...]:
    """Pair strata lying over the same Baily–Borel component as a GIT stratum."""
    rec = get(sid, space)
    if rec.bb_target is None:
        return ()
    if rec.bb_target == III_POINT:
        return tuple(r.id for r in _TYPE_III + _INCIDENCE)
    return tuple(r.id for r in _TYPE_II if r.bb_target == rec.bb_target)


# ---------------------------------------------------------------------------
# closure posets


@dataclass
class ClosurePoset:
    """``a ≤ b`` means a lies in the closure of b.

    Reducible strata are listed in ``unions``; a ≤ (A ∪ B) iff a ≤ A or a ≤ B.
    """

    dims: dict[str, int]
    covers: list[tuple[str, str]]
    unions: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for a, b in self.covers:
            if a not in self.dims or b not in self.dims:
                raise StrataError(f"relation {a} < {b} mentions an unknown stratum")
        self._up: dict[str, set[str]] = {}
        for n in self.dims:
            seen, stack = set(), [n]
            while stack:
                x = stack.pop()
                for a, b in self.covers:
                    if a == x and b not in seen:
                        seen.add(b)
                        stack.append(b)
            self._up[n] = seen

    @property
    def nodes(self) -> list[str]:
        return sorted(self.dims)

    def leq(self, a: str, b: str) -> bool:
        a, b = normalize_id(a), normalize_id(b)
        for n in (a, b):
            if n not in self.dims:
                raise StrataError(f"unknown stratum {n!r}")
        if a == b:
            return True
        if b in self.unions:
            return any(self.leq(a, c) for c in self.unions[b])
        return b in self._up[a]

    def lt(self, a: str, b: str) -> bool:
        return normalize_id(a) != normalize_id(b) and self.leq(a, b)

    def above(self, a: str) -> list[str]:
        return sorted(self._up[normalize_id(a)])

    def violations(self) -> list[str]:
        out = []
        for a in self.dims:
            if a in self._up[a]:
                out.append(f"cycle through {a}")
            for b in self._up[a]:
                if a in self._up[b] and a < b:
                    out.append(f"{a} and {b} contain each other")
                if self.dims[a] >= self.dims[b]:
                    out.append(f"{a} < {b} but dim {self.dims[a]} >= {self.dims[b]}")
        return sorted(set(out))

    def to_dot(self, name: str) -> str:
        lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
        for n in self.nodes:
            lines.append(f'  "{n}" [label="{n} ({self.dims[n]})"];')
        for a, b in sorted(set(self.covers)):
            lines.append(f'  "{a}" -> "{b}";')
        for u, parts in sorted(self.unions.items()):
            for p in parts:
                lines.append(f'  "{p}" -> "{u}" [style=dashed, label="component"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "nodes": [{"id": n, "dim": self.dims[n]} for n in self.nodes],
            "covers": [list(e) for e in sorted(set(self.covers))],
            "unions": {k: list(v) for k, v in sorted(self.unions.items())},
        }


def adjacency_graph(space: str) -> ClosurePoset:
    if space == PAIRS:
        recs = pair_strata()
        unions = {r.id: r.components for r in recs.values() if r.components}
    elif space in (GIT, KIRWAN):
        recs = git_strata(space)
        unions = {}
    else:
        raise StrataError(f"space must be one of {GIT}, {KIRWAN}, {PAIRS}")
    covers = [(r.id, up) for r in recs.values() for up in r.contained_in]
    return ClosurePoset({r.id: r.dim for r in recs.values()}, covers, unions)


# ---------------------------------------------------------------------------
# dimension audit


@dataclass(frozen=True)
class AuditRow:
    id: str
    constituents: tuple[tuple[str, int], ...]
    computed: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.computed == self.expected

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "constituents": [[k, v] for k, v in self.constituents],
            "computed": self.computed,
            "expected": self.expected,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class AuditReport:
    rows: tuple[AuditRow, ...]
    fibers: dict[str, dict[str, int]]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)

    def failures(self) -> list[AuditRow]:
        return [r for r in self.rows if not r.ok]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "rows": [r.to_json() for r in self.rows],
            "fibers": {k: dict(sorted(v.items())) for k, v in sorted(self.fibers.items())},
        }


def _wp_dim(sig: Sequence[int]) -> int:
    return len(sig) - 1


def _linear_system(l2: int, ld: int, **kw) -> int:
    return riemann_roch_dim(NumericalProfile(l2, ld), **kw) - 1


def type_ii_constituents() -> dict[str, list[tuple[str, int]]]:
    """Moduli counts behind each Type II dimension; the first entry is the j-line."""
    j = ("j-invariant of E", 1)
    e8 = _wp_dim(wp_moduli_signature("E8"))
    e8_pairs = _wp_dim(wp_moduli_signature("E8", pairs=True))
    e7 = _wp_dim(wp_moduli_signature("E7"))
    d10 = len(highest_root_coefficients("D10"))  # (D10 ⊗ E)/W(D10) has dimension rank D10
    return {
        "II1": [j, ("|H| on the plane", _linear_system(1, 3))],
        "II2": [j, ("(E ⊗ E8)/W(E8) for V1", e8), ("(E ⊗ E8)/W(E8) for V2", e8),
                ("|H| on V1", _linear_system(1, 1)), ("|H| on V2", _linear_system(1, 1))],
        "II3": [j, ("H in the 2-dimensional subsystem", 2), ("P^1 factor of the P^2 x P^1 bundle", 1)],
        "II4": [j, ("(E ⊗ E7)/W(E7)", e7), ("|H| = |-K|", _linear_system(2, 2))],
        "II5": [j, ("(E ⊗ E8)/W(E8) with a marked section", e8_pairs),
                ("lines avoiding the singular point", _linear_system(2, 0, reduced_connected=True))],
        "II6": [j, ("(E ⊗ D10)/W(D10)", d10),
                ("lines avoiding the singular point", _linear_system(2, 0, reduced_connected=True))],
    }


def dimension_audit(strict: bool = True) -> AuditReport:
    """Recompute every boundary dimension from its constituents.

    Type III strata lose the j-line (j = ∞).  With ``strict`` a mismatch
    raises :class:`StrataError`.
    """
    cons = type_ii_constituents()
    rows = []
    for r in _TYPE_II:
        parts = tuple(cons[r.id])
        rows.append(AuditRow(r.id, parts, sum(v for _, v in parts), r.dim))
    for r in _TYPE_III:
        parts = tuple(cons["II" + r.id[3:]][1:])
        rows.append(AuditRow(r.id, parts, sum(v for _, v in parts), r.dim))
    fib = {rid: sum(v for _, v in cons[rid][1:]) for rid in cons}
    fibers: dict[str, dict[str, int]] = {}
    for r in _TYPE_II:
        fibers.setdefault(r.bb_target, {})[r.id] = fib[r.id]
    report = AuditReport(tuple(rows), fibers)
    if strict and not report.ok:
        bad = ", ".join(f"{r.id}: {r.computed} != {r.expected}" for r in report.failures())
        raise StrataError(f"dimension audit failed ({bad})")
    return report


# ---------------------------------------------------------------------------
# exports

_T1_COLUMNS = ("id", "description", "dim", "bb_target", "type_iii_id", "type_iii_description", "type_iii_dim",
               "anchor")
_T2_COLUMNS = ("id", "description", "dim", "contained_in", "notes", "anchor")


def table1_rows() -> list[dict]:
    iii = {r.id: r for r in _TYPE_III}
    out = []
    for r in _TYPE_II:
        t = iii["III" + r.id[2:]]
        out.append({
            "id": r.id, "description": r.description, "dim": r.dim, "bb_target": r.bb_target,
            "type_iii_id": t.id, "type_iii_description": t.description, "type_iii_dim": t.dim, "anchor": r.anchor,
        })
    return out


def table2_rows() -> list[dict]:
    return [{
        "id": r.id, "description": r.description, "dim": r.dim, "contained_in": ";".join(r.contained_in),
        "notes": r.notes, "anchor": r.anchor,
    } for r in _INCIDENCE]


def _csv(rows: Iterable[Mapping], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({c: r[c] for c in columns})
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_tables(fmt: str) -> dict[str, str]:
    """File name → contents for the table and adjacency exports."""
    graphs = {GIT: adjacency_graph(GIT), KIRWAN: adjacency_graph(KIRWAN), PAIRS: adjacency_graph(PAIRS)}
    slug = {GIT: "git", KIRWAN: "git_blowup", PAIRS: "pairs"}
    if fmt == "csv":
        out = {"table1.csv": _csv(table1_rows(), _T1_COLUMNS), "table2.csv": _csv(table2_rows(), _T2_COLUMNS)}
    elif fmt == "json":
        out = {
            "table1.json": _json({"version": DATA_VERSION, "rows": table1_rows()}),
            "table2.json": _json({"version": DATA_VERSION, "rows": table2_rows()}),
        }
        for space, g in graphs.items():
            out[f"adjacency_{slug[space]}.json"] = _json(g.to_json())
    else:
        raise StrataError("format must be csv or json")
    for space, g in graphs.items():
        out[f"adjacency_{slug[space]}.dot"] = g.to_dot(space)
    return out


def export_tables(outdir: str | Path, fmt: str = "csv") -> list[Path]:
    files = render_tables(fmt)
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(files):
        p = outdir / name
        p.write_text(files[name], encoding="utf-8", newline="\n")
        written.append(p)
    return written
