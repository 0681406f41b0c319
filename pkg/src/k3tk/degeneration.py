"""Combinatorics of Kulikov models: Type II chains and Type III triangulations.

A Type II chain V₀ – V₁ – … – V_r has rational ends and elliptic ruled
interior components.  Each double curve Cᵢ between Vᵢ and Vᵢ₊₁ carries its
self-intersection on both sides and the degree L·Cᵢ, which is all that is
needed to move the polarization along the chain exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Sequence

from .anticanonical import NumericalProfile, PairError, classify_zero_surface

RATIONAL, RULED = "rational", "elliptic-ruled"


class DegenerationError(ValueError):
    pass


@dataclass(frozen=True)
class DoubleCurve:
    self_left: int  # C² on the left component
    self_right: int  # C² on the right component
    degree: int  # L·C, equal from both sides


@dataclass(frozen=True)
class TypeIIChain:
    components: tuple[str, ...]
    curves: tuple[DoubleCurve, ...]

    def __post_init__(self):
        if len(self.curves) != len(self.components) - 1:
            raise DegenerationError("a chain of n components has n−1 double curves")

    def curves_on(self, i: int) -> list[tuple[int, int, int]]:
        """(curve index, self-intersection on Vᵢ, degree) for the curves of Vᵢ."""
        out = []
        if i > 0:
            c = self.curves[i - 1]
            out.append((i - 1, c.self_right, c.degree))
        if i < len(self.curves):
            c = self.curves[i]
            out.append((i, c.self_left, c.degree))
        return out


@dataclass(frozen=True)
class TypeIIIComplex:
    """Triangulated sphere given by vertex triples.

    After subdivision two distinct edges may share both endpoints (the pillow
    is the smallest example), so edges can carry explicit ids: ``edge_ids[t]``
    names the edges (t0 t1), (t1 t2), (t0 t2) of triangle t.
    """

    vertices: tuple[int, ...]
    triangles: tuple[tuple[int, int, int], ...]
    edge_ids: tuple[tuple[int, int, int], ...] | None = None

    def __post_init__(self):
        if self.edge_ids is not None and len(self.edge_ids) != len(self.triangles):
            raise DegenerationError("one edge id triple per triangle")

    def triangle_edges(self, ti: int) -> tuple:
        if self.edge_ids is not None:
            return self.edge_ids[ti]
        t = self.triangles[ti]
        return (frozenset((t[0], t[1])), frozenset((t[1], t[2])), frozenset((t[0], t[2])))

    def edge_counts(self) -> Counter:
        c: Counter = Counter()
        for ti in range(len(self.triangles)):
            c.update(self.triangle_edges(ti))
        return c

    def edges(self) -> set:
        return set(self.edge_counts())

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges()) + len(self.triangles)


@dataclass(frozen=True)
class KulikovModel:
    complex: TypeIIChain | TypeIIIComplex
    profile: tuple[tuple[int, int], ...]
    d: int
    # D² on the relatively minimal model of each component, when it differs
    # from the sum of the double-curve squares
    d2: tuple[int | None, ...] | None = None

    def __post_init__(self):
        prof = tuple((int(a), int(b)) for a, b in self.profile)
        object.__setattr__(self, "profile", prof)
        n = len(self.complex.components) if self.kind == "II" else len(self.complex.vertices)
        if len(prof) != n:
            raise DegenerationError(f"profile has {len(prof)} entries for {n} components")
        if self.d2 is not None and len(self.d2) != n:
            raise DegenerationError("D² list does not match the components")

    @property
    def kind(self) -> str:
        return "II" if isinstance(self.complex, TypeIIChain) else "III"

    def l2(self) -> tuple[int, ...]:
        return tuple(p[0] for p in self.profile)

    def component_d2(self, i: int) -> int | None:
        if self.d2 is not None and self.d2[i] is not None:
            return self.d2[i]
        if self.kind == "II":
            return sum(s for _, s, _ in self.complex.curves_on(i))
        return None


def type_ii_model(
    components: Sequence[str],
    curves: Sequence[tuple[int, int, int]],
    profile: Sequence[tuple[int, int]],
    d: int = 2,
) -> KulikovModel:
    chain = TypeIIChain(tuple(components), tuple(DoubleCurve(*c) for c in curves))
    return KulikovModel(chain, tuple(profile), d)


def type_iii_model(triangles: Sequence[Sequence[int]], profile=None, d: int = 2) -> KulikovModel:
    tris = tuple(tuple(int(v) for v in t) for t in triangles)
    verts = tuple(sorted({v for t in tris for v in t}))
    if profile is None:
        profile = [(0, 0)] * len(verts)
    return KulikovModel(TypeIIIComplex(verts, tris), tuple(profile), d)


TETRAHEDRON = ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3))
PILLOW = ((0, 1, 2), (0, 2, 1))


# ---------------------------------------------------------------------------
# validation


def validate(m: KulikovModel) -> list[str]:
    out = []
    if any(a < 0 or b < 0 for a, b in m.profile):
        out.append("negative degree in the profile")
    if sum(m.l2()) != m.d:
        out.append(f"sum of L^2 over components is {sum(m.l2())}, expected {m.d}")
    if m.kind == "III":
        cx = m.complex
        chi = cx.euler_characteristic()
        if chi != 2:
            out.append(f"Euler characteristic {chi} != 2")
        bad = [e for e, c in cx.edge_counts().items() if c != 2]
        if bad:
            shown = sorted(tuple(sorted(e)) if isinstance(e, frozenset) else (e,) for e in bad)
            out.append(f"edges not in exactly two triangles: {shown}")
        if any(len(set(t)) != 3 for t in cx.triangles):
            out.append("degenerate triangle")
        return out
    ch = m.complex
    n = len(ch.components)
    if n < 2:
        out.append("a Type II chain needs at least two components")
    if ch.components[0] != RATIONAL or ch.components[-1] != RATIONAL:
        out.append("chain ends must be rational")
    if any(c != RULED for c in ch.components[1:-1]):
        out.append("interior components must be elliptic ruled")
    for k, c in enumerate(ch.curves):
        if c.self_left + c.self_right != 0:
            out.append(f"triple point formula fails on curve {k}: {c.self_left} + {c.self_right} != 0")
        if c.degree < 0:
            out.append(f"negative degree on curve {k}")
    for i in range(n):
        ld = sum(e for _, _, e in ch.curves_on(i))
        if ld != m.profile[i][1]:
            out.append(f"component {i}: L.D={m.profile[i][1]} but its double curves carry {ld}")
        if ch.components[i] == RULED:
            selfs = [s for _, s, _ in ch.curves_on(i)]
            if sum(selfs) != 0:
                out.append(f"component {i}: sections of a ruled surface must have opposite squares")
    return out


# ---------------------------------------------------------------------------
# base change


def base_change(m: KulikovModel, k: int) -> KulikovModel:
    if k < 2:
        raise DegenerationError("base change order must be at least 2")
    if m.kind == "II":
        return _base_change_ii(m, k)
    return _base_change_iii(m, k)


def _base_change_ii(m: KulikovModel, k: int) -> KulikovModel:
    ch = m.complex
    comps = [ch.components[0]]
    curves: list[DoubleCurve] = []
    prof = [m.profile[0]]
    for i, c in enumerate(ch.curves):
        a = c.self_left
        for _ in range(k - 1):
            curves.append(DoubleCurve(a, -a, c.degree))
            comps.append(RULED)
            prof.append((0, 2 * c.degree))
        curves.append(DoubleCurve(a, c.self_right, c.degree))
        comps.append(ch.components[i + 1])
        prof.append(m.profile[i + 1])
    d2 = None
    if m.d2 is not None:
        d2 = [m.d2[0]]
        for i in range(len(ch.curves)):
            d2.extend([0] * (k - 1) + [m.d2[i + 1]])
        d2 = tuple(d2)
    return KulikovModel(TypeIIChain(tuple(comps), tuple(curves)), tuple(prof), m.d, d2)


def _point_key(ti: int, tri: tuple[int, int, int], eids: tuple, w: tuple[int, int, int]):
    """Name a lattice point of triangle ti so that shared edges agree."""
    nz = [i for i in range(3) if w[i]]
    if len(nz) == 1:
        return ("v", tri[nz[0]])
    if len(nz) == 2:
        i, j = nz
        eid = eids[{(0, 1): 0, (1, 2): 1, (0, 2): 2}[(i, j)]]
        # weight toward the larger endpoint is independent of orientation
        return ("e", repr(eid), w[j] if tri[i] < tri[j] else w[i])
    return ("f", ti) + tuple(w)


def _base_change_iii(m: KulikovModel, k: int) -> KulikovModel:
    """Edgewise subdivision of every triangle into k² triangles."""
    cx = m.complex
    if any(c != 2 for c in cx.edge_counts().values()):
        raise DegenerationError("subdivision needs a closed surface triangulation")
    new_tris = []
    for ti, tri in enumerate(cx.triangles):
        eids = cx.triangle_edges(ti)
        if any(tri[a] == tri[b] for a, b in ((0, 1), (1, 2), (0, 2))):
            raise DegenerationError("degenerate triangle")
        for i in range(k):
            for j in range(k - i):
                l = k - 1 - i - j
                new_tris.append((ti, tri, eids, ((i + 1, j, l), (i, j + 1, l), (i, j, l + 1))))
        for i in range(k - 1):
            for j in range(k - 1 - i):
                l = k - 2 - i - j
                new_tris.append((ti, tri, eids, ((i, j + 1, l + 1), (i + 1, j, l + 1), (i + 1, j + 1, l))))

    vkeys, ekeys, tris, edges = {}, {}, [], []
    for v in cx.vertices:
        vkeys[("v", v)] = len(vkeys)
    pending = []
    for ti, tri, eids, pts in new_tris:
        ks = [_point_key(ti, tri, eids, w) for w in pts]
        # an edge is named by its midpoint on the doubled grid
        mids = [_point_key(ti, tri, eids, tuple(a + b for a, b in zip(pts[x], pts[y])))
                for x, y in ((0, 1), (1, 2), (0, 2))]
        pending.append((ks, mids))
    for p in sorted({k for ks, _ in pending for k in ks if k[0] != "v"}, key=repr):
        vkeys[p] = len(vkeys)
    for p in sorted({e for _, es in pending for e in es}, key=repr):
        ekeys[p] = len(ekeys)
    for ks, mids in pending:
        tris.append(tuple(vkeys[p] for p in ks))
        edges.append(tuple(ekeys[e] for e in mids))
    prof = list(m.profile) + [(0, 0)] * (len(vkeys) - len(cx.vertices))
    complex_ = TypeIIIComplex(tuple(range(len(vkeys))), tuple(tris), tuple(edges))
    return KulikovModel(complex_, tuple(prof), m.d)


# ---------------------------------------------------------------------------
# twisting


def twist_profile(m: KulikovModel, i: int) -> KulikovModel:
    """Move polarization across the double curve between components i and i+1.

    This tensors ℒ with O(V₀ + … + Vᵢ): on Vᵢ the class L becomes L − Cᵢ and
    on Vᵢ₊₁ it becomes L + Cᵢ', with Cᵢ the double curve between them.
    Indices are 0-based.
    """
    if m.kind != "II":
        raise DegenerationError("twisting is implemented for Type II chains only")
    ch = m.complex
    if not 0 <= i < len(ch.curves):
        raise DegenerationError(f"no double curve after component {i}")
    c = ch.curves[i]
    l2_i, ld_i = m.profile[i]
    l2_j, ld_j = m.profile[i + 1]
    if c.degree > l2_i:
        raise DegenerationError(
            f"twist refused at component {i}: L.C={c.degree} > L^2={l2_i}, so L-C is not effective"
        )
    new_i = (l2_i - 2 * c.degree + c.self_left, ld_i - c.self_left)
    new_deg = c.degree - c.self_left
    new_j = (l2_j + 2 * c.degree + c.self_right, ld_j + c.self_right)
    if c.degree + c.self_right != new_deg:
        raise DegenerationError("triple point formula fails on the twisted curve")
    if min(new_i + new_j) < 0 or new_deg < 0:
        raise DegenerationError(f"twist at component {i} would make a degree negative")
    prof = list(m.profile)
    prof[i], prof[i + 1] = new_i, new_j
    curves = list(ch.curves)
    curves[i] = replace(c, degree=new_deg)
    return replace(m, complex=replace(ch, curves=tuple(curves)), profile=tuple(prof))


def twist_candidates(m: KulikovModel) -> list[int]:
    """Components from which polarization can be pushed to the next one."""
    if m.kind != "II":
        return []
    out = []
    for i in range(len(m.complex.curves)):
        try:
            twist_profile(m, i)
        except DegenerationError:
            continue
        if m.profile[i][0] > 0:
            out.append(i)
    return out


def twist_first(m: KulikovModel, order: str = "lowest") -> KulikovModel:
    """Apply one twist, choosing among candidates by index order."""
    cands = twist_candidates(m)
    if not cands:
        raise DegenerationError("no component admits a twist")
    if order not in ("lowest", "highest"):
        raise DegenerationError("order must be 'lowest' or 'highest'")
    return twist_profile(m, cands[0] if order == "lowest" else cands[-1])


# ---------------------------------------------------------------------------
# log canonical profile


@dataclass(frozen=True)
class ZeroSurface:
    component: int
    case_id: int
    description: str
    partial_smoothing: bool = False


@dataclass(frozen=True)
class LogCanonicalProfile:
    zero_surfaces: tuple[ZeroSurface, ...]
    contracted: tuple[int, ...]
    descriptor: str
    stratum: str | None


_SINGLE = {3: "II3", 4: "II4", 5: "II5", 6: "II6"}


def _describe(cases: list[int]) -> tuple[str, str | None]:
    if cases == [1, 1]:
        return "two planes glued along a cubic", "II1"
    if cases == [2, 2]:
        return "V₁∪_E V₂", "II2"
    if len(cases) == 1:
        cid = cases[0]
        from .anticanonical import CASE_PROFILES

        return classify_zero_surface(CASE_PROFILES[cid]).description, _SINGLE.get(cid)
    return " + ".join(f"case {c}" for c in cases), None


def log_canonical_profile(m: KulikovModel) -> LogCanonicalProfile:
    zs = []
    contracted = []
    for i, (l2, ld) in enumerate(m.profile):
        if l2 == 0:
            contracted.append(i)
            continue
        kind = m.complex.components[i] if m.kind == "II" else RATIONAL
        if kind == RULED:
            zs.append(_ruled_zero_surface(m, i))
            continue
        d2 = m.component_d2(i)
        try:
            case = classify_zero_surface(NumericalProfile(l2, ld, d2))
        except PairError as exc:
            raise DegenerationError(f"component {i}: {exc}") from None
        zs.append(ZeroSurface(i, case.case_id, case.description))
    cases = sorted(z.case_id for z in zs)
    desc, stratum = _describe(cases)
    if any(z.partial_smoothing for z in zs):
        desc += " (elliptic ruled, smooths to a rational surface)"
    return LogCanonicalProfile(tuple(zs), tuple(contracted), desc, stratum)


def _ruled_zero_surface(m: KulikovModel, i: int) -> ZeroSurface:
    """An elliptic ruled 0-surface contracts the section orthogonal to L."""
    l2 = m.profile[i][0]
    sections = [(s, e) for _, s, e in m.complex.curves_on(i)]
    contracted = [s for s, e in sections if e == 0]
    if not contracted:
        raise DegenerationError(f"component {i}: no section orthogonal to L")
    d2 = contracted[0]
    try:
        case = classify_zero_surface(NumericalProfile(l2, 0, d2))
    except PairError as exc:
        raise DegenerationError(f"component {i}: {exc}") from None
    return ZeroSurface(i, case.case_id, f"elliptic ruled surface with a section of square {d2} contracted",
                       partial_smoothing=True)


# ---------------------------------------------------------------------------
# standard chains


def e7_d10_chain() -> KulikovModel:
    """dP2 end, elliptic ruled middle, rational end with D² = −2; L on the first end."""
    return type_ii_model(
        [RATIONAL, RULED, RATIONAL],
        [(2, -2, 2), (2, -2, 2)],
        [(2, 2), (0, 4), (0, 2)],
    )


def two_e8_a1_chain() -> KulikovModel:
    """Two degree-1 del Pezzo ends joined by an elliptic ruled surface."""
    m = type_ii_model(
        [RATIONAL, RULED, RATIONAL],
        [(1, -1, 1), (1, -1, 1)],
        [(1, 1), (0, 2), (1, 1)],
    )
    # the far end is a degree-1 del Pezzo blown up twice on D
    return replace(m, d2=(1, None, 1))


def two_planes() -> KulikovModel:
    """P² ∪ (P² blown up in 18 points of the cubic); both relatively minimal models are planes."""
    m = type_ii_model([RATIONAL, RATIONAL], [(9, -9, 3)], [(1, 3), (1, 3)], d=2)
    return replace(m, d2=(9, 9))


# ---------------------------------------------------------------------------
# JSON


def model_from_json(obj: dict) -> KulikovModel:
    try:
        kind = obj["kind"]
        d = int(obj.get("d", 2))
        if kind == "II":
            comps = obj["chain"]
            curves = [(c["self"][0], c["self"][1], c.get("degree", 0)) for c in obj["double_curves"]]
            model = type_ii_model(comps, curves, [tuple(p) for p in obj["profile"]], d)
        elif kind == "III":
            model = type_iii_model(obj["triangles"], [tuple(p) for p in obj["profile"]] if "profile" in obj else None, d)
            if "edges" in obj:
                cx = replace(model.complex, edge_ids=tuple(tuple(int(e) for e in t) for t in obj["edges"]))
                model = replace(model, complex=cx)
        else:
            raise DegenerationError(f"unknown kind {kind!r}")
    except (KeyError, TypeError, IndexError) as exc:
        raise DegenerationError(f"malformed model JSON: {exc}") from None
    if "d2" in obj:
        model = replace(model, d2=tuple(obj["d2"]))
    return model


def model_to_json(m: KulikovModel) -> dict:
    out: dict = {"kind": m.kind, "d": m.d, "profile": [list(p) for p in m.profile]}
    if m.kind == "II":
        out["chain"] = list(m.complex.components)
        out["double_curves"] = [{"self": [c.self_left, c.self_right], "degree": c.degree} for c in m.complex.curves]
    else:
        out["triangles"] = [list(t) for t in m.complex.triangles]
        if m.complex.edge_ids is not None:
            out["edges"] = [list(t) for t in m.complex.edge_ids]
    if m.d2 is not None:
        out["d2"] = list(m.d2)
    return out
