"""Hilbert–Mumford weights for sextics, lines and binary forms.

Convention: μ(F, λ) is the largest λ-weight on the support of F.  A form is
semistable in a frame when μ ≥ 0 for every diagonal λ; a pair (C, L) with the
line weighted by an infinitesimal ε is compared lexicographically through
(μ(C, λ), μ(L, λ)).

In the plane Σλ = 0 every weight function is piecewise linear, and its pieces
can only change sign or order along finitely many rays.  Evaluating on those
"critical rays" decides the sign of μ over all of the plane exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .forms import BinaryForm, Form, FormError, TernaryForm, format_rational, parse_rational

Weights = tuple[int, ...]


class GitError(ValueError):
    pass


def one_ps(weights: Sequence[int]) -> Weights:
    w = tuple(int(x) for x in weights)
    if sum(w) != 0:
        raise GitError(f"weights {w} do not sum to zero")
    if not any(w):
        raise GitError("the trivial one-parameter subgroup carries no information")
    return w


def mu(form: Form, lam: Sequence[int]) -> int:
    if form.is_zero():
        raise GitError("μ of the zero form is undefined")
    if len(lam) != form.nvars:
        raise GitError(f"weight vector of length {len(lam)} for {form.nvars} variables")
    return max(sum(a * b for a, b in zip(lam, e)) for e in form.support())


def mu_pair(C: TernaryForm, L: TernaryForm, lam: Sequence[int], eps) -> Fraction:
    return mu(C, lam) + Fraction(eps) * mu(L, lam)


def mu_batch(form: Form, lams, *, backend: str | None = None) -> np.ndarray:
    """μ for many weight vectors at once (numba kernel when available)."""
    if form.is_zero():
        raise GitError("μ of the zero form is undefined")
    return _kernels.mu_grid(np.array(form.support(), dtype=np.int64), lams, backend=backend)


# ---------------------------------------------------------------------------
# torus stability by weight-polytope membership


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull(points: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


STABLE, SEMISTABLE, UNSTABLE = "stable", "strictly_semistable", "unstable"


def torus_stability(form: TernaryForm) -> str:
    """Position of the barycenter relative to the convex hull of the support."""
    if form.is_zero():
        raise GitError("zero form")
    d = form.degree
    # project (i, j, k) ↦ (3i, 3j); the barycenter becomes (d, d)
    pts = [(3 * e[0], 3 * e[1]) for e in form.support()]
    b = (d, d)
    hull = _hull(pts)
    if len(hull) == 1:
        return SEMISTABLE if hull[0] == b else UNSTABLE
    if len(hull) == 2:
        p, q = hull
        if _cross(p, q, b) != 0:
            return UNSTABLE
        inside = min(p[0], q[0]) <= b[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= b[1] <= max(p[1], q[1])
        return SEMISTABLE if inside else UNSTABLE
    signs = [_cross(hull[i], hull[(i + 1) % len(hull)], b) for i in range(len(hull))]
    if any(s < 0 for s in signs):
        return UNSTABLE
    if any(s == 0 for s in signs):
        return SEMISTABLE
    return STABLE


def torus_stability_bruteforce(form: TernaryForm, bound: int = 20, *, backend: str | None = None) -> str:
    """Same verdict from μ on every λ in a bounded integer grid."""
    grid = _kernels.sum_zero_grid(bound)
    m = mu_batch(form, grid, backend=backend)
    if (m < 0).any():
        return UNSTABLE
    if (m == 0).any():
        return SEMISTABLE
    return STABLE


# ---------------------------------------------------------------------------
# critical rays


def _primitive(v: Sequence) -> Weights | None:
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return None
    return tuple(x // g for x in ints)


_BASE_RAYS = [(1, -1, 0), (0, 1, -1), (1, 0, -1)]


def critical_rays(vectors: Iterable[Sequence]) -> list[Weights]:
    """Rays in Σλ = 0 orthogonal to some given vector, plus six fixed rays.

    Consecutive rays are less than π apart, so any function that is linear
    between consecutive rays has its sign decided on the rays themselves.
    """
    rays = set()
    for base in _BASE_RAYS:
        rays.add(base)
        rays.add(tuple(-x for x in base))
    for v in vectors:
        r = _primitive((v[1] - v[2], v[2] - v[0], v[0] - v[1]))
        if r is not None:
            rays.add(r)
            rays.add(tuple(-x for x in r))
    return sorted(rays)


def _piece_vectors(form: TernaryForm) -> list[tuple]:
    supp = form.support()
    d = form.degree
    out = [tuple(3 * a - d for a in m) for m in supp]
    out += [tuple(a - b for a, b in zip(m, n)) for i, m in enumerate(supp) for n in supp[i + 1 :]]
    return out


@dataclass(frozen=True)
class FrameResult:
    status: str  # stable | strictly_semistable | unstable
    witnesses: tuple[Weights, ...] = ()
    zero_rays: tuple[Weights, ...] = ()


def frame_verdict(C: TernaryForm, L: TernaryForm, eps=None) -> FrameResult:
    """Exact sign analysis of μ^ε over all diagonal λ in the current frame.

    ``eps=None`` treats ε as infinitesimal; otherwise a positive rational.
    """
    if eps is None:
        rays = critical_rays(_piece_vectors(C) + _piece_vectors(L))
        vals = {r: (mu(C, r), mu(L, r)) for r in rays}
        neg = [r for r, (a, b) in vals.items() if a < 0 or (a == 0 and b < 0)]
        zero = [r for r, (a, b) in vals.items() if a == 0 and b == 0]
    else:
        eps = Fraction(eps)
        if eps <= 0:
            raise GitError("ε must be positive")
        d = C.degree + eps * L.degree
        combos = [tuple(Fraction(a) + eps * b for a, b in zip(m, l)) for m in C.support() for l in L.support()]
        vecs = [tuple(3 * a - d for a in v) for v in combos]
        vecs += [tuple(a - b for a, b in zip(v, w)) for i, v in enumerate(combos) for w in combos[i + 1 :]]
        rays = critical_rays(vecs)
        vals = {r: mu_pair(C, L, r, eps) for r in rays}
        neg = [r for r, v in vals.items() if v < 0]
        zero = [r for r, v in vals.items() if v == 0]
    if neg:
        return FrameResult(UNSTABLE, tuple(sorted(neg)))
    if zero:
        return FrameResult(SEMISTABLE, (), tuple(sorted(zero)))
    return FrameResult(STABLE)


# ---------------------------------------------------------------------------
# normal-form recognition

_CONIC_SUPPORT = {(3, 0, 3): 0, (2, 2, 2): 1, (1, 4, 1): 2, (0, 6, 0): 3}


def _conic_cubic(C: TernaryForm) -> list[Fraction] | None:
    """Coefficients (c0..c3) if C = Σ cₖ (x0x2)^{3−k} (x1²)^k, else None."""
    if C.degree != 6 or any(e not in _CONIC_SUPPORT for e in C.support()):
        return None
    c = [Fraction(0)] * 4
    for e, v in C.terms.items():
        c[_CONIC_SUPPORT[e]] = v
    return c


def _root_structure(c: Sequence[Fraction]) -> list[tuple[Fraction, int]] | None:
    """Rational-or-not roots of c0 a³ + c1 a² + c2 a + c3 as (root, multiplicity).

    Only multiplicities and whether a multiple root is 0 matter here, so
    irrational simple roots are reported with root ``None``.
    """
    import sympy

    a = sympy.Symbol("a")
    poly = sympy.Poly([sympy.Rational(x.numerator, x.denominator) for x in c], a, domain="QQ")
    if poly.degree() != 3:
        return None
    out = []
    for fac, mult in poly.sqf_list()[1]:
        if fac.degree() == 1:
            root = -fac.all_coeffs()[1] / fac.all_coeffs()[0]
            out.append((Fraction(int(root.p), int(root.q)), mult))
        else:
            out.extend((None, mult) for _ in range(fac.degree()))
    return out


def _is_line_x1(L: TernaryForm) -> bool:
    return L.degree == 1 and L.support() == [(0, 1, 0)]


def _conic_cubic_type(C: TernaryForm) -> str | None:
    """Z1, tau or Z2-tangent for products of conics x0x2 − a·x1²."""
    c = _conic_cubic(C)
    if c is None or c[0] == 0:
        return None
    roots = _root_structure(c)
    if roots is None:
        return None
    mults = sorted(m for _, m in roots)
    if mults == [1, 1, 1]:
        return "Z1"
    if mults == [1, 2]:
        double = next(r for r, m in roots if m == 2)
        return "Z2-tangent" if double == 0 else "tau"
    return None


def minimal_orbit_pattern(C: TernaryForm, L: TernaryForm) -> str | None:
    """Identify the strictly semistable normal forms of pairs over Z̄₁ ∪ Z̄₂."""
    if not _is_line_x1(L):
        return None
    return _conic_cubic_type(C)


def is_smooth_curve(C: TernaryForm) -> bool:
    """True iff the partial derivatives have no common zero in P²."""
    import sympy

    xs = sympy.symbols("x0 x1 x2")
    expr = sum(
        sympy.Rational(c.numerator, c.denominator) * xs[0] ** e[0] * xs[1] ** e[1] * xs[2] ** e[2]
        for e, c in C.terms.items()
    )
    parts = [sympy.diff(expr, x) for x in xs]
    if any(p == 0 for p in parts):
        return False
    gb = sympy.groebner(parts, *xs, order="grevlex", domain="QQ")
    leads = [sympy.Poly(g, *xs).monoms(order="grevlex")[0] for g in gb.exprs]
    # zero-dimensional homogeneous ideal ⟺ a pure power of each variable leads
    return all(any(m[i] > 0 and sum(m) == m[i] for m in leads) for i in range(3))


# ---------------------------------------------------------------------------
# verdicts


def _check_frame(frame) -> list[list[Fraction]]:
    try:
        m = [[parse_rational(x) for x in row] for row in frame]
    except (TypeError, ValueError, FormError):
        raise GitError("frame entries must be rationals") from None
    if len(m) != 3 or any(len(r) != 3 for r in m):
        raise GitError("a frame is a 3×3 matrix")
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    if det == 0:
        raise GitError("frame matrix is singular")
    return m


IDENTITY_FRAME = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class Verdict:
    status: str  # stable | strictly_semistable | unstable | undetermined
    orbit: str | None = None
    witness: Weights | None = None
    frame: tuple | None = None
    reason: str = ""

    def to_json(self) -> dict:
        out = {"status": self.status, "reason": self.reason}
        if self.orbit is not None:
            out["minimal_orbit"] = self.orbit
        if self.witness is not None:
            out["witness"] = list(self.witness)
        if self.frame is not None:
            out["frame"] = [[str(Fraction(x)) for x in row] for row in self.frame]
        return out


def pair_verdict(
    C: TernaryForm,
    L: TernaryForm,
    frame_hints: Sequence = (),
    *,
    eps=None,
    coverage_certified: bool = False,
) -> Verdict:
    """ε-stability verdict for a sextic–line pair.

    Frames are 3×3 matrices; the pair is analysed after the substitution
    x ↦ frame·x.  The identity frame is always included.
    """
    if C.degree != 6 or L.degree != 1:
        raise GitError("expected a sextic and a line")
    if not isinstance(C, TernaryForm) or not isinstance(L, TernaryForm):
        raise GitError("expected ternary forms")
    frames = [IDENTITY_FRAME] + [tuple(map(tuple, _check_frame(f))) for f in frame_hints]
    results = []
    for fr in frames:
        Cf = C if fr is IDENTITY_FRAME else C.substitute(fr)
        Lf = L if fr is IDENTITY_FRAME else L.substitute(fr)
        res = frame_verdict(Cf, Lf, eps)
        if res.status == UNSTABLE:
            return Verdict(UNSTABLE, witness=res.witnesses[0], frame=fr, reason="negative weight on a one-parameter subgroup")
        results.append((fr, Cf, Lf, res))
    for fr, Cf, Lf, res in results:
        if res.status == SEMISTABLE:
            orbit = minimal_orbit_pattern(Cf, Lf)
            if orbit is not None:
                return Verdict(SEMISTABLE, orbit=orbit, frame=fr, reason="weight zero attained on a known minimal orbit")
    if coverage_certified and all(res.status == STABLE for *_, res in results):
        return Verdict(STABLE, reason="positive in every supplied frame with certified coverage")
    if is_smooth_curve(C):
        return Verdict(STABLE, reason="smooth sextic: stable curve, so every pair is stable")
    return Verdict("undetermined", reason="no witness, no recognized minimal orbit, no coverage certificate")


# ---------------------------------------------------------------------------
# slc test for double covers

TRIPLE_CONIC_WEIGHTS = ((1, 0, -1), (-1, 0, 1))


def _is_triple_smooth_conic(part: TernaryForm) -> bool:
    c = _conic_cubic(part)
    if c is None or c[0] == 0 or c[3] == 0:
        return False
    # c0 (s + k t)³ = c0 s³ + 3 c0 k s² t + 3 c0 k² s t² + c0 k³ t³
    k = c[1] / (3 * c[0])
    return k != 0 and c[2] == 3 * c[0] * k * k and c[3] == c[0] * k ** 3


def _semistable_pattern(C: TernaryForm) -> str | None:
    """Known semistable minimal-orbit sextics in the given coordinates."""
    kind = _conic_cubic_type(C)
    if kind is not None:
        return kind
    supp = C.support()
    if supp == [(2, 2, 2)]:
        return "zeta"
    if supp and all(e[0] == 2 for e in supp):
        quartic = BinaryForm({(e[1], e[2]): v for e, v in C.terms.items()}, 4)
        if _squarefree_binary(quartic):
            return "Z2"
    return None


def _squarefree_binary(f: BinaryForm) -> bool:
    import sympy

    u = sympy.Symbol("u")
    coeffs = [f.coefficient((a, f.degree - a)) for a in range(f.degree, -1, -1)]
    if coeffs[0] == 0 and coeffs[1] == 0:
        return False  # v² divides f
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in coeffs], u, domain="QQ")
    return sympy.gcd(poly, poly.diff(u)).degree() == 0


def slc_double_cover_test(C: TernaryForm, frame_hints: Sequence = ()) -> dict:
    """Decide whether the double cover branched along C is slc, when possible."""
    if C.degree != 6:
        raise GitError("expected a sextic")
    frames = [IDENTITY_FRAME] + [tuple(map(tuple, _check_frame(f))) for f in frame_hints]
    for fr in frames:
        Cf = C if fr is IDENTITY_FRAME else C.substitute(fr)
        for lam in TRIPLE_CONIC_WEIGHTS:
            if mu(Cf, lam) == 0 and _is_triple_smooth_conic(Cf.weight_part(lam, 0)):
                return {"status": "not_slc", "reason": "degenerates to the triple conic", "witness": list(lam),
                        "frame": [list(map(str, r)) for r in fr]}
        if torus_stability(Cf) == UNSTABLE:
            return {"status": "not_slc", "reason": "unstable sextic", "frame": [list(map(str, r)) for r in fr]}
    if is_smooth_curve(C):
        return {"status": "slc", "reason": "smooth sextic"}
    for fr in frames:
        Cf = C if fr is IDENTITY_FRAME else C.substitute(fr)
        pat = _semistable_pattern(Cf)
        if pat is not None:
            return {"status": "slc", "reason": f"semistable minimal orbit {pat}"}
    return {"status": "undetermined", "reason": "semistability not certified"}


# ---------------------------------------------------------------------------
# unigonal quotient


def binary_mu(f: BinaryForm, lam: Sequence[int]) -> int:
    one_ps(lam)
    return mu(f, lam)


def unigonal_mu(p12: BinaryForm, p8: BinaryForm, l2: BinaryForm, lam: Sequence[int], eps=None):
    """3μ(p12) + 2μ(p8) + εμ(l2); returns the pair (main, ε-part) when eps is None."""
    for f, deg in ((p12, 12), (p8, 8), (l2, 2)):
        if not isinstance(f, BinaryForm) or f.degree != deg:
            raise GitError(f"expected a binary form of degree {deg}")
    lam = one_ps(lam)
    if len(lam) != 2:
        raise GitError("binary forms need a weight vector (t, -t)")
    main = 3 * mu(p12, lam) + 2 * mu(p8, lam)
    tail = mu(l2, lam)
    if eps is None:
        return main, tail
    return main + Fraction(eps) * tail


# ---------------------------------------------------------------------------
# Luna slice weights


class WeightMultiset(Counter):
    """Integer weights with multiplicities; zero multiplicities are dropped."""

    def __init__(self, data: Mapping[int, int] | Iterable[int] = ()):
        super().__init__()
        if isinstance(data, Mapping):
            for w, m in data.items():
                if m < 0:
                    raise GitError("negative multiplicity")
                if m:
                    self[int(w)] = int(m)
        else:
            for w in data:
                self[int(w)] += 1

    @classmethod
    def symmetric(cls, table: Mapping[int, int]) -> "WeightMultiset":
        """Build {±w: m} from {w: m} for w ≥ 0."""
        out = cls()
        for w, m in table.items():
            out[w] += m
            if w:
                out[-w] += m
        return out

    def dimension(self) -> int:
        return sum(self.values())

    def as_sorted_list(self) -> list[int]:
        return sorted(self.elements())


def sextic_tangent_weights(lam: Sequence[int], form: TernaryForm) -> WeightMultiset:
    """Weights on T_[F] P(Sym⁶) for a λ-fixed sextic F of weight 0."""
    if any(sum(a * b for a, b in zip(lam, e)) for e in form.support()):
        raise GitError("form is not fixed by λ with weight 0")
    from .forms import all_monomials

    w = WeightMultiset(sum(a * b for a, b in zip(lam, e)) for e in all_monomials(3, form.degree))
    w[0] -= 1
    return w


def line_tangent_weights(lam: Sequence[int], line: TernaryForm) -> WeightMultiset:
    ws = {sum(a * b for a, b in zip(lam, e)) for e in line.support()}
    if len(ws) != 1:
        raise GitError("line is not λ-homogeneous")
    base = ws.pop()
    w = WeightMultiset(x - base for x in lam)
    w[0] -= 1
    return w


def orbit_tangent_weights(lam: Sequence[int], stabilizer_dim: int = 1) -> WeightMultiset:
    """Adjoint weights of sl₃ minus the stabilizer (a subtorus of dimension k)."""
    n = len(lam)
    w = WeightMultiset(lam[i] - lam[j] for i in range(n) for j in range(n) if i != j)
    w[0] += n - 1 - stabilizer_dim
    return WeightMultiset(dict(w))


def luna_normal_weights(ambient: Sequence[Mapping[int, int]], orbit: Mapping[int, int]) -> WeightMultiset:
    total: Counter = Counter()
    for a in ambient:
        total.update(dict(a))
    out = {}
    for w in set(total) | set(orbit):
        m = total.get(w, 0) - orbit.get(w, 0)
        if m < 0:
            raise GitError(f"orbit weight {w} exceeds the ambient multiplicity")
        out[w] = m
    return WeightMultiset(out)


def wp_fiber(normal: Mapping[int, int], allow_asymmetric: bool = False) -> list[tuple[int, ...]]:
    """Weighted projective signatures of the positive and negative parts."""
    pos = sorted(w for w, m in normal.items() for _ in range(m) if w > 0)
    neg = sorted(-w for w, m in normal.items() for _ in range(m) if w < 0)
    if pos != neg and not allow_asymmetric:
        raise GitError("weights are not symmetric about zero")
    return [tuple(side) for side in (pos, neg) if side]


VERSAL_E8_WEIGHTS = (0, -1, -2, -2, -3, -3, -4, -4, -5, -6)


def sextic_from_json(obj: dict) -> TernaryForm:
    try:
        return TernaryForm.from_json(obj)
    except FormError as exc:
        raise GitError(str(exc)) from None


def sextic_pair_from_json(obj: dict) -> dict:
    """Read {"sextic", "line", "frame_hints"?, "eps"?, "coverage_certified"?}."""
    try:
        C = sextic_from_json(obj["sextic"])
        L = sextic_from_json(obj["line"]) if obj.get("line") is not None else None
    except (KeyError, TypeError) as exc:
        raise GitError(f"pair JSON needs 'sextic' and 'line': {exc}") from None
    hints = [_check_frame(f) for f in obj.get("frame_hints", [])]
    eps = obj.get("eps")
    return {
        "sextic": C,
        "line": L,
        "frame_hints": hints,
        "eps": None if eps is None else parse_rational(eps),
        "coverage_certified": bool(obj.get("coverage_certified", False)),
    }


def sextic_pair_to_json(C: TernaryForm, L: TernaryForm | None, frame_hints: Sequence = (), eps=None,
                        coverage_certified: bool = False) -> dict:
    out: dict = {"sextic": C.to_json(), "line": L.to_json() if L is not None else None}
    if frame_hints:
        out["frame_hints"] = [[[format_rational(Fraction(x)) for x in row] for row in f] for f in frame_hints]
    if eps is not None:
        out["eps"] = format_rational(Fraction(eps))
    if coverage_certified:
        out["coverage_certified"] = True
    return out
