"""Numerical models of polarized anticanonical pairs (V, D; L).

A pair is a unimodular lattice of signature (1, n) with three distinguished
classes K, D = −K and L.  Geometry enters only through intersection numbers,
so effectivity and nefness are caller assertions except where a numerical
criterion exists (L − D is effective iff L·D ≤ L²).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from . import linalg
from .lattice import _short_vectors, _solve_integral

Vector = tuple[int, ...]


class PairError(ValueError):
    pass


class ChargeWarning(UserWarning):
    pass


@dataclass(frozen=True)
class NumericalProfile:
    l2: int
    ld: int
    d2: int | None = None

    def __str__(self) -> str:
        d2 = "·" if self.d2 is None else self.d2
        return f"({self.l2},{self.ld},{d2})"


def validate_profile(p: NumericalProfile, l_sim_d: bool = False) -> list[str]:
    """Violated numerical constraints of a polarized pair; empty when valid."""
    out = []
    if (p.l2 - p.ld) % 2:
        out.append(f"parity: L^2={p.l2} and L.D={p.ld} differ mod 2")
    if p.ld < 0:
        out.append(f"L.D={p.ld} is negative")
    if p.ld > p.l2 + 2:
        out.append(f"L.D={p.ld} exceeds L^2+2={p.l2 + 2}")
    if p.d2 is not None and 0 <= p.ld <= p.l2:
        lo = 2 * p.ld - p.l2
        if p.d2 < lo:
            out.append(f"D^2={p.d2} below 2L.D-L^2={lo}")
        if l_sim_d:
            if p.d2 > p.ld:
                out.append(f"D^2={p.d2} exceeds L.D={p.ld}")
        elif p.d2 >= p.ld:
            out.append(f"D^2={p.d2} must be < L.D={p.ld} unless L~D")
    return out


def riemann_roch_dim(p: NumericalProfile, reduced_connected: bool = False) -> int:
    """h⁰(L) for a nef L on an anticanonical pair."""
    if p.ld > 0:
        return (p.l2 + p.ld) // 2 + 1
    if p.ld == 0 and reduced_connected:
        return p.l2 // 2 + 2
    raise PairError("L.D = 0 requires a reduced connected member of |L| for the dimension formula")


def twisted_profile(p: NumericalProfile) -> NumericalProfile:
    """Numerical profile of L − D."""
    if p.d2 is None:
        raise PairError("D^2 is needed to twist")
    if p.ld > p.l2:
        raise PairError(f"L-D is not effective: L.D={p.ld} > L^2={p.l2}")
    return NumericalProfile(p.l2 - 2 * p.ld + p.d2, p.ld - p.d2, p.d2)


# ---------------------------------------------------------------------------
# lattice models


def _dot(g, u, v) -> int:
    n = len(g)
    return sum(u[i] * g[i][j] * v[j] for i in range(n) if u[i] for j in range(n) if v[j])


@dataclass(frozen=True)
class AnticanonicalPairModel:
    gram: tuple[tuple[int, ...], ...]
    D: Vector
    L: Vector
    K: Vector | None = None
    # rows expressing the current basis in the coordinates of the original model
    history: tuple[Vector, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in r) for r in self.gram)
        n = len(g)
        object.__setattr__(self, "gram", g)
        object.__setattr__(self, "D", tuple(int(x) for x in self.D))
        object.__setattr__(self, "L", tuple(int(x) for x in self.L))
        if self.K is None:
            object.__setattr__(self, "K", tuple(-x for x in self.D))
        else:
            object.__setattr__(self, "K", tuple(int(x) for x in self.K))
            if any(a + b for a, b in zip(self.K, self.D)):
                raise PairError("D must equal -K")
        if len(self.D) != n or len(self.L) != n:
            raise PairError("class length does not match rank")
        if self.history is None:
            object.__setattr__(self, "history", tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def blowup_of_plane(cls, n: int, L: Sequence[int]) -> "AnticanonicalPairModel":
        """P² blown up n times: basis h, e1..en with K = −3h + Σ eᵢ."""
        gram = [[0] * (n + 1) for _ in range(n + 1)]
        gram[0][0] = 1
        for i in range(1, n + 1):
            gram[i][i] = -1
        D = [3] + [-1] * n
        return cls(gram, D, L)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def dot(self, u: Sequence[int], v: Sequence[int]) -> int:
        return _dot(self.gram, u, v)

    def profile(self) -> NumericalProfile:
        return NumericalProfile(self.dot(self.L, self.L), self.dot(self.L, self.D), self.dot(self.D, self.D))

    @property
    def polarization_exhausted(self) -> bool:
        return not any(self.L)

    def in_original(self, v: Sequence[int]) -> Vector:
        h = self.history
        return tuple(sum(v[i] * h[i][j] for i in range(len(v))) for j in range(len(h[0])))


def twist(pair: AnticanonicalPairModel) -> AnticanonicalPairModel:
    """Replace L by L − D (allowed iff L·D ≤ L²)."""
    p = pair.profile()
    if p.ld > p.l2:
        raise PairError(f"twist refused: L.D={p.ld} > L^2={p.l2}, so L-D is not effective")
    return replace(pair, L=tuple(a - b for a, b in zip(pair.L, pair.D)))


def minus_one_classes(pair: AnticanonicalPairModel) -> list[Vector]:
    """Classes E with E² = −1, E·D = 1, E·L = 0, sorted."""
    l2 = pair.dot(pair.L, pair.L)
    if l2 <= 0:
        raise PairError("L must be big (L^2 > 0) to bound the search")
    gl = linalg.matvec(pair.gram, pair.L)
    perp = linalg.integer_kernel([gl])
    q = [[-x for x in row] for row in linalg.congruence(perp, pair.gram)]
    t, qr = linalg.lll_gram(q)
    basis = linalg.matmul(t, perp)
    out = set()
    for y in _short_vectors(qr, 1):
        e = tuple(sum(y[i] * basis[i][j] for i in range(len(y))) for j in range(pair.rank))
        if pair.dot(e, pair.D) == 1:
            out.add(e)
    return sorted(out)


def contract(pair: AnticanonicalPairModel, e: Sequence[int]) -> AnticanonicalPairModel:
    """Blow down the (−1)-class e: pass to e⊥ with D ↦ D + e."""
    if pair.dot(e, e) != -1 or pair.dot(e, pair.D) != 1 or pair.dot(e, pair.L) != 0:
        raise PairError("not a contractible class for this pair")
    perp = linalg.integer_kernel([linalg.matvec(pair.gram, list(e))])
    gram = linalg.congruence(perp, pair.gram)
    d_new = _solve_integral(perp, [a + b for a, b in zip(pair.D, e)])
    l_new = _solve_integral(perp, list(pair.L))
    hist = linalg.matmul(perp, [list(r) for r in pair.history])
    return AnticanonicalPairModel(gram, d_new, l_new, history=tuple(map(tuple, hist)))


def relative_minimalize(
    pair: AnticanonicalPairModel, max_rank: int = 24
) -> tuple[AnticanonicalPairModel, list[Vector]]:
    """Contract (−1)-classes orthogonal to L until none remain.

    Contracted classes are reported in the coordinates of the input model.
    The lowest class in lexicographic order is contracted first.
    """
    if pair.rank > max_rank:
        raise PairError(f"rank {pair.rank} exceeds the enumeration cap {max_rank}")
    contracted: list[Vector] = []
    while True:
        cands = minus_one_classes(pair)
        if not cands:
            return pair, contracted
        e = cands[0]
        contracted.append(pair.in_original(e))
        pair = contract(pair, e)


def minimalization_outcomes(pair: AnticanonicalPairModel) -> list[tuple[AnticanonicalPairModel, tuple[Vector, ...]]]:
    """Every maximal sequence of contractions, explored exhaustively."""
    cands = minus_one_classes(pair)
    if not cands:
        return [(pair, ())]
    out = []
    for e in cands:
        lifted = pair.in_original(e)
        for final, seq in minimalization_outcomes(contract(pair, e)):
            out.append((final, (lifted,) + seq))
    return out


def is_unigonal_pattern(pair: AnticanonicalPairModel, E: Sequence[int], R: Sequence[int]) -> bool:
    """Fixed-part shape L = kE + R: E² = 0, E·D = 0, E·R = 1, R² ∈ {−1, −2}."""
    return (
        pair.dot(E, E) == 0
        and pair.dot(E, pair.D) == 0
        and pair.dot(E, R) == 1
        and pair.dot(R, R) in (-1, -2)
    )


# ---------------------------------------------------------------------------
# degree-two classification


def is_hyperbolic(p: int, q: int, r: int) -> bool:
    return Fraction(1, p) + Fraction(1, q) + Fraction(1, r) < 1


def cusp_charge(p: int, q: int, r: int) -> int:
    return p + q + r


MAX_CUSP_CHARGE = 21


def cusp_family(case_id: int) -> list[tuple[int, int, int]]:
    """Admissible T_{2,q,r} cusps (q ≤ r) for cases 5 and 6."""
    if case_id not in (5, 6):
        return []
    out = []
    for q in range(3, MAX_CUSP_CHARGE):
        if (case_id == 5) != (q == 3):
            continue
        for r in range(q, MAX_CUSP_CHARGE):
            if is_hyperbolic(2, q, r) and cusp_charge(2, q, r) <= MAX_CUSP_CHARGE:
                out.append((2, q, r))
    return out


@dataclass(frozen=True)
class ZeroSurfaceCase:
    case_id: int
    description: str
    pattern: tuple
    l_sim_d: bool = False
    singularity: str | None = None
    cusps: tuple[tuple[int, int, int], ...] = ()

    def cusp_range(self) -> tuple[int, int] | None:
        """Range of r over the admissible cusps, when q is fixed."""
        if not self.cusps:
            return None
        rs = [c[2] for c in self.cusps]
        return min(rs), max(rs)


_CASES = {
    (1, 3): (1, "P^2 with L a line", 9, False, None),
    (1, 1): (2, "degree 1 del Pezzo with L ~ D", 1, True, None),
    (2, 4): (3, "quadric in P^3 with L a hyperplane section", 8, False, None),
    (2, 2): (4, "degree 2 del Pezzo with L ~ D", 2, True, None),
}


def classify_zero_surface(p: NumericalProfile) -> ZeroSurfaceCase:
    key = (p.l2, p.ld)
    if key in _CASES:
        cid, desc, d2, sim, sing = _CASES[key]
        if p.d2 is not None and p.d2 != d2:
            raise PairError(f"profile {p} outside degree-2 classification (expected D^2={d2})")
        return ZeroSurfaceCase(cid, desc, (p.l2, p.ld, d2), sim, sing)
    if key == (2, 0) and p.d2 == -1:
        return ZeroSurfaceCase(5, "double cover of P^2 contracting D to a simple elliptic or cusp singularity",
                               (2, 0, -1), False, "E8~ or T_{2,3,r}", tuple(cusp_family(5)))
    if key == (2, 0) and p.d2 == -2:
        return ZeroSurfaceCase(6, "double cover of the quadric cone contracting D to a simple elliptic or cusp singularity",
                               (2, 0, -2), False, "E7~ or T_{2,q,r}", tuple(cusp_family(6)))
    raise PairError(f"profile {p} outside degree-2 classification")


CASE_PROFILES = {
    1: NumericalProfile(1, 3, 9),
    2: NumericalProfile(1, 1, 1),
    3: NumericalProfile(2, 4, 8),
    4: NumericalProfile(2, 2, 2),
    5: NumericalProfile(2, 0, -1),
    6: NumericalProfile(2, 0, -2),
}


def charge(d2: int, cycle_length: int, cusp: tuple[int, int, int] | None = None) -> int:
    """12 − D² − r(D) for a Type III pair; warns on out-of-range values."""
    if cycle_length < 1:
        raise PairError("cycle length must be positive")
    q = 12 - d2 - cycle_length
    if not 0 <= q <= 24:
        warnings.warn(f"charge {q} outside [0, 24]", ChargeWarning, stacklevel=2)
    if cusp is not None and cusp_charge(*cusp) > MAX_CUSP_CHARGE:
        warnings.warn(f"cusp T{cusp} has charge {cusp_charge(*cusp)} > {MAX_CUSP_CHARGE}", ChargeWarning, stacklevel=2)
    return q


# ---------------------------------------------------------------------------
# pullbacks on resolutions


@dataclass(frozen=True)
class ResolutionConfig:
    exceptional_gram: tuple[tuple[int, ...], ...]
    strict_transform_incidence: tuple[int, ...]
    strict_multiplicity: int

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in r) for r in self.exceptional_gram)
        object.__setattr__(self, "exceptional_gram", g)
        object.__setattr__(self, "strict_transform_incidence", tuple(int(x) for x in self.strict_transform_incidence))
        if len(self.strict_transform_incidence) != len(g):
            raise PairError("incidence length does not match the number of exceptional curves")
        if self.strict_multiplicity < 1:
            raise PairError("strict multiplicity must be positive")


@dataclass(frozen=True)
class PullbackResult:
    coefficients: tuple[Fraction, ...]
    max_coefficient: Fraction
    reciprocal: Fraction | None  # None: not applicable

    def check(self, cfg: ResolutionConfig) -> bool:
        """(π*L)·Eⱼ = 0 for every exceptional curve."""
        g = cfg.exceptional_gram
        m = self.coefficients
        return all(
            sum(m[i] * g[i][j] for i in range(len(m))) + cfg.strict_multiplicity * cfg.strict_transform_incidence[j] == 0
            for j in range(len(m))
        )


def pullback_coefficients(cfg: ResolutionConfig) -> PullbackResult:
    g = cfg.exceptional_gram
    n = len(g)
    if n == 0:
        return PullbackResult((), Fraction(0), None)
    if not linalg.is_positive_definite([[-x for x in r] for r in g]):
        raise PairError("exceptional Gram matrix is not negative definite")
    rhs = [-cfg.strict_multiplicity * c for c in cfg.strict_transform_incidence]
    m = tuple(linalg.solve(linalg.transpose(g), rhs))
    top = max(m)
    return PullbackResult(m, top, 1 / top if top > 0 else None)


def dynkin_chain_config(arms: Sequence[int]) -> list[list[int]]:
    """Gram of a T-shaped tree of (−2)-curves: a long chain with short arms at its end.

    ``arms[0]`` is the main chain length; each further entry is a short arm
    attached to the last vertex of the main chain.
    """
    main, *rest = arms
    n = main + sum(rest)
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(main - 1):
        g[i][i + 1] = g[i + 1][i] = 1
    pos = main
    for a in rest:
        g[main - 1][pos] = g[pos][main - 1] = 1
        for k in range(a - 1):
            g[pos + k][pos + k + 1] = g[pos + k + 1][pos + k] = 1
        pos += a
    return g


# ---------------------------------------------------------------------------
# JSON


def pair_from_json(obj: dict) -> AnticanonicalPairModel:
    try:
        n = int(obj["rank"])
        L = obj["L"]
        D = obj["D"]
    except KeyError as exc:
        raise PairError(f"missing field {exc}") from None
    gram = obj.get("gram")
    if gram is None:
        gram = [[(1 if i == 0 else -1) if i == j else 0 for j in range(n)] for i in range(n)]
    return AnticanonicalPairModel(gram, D, L, obj.get("K"))


def pair_to_json(pair: AnticanonicalPairModel) -> dict:
    return {"rank": pair.rank, "gram": [list(r) for r in pair.gram], "L": list(pair.L), "D": list(pair.D), "K": list(pair.K)}


def resolution_from_json(obj: dict) -> ResolutionConfig:
    return ResolutionConfig(obj["gram"], obj["incidence"], int(obj["mult"]))
