"""Integer lattices: exact Gram arithmetic, root enumeration, ADE identification.

Sign convention: root lattices are negative definite and roots have norm −2.
A positive definite Gram can be brought into this convention with
:func:`IntegerLattice.negative_definite`, which records the flip.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, isqrt
from typing import Iterable, Sequence

from . import linalg
from .linalg import LinAlgError

Vector = tuple[int, ...]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class IntegerLattice:
    gram: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    negated: bool = False

    def __post_init__(self):
        g = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square and nonempty")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
            raise LatticeError("Gram matrix is not symmetric")
        if self.labels is not None and len(self.labels) != n:
            raise LatticeError("labels do not match rank")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def is_negative_definite(self) -> bool:
        return linalg.is_positive_definite([[-x for x in row] for row in self.gram])

    def negative_definite(self) -> "IntegerLattice":
        """Return a negative definite copy, negating a positive definite Gram."""
        if self.is_negative_definite():
            return self
        if linalg.is_positive_definite(self.gram):
            neg = tuple(tuple(-x for x in row) for row in self.gram)
            return IntegerLattice(neg, self.labels, negated=not self.negated)
        raise LatticeError("lattice is indefinite")

    def determinant(self) -> int:
        return linalg.det(self.gram)

    def transformed(self, basis: Sequence[Sequence[int]]) -> "IntegerLattice":
        """Lattice spanned by the rows of ``basis`` (in current coordinates)."""
        return IntegerLattice(linalg.congruence(basis, self.gram))


def inner(lat: IntegerLattice, u: Sequence[int], v: Sequence[int]) -> int:
    n = lat.rank
    if len(u) != n or len(v) != n:
        raise LatticeError(f"vector length does not match rank {n}")
    g = lat.gram
    return sum(u[i] * sum(g[i][j] * v[j] for j in range(n) if v[j]) for i in range(n) if u[i])


# ---------------------------------------------------------------------------
# standard Grams

_LABEL = re.compile(r"^([ADE])(\d+)$")


def ade_edges(kind: str, n: int) -> list[tuple[int, int]]:
    """Dynkin edges in Bourbaki numbering (0-based)."""
    if kind == "A" and n >= 1:
        return [(i, i + 1) for i in range(n - 1)]
    if kind == "D" and n >= 4:
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if kind == "E" and n in (6, 7, 8):
        chain = [0] + list(range(2, n))
        return [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)] + [(1, 3)]
    raise LatticeError(f"unsupported root system {kind}{n}")


def parse_ade(label: str) -> tuple[str, int]:
    m = _LABEL.match(label.strip())
    if not m:
        raise LatticeError(f"not an ADE label: {label!r}")
    kind, n = m.group(1), int(m.group(2))
    ade_edges(kind, n)
    return kind, n


def ade_gram(label: str) -> list[list[int]]:
    """Negative definite Gram of the root lattice with the given label."""
    kind, n = parse_ade(label)
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in ade_edges(kind, n):
        g[a][b] = g[b][a] = 1
    return g


def block_gram(label: str) -> list[list[int]]:
    label = label.strip()
    if label == "U":
        return [[0, 1], [1, 0]]
    if re.fullmatch(r"-\d+", label):
        return [[int(label)]]
    return ade_gram(label)


def direct_sum(blocks: Iterable[Sequence[Sequence[int]]]) -> list[list[int]]:
    blocks = [list(map(list, b)) for b in blocks]
    n = sum(len(b) for b in blocks)
    g = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                g[off + i][off + j] = x
        off += len(b)
    return g


def from_blocks(labels: Sequence[str]) -> IntegerLattice:
    """Orthogonal direct sum, e.g. ``["-2", "E8", "E8", "U", "U"]``."""
    names: list[str] = []
    grams = []
    for lab in labels:
        g = block_gram(lab)
        grams.append(g)
        names.extend(f"{lab}.{i}" for i in range(len(g)))
    return IntegerLattice(direct_sum(grams), tuple(names))


# ---------------------------------------------------------------------------
# short vectors


def _short_vectors(q: Sequence[Sequence[int]], target: int) -> list[Vector]:
    """All x with xᵀ q x == target for a positive definite integer q."""
    mu, d = linalg.ldl(q)
    n = len(q)
    x = [0] * n
    out: list[Vector] = []

    def rec(i: int, budget: Fraction) -> None:
        if i < 0:
            if budget == 0:
                out.append(tuple(x))
            return
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n) if x[j]), Fraction(0))
        di = d[i]
        t = budget / di
        r = isqrt(floor(t)) + 1
        lo = floor(-c) - r
        for xi in range(lo, lo + 2 * r + 2):
            y = xi + c
            v = di * y * y
            if v <= budget:
                x[i] = xi
                rec(i - 1, budget - v)
        x[i] = 0

    rec(n - 1, Fraction(target))
    return [v for v in out if any(v)]


def enumerate_roots(lat: IntegerLattice) -> frozenset[Vector]:
    """All vectors of norm −2 in a negative definite lattice."""
    if not lat.is_negative_definite():
        raise LatticeError("root enumeration requires a negative definite lattice")
    q = [[-x for x in row] for row in lat.gram]
    t, qr = linalg.lll_gram(q)
    n = lat.rank
    roots = set()
    for y in _short_vectors(qr, 2):
        roots.add(tuple(sum(y[i] * t[i][j] for i in range(n)) for j in range(n)))
    return frozenset(roots)


# ---------------------------------------------------------------------------
# ADE identification

ROOT_COUNTS = {"E6": 72, "E7": 126, "E8": 240}


def ade_root_count(label: str) -> int:
    kind, n = parse_ade(label)
    if kind == "A":
        return n * (n + 1)
    if kind == "D":
        return 2 * n * (n - 1)
    return ROOT_COUNTS[label]


def _component_order(label: str) -> tuple[int, int]:
    kind, n = parse_ade(label)
    return ("EDA".index(kind), -n)


@dataclass(frozen=True)
class RootSystemReport:
    components: tuple[str, ...]
    root_count: int
    simple_roots: tuple[Vector, ...] = field(default=(), compare=False, repr=False)

    @property
    def rank(self) -> int:
        return sum(parse_ade(c)[1] for c in self.components)

    def label(self) -> str:
        """Compact name such as ``2E8+A1``; ``0`` for the empty system."""
        if not self.components:
            return "0"
        counts = Counter(self.components)
        parts = []
        for lab in sorted(counts, key=_component_order):
            k = counts[lab]
            parts.append(lab if k == 1 else f"{k}{lab}")
        return "+".join(parts)

    def multiset(self) -> Counter:
        return Counter(self.components)


def _classify_tree(nodes: list[int], adj: dict[int, set[int]]) -> str:
    n = len(nodes)
    edges = sum(len(adj[v]) for v in nodes) // 2
    if edges != n - 1:
        raise LatticeError("Dynkin graph has a cycle: not an ADE system")
    branch = [v for v in nodes if len(adj[v]) >= 3]
    if not branch:
        if any(len(adj[v]) > 2 for v in nodes):
            raise LatticeError("non-ADE Dynkin graph")
        return f"A{n}"
    if len(branch) > 1 or len(adj[branch[0]]) != 3:
        raise LatticeError("non-ADE Dynkin graph")
    b = branch[0]
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return f"D{n}"
    named = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}
    if tuple(arms) in named:
        return named[tuple(arms)]
    raise LatticeError(f"non-ADE Dynkin graph with arms {arms}")


def identify_root_system(lat: IntegerLattice, roots: Iterable[Vector] | None = None) -> RootSystemReport:
    lat = lat.negative_definite()
    roots = list(enumerate_roots(lat) if roots is None else roots)
    if not roots:
        return RootSystemReport((), 0)
    n = lat.rank
    big = 2 * max(abs(c) for r in roots for c in r) + 1
    weights = [big ** (n - 1 - i) for i in range(n)]
    positive = [r for r in roots if sum(w * c for w, c in zip(weights, r)) > 0]
    pos_set = set(positive)
    decomposable = set()
    for i, a in enumerate(positive):
        for b in positive[i + 1 :]:
            s = tuple(x + y for x, y in zip(a, b))
            if s in pos_set:
                decomposable.add(s)
    simple = sorted(r for r in positive if r not in decomposable)

    adj: dict[int, set[int]] = {i: set() for i in range(len(simple))}
    for i in range(len(simple)):
        for j in range(i + 1, len(simple)):
            p = inner(lat, simple[i], simple[j])
            if p == 0:
                continue
            if p != 1:
                raise LatticeError("simple roots pair to a value outside {0, 1}: not simply laced")
            adj[i].add(j)
            adj[j].add(i)

    seen: set[int] = set()
    comps = []
    for v in adj:
        if v in seen:
            continue
        stack, nodes = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            nodes.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(_classify_tree(nodes, adj))
    comps.sort(key=_component_order)
    expected = sum(ade_root_count(c) for c in comps)
    if expected != len(roots):
        raise LatticeError(f"root count {len(roots)} does not match {comps} ({expected})")
    return RootSystemReport(tuple(comps), len(roots), tuple(simple))


def highest_root_coefficients(label: str) -> tuple[int, ...]:
    """Simple-root coefficients of the highest root, sorted ascending."""
    lat = IntegerLattice(ade_gram(label))
    roots = enumerate_roots(lat)
    positive = [r for r in roots if all(c >= 0 for c in r)]
    top = max(positive, key=sum)
    return tuple(sorted(top))


WP_LABELS = ("E7", "E8")


def wp_moduli_signature(label: str, pairs: bool = False) -> tuple[int, ...]:
    """Weights of (E ⊗ R)/W(R) as a weighted projective space.

    The weights are 1 followed by the highest-root coefficients.  With
    ``pairs=True`` an extra weight 1 is prepended, which accounts for the
    marked section in the moduli of pairs.
    """
    if label not in WP_LABELS:
        raise LatticeError(f"weighted projective signature only for {', '.join(WP_LABELS)}, not {label!r}")
    sig = (1,) + highest_root_coefficients(label)
    return (1,) + sig if pairs else sig


# ---------------------------------------------------------------------------
# isotropic quotients


def _solve_integral(rows: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    """Integer coefficients c with Σ c_i rows_i = v (rows linearly independent)."""
    a = linalg.transpose(rows)  # n × r
    r = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(a, v)]
    piv_cols = []
    row = 0
    for col in range(r):
        p = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
        if p is None:
            continue
        m[row], m[p] = m[p], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for i in range(len(m)):
            if i != row and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[row])]
        piv_cols.append(col)
        row += 1
    if any(m[i][r] != 0 for i in range(row, len(m))):
        raise LatticeError("vector is not in the span")
    sol = [Fraction(0)] * r
    for i, col in enumerate(piv_cols):
        sol[col] = m[i][r]
    if any(s.denominator != 1 for s in sol):
        raise LatticeError("vector is not in the lattice")
    return [int(s) for s in sol]


def isotropic_quotient(lat: IntegerLattice, e1: Sequence[int], e2: Sequence[int]) -> IntegerLattice:
    """Induced form on E⊥/E for a primitive isotropic plane E = ⟨e1, e2⟩."""
    n = lat.rank
    e1, e2 = list(e1), list(e2)
    if len(e1) != n or len(e2) != n:
        raise LatticeError("vector length does not match rank")
    for e in (e1, e2):
        if linalg.gcd_vector(e) != 1:
            raise LatticeError("isotropic vectors must be primitive")
    if inner(lat, e1, e1) or inner(lat, e2, e2) or inner(lat, e1, e2):
        raise LatticeError("e1, e2 do not span an isotropic plane")
    pairing = [linalg.matvec(lat.gram, e1), linalg.matvec(lat.gram, e2)]
    perp = linalg.integer_kernel(pairing)
    if len(perp) != n - 2:
        raise LatticeError("e1, e2 are linearly dependent")
    c1 = _solve_integral(perp, e1)
    c2 = _solve_integral(perp, e2)
    try:
        m = linalg.complete_basis([c1, c2], len(perp))
    except LinAlgError as exc:
        raise LatticeError(f"isotropic plane is not primitive: {exc}") from None
    basis = linalg.matmul(m[2:], perp)
    q = linalg.congruence(basis, lat.gram)
    neg = [[-x for x in row] for row in q]
    if not linalg.is_positive_definite(neg):
        raise LatticeError("quotient is not negative definite")
    _, reduced = linalg.lll_gram(neg)
    return IntegerLattice([[-x for x in row] for row in reduced])


def standard_isotropic_pair(labels: Sequence[str]) -> tuple[list[int], list[int]]:
    """First basis vector of each of the first two ``U`` blocks."""
    pos, vecs = 0, []
    n = sum(len(block_gram(lab)) for lab in labels)
    for lab in labels:
        size = len(block_gram(lab))
        if lab.strip() == "U" and len(vecs) < 2:
            v = [0] * n
            v[pos] = 1
            vecs.append(v)
        pos += size
    if len(vecs) < 2:
        raise LatticeError("need two hyperbolic planes")
    return vecs[0], vecs[1]


# ---------------------------------------------------------------------------
# JSON


def lattice_from_json(obj: dict) -> IntegerLattice:
    if "blocks" in obj:
        return from_blocks(obj["blocks"])
    try:
        gram = obj["gram"]
    except KeyError:
        raise LatticeError("lattice JSON needs 'gram' or 'blocks'") from None
    if "rank" in obj and obj["rank"] != len(gram):
        raise LatticeError("rank does not match Gram size")
    labels = tuple(obj["labels"]) if obj.get("labels") else None
    return IntegerLattice(gram, labels)


def lattice_to_json(lat: IntegerLattice) -> dict:
    out = {"rank": lat.rank, "gram": [list(r) for r in lat.gram]}
    if lat.labels:
        out["labels"] = list(lat.labels)
    return out
