"""Sparse homogeneous forms with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]


class FormError(ValueError):
    pass


def parse_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise FormError(f"not a rational number: {x!r}") from None
    raise FormError(f"rationals must be given as int or 'p/q' strings, got {x!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Form:
    """Homogeneous polynomial as a map exponent tuple → nonzero Fraction."""

    nvars = 0
    __slots__ = ("degree", "_terms")

    def __init__(self, terms: Mapping[Sequence[int], object] | Iterable = (), degree: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, Fraction] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.nvars or any(e < 0 for e in exp):
                raise FormError(f"bad exponent {exp} for {self.nvars} variables")
            c = parse_rational(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        degs = {sum(e) for e in clean}
        if len(degs) > 1:
            raise FormError(f"form is not homogeneous: degrees {sorted(degs)}")
        if degree is None:
            if not degs:
                raise FormError("degree of the zero form must be given")
            degree = degs.pop()
        elif degs and degs != {degree}:
            raise FormError(f"terms have degree {degs.pop()}, expected {degree}")
        self.degree = int(degree)
        self._terms = clean

    # -- construction --------------------------------------------------
    @classmethod
    def var(cls, i: int):
        e = [0] * cls.nvars
        e[i] = 1
        return cls({tuple(e): 1})

    @classmethod
    def variables(cls):
        return tuple(cls.var(i) for i in range(cls.nvars))

    @classmethod
    def monomial(cls, exp: Sequence[int], coef=1):
        return cls({tuple(exp): coef})

    # -- access ----------------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def support(self) -> list[Exponent]:
        return sorted(self._terms)

    def coefficient(self, exp: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return type(self) is type(other) and self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.degree, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"{type(self).__name__}(0)"
        parts = []
        for exp in sorted(self._terms, reverse=True):
            c = self._terms[exp]
            mon = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(exp) if e)
            parts.append(f"{format_rational(c)}*{mon}" if mon else format_rational(c))
        return f"{type(self).__name__}({' + '.join(parts)})"

    # -- arithmetic ------------------------------------------------------
    def _same(self, other) -> None:
        if type(other) is not type(self):
            raise FormError("forms live in different rings")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        if self.degree != other.degree and not (self.is_zero() or other.is_zero()):
            raise FormError("cannot add forms of different degrees")
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, Fraction(0)) + c
        deg = self.degree if not self.is_zero() else other.degree
        return type(self)(t, deg)

    __radd__ = __add__

    def __neg__(self):
        return type(self)({e: -c for e, c in self._terms.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return type(self)({e: c * other for e, c in self._terms.items()}, self.degree)
        self._same(other)
        t: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, Fraction(0)) + c1 * c2
        return type(self)(t, self.degree + other.degree)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise FormError("negative power")
        out = type(self)({(0,) * self.nvars: 1})
        for _ in range(k):
            out = out * self
        return out

    # -- transformations -------------------------------------------------
    def substitute(self, matrix: Sequence[Sequence]) -> "Form":
        """Linear change of variables xᵢ ↦ Σⱼ matrix[i][j]·xⱼ."""
        n = self.nvars
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise FormError(f"frame must be a {n}×{n} matrix")
        images = [type(self)({tuple(int(i == j) for i in range(n)): parse_rational(c) for j, c in enumerate(row)}, 1)
                  for row in matrix]
        powers = [[type(self)({(0,) * n: 1})] for _ in range(n)]
        for i in range(n):
            for _ in range(self.degree):
                powers[i].append(powers[i][-1] * images[i])
        out = type(self)({}, self.degree)
        for exp, c in self._terms.items():
            term = type(self)({(0,) * n: c})
            for i, e in enumerate(exp):
                if e:
                    term = term * powers[i][e]
            out = out + term
        return out

    def permute(self, perm: Sequence[int]) -> "Form":
        """Rename variable i to variable perm[i]."""
        out = {}
        for exp, c in self._terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(exp):
                new[perm[i]] = e
            out[tuple(new)] = c
        return type(self)(out, self.degree)

    def partial(self, i: int) -> "Form":
        out = {}
        for exp, c in self._terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                out[tuple(e)] = c * exp[i]
        return type(self)(out, max(self.degree - 1, 0))

    def weight_part(self, lam: Sequence[int], w: int) -> "Form":
        """Sum of the terms whose λ-weight equals w."""
        return type(self)(
            {e: c for e, c in self._terms.items() if sum(a * b for a, b in zip(lam, e)) == w}, self.degree
        )

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "terms": [{"exp": list(e), "coef": format_rational(c)} for e, c in sorted(self._terms.items())],
        }

    @classmethod
    def from_json(cls, obj: dict):
        try:
            terms = [(t["exp"], t["coef"]) for t in obj["terms"]]
        except (KeyError, TypeError):
            raise FormError("form JSON needs 'terms' with 'exp' and 'coef'") from None
        return cls(terms, obj.get("degree"))


class TernaryForm(Form):
    nvars = 3
    __slots__ = ()


class BinaryForm(Form):
    nvars = 2
    __slots__ = ()


def all_monomials(nvars: int, degree: int) -> list[Exponent]:
    return [e for e in product(range(degree + 1), repeat=nvars) if sum(e) == degree]
