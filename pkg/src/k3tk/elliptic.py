"""Elliptic invariants of three conics x0x2 − αᵢx1² through two fixed points."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .forms import format_rational, parse_rational

INFINITE = "infinite"


class EllipticError(ArithmeticError):
    pass


@dataclass(frozen=True)
class ConicTriple:
    alpha: tuple[Fraction, Fraction, Fraction]

    def __init__(self, alpha: Sequence):
        vals = tuple(parse_rational(a) for a in alpha)
        if len(vals) != 3:
            raise ValueError("exactly three roots are needed")
        object.__setattr__(self, "alpha", vals)

    def symmetric(self) -> tuple[Fraction, Fraction, Fraction]:
        a, b, c = self.alpha
        return a + b + c, a * b + b * c + c * a, a * b * c


@dataclass(frozen=True)
class WeierstrassData:
    A: Fraction
    B: Fraction

    @property
    def discriminant(self) -> Fraction:
        return 4 * self.A ** 3 + 27 * self.B ** 2


@dataclass(frozen=True)
class EllipticInvariants:
    lam: Fraction | str
    discriminant: Fraction
    j: Fraction | str
    degenerate: bool
    A: Fraction
    B: Fraction

    def to_json(self, approx: bool = False) -> dict:
        def fmt(x):
            return x if isinstance(x, str) else format_rational(x)

        out = {
            "A": fmt(self.A),
            "B": fmt(self.B),
            "discriminant": fmt(self.discriminant),
            "lambda": fmt(self.lam),
            "j": fmt(self.j),
            "degenerate": self.degenerate,
            "j_formula": "1728*4A^3/(4A^3+27B^2)",
            "j_formula_rejected": "1728*4A^3/(27B^2): undefined when B = 0 and disagrees with the cross-ratio j",
        }
        if approx:
            out["approx"] = {
                "note": "floating point, not authoritative",
                "j": None if isinstance(self.j, str) else float(self.j),
                "discriminant": float(self.discriminant),
            }
        return out


def weierstrass_from_roots(t: ConicTriple) -> WeierstrassData:
    """Depressed cubic of (x − α₁)(x − α₂)(x − α₃): A = σ₂ − σ₁²/3, B = −σ₃ + σ₁σ₂/3 − 2σ₁³/27."""
    s1, s2, s3 = t.symmetric()
    return WeierstrassData(s2 - s1 ** 2 / 3, -s3 + s1 * s2 / 3 - 2 * s1 ** 3 / 27)


def cross_ratio(t: ConicTriple) -> Fraction | str:
    a1, a2, a3 = t.alpha
    if a2 == a3:
        return INFINITE
    return (a1 - a3) / (a2 - a3)


def j_from_lambda(lam: Fraction | str) -> Fraction | str:
    if lam == INFINITE or lam in (0, 1):
        return INFINITE
    return 256 * (lam ** 2 - lam + 1) ** 3 / (lam ** 2 * (lam - 1) ** 2)


def j_from_weierstrass(w: WeierstrassData) -> Fraction | str:
    delta = w.discriminant
    if delta == 0:
        return INFINITE
    return 1728 * 4 * w.A ** 3 / delta


def root_discriminant(t: ConicTriple) -> Fraction:
    a1, a2, a3 = t.alpha
    return -((a1 - a2) * (a2 - a3) * (a3 - a1)) ** 2


def invariants(t: ConicTriple) -> EllipticInvariants:
    w = weierstrass_from_roots(t)
    delta = w.discriminant
    if delta != root_discriminant(t):
        raise EllipticError("discriminant disagrees with the product of root differences")
    lam = cross_ratio(t)
    j1 = j_from_lambda(lam)
    j2 = j_from_weierstrass(w)
    if j1 != j2:
        raise EllipticError(f"j from cross-ratio {j1} differs from Weierstrass j {j2}")
    return EllipticInvariants(lam, delta, j1, delta == 0, w.A, w.B)


def triple_from_json(obj: dict) -> ConicTriple:
    try:
        return ConicTriple(obj["alpha"])
    except KeyError:
        raise ValueError("expected {'alpha': [a1, a2, a3]}") from None
