"""Colengths, subquotient lengths via the colon filtration, Hilbert-Kunz
functions, and multiplicity estimation with exact rational arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import ContainmentError, InfiniteLengthError, PreconditionError
from .groebner import standard_monomials
from .ideals import Ideal, ideal_colon


@dataclass(frozen=True, eq=False)
class LengthValue:
    """A module length: a nonnegative integer or the typed infinite value."""

    value: int | None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def __eq__(self, other):
        if isinstance(other, LengthValue):
            return self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(("LengthValue", self.value))

    def __int__(self):
        if self.value is None:
            raise InfiniteLengthError("length is infinite")
        return self.value

    def __repr__(self):
        return f"LengthValue({'inf' if self.value is None else self.value})"


INFINITE = LengthValue(None)


def length_quotient(I: Ideal, order=None) -> LengthValue:
    """λ(R/I): the number of standard monomials, or the infinite value."""
    try:
        return LengthValue(sum(1 for _ in standard_monomials(I, order)))
    except InfiniteLengthError:
        return INFINITE


def length_subquotient(M: Ideal, N: Ideal) -> LengthValue:
    """λ(M/N) by the colon filtration over M's generators.

    With M = N + (g_1, ..., g_s), the value is
    Σ_j λ(R / ((N + (g_1..g_{j-1})) : g_j)); generator-order independent.
    """
    if not M.contains_ideal(N):
        raise ContainmentError("second ideal is not contained in the first")
    ring = M.ring
    total = 0
    prefix = list(N.gens)
    for g in M.gens:
        col = ideal_colon(Ideal(ring, tuple(prefix)), Ideal(ring, (g,)))
        lam = length_quotient(col)
        if not lam.is_finite:
            return INFINITE
        total += lam.value
        prefix.append(g)
    return LengthValue(total)


@dataclass(frozen=True)
class HKSample:
    e: int
    q: int
    colength: int
    normalized: Fraction


@dataclass(frozen=True)
class HKEstimate:
    value: Fraction
    method: str
    samples: tuple
    residuals: tuple | None = None
    error_bound: Fraction | None = None
    secondary: Fraction | None = None
    ratio_trend: str | None = None

    @property
    def value_float(self) -> float:
        return float(self.value)


def hk_function(a: Ideal, e_max: int) -> list:
    """Samples of λ(R/a^[p^e]) for e = 0..e_max with normalized ratios."""
    if e_max < 0:
        raise PreconditionError("e_max must be nonnegative")
    ring = a.ring
    p = ring.characteristic
    d = ring.dimension
    samples = []
    for e in range(e_max + 1):
        q = p ** e
        lam = length_quotient(a.bracket_power(q))
        if not lam.is_finite:
            raise InfiniteLengthError(
                "Hilbert-Kunz function needs an ideal of finite colength")
        samples.append(HKSample(e, q, lam.value, Fraction(lam.value, q ** d)))
    return samples


def _ratio_trend(samples) -> str | None:
    if len(samples) < 2:
        return None
    diffs = [b.normalized - a.normalized for a, b in zip(samples, samples[1:])]
    if all(df == 0 for df in diffs):
        return "constant"
    if all(df >= 0 for df in diffs):
        return "non-decreasing"
    if all(df <= 0 for df in diffs):
        return "non-increasing"
    return "mixed"


def _fit_leading(samples, d):
    """Exact least squares of colength ~ A·q^d + B·q^(d-1)."""
    cols = [(Fraction(s.q) ** d, Fraction(s.q) ** (d - 1)) for s in samples]
    ys = [Fraction(s.colength) for s in samples]
    a11 = sum(c[0] * c[0] for c in cols)
    a12 = sum(c[0] * c[1] for c in cols)
    a22 = sum(c[1] * c[1] for c in cols)
    b1 = sum(c[0] * y for c, y in zip(cols, ys))
    b2 = sum(c[1] * y for c, y in zip(cols, ys))
    det = a11 * a22 - a12 * a12
    if det == 0:
        raise PreconditionError("degenerate fit: need at least two distinct q")
    lead = (b1 * a22 - b2 * a12) / det
    second = (a11 * b2 - a12 * b1) / det
    residuals = tuple(lead * c[0] + second * c[1] - y for c, y in zip(cols, ys))
    return lead, second, residuals


_METHOD_ALIASES = {
    "auto": "auto",
    "exact": "exact",
    "monomial-exact": "exact",
    "regular-exact": "exact",
    "last": "last-sample",
    "last-sample": "last-sample",
    "fit": "linear-fit",
    "linear-fit": "linear-fit",
}


def ehk_estimate(a: Ideal, e_max: int = 3, method: str = "auto") -> HKEstimate:
    """Hilbert-Kunz multiplicity of a finite-colength ideal.

    Exact shortcuts: a monomial ideal in a relation-free ring has
    e_HK = λ(R/a) (staircases dilate exactly), and in fact any
    finite-colength ideal of a relation-free ring does (the Frobenius is
    flat, so λ(R/a^[q]) = q^d λ(R/a)).  Rings with relations are sampled
    along e = 0..e_max and extrapolated.
    """
    try:
        mode = _METHOD_ALIASES[method]
    except KeyError:
        raise PreconditionError(f"unknown estimation method {method!r}")
    ring = a.ring
    relation_free = not ring.relations
    monomial = relation_free and all(g.is_monomial() for g in a.gens)

    if mode == "exact" and not relation_free:
        raise PreconditionError(
            "exact method requires a relation-free ring; use fit or last")
    if mode == "auto":
        mode = "exact" if relation_free else "linear-fit"

    if mode == "exact":
        lam = length_quotient(a)
        if not lam.is_finite:
            raise InfiniteLengthError("multiplicity needs finite colength")
        sample = HKSample(0, 1, lam.value, Fraction(lam.value))
        return HKEstimate(value=Fraction(lam.value),
                          method="monomial-exact" if monomial else "regular-exact",
                          samples=(sample,),
                          error_bound=Fraction(0))

    if mode == "linear-fit" and e_max < 1:
        raise PreconditionError("fit methods need e_max >= 1")
    samples = tuple(hk_function(a, e_max))
    trend = _ratio_trend(samples)
    if mode == "last-sample":
        bound = None
        if len(samples) >= 2:
            bound = abs(samples[-1].normalized - samples[-2].normalized)
        return HKEstimate(value=samples[-1].normalized, method="last-sample",
                          samples=samples, error_bound=bound, ratio_trend=trend)
    lead, second, residuals = _fit_leading(samples, ring.dimension)
    return HKEstimate(value=lead, method="linear-fit", samples=samples,
                      residuals=residuals, secondary=second, ratio_trend=trend)
