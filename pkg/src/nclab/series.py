"""Exact truncated power series over rationals and the moment transforms.

Coefficients are `fractions.Fraction`; nothing is ever rounded.  A series
carries an explicit truncation order; arithmetic results carry the minimum
order of their inputs, and reading a coefficient beyond the order is an
error rather than a silent zero.

The moment calculus assumes the standing normalization: the first moment
is 1.  Inputs violating it raise `NormalizationError`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .partitions import enumerate_nc


class NormalizationError(ValueError):
    """First moment or constant coefficient differs from the required 1."""


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("float coefficients are not exact; pass Fraction, int or 'p/q'")
    return Fraction(x)


@dataclass(frozen=True, repr=False)
class TruncatedSeries:
    """A power series known exactly up to z**order."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a series needs at least its constant term")

    @classmethod
    def of(cls, *coeffs) -> TruncatedSeries:
        return cls(tuple(_frac(c) for c in coeffs))

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> TruncatedSeries:
        return cls(tuple(_frac(c) for c in coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        if k < 0:
            raise IndexError("coefficient index must be non-negative")
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> TruncatedSeries:
        if order > self.order:
            raise ValueError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1])

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order)
        return TruncatedSeries(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs))[: n + 1]
        )

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order)
        return TruncatedSeries(
            tuple(a - b for a, b in zip(self.coeffs, other.coeffs))[: n + 1]
        )

    def __mul__(self, other: TruncatedSeries) -> TruncatedSeries:
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(tuple(out))

    def reciprocal(self) -> TruncatedSeries:
        """Multiplicative inverse up to the truncation order."""
        f = self.coeffs
        if f[0] == 0:
            raise ValueError("series with zero constant term has no reciprocal")
        n = self.order
        g = [1 / f[0]] + [Fraction(0)] * n
        for k in range(1, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += f[j] * g[k - j]
            g[k] = -acc / f[0]
        return TruncatedSeries(tuple(g))

    def compose(self, inner: TruncatedSeries) -> TruncatedSeries:
        """self(inner(z)); the inner series must have zero constant term."""
        if inner.coeffs[0] != 0:
            raise ValueError("composition needs an inner series with zero constant term")
        n = min(self.order, inner.order)
        return TruncatedSeries(tuple(_compose_coeffs(self.coeffs, inner.coeffs, n)))

    def comp_inverse(self) -> TruncatedSeries:
        """Compositional inverse g with self(g(z)) = z up to the order.

        Needs zero constant term and nonzero linear coefficient; solved
        coefficient by coefficient, exactly.
        """
        f = self.coeffs
        if f[0] != 0:
            raise ValueError("compositional inverse needs zero constant term")
        if self.order < 1 or f[1] == 0:
            raise ValueError("compositional inverse needs a nonzero linear coefficient")
        n = self.order
        g = [Fraction(0)] * (n + 1)
        g[1] = 1 / f[1]
        for k in range(2, n + 1):
            # with g_k still 0, the z^k coefficient of f(g) is off by f_1 * g_k
            h = _compose_coeffs(f[: k + 1], tuple(g[: k + 1]), k)
            g[k] = -h[k] / f[1]
        return TruncatedSeries(tuple(g))

    def __str__(self) -> str:
        return ", ".join(str(c) for c in self.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries.of({', '.join(repr(str(c)) for c in self.coeffs)})"

    def to_json_dict(self) -> dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}


def _compose_coeffs(
    outer: Sequence[Fraction], inner: Sequence[Fraction], n: int
) -> list[Fraction]:
    """Coefficients 0..n of outer(inner(z)), inner constant term zero."""
    res = [Fraction(0)] * (n + 1)
    res[0] = outer[n] if n < len(outer) else Fraction(0)
    for k in range(n - 1, -1, -1):
        # res <- res * inner + outer[k], truncated at n
        new = [Fraction(0)] * (n + 1)
        for i, a in enumerate(res):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                if inner[j] != 0:
                    new[i + j] += a * inner[j]
        new[0] += outer[k] if k < len(outer) else Fraction(0)
        res = new
    return res


@dataclass(frozen=True, repr=False)
class MomentSequence:
    """Moments m_1..m_depth of a normalized variable (m_1 = 1)."""

    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("a moment sequence needs depth at least 1")
        if self.values[0] != 1:
            raise NormalizationError(f"first moment must be 1, got {self.values[0]}")

    @classmethod
    def of(cls, values: Iterable) -> MomentSequence:
        return cls(tuple(_frac(v) for v in values))

    @property
    def depth(self) -> int:
        return len(self.values)

    def moment(self, k: int) -> Fraction:
        if not 1 <= k <= self.depth:
            raise IndexError(f"moment index {k} outside 1..{self.depth}")
        return self.values[k - 1]

    def __str__(self) -> str:
        return ", ".join(str(v) for v in self.values)

    def __repr__(self) -> str:
        return f"MomentSequence.of([{', '.join(repr(str(v)) for v in self.values)}])"


def moment_series(m: MomentSequence) -> TruncatedSeries:
    """The series m_1 z + m_2 z^2 + ... at order depth."""
    return TruncatedSeries((Fraction(0),) + m.values)


def s_transform(m: MomentSequence) -> TruncatedSeries:
    """(1+z)/z times the compositional inverse of the moment series,
    truncated at order depth - 1.  The constant term is always 1."""
    inv = moment_series(m).comp_inverse()
    shifted = inv.coeffs[1:]  # divide by z
    n = len(shifted)
    out = list(shifted)
    for k in range(1, n):
        out[k] += shifted[k - 1]
    return TruncatedSeries(tuple(out))


def t_transform(m: MomentSequence) -> TruncatedSeries:
    """Reciprocal of the s-transform; its constant coefficient is 1."""
    return s_transform(m).reciprocal()


def moments_from_t(t: Sequence, n_max: int) -> MomentSequence:
    """Recover moments 1..n_max from reciprocal-s coefficients t_0..t_{n_max-1}.

    m_n sums, over the non-crossing partitions of {1..n}, the product of
    t_{|U|-1} over outer blocks U and (t_{|V|-1} + t_{|V|}) over inner
    blocks V.  Inverse of `t_transform`.
    """
    ts = [_frac(x) for x in t]
    if not ts or ts[0] != 1:
        raise NormalizationError("t_0 must be 1")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if len(ts) < n_max:
        raise ValueError(f"need coefficients t_0..t_{n_max - 1}, got {len(ts)}")
    vals = []
    for n in range(1, n_max + 1):
        total = Fraction(0)
        for alpha in enumerate_nc(n):
            inner = alpha.inner_indices
            term = Fraction(1)
            for i, blk in enumerate(alpha.blocks):
                s = len(blk)
                term *= ts[s - 1] + ts[s] if i in inner else ts[s - 1]
                if term == 0:
                    break
            total += term
        vals.append(total)
    return MomentSequence(tuple(vals))


def moments_from_cumulants(kappa: Sequence, n_max: int) -> MomentSequence:
    """m_n as the sum over non-crossing partitions of the per-block
    cumulant products."""
    ks = [_frac(x) for x in kappa]
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if len(ks) < n_max:
        raise ValueError(f"need cumulants 1..{n_max}, got {len(ks)}")
    vals = []
    for n in range(1, n_max + 1):
        total = Fraction(0)
        for beta in enumerate_nc(n):
            term = Fraction(1)
            for w in beta.blocks:
                term *= ks[len(w) - 1]
                if term == 0:
                    break
            total += term
        vals.append(total)
    return MomentSequence(tuple(vals))


def cumulants_from_moments(m: MomentSequence) -> tuple[Fraction, ...]:
    """Free cumulants 1..depth, solved recursively: the n-th cumulant is
    the n-th moment minus the contributions of all non-full partitions.
    Two-sided inverse of `moments_from_cumulants`."""
    kappa: list[Fraction] = []
    for n in range(1, m.depth + 1):
        rest = Fraction(0)
        for beta in enumerate_nc(n):
            if len(beta.blocks) == 1:
                continue
            term = Fraction(1)
            for w in beta.blocks:
                term *= kappa[len(w) - 1]
                if term == 0:
                    break
            rest += term
        kappa.append(m.moment(n) - rest)
    return tuple(kappa)


def cumulants_from_t(t: Sequence, n_max: int) -> tuple[Fraction, ...]:
    """Free cumulants straight from reciprocal-s coefficients: the n-th
    cumulant sums the products of t_{|V|} over the non-crossing partitions
    of {1..n-1}; the first cumulant is 1.  Agrees with
    `cumulants_from_moments` composed with `moments_from_t`."""
    ts = [_frac(x) for x in t]
    if not ts or ts[0] != 1:
        raise NormalizationError("t_0 must be 1")
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if len(ts) < n_max:
        raise ValueError(f"need coefficients t_0..t_{n_max - 1}, got {len(ts)}")
    kappa = [Fraction(1)]
    for n in range(2, n_max + 1):
        total = Fraction(0)
        for gamma in enumerate_nc(n - 1):
            term = Fraction(1)
            for v in gamma.blocks:
                term *= ts[len(v)]
                if term == 0:
                    break
            total += term
        kappa.append(total)
    return tuple(kappa)
