"""Sparse integer polynomials in the coefficient variables t1, t2, ...

The variable t0 is never materialized: it is the constant 1 everywhere.
Terms are kept in a fixed order (total weight sum(i * e_i) descending,
then lexicographic with higher indices first), which reproduces the
conventional way these moment polynomials are written, e.g.

    t3 + 3*t2*t1 + t1^3 + 4*t2 + 6*t1^2 + 6*t1 + 1

The same moment polynomial is computed by four routes that must agree:
a sum over linked partitions, a sum over endpoint-refinement pairs, a
factored sum over single partitions, and substitution of the cumulant
polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .linked import enumerate_ncl
from .partitions import (
    Partition,
    classify_blocks,
    endpoint_refinements,
    enumerate_nc,
    is_noncrossing,
)
from .series import _frac


@dataclass(frozen=True, repr=False)
class Monomial:
    """A product of powers of t-variables, stored sparsely.

    ``exps`` holds (index, exponent) pairs with indices >= 1 ascending and
    exponents positive.
    """

    exps: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, mapping: Mapping[int, int]) -> Monomial:
        items = []
        for i, e in sorted(mapping.items()):
            if e == 0:
                continue
            if i < 1 or e < 0:
                raise ValueError(f"bad variable power t{i}^{e}")
            items.append((i, e))
        return cls(tuple(items))

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def weight(self) -> int:
        return sum(i * e for i, e in self.exps)

    def __mul__(self, other: Monomial) -> Monomial:
        merged: dict[int, int] = dict(self.exps)
        for i, e in other.exps:
            merged[i] = merged.get(i, 0) + e
        return Monomial(tuple(sorted(merged.items())))

    def __str__(self) -> str:
        if not self.exps:
            return "1"
        return "*".join(
            f"t{i}" if e == 1 else f"t{i}^{e}"
            for i, e in sorted(self.exps, reverse=True)
        )

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"


_MONO_ONE = Monomial(())


def _term_key(m: Monomial) -> tuple:
    return (m.weight, tuple(sorted(m.exps, reverse=True)))


def _mono_from_sizes(indices: Iterable[int]) -> Monomial:
    counts: dict[int, int] = {}
    for i in indices:
        if i >= 1:  # index 0 is the constant 1
            counts[i] = counts.get(i, 0) + 1
    return Monomial(tuple(sorted(counts.items())))


@dataclass(frozen=True, repr=False)
class Polynomial:
    """Integer-coefficient polynomial in t1, t2, ...; terms canonical."""

    terms: tuple[tuple[Monomial, int], ...]

    @classmethod
    def _from_dict(cls, d: Mapping[Monomial, int]) -> Polynomial:
        items = [(m, c) for m, c in d.items() if c != 0]
        items.sort(key=lambda mc: _term_key(mc[0]), reverse=True)
        return cls(tuple(items))

    @classmethod
    def zero(cls) -> Polynomial:
        return cls(())

    @classmethod
    def constant(cls, c: int) -> Polynomial:
        return cls._from_dict({_MONO_ONE: c})

    @classmethod
    def one(cls) -> Polynomial:
        return cls.constant(1)

    @classmethod
    def variable(cls, i: int) -> Polynomial:
        if i == 0:
            return cls.one()
        return cls._from_dict({Monomial.of({i: 1}): 1})

    def coefficient(self, mono: Monomial) -> int:
        for m, c in self.terms:
            if m == mono:
                return c
        return 0

    def __add__(self, other: Polynomial) -> Polynomial:
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return Polynomial._from_dict(d)

    def __sub__(self, other: Polynomial) -> Polynomial:
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, 0) - c
        return Polynomial._from_dict(d)

    def __mul__(self, other: Polynomial) -> Polynomial:
        d: dict[Monomial, int] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = m1 * m2
                d[m] = d.get(m, 0) + c1 * c2
        return Polynomial._from_dict(d)

    def evaluate(self, t: Sequence) -> Fraction:
        """Substitute t[i] for ti (t[0] is unused; indices must exist)."""
        ts = [_frac(x) for x in t]
        total = Fraction(0)
        for mono, c in self.terms:
            v = Fraction(c)
            for i, e in mono.exps:
                if i >= len(ts):
                    raise ValueError(f"missing value for t{i}")
                v *= ts[i] ** e
            total += v
        return total

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, (mono, c) in enumerate(self.terms):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono.exps:
                body = str(mag)
            elif mag == 1:
                body = str(mono)
            else:
                body = f"{mag}*{mono}"
            if idx == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": str(c),
                    "monomial": {str(i): e for i, e in sorted(m.exps, reverse=True)},
                }
                for m, c in self.terms
            ]
        }

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


def moment_poly_linked(n: int) -> Polynomial:
    """Moment polynomial as the sum over non-crossing linked partitions of
    the products t_{|A|-1} over blocks A."""
    if n < 1:
        raise ValueError("n must be at least 1")
    acc: dict[Monomial, int] = {}
    for p in enumerate_ncl(n):
        mono = _mono_from_sizes(len(a) - 1 for a in p.blocks)
        acc[mono] = acc.get(mono, 0) + 1
    return Polynomial._from_dict(acc)


def moment_poly_pairs(n: int) -> Polynomial:
    """Moment polynomial as the sum over endpoint-refinement pairs (a, b) of
    t_{|U|-1} over special blocks U times t_{|V|} over the rest."""
    if n < 1:
        raise ValueError("n must be at least 1")
    acc: dict[Monomial, int] = {}
    for b in enumerate_nc(n):
        for a in endpoint_refinements(b):
            special = classify_blocks(a, b).special
            mono = _mono_from_sizes(
                len(blk) - 1 if i in special else len(blk)
                for i, blk in enumerate(a.blocks)
            )
            acc[mono] = acc.get(mono, 0) + 1
    return Polynomial._from_dict(acc)


def moment_poly_inner_outer(n: int) -> Polynomial:
    """Moment polynomial as a single sum over non-crossing partitions:
    outer blocks contribute t_{|U|-1}, inner blocks (t_{|V|-1} + t_{|V|}),
    expanded."""
    if n < 1:
        raise ValueError("n must be at least 1")
    acc: dict[Monomial, int] = {}
    for a in enumerate_nc(n):
        inner = a.inner_indices
        expansion: dict[Monomial, int] = {_MONO_ONE: 1}
        for i, blk in enumerate(a.blocks):
            s = len(blk)
            if i in inner:
                factors = [_mono_from_sizes([s - 1]), _mono_from_sizes([s])]
            else:
                factors = [_mono_from_sizes([s - 1])]
            new: dict[Monomial, int] = {}
            for m, c in expansion.items():
                for f in factors:
                    mf = m * f
                    new[mf] = new.get(mf, 0) + c
            expansion = new
        for m, c in expansion.items():
            acc[m] = acc.get(m, 0) + c
    return Polynomial._from_dict(acc)


@lru_cache(maxsize=None)
def cumulant_poly(n: int) -> Polynomial:
    """The n-th free cumulant as a polynomial in t1, t2, ...: for n >= 2
    the sum over non-crossing partitions of {1..n-1} of the products
    t_{|V|}; the first cumulant is the constant 1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n == 1:
        return Polynomial.one()
    acc: dict[Monomial, int] = {}
    for gamma in enumerate_nc(n - 1):
        mono = _mono_from_sizes(len(v) for v in gamma.blocks)
        acc[mono] = acc.get(mono, 0) + 1
    return Polynomial._from_dict(acc)


def moment_poly_cumulants(n: int) -> Polynomial:
    """Moment polynomial via cumulants: sum over non-crossing partitions of
    the products of per-block cumulant polynomials, expanded."""
    if n < 1:
        raise ValueError("n must be at least 1")
    total = Polynomial.zero()
    for beta in enumerate_nc(n):
        term = Polynomial.one()
        for w in beta.blocks:
            term = term * cumulant_poly(len(w))
        total = total + term
    return total


def cumulant_product_identity(b: Partition) -> bool:
    """Check, for one non-crossing partition, that the product of its
    per-block cumulant polynomials equals the classified sum over its
    endpoint refinements."""
    if not is_noncrossing(b):
        raise ValueError(f"{b} is crossing")
    lhs = Polynomial.one()
    for w in b.blocks:
        lhs = lhs * cumulant_poly(len(w))
    acc: dict[Monomial, int] = {}
    for a in endpoint_refinements(b):
        special = classify_blocks(a, b).special
        mono = _mono_from_sizes(
            len(blk) - 1 if i in special else len(blk)
            for i, blk in enumerate(a.blocks)
        )
        acc[mono] = acc.get(mono, 0) + 1
    return lhs == Polynomial._from_dict(acc)
