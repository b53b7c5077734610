"""Set partitions in canonical form, the two refinement orders, and their
enumeration.

A partition is stored with its blocks sorted by least element and the
elements increasing inside each block, so equal partitions are equal as
values and can be hashed.  Two orders are provided:

* ``refines(a, b)`` -- reverse refinement: every block of ``b`` is a union
  of blocks of ``a``.
* ``endpoint_refines(a, b)`` -- the stronger order: ``a`` refines ``b`` and
  every block of ``b`` has its least and greatest element together in a
  single block of ``a``.

All values are immutable; all operations are pure functions and safe to
share between threads.
"""

from __future__ import annotations

import math
import re
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator


class InvalidPartitionError(ValueError):
    """A block family does not form a valid partition."""


class ParseError(ValueError):
    """A textual or JSON encoding could not be read."""


_TEXT_RE = re.compile(r"(?:\{\d+(?:,\d+)*\})+\Z")
_BLOCK_RE = re.compile(r"\{(\d+(?:,\d+)*)\}")


def _fmt_block(block: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in block) + "}"


def _blocks_cross(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    """True if the two sorted blocks interleave as x < y < x' < y'."""
    return _interleaves(a, b) or _interleaves(b, a)


def _interleaves(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    # Looks for x < y < x' < y' with x, x' in a and y, y' in b.  Works for
    # blocks sharing elements, since all four positions are distinct.
    if a[0] >= b[-1]:
        return False
    for y in b:
        if y <= a[0]:
            continue
        i = bisect_right(a, y)
        if i < len(a) and b[-1] > a[i]:
            return True
    return False


@dataclass(frozen=True, repr=False)
class Partition:
    """A set partition of a finite ground set of positive integers.

    Instances are assumed canonical (see `make_partition`); build them via
    `make_partition`, `from_text`, `from_json_dict` or the enumerators
    rather than calling the constructor with untrusted data.  The ground
    set is ``{1..n}`` for everything except restriction results, which keep
    their original labels.
    """

    ground: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        """Size of the ground set."""
        return len(self.ground)

    @property
    def is_standard(self) -> bool:
        """True when the ground set is {1..n}."""
        g = self.ground
        return g == tuple(range(1, len(g) + 1))

    @property
    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    @cached_property
    def _block_of(self) -> dict[int, int]:
        """Element -> index of its block."""
        out: dict[int, int] = {}
        for i, blk in enumerate(self.blocks):
            for x in blk:
                out[x] = i
        return out

    def block_of(self, element: int) -> tuple[int, ...]:
        try:
            return self.blocks[self._block_of[element]]
        except KeyError:
            raise ValueError(f"element {element} is not in the ground set") from None

    @cached_property
    def _noncrossing(self) -> bool:
        bs = self.blocks
        for i in range(len(bs)):
            for j in range(i + 1, len(bs)):
                if _blocks_cross(bs[i], bs[j]):
                    return False
        return True

    @cached_property
    def inner_indices(self) -> frozenset[int]:
        """Indices of inner blocks: blocks strictly spanned by another block."""
        spans = [(b[0], b[-1]) for b in self.blocks]
        inner = set()
        for i, (lo, hi) in enumerate(spans):
            for lo2, hi2 in spans:
                if lo2 < lo and hi2 > hi:
                    inner.add(i)
                    break
        return frozenset(inner)

    @property
    def outer_indices(self) -> frozenset[int]:
        return frozenset(range(len(self.blocks))) - self.inner_indices

    def restrict(self, elements: Iterable[int]) -> Partition:
        """Restrict to a saturated subset of the ground set, keeping labels.

        ``elements`` is saturated when every block meeting it is contained
        in it; otherwise a ValueError names the offending block.
        """
        e = tuple(sorted(set(elements)))
        if not e:
            raise ValueError("restriction set is empty")
        gset = set(self.ground)
        for x in e:
            if x not in gset:
                raise ValueError(f"element {x} is not in the ground set")
        eset = set(e)
        kept = []
        for blk in self.blocks:
            hits = sum(1 for x in blk if x in eset)
            if hits == 0:
                continue
            if hits != len(blk):
                raise ValueError(
                    f"block {_fmt_block(blk)} is not contained in the restriction set"
                )
            kept.append(blk)
        return Partition(e, tuple(kept))

    def relabel(self) -> Partition:
        """Order-isomorphic copy on the standard ground set {1..n}."""
        pos = {x: i + 1 for i, x in enumerate(self.ground)}
        return Partition(
            tuple(range(1, len(self.ground) + 1)),
            tuple(tuple(pos[x] for x in blk) for blk in self.blocks),
        )

    @classmethod
    def discrete(cls, n: int) -> Partition:
        """The partition of {1..n} into n singletons."""
        return make_partition(n, [[k] for k in range(1, n + 1)])

    @classmethod
    def full(cls, n: int) -> Partition:
        """The partition of {1..n} into a single block."""
        return make_partition(n, [list(range(1, n + 1))])

    def to_text(self) -> str:
        return "".join(_fmt_block(b) for b in self.blocks)

    @classmethod
    def from_text(cls, text: str) -> Partition:
        return make_partition(*_parse_blocks_text(text))

    def to_json_dict(self) -> dict:
        if not self.is_standard:
            raise ValueError("only partitions of {1..n} have a JSON form")
        return {"n": self.n, "blocks": [list(b) for b in self.blocks]}

    @classmethod
    def from_json_dict(cls, data: dict) -> Partition:
        n, blocks = _parse_blocks_json(data)
        return make_partition(n, blocks)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Partition({self.to_text()!r})"


def _parse_blocks_text(text: str) -> tuple[int, list[list[int]]]:
    if not _TEXT_RE.fullmatch(text):
        raise ParseError(f"cannot parse partition text {text!r}")
    blocks = [[int(x) for x in grp.split(",")] for grp in _BLOCK_RE.findall(text)]
    n = max(max(b) for b in blocks)
    return n, blocks


def _parse_blocks_json(data: dict) -> tuple[int, list[list[int]]]:
    try:
        n = data["n"]
        blocks = data["blocks"]
    except (TypeError, KeyError) as exc:
        raise ParseError("partition JSON needs 'n' and 'blocks'") from exc
    if not isinstance(n, int) or not isinstance(blocks, list):
        raise ParseError("malformed partition JSON")
    if not all(isinstance(b, list) and all(isinstance(x, int) for x in b) for b in blocks):
        raise ParseError("malformed partition JSON")
    return n, blocks


def make_partition(n: int, raw_blocks: Iterable[Iterable[int]]) -> Partition:
    """Validate and canonicalize a block family covering {1..n} exactly once.

    Idempotent on canonical input.  Overlaps, gaps, out-of-range elements
    and empty blocks are rejected with distinct diagnostics.
    """
    if n < 1:
        raise InvalidPartitionError("ground-set size must be at least 1")
    seen: set[int] = set()
    blocks: list[tuple[int, ...]] = []
    for raw in raw_blocks:
        blk = sorted(raw)
        if not blk:
            raise InvalidPartitionError("empty block")
        for x in blk:
            if not isinstance(x, int):
                raise InvalidPartitionError(f"element {x!r} is not an integer")
            if not 1 <= x <= n:
                raise InvalidPartitionError(f"element {x} out of range 1..{n}")
            if x in seen:
                raise InvalidPartitionError(f"element {x} repeated")
            seen.add(x)
        blocks.append(tuple(blk))
    if len(seen) != n:
        missing = sorted(set(range(1, n + 1)) - seen)
        raise InvalidPartitionError(f"elements {missing} not covered")
    blocks.sort(key=lambda b: b[0])
    return Partition(tuple(range(1, n + 1)), tuple(blocks))


def is_noncrossing(p: Partition) -> bool:
    """True iff no two blocks interleave as a < b < a' < b'."""
    return p._noncrossing


def _require_noncrossing(p: Partition, role: str) -> None:
    if not p._noncrossing:
        raise ValueError(f"{role} partition {p} is crossing")


def _require_same_ground(a: Partition, b: Partition) -> None:
    if a.ground != b.ground:
        raise ValueError(f"ground sets differ ({a.n} vs {b.n} elements)")


def refines(a: Partition, b: Partition) -> bool:
    """Reverse refinement: every block of ``a`` lies inside a block of ``b``."""
    _require_same_ground(a, b)
    bo = b._block_of
    for blk in a.blocks:
        w = bo[blk[0]]
        for x in blk[1:]:
            if bo[x] != w:
                return False
    return True


def endpoint_refines(a: Partition, b: Partition) -> bool:
    """The stronger order: ``refines(a, b)`` and, for every block W of ``b``,
    some block of ``a`` contains both min(W) and max(W).

    Both partitions must be non-crossing.
    """
    _require_same_ground(a, b)
    _require_noncrossing(a, "left")
    _require_noncrossing(b, "right")
    if not refines(a, b):
        return False
    ao = a._block_of
    for w in b.blocks:
        if ao[w[0]] != ao[w[-1]]:
            return False
    return True


@dataclass(frozen=True)
class BlockClassification:
    """Classification of the blocks of a fine partition against a coarse one.

    Indices are 0-based positions into the fine partition's block sequence.
    ``special`` blocks share both endpoints with a block of the coarse
    partition; ``inner``/``outer`` depend on the fine partition alone.
    Every outer block is special, and there is exactly one special block
    per coarse block.
    """

    special: frozenset[int]
    inner: frozenset[int]
    outer: frozenset[int]


def classify_blocks(a: Partition, b: Partition) -> BlockClassification:
    """Classify the blocks of ``a`` relative to ``b``; requires
    ``endpoint_refines(a, b)``."""
    if not endpoint_refines(a, b):
        raise ValueError(f"{a} does not endpoint-refine {b}")
    ao = a._block_of
    special = frozenset(ao[w[0]] for w in b.blocks)
    return BlockClassification(special, a.inner_indices, a.outer_indices)


def endpoint_floor(b: Partition) -> Partition:
    """The finest partition endpoint-refining ``b``: each block of size >= 3
    is broken into its {min, max} doubleton plus singletons; smaller blocks
    are left intact."""
    _require_noncrossing(b, "input")
    out: list[tuple[int, ...]] = []
    for w in b.blocks:
        if len(w) <= 2:
            out.append(w)
        else:
            out.append((w[0], w[-1]))
            out.extend((x,) for x in w[1:-1])
    out.sort(key=lambda blk: blk[0])
    return Partition(b.ground, tuple(out))


def catalan(k: int) -> int:
    """The k-th Catalan number (2k)! / (k! (k+1)!)."""
    if k < 0:
        raise ValueError("catalan is defined for k >= 0")
    return math.comb(2 * k, k) // (k + 1)


def enumerate_nc(n: int) -> Iterator[Partition]:
    """Yield every non-crossing partition of {1..n} exactly once.

    Each element k of 1..n either opens a new block (choice code 0) or
    joins the d-th currently open block counted from the outside (choice
    code d >= 1), permanently closing all blocks opened inside it.  The
    partitions appear in ascending lexicographic order of their choice-code
    sequences; for n = 3 this is

        {1}{2}{3}, {1,3}{2}, {1}{2,3}, {1,2}{3}, {1,2,3}

    The count is the n-th Catalan number.
    """
    if n < 1:
        raise ValueError("ground-set size must be at least 1")
    ground = tuple(range(1, n + 1))
    blocks: list[list[int]] = []
    open_idx: list[int] = []

    def rec(k: int) -> Iterator[Partition]:
        if k > n:
            yield Partition(ground, tuple(tuple(b) for b in blocks))
            return
        blocks.append([k])
        open_idx.append(len(blocks) - 1)
        yield from rec(k + 1)
        open_idx.pop()
        blocks.pop()
        for depth in range(len(open_idx)):
            saved = open_idx[depth + 1:]
            del open_idx[depth + 1:]
            target = open_idx[depth]
            blocks[target].append(k)
            yield from rec(k + 1)
            blocks[target].pop()
            open_idx.extend(saved)

    yield from rec(1)


def _sub_choices(w: tuple[int, ...]) -> list[tuple[tuple[int, ...], ...]]:
    """All ways to partition block ``w`` so that the result endpoint-refines
    the one-block partition of ``w``.

    Realized through the standard identification with the non-crossing
    partitions of the first |w| - 1 elements: relabel a non-crossing
    partition onto them, then adjoin max(w) to the block containing min(w).
    """
    m = len(w)
    if m == 1:
        return [(w,)]
    head, last = w[:-1], w[-1]
    choices = []
    for g in enumerate_nc(m - 1):
        sub = []
        for i, blk in enumerate(g.blocks):
            lab = tuple(head[x - 1] for x in blk)
            if i == 0:  # canonical first block holds min(w)
                lab = lab + (last,)
            sub.append(lab)
        choices.append(tuple(sub))
    return choices


def endpoint_refinements(b: Partition) -> Iterator[Partition]:
    """Yield every non-crossing ``a`` with ``endpoint_refines(a, b)``, once.

    Built blockwise: choices for each block of ``b`` are independent, so
    the results are the products of the per-block choices (per-block order
    as in `enumerate_nc`, later blocks varying fastest).  The count is
    `count_endpoint_refinements(b)`.
    """
    _require_noncrossing(b, "input")
    per_block = [_sub_choices(w) for w in b.blocks]
    for combo in product(*per_block):
        all_blocks = [blk for sub in combo for blk in sub]
        all_blocks.sort(key=lambda blk: blk[0])
        yield Partition(b.ground, tuple(all_blocks))


def count_endpoint_refinements(b: Partition) -> int:
    """Product over blocks W of Catalan(|W| - 1)."""
    _require_noncrossing(b, "input")
    out = 1
    for w in b.blocks:
        out *= catalan(len(w) - 1)
    return out


def endpoint_coarsenings(a: Partition) -> Iterator[tuple[Partition, frozenset[int]]]:
    """Yield every non-crossing ``b`` endpoint-coarsening ``a`` (that is,
    with ``endpoint_refines(a, b)``), paired with the 0-based indices of the
    blocks of ``a`` that are special for it.

    The special sets are exactly the block subsets containing every outer
    block; each non-special block is merged into the nearest enclosing
    special block.  Subsets are visited from the full set downwards
    (bitmask over inner blocks, descending), so ``b = a`` comes first.
    The count is 2 ** (number of inner blocks).
    """
    _require_noncrossing(a, "input")
    inner = sorted(a.inner_indices)
    outer = a.outer_indices
    spans = [(blk[0], blk[-1]) for blk in a.blocks]
    k = len(inner)
    for mask in range((1 << k) - 1, -1, -1):
        special = set(outer)
        special.update(inner[i] for i in range(k) if mask >> i & 1)
        merged_into: dict[int, list[int]] = {i: [] for i in special}
        for j in range(len(a.blocks)):
            if j in special:
                continue
            lo, hi = spans[j]
            best = -1
            for i in special:
                if spans[i][0] < lo and spans[i][1] > hi:
                    if best < 0 or spans[i][0] > spans[best][0]:
                        best = i
            # an enclosing special block always exists: the outermost
            # enclosing block is outer, and outer blocks are all special
            merged_into[best].append(j)
        out = []
        for i in special:
            elems = list(a.blocks[i])
            for j in merged_into[i]:
                elems.extend(a.blocks[j])
            out.append(tuple(sorted(elems)))
        out.sort(key=lambda blk: blk[0])
        yield Partition(a.ground, tuple(out)), frozenset(special)


def count_endpoint_coarsenings(a: Partition) -> int:
    """2 ** (number of inner blocks of ``a``)."""
    _require_noncrossing(a, "input")
    return 1 << len(a.inner_indices)


@dataclass(frozen=True, repr=False)
class Permutation:
    """A permutation of {1..n}, stored as its image sequence."""

    image: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def inverse(self) -> Permutation:
        inv = [0] * len(self.image)
        for i, v in enumerate(self.image):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def __mul__(self, other: Permutation) -> Permutation:
        """Composition: (self * other)(i) = self(other(i))."""
        if len(self.image) != len(other.image):
            raise ValueError("permutation sizes differ")
        return Permutation(tuple(self.image[v - 1] for v in other.image))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, each starting at its least element, ordered by it."""
        seen = [False] * len(self.image)
        out = []
        for i in range(1, len(self.image) + 1):
            if seen[i - 1]:
                continue
            cyc = [i]
            seen[i - 1] = True
            j = self(i)
            while j != i:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            out.append(tuple(cyc))
        return tuple(out)

    def to_cycle_text(self) -> str:
        """Cycle notation, fixed points omitted; '()' for the identity."""
        parts = ["(" + ",".join(map(str, c)) + ")" for c in self.cycles() if len(c) > 1]
        return "".join(parts) if parts else "()"

    def to_json_dict(self) -> dict:
        return {"n": self.n, "image": list(self.image)}

    @classmethod
    def from_json_dict(cls, data: dict) -> Permutation:
        try:
            n, image = data["n"], data["image"]
        except (TypeError, KeyError) as exc:
            raise ParseError("permutation JSON needs 'n' and 'image'") from exc
        if not isinstance(n, int) or not isinstance(image, list):
            raise ParseError("malformed permutation JSON")
        return make_permutation(n, image)

    def __str__(self) -> str:
        return self.to_cycle_text()

    def __repr__(self) -> str:
        return f"Permutation({self.to_cycle_text()!r})"


def make_permutation(n: int, image: Iterable[int]) -> Permutation:
    img = tuple(image)
    if len(img) != n or sorted(img) != list(range(1, n + 1)):
        raise ValueError(f"image {list(img)} is not a bijection of 1..{n}")
    return Permutation(img)


def block_cycles(a: Partition) -> Permutation:
    """The permutation with one cycle per block: each block {i1 < ... < im}
    maps i1 -> i2, ..., i(m-1) -> im, im -> i1."""
    if not a.is_standard:
        raise ValueError("block_cycles needs a partition of {1..n}")
    image = [0] * a.n
    for blk in a.blocks:
        for u, v in zip(blk, blk[1:]):
            image[u - 1] = v
        image[blk[-1] - 1] = blk[0]
    return Permutation(tuple(image))


def act(t: Permutation, a: Partition) -> Partition:
    """Apply a permutation to a partition blockwise (a left group action)."""
    if not a.is_standard:
        raise ValueError("act needs a partition of {1..n}")
    if t.n != a.n:
        raise ValueError(f"sizes differ ({t.n} vs {a.n})")
    blocks = [tuple(sorted(t(x) for x in blk)) for blk in a.blocks]
    blocks.sort(key=lambda blk: blk[0])
    return Partition(a.ground, tuple(blocks))
