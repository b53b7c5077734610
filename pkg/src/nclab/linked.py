"""Linked partitions: block families whose blocks may share single elements.

A linked partition covers every element once or twice.  Two distinct blocks
are either disjoint or share exactly one element, in which case both blocks
have at least two elements, their minima differ, and the shared element is
the minimum of exactly one of them.  Only non-crossing linked partitions
are modeled here; the crossing test is the same interleaving test used for
plain partitions.

The central pair of maps:

* ``generated_partition(p)`` -- the coarsest-refining plain partition with
  each block of ``p`` inside one block;
* ``unlink(p)`` -- the plain partition obtained by deleting each
  doubly-covered block minimum from the block it is minimal in;

combine into ``to_pair`` / ``from_pair``, a bijection between non-crossing
linked partitions of {1..n} and pairs (a, b) of non-crossing partitions
with ``endpoint_refines(a, b)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from .partitions import (
    Partition,
    _blocks_cross,
    _fmt_block,
    _parse_blocks_json,
    _parse_blocks_text,
    act,
    block_cycles,
    catalan,
    endpoint_refinements,
    endpoint_refines,
    enumerate_nc,
    refines,
)


class InvalidLinkedPartitionError(ValueError):
    """A block family does not form a valid non-crossing linked partition."""


@dataclass(frozen=True, repr=False)
class LinkedPartition:
    """A non-crossing linked partition of a finite ground set.

    Instances are assumed canonical: blocks sorted by least element (block
    minima are pairwise distinct), elements increasing inside each block.
    Build them via `make_linked`, `from_text`, `from_json_dict`,
    `from_pair` or the enumerators.
    """

    ground: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.ground)

    @property
    def is_standard(self) -> bool:
        g = self.ground
        return g == tuple(range(1, len(g) + 1))

    @cached_property
    def _cover_count(self) -> dict[int, int]:
        out = {x: 0 for x in self.ground}
        for blk in self.blocks:
            for x in blk:
                out[x] += 1
        return out

    @property
    def is_plain(self) -> bool:
        """True when no element is doubly covered (an ordinary partition)."""
        return all(c == 1 for c in self._cover_count.values())

    def restrict(self, elements: Iterable[int]) -> LinkedPartition:
        """Restrict to a saturated subset of the ground set, keeping labels."""
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
        return LinkedPartition(e, tuple(kept))

    def relabel(self) -> LinkedPartition:
        """Order-isomorphic copy on the standard ground set {1..n}."""
        pos = {x: i + 1 for i, x in enumerate(self.ground)}
        return LinkedPartition(
            tuple(range(1, len(self.ground) + 1)),
            tuple(tuple(pos[x] for x in blk) for blk in self.blocks),
        )

    def to_text(self) -> str:
        return "".join(_fmt_block(b) for b in self.blocks)

    @classmethod
    def from_text(cls, text: str) -> LinkedPartition:
        return make_linked(*_parse_blocks_text(text))

    def to_json_dict(self) -> dict:
        if not self.is_standard:
            raise ValueError("only linked partitions of {1..n} have a JSON form")
        return {"n": self.n, "blocks": [list(b) for b in self.blocks], "linked": True}

    @classmethod
    def from_json_dict(cls, data: dict) -> LinkedPartition:
        n, blocks = _parse_blocks_json(data)
        return make_linked(n, blocks)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LinkedPartition({self.to_text()!r})"


def make_linked(n: int, raw_blocks: Iterable[Iterable[int]]) -> LinkedPartition:
    """Validate and canonicalize a linked-partition block family on {1..n}.

    Every plain non-crossing partition is accepted unchanged.  Violations
    get distinct diagnostics: triple coverage, overlap of two or more
    elements, a shared element that is the minimum of neither block, equal
    minima of overlapping blocks, overlap involving a singleton, crossing
    blocks, and coverage gaps.
    """
    if n < 1:
        raise InvalidLinkedPartitionError("ground-set size must be at least 1")
    ground = tuple(range(1, n + 1))
    blocks: list[tuple[int, ...]] = []
    for raw in raw_blocks:
        blk = sorted(raw)
        if not blk:
            raise InvalidLinkedPartitionError("empty block")
        for x in blk:
            if not isinstance(x, int):
                raise InvalidLinkedPartitionError(f"element {x!r} is not an integer")
            if not 1 <= x <= n:
                raise InvalidLinkedPartitionError(f"element {x} out of range 1..{n}")
        for u, v in zip(blk, blk[1:]):
            if u == v:
                raise InvalidLinkedPartitionError(
                    f"element {u} repeated inside block {_fmt_block(set(blk))}"
                )
        blocks.append(tuple(blk))

    count = {x: 0 for x in ground}
    for blk in blocks:
        for x in blk:
            count[x] += 1
    for x, c in count.items():
        if c > 2:
            raise InvalidLinkedPartitionError(f"element {x} covered by {c} blocks")

    for a, b in combinations(blocks, 2):
        inter = set(a) & set(b)
        if not inter:
            continue
        if len(inter) >= 2:
            raise InvalidLinkedPartitionError(
                f"blocks {_fmt_block(a)} and {_fmt_block(b)} share {len(inter)} elements"
            )
        if len(a) == 1 or len(b) == 1:
            small, big = (a, b) if len(a) == 1 else (b, a)
            raise InvalidLinkedPartitionError(
                f"singleton block {_fmt_block(small)} overlaps {_fmt_block(big)}"
            )
        if a[0] == b[0]:
            raise InvalidLinkedPartitionError(
                f"overlapping blocks {_fmt_block(a)} and {_fmt_block(b)} have equal minima"
            )
        m = inter.pop()
        if m != a[0] and m != b[0]:
            raise InvalidLinkedPartitionError(
                f"shared element {m} is the minimum of neither "
                f"{_fmt_block(a)} nor {_fmt_block(b)}"
            )

    for a, b in combinations(blocks, 2):
        if _blocks_cross(a, b):
            raise InvalidLinkedPartitionError(
                f"blocks {_fmt_block(a)} and {_fmt_block(b)} cross"
            )

    uncovered = sorted(x for x, c in count.items() if c == 0)
    if uncovered:
        raise InvalidLinkedPartitionError(f"elements {uncovered} not covered")

    blocks.sort(key=lambda blk: blk[0])
    return LinkedPartition(ground, tuple(blocks))


@dataclass(frozen=True)
class CoverMap:
    """Per-element block incidence of a linked partition.

    ``incidence[i]`` lists the 0-based block indices containing
    ``ground[i]``; the list has length 1 or 2.
    """

    ground: tuple[int, ...]
    incidence: tuple[tuple[int, ...], ...]

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.ground)}

    def blocks_of(self, element: int) -> tuple[int, ...]:
        return self.incidence[self._pos[element]]

    def is_doubly_covered(self, element: int) -> bool:
        return len(self.blocks_of(element)) == 2

    @property
    def doubly_covered(self) -> frozenset[int]:
        return frozenset(
            x for x, inc in zip(self.ground, self.incidence) if len(inc) == 2
        )

    @property
    def singly_covered(self) -> frozenset[int]:
        return frozenset(
            x for x, inc in zip(self.ground, self.incidence) if len(inc) == 1
        )


def cover_map(p: LinkedPartition) -> CoverMap:
    """Which blocks contain each element (one or two of them)."""
    inc: dict[int, list[int]] = {x: [] for x in p.ground}
    for i, blk in enumerate(p.blocks):
        for x in blk:
            inc[x].append(i)
    return CoverMap(p.ground, tuple(tuple(inc[x]) for x in p.ground))


def generated_partition(p: LinkedPartition) -> Partition:
    """The coarsest-refining plain partition with every block of ``p``
    inside one block: the transitive closure of block overlap."""
    parent = list(range(len(p.blocks)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    owner: dict[int, int] = {}
    for i, blk in enumerate(p.blocks):
        for x in blk:
            if x in owner:
                ri, rj = find(i), find(owner[x])
                if ri != rj:
                    parent[ri] = rj
            else:
                owner[x] = i

    groups: dict[int, set[int]] = {}
    for i, blk in enumerate(p.blocks):
        groups.setdefault(find(i), set()).update(blk)
    out = sorted((tuple(sorted(g)) for g in groups.values()), key=lambda blk: blk[0])
    result = Partition(p.ground, tuple(out))
    assert result._noncrossing, f"generated partition of {p} is crossing"
    return result


def unlink(p: LinkedPartition) -> Partition:
    """The plain partition obtained by dropping each doubly-covered block
    minimum from the block it is minimal in."""
    count = p._cover_count
    out = []
    for blk in p.blocks:
        out.append(blk[1:] if count[blk[0]] == 2 else blk)
    out.sort(key=lambda blk: blk[0])
    result = Partition(p.ground, tuple(out))
    assert sum(len(b) for b in out) == len(p.ground)
    return result


def cycled_unlink(p: LinkedPartition) -> Partition:
    """Pull the unlinking back through the inverse of the block-cycle
    permutation of the generated partition.

    The result is non-crossing and endpoint-refines the generated
    partition; together they form `to_pair`.
    """
    alpha, _ = to_pair(p)
    return alpha


def to_pair(p: LinkedPartition) -> tuple[Partition, Partition]:
    """Map a non-crossing linked partition to its (cycled unlinking,
    generated partition) pair.  The inverse is `from_pair`."""
    if not p.is_standard:
        raise ValueError("to_pair needs a linked partition of {1..n}")
    beta = generated_partition(p)
    alpha = act(block_cycles(beta).inverse(), unlink(p))
    return alpha, beta


def from_pair(a: Partition, b: Partition) -> LinkedPartition:
    """Reconstruct the unique linked partition mapping to (a, b) under
    `to_pair`; requires ``endpoint_refines(a, b)``.

    Construction: push ``a`` forward through the block-cycle permutation of
    ``b`` (giving the unlinking), then re-link each block whose minimum is
    not its host-block minimum by prepending the host element immediately
    preceding it.
    """
    if not a.is_standard or not b.is_standard:
        raise ValueError("from_pair needs partitions of {1..n}")
    if not endpoint_refines(a, b):
        if refines(a, b):
            ao = a._block_of
            for w in b.blocks:
                if ao[w[0]] != ao[w[-1]]:
                    raise ValueError(
                        f"block {_fmt_block(w)}: min/max not together in alpha"
                    )
        raise ValueError(f"{a} does not endpoint-refine {b}")

    unlinking = act(block_cycles(b), a)
    bo = b._block_of
    out = []
    for v in unlinking.blocks:
        w = b.blocks[bo[v[0]]]
        if v[0] == w[0]:
            out.append(v)
        else:
            pos = w.index(v[0])
            out.append((w[pos - 1],) + v)
    out.sort(key=lambda blk: blk[0])
    result = LinkedPartition(a.ground, tuple(out))
    try:
        make_linked(result.n, result.blocks)
    except InvalidLinkedPartitionError as exc:  # pragma: no cover - defect guard
        raise AssertionError(f"from_pair({a}, {b}) built an invalid object: {exc}") from exc
    return result


def enumerate_ncl(n: int) -> Iterator[LinkedPartition]:
    """Yield every non-crossing linked partition of {1..n} exactly once.

    Primary generator: `from_pair` applied to every endpoint-refinement
    pair, outer loop over coarse partitions in `enumerate_nc` order, inner
    loop in `endpoint_refinements` order.  The count is `ncl_count(n)`,
    the (n-1)-th large Schroeder number.
    """
    for beta in enumerate_nc(n):
        for alpha in endpoint_refinements(beta):
            yield from_pair(alpha, beta)


def enumerate_ncl_direct(n: int) -> Iterator[LinkedPartition]:
    """Independent generator for the non-crossing linked partitions of
    {1..n}, by direct backtracking over the validity rules.

    Each element joins an open block (closing any blocks opened inside
    it), opens a fresh block, or does both at once, becoming the shared
    element: non-minimal in the joined block and the minimum of the new
    one.  Blocks opened by the combined move must grow past one element.
    Exists to cross-validate the pair-based generator; do not change one
    without the other.
    """
    if n < 1:
        raise ValueError("ground-set size must be at least 1")
    ground = tuple(range(1, n + 1))
    blocks: list[list[int]] = []
    must_grow: list[bool] = []
    open_idx: list[int] = []

    def rec(k: int) -> Iterator[LinkedPartition]:
        if k > n:
            if all(not must_grow[i] or len(blocks[i]) >= 2 for i in open_idx):
                yield LinkedPartition(ground, tuple(tuple(b) for b in blocks))
            return
        for depth in range(len(open_idx)):
            closing = open_idx[depth + 1:]
            if any(must_grow[i] and len(blocks[i]) < 2 for i in closing):
                continue
            del open_idx[depth + 1:]
            target = open_idx[depth]
            blocks[target].append(k)
            yield from rec(k + 1)  # plain join
            blocks.append([k])  # join and open a linked block
            must_grow.append(True)
            open_idx.append(len(blocks) - 1)
            yield from rec(k + 1)
            open_idx.pop()
            must_grow.pop()
            blocks.pop()
            blocks[target].pop()
            open_idx.extend(closing)
        blocks.append([k])  # open a plain block
        must_grow.append(False)
        open_idx.append(len(blocks) - 1)
        yield from rec(k + 1)
        open_idx.pop()
        must_grow.pop()
        blocks.pop()

    yield from rec(1)


def ncl_count(n: int) -> int:
    """Number of non-crossing linked partitions of {1..n}, computed as the
    sum over non-crossing partitions of the per-block Catalan products
    (without enumerating the linked partitions themselves)."""
    if n < 1:
        raise ValueError("ground-set size must be at least 1")
    total = 0
    for beta in enumerate_nc(n):
        term = 1
        for w in beta.blocks:
            term *= catalan(len(w) - 1)
        total += term
    return total


def coloured_count(n: int) -> int:
    """Number of red/blue colourings of non-crossing partitions of {1..n}
    with all outer blocks red: the sum of 2**(inner blocks).  Equals
    `ncl_count(n)`."""
    if n < 1:
        raise ValueError("ground-set size must be at least 1")
    return sum(1 << len(a.inner_indices) for a in enumerate_nc(n))


def schroder(k: int) -> int:
    """The k-th large Schroeder number: 1, 2, 6, 22, 90, 394, 1806, ...

    Satisfies (k+1) r_k = (6k-3) r_{k-1} - (k-2) r_{k-2}; r_{n-1} counts
    the non-crossing linked partitions of {1..n}.
    """
    if k < 0:
        raise ValueError("schroder is defined for k >= 0")
    r0, r1 = 1, 2
    if k == 0:
        return r0
    for i in range(2, k + 1):
        r0, r1 = r1, ((6 * i - 3) * r1 - (i - 2) * r0) // (i + 1)
    return r1
