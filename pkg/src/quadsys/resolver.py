"""Independent resolvability oracle: depth-first exact cover.

Used to confirm resolutions without trusting shipped certificate data:
classes are grown one block at a time, always extending at the least
uncovered point and trying its incident unused blocks in canonical order,
which makes the search deterministic and the first answer
lexicographically least.  A node budget separates "provably none" from
"ran out of budget"; the two are never conflated.

The oracle is confined to instances of at most 45 points: that covers
every derived design shipped here, and anything larger is verified
against constructed certificates instead of searched.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Block, Design, ParameterError, Resolution

MAX_ORACLE_POINTS = 45
DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class SearchOutcome:
    """status is "found", "none" (exhaustive proof), or "exhausted"."""

    status: str
    resolution: Resolution | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, blocks: Iterable[Block], ground: Sequence[int], budget: int):
        self.ground = tuple(sorted(ground))
        if len(self.ground) > MAX_ORACLE_POINTS:
            raise ParameterError(
                f"oracle confined to {MAX_ORACLE_POINTS} points, got {len(self.ground)}"
            )
        self.index = {p: n for n, p in enumerate(self.ground)}
        multiset = Counter(tuple(sorted(b)) for b in blocks)
        self.blocks = sorted(multiset)
        self.avail = [multiset[b] for b in self.blocks]
        self.iblocks = [tuple(self.index[p] for p in b) for b in self.blocks]
        self.incident: list[list[int]] = [[] for _ in self.ground]
        for bi, b in enumerate(self.iblocks):
            for p in b:
                self.incident[p].append(bi)
        self.budget = budget
        self.nodes = 0
        self.n = len(self.ground)

    def _class_step(
        self, covered: bytearray, left: int, chosen: list[int], anchor_min: int = 0
    ) -> bool:
        """Extend the current class; True once it partitions the ground.

        The first block of a class (its anchor, through the least ground
        point) is restricted to indices >= anchor_min: successive classes
        carry strictly increasing anchors, which kills the class
        permutation symmetry without losing any resolution (every class
        contains exactly one block through the least point).
        """
        if left == 0:
            return self._on_class(chosen)
        pivot = covered.index(0)
        floor = anchor_min if not chosen else 0
        for bi in self.incident[pivot]:
            if bi < floor or self.avail[bi] == 0:
                continue
            b = self.iblocks[bi]
            if any(covered[p] for p in b):
                continue
            self.nodes += 1
            if self.nodes > self.budget:
                raise _Budget()
            self.avail[bi] -= 1
            for p in b:
                covered[p] = 1
            chosen.append(bi)
            if self._class_step(covered, left - len(b), chosen, anchor_min):
                return True
            chosen.pop()
            for p in b:
                covered[p] = 0
            self.avail[bi] += 1
        return False

    def _on_class(self, chosen: list[int]) -> bool:
        raise NotImplementedError


class _OneClass(_Search):
    def __init__(self, blocks, ground, budget):
        super().__init__(blocks, ground, budget)
        self.result: list[int] | None = None

    def run(self) -> tuple[str, list[Block] | None]:
        if self._sizes_incompatible():
            return "none", None
        try:
            found = self._class_step(bytearray(self.n), self.n, [])
        except _Budget:
            return "exhausted", None
        if not found:
            return "none", None
        return "found", [self.blocks[bi] for bi in self.result]

    def _sizes_incompatible(self) -> bool:
        sizes = {len(b) for b in self.blocks}
        return len(sizes) == 1 and self.n % next(iter(sizes)) != 0

    def _on_class(self, chosen: list[int]) -> bool:
        self.result = list(chosen)
        return True


class _FullResolution(_Search):
    def __init__(self, blocks, ground, budget):
        super().__init__(blocks, ground, budget)
        self.classes: list[list[int]] = []
        self.remaining = sum(self.avail)

    def run(self) -> tuple[str, list[list[Block]] | None]:
        sizes = {len(b) for b in self.blocks}
        if len(sizes) == 1 and self.n % next(iter(sizes)) != 0:
            return "none", None
        if self.remaining == 0:
            return "found", []
        try:
            found = self._class_step(bytearray(self.n), self.n, [])
        except _Budget:
            return "exhausted", None
        if not found:
            return "none", None
        return "found", [[self.blocks[bi] for bi in cls] for cls in self.classes]

    def _on_class(self, chosen: list[int]) -> bool:
        self.classes.append(list(chosen))
        self.remaining -= len(chosen)
        if self.remaining == 0:
            return True
        if self._class_step(bytearray(self.n), self.n, [], chosen[0] + 1):
            return True
        self.remaining += len(chosen)
        self.classes.pop()
        return False


def find_parallel_class(
    blocks: Iterable[Block], ground: Sequence[int], budget: int = DEFAULT_BUDGET
) -> list[Block] | None:
    """Lexicographically least parallel class, or None if there is none."""
    status, cls = _OneClass(blocks, ground, budget).run()
    if status == "exhausted":
        raise ParameterError(f"parallel-class search exceeded {budget} nodes")
    return cls


def find_resolution(
    blocks: Iterable[Block], ground: Sequence[int], budget: int = DEFAULT_BUDGET
) -> SearchOutcome:
    """A full resolution, a proof of non-resolvability, or budget exhaustion."""
    search = _FullResolution(blocks, ground, budget)
    status, classes = search.run()
    resolution = None
    if status == "found":
        resolution = Resolution(
            ground=tuple(sorted(ground)),
            classes=tuple(tuple(sorted(cls)) for cls in classes),
            target=tuple(sorted(Counter(tuple(sorted(b)) for b in blocks).elements())),
        )
    return SearchOutcome(status=status, resolution=resolution, nodes=search.nodes)


def derived_instance(d: Design, x) -> tuple[list[Block], tuple[int, ...]]:
    """(blocks, ground) of the derived design at x, in parent ids."""
    xid = d.point(x)
    blocks = [tuple(p for p in b if p != xid) for b in d.blocks if xid in b]
    ground = tuple(p for p in range(d.v) if p != xid)
    return blocks, ground


def confirm_rds(d: Design, budget: int = DEFAULT_BUDGET) -> dict[str, SearchOutcome]:
    """Search a resolution of the derived design at every point.

    The design is an RDS iff every outcome is "found"; any "exhausted"
    entry leaves the question open rather than answering it.
    """
    out = {}
    for xid in range(d.v):
        blocks, ground = derived_instance(d, xid)
        out[d.labels[xid].text] = find_resolution(blocks, ground, budget)
    return out
