"""Canonical data model for block designs and their exhaustive verifiers.

Points carry structured labels (plain integers, pairs ``a_i``, infinity
marks ``inf_i``, or GF(16) elements) but are handled internally as dense
integer ids ``0..v-1``.  Blocks are sorted id tuples.  A design is a block
multiset with declared strength ``t`` and admitted block sizes ``K``; a GDD
adds a partition of the points into groups.  Verification is exhaustive:
every t-subset of the point set is counted, so a passing report is a proof
of the defining property, not a spot check.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Block = tuple[int, ...]

MAX_WITNESSES = 16


class DesignError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(DesignError):
    """Arguments violate a documented precondition."""


class DuplicateBlockError(DesignError):
    """Orbit development produced the same block twice."""


class TableError(DesignError):
    """A rule table does not match the design it is meant to cover."""


class DataIntegrityError(DesignError):
    """Shipped or translated certificate data failed re-verification."""


class ConstructionError(DesignError):
    """An assembled object failed its own internal checks."""


# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class Label:
    """Structured point label.

    kind "plain": the integer ``a``       -> text "a"
    kind "pair":  the pair ``(a, i)``     -> text "a_i"
    kind "inf":   infinity mark ``i``     -> text "inf_i"
    kind "f16":   GF(16) element ``a``    -> text "0", "1" or "a^k"
    """

    kind: str
    a: int
    i: int = 0

    @staticmethod
    def plain(a: int) -> "Label":
        return Label("plain", a)

    @staticmethod
    def pair(a: int, i: int) -> "Label":
        return Label("pair", a, i)

    @staticmethod
    def inf(i: int = 0) -> "Label":
        return Label("inf", 0, i)

    @staticmethod
    def f16(bits: int) -> "Label":
        return Label("f16", bits)

    def sort_key(self) -> tuple[int, int, int]:
        # infinity labels sort after everything else
        if self.kind == "inf":
            return (1, self.i, 0)
        return (0, self.a, self.i)

    @property
    def text(self) -> str:
        if self.kind == "plain":
            return str(self.a)
        if self.kind == "pair":
            return f"{self.a}_{self.i}"
        if self.kind == "inf":
            return f"inf_{self.i}"
        from . import gf16

        return gf16.text(self.a)

    def __str__(self) -> str:  # pragma: no cover - convenience
        return self.text


def parse_label(text: str) -> Label:
    """Inverse of ``Label.text`` (GF(16) "0"/"1" parse as plain)."""
    if text.startswith("inf"):
        tail = text[3:]
        return Label.inf(int(tail[1:]) if tail else 0)
    if text.startswith("a^"):
        from . import gf16

        return Label.f16(gf16.alpha_power(int(text[2:])))
    if "_" in text:
        a, i = text.split("_")
        return Label.pair(int(a), int(i))
    return Label.plain(int(text))


@dataclass(frozen=True)
class Shift:
    """Cyclic shift of the first label coordinate; infinity labels fixed.

    Models the automorphisms used throughout: ``Shift(p, 21)`` on plain
    labels, ``Shift(j, 7)`` on pair labels (the "mod (7,-)" action, second
    coordinate untouched), ``Shift(2k, 14)`` for the +2 action.
    """

    delta: int
    modulus: int

    def __call__(self, lab: Label) -> Label:
        if lab.kind == "plain":
            return Label.plain((lab.a + self.delta) % self.modulus)
        if lab.kind == "pair":
            return Label.pair((lab.a + self.delta) % self.modulus, lab.i)
        if lab.kind == "inf":
            return lab
        raise ParameterError(f"shift undefined for label kind {lab.kind!r}")

    def inverse(self) -> "Shift":
        return Shift(-self.delta % self.modulus, self.modulus)


# ---------------------------------------------------------------------------
# designs


@dataclass(frozen=True)
class Design:
    """Block multiset with declared parameters (t, K, v).

    ``labels`` fixes the id <-> label bijection; ids are 0..v-1 in label
    sort order for canonically built designs.  ``blocks`` is stored sorted,
    the only canonical form.
    """

    t: int
    sizes: frozenset[int]
    labels: tuple[Label, ...]
    blocks: tuple[Block, ...]
    kind: str = "RAW"

    @property
    def v(self) -> int:
        return len(self.labels)

    @cached_property
    def label_index(self) -> dict[Label, int]:
        idx = {lab: i for i, lab in enumerate(self.labels)}
        if len(idx) != len(self.labels):
            raise ParameterError("labels are not distinct")
        return idx

    def point(self, label: Label | str | int) -> int:
        """Resolve a label, label text, or id to a point id."""
        if isinstance(label, int):
            if not 0 <= label < self.v:
                raise ParameterError(f"point id {label} out of range")
            return label
        if isinstance(label, str):
            label = parse_label(label)
        try:
            return self.label_index[label]
        except KeyError:
            raise ParameterError(f"no point labelled {label.text}") from None

    def block_counter(self) -> Counter[Block]:
        return Counter(self.blocks)


def make_design(
    t: int,
    sizes: Iterable[int],
    labels: Sequence[Label],
    blocks: Iterable[Sequence[int]],
    kind: str = "RAW",
) -> Design:
    """Canonicalize and validate raw block data into a Design."""
    labels = tuple(labels)
    sizes = frozenset(sizes)
    v = len(labels)
    canon = []
    for b in blocks:
        cb = tuple(sorted(b))
        if len(set(cb)) != len(cb):
            raise ParameterError(f"repeated point in block {cb}")
        if len(cb) not in sizes:
            raise ParameterError(f"block {cb} has size outside {sorted(sizes)}")
        if cb and (cb[0] < 0 or cb[-1] >= v):
            raise ParameterError(f"block {cb} references unknown point ids")
        canon.append(cb)
    canon.sort()
    return Design(t=t, sizes=sizes, labels=labels, blocks=tuple(canon), kind=kind)


def plain_labels(v: int) -> tuple[Label, ...]:
    return tuple(Label.plain(n) for n in range(v))


@dataclass(frozen=True)
class Gdd:
    """A design together with a partition of its points into groups."""

    design: Design
    groups: tuple[tuple[int, ...], ...]

    @property
    def type_multiset(self) -> tuple[int, ...]:
        return tuple(sorted(len(g) for g in self.groups))

    @cached_property
    def group_of(self) -> tuple[int, ...]:
        gof = [-1] * self.design.v
        for gi, cell in enumerate(self.groups):
            for p in cell:
                if gof[p] != -1:
                    raise ParameterError(f"point {p} in two groups")
                gof[p] = gi
        if any(g == -1 for g in gof):
            raise ParameterError("groups do not cover the point set")
        return tuple(gof)


@dataclass(frozen=True)
class Resolution:
    """An ordered list of parallel classes certifying resolvability.

    ``target`` is the exact block multiset the classes must exhaust;
    ``ground`` is the point set every class must partition.  Class order is
    significant and preserved (certificate data indexes classes by
    position).
    """

    ground: tuple[int, ...]
    classes: tuple[tuple[Block, ...], ...]
    target: tuple[Block, ...]


@dataclass
class VerifyReport:
    """Outcome of an exhaustive check: ``passed`` iff no violations.

    ``violations`` holds at most ``MAX_WITNESSES`` (kind, witness) pairs so
    badly corrupt inputs cannot blow up memory; ``counts`` carries observed
    vs expected block tallies for quick reporting.
    """

    passed: bool = True
    violations: list[tuple[str, object]] = field(default_factory=list)
    counts: dict[str, int] = field(default_factory=dict)
    _limit: int = MAX_WITNESSES

    def flag(self, kind: str, witness: object) -> None:
        self.passed = False
        if len(self.violations) < self._limit:
            self.violations.append((kind, witness))

    def require(self, label: str = "") -> "VerifyReport":
        if not self.passed:
            raise DataIntegrityError(f"{label or 'check'} failed: {self.violations[:4]}")
        return self


# ---------------------------------------------------------------------------
# counting helpers


def expected_block_count(t: int, k: int, v: int) -> tuple[int, bool]:
    """Block count C(v,t)/C(k,t) of an S(t,k,v) and whether it is exact."""
    if t > k or k > v or t < 1:
        raise ParameterError(f"need t <= k <= v, got t={t} k={k} v={v}")
    num, den = math.comb(v, t), math.comb(k, t)
    return num // den, num % den == 0


def subset_rank(sub: Block) -> int:
    """Colexicographic rank of a sorted id tuple among all same-size tuples."""
    return sum(math.comb(p, j + 1) for j, p in enumerate(sub))


def subset_unrank(rank: int, t: int) -> Block:
    """Inverse of subset_rank."""
    out = []
    for j in range(t, 0, -1):
        p = j - 1
        while math.comb(p + 1, j) <= rank:
            p += 1
        out.append(p)
        rank -= math.comb(p, j)
    return tuple(reversed(out))


def _coverage(blocks: Iterable[Block], t: int, v: int) -> bytearray:
    counts = bytearray(math.comb(v, t))
    tabs = [[math.comb(p, j + 1) for p in range(v)] for j in range(t)]
    if t == 3:
        t1, t2, t3 = tabs
        for b in blocks:
            for x, y, z in itertools.combinations(b, 3):
                r = t1[x] + t2[y] + t3[z]
                if counts[r] < 255:
                    counts[r] += 1
    elif t == 2:
        t1, t2 = tabs
        for b in blocks:
            for x, y in itertools.combinations(b, 2):
                r = t1[x] + t2[y]
                if counts[r] < 255:
                    counts[r] += 1
    else:
        for b in blocks:
            for sub in itertools.combinations(b, t):
                r = sum(tab[p] for tab, p in zip(tabs, sub))
                if counts[r] < 255:
                    counts[r] += 1
    return counts


# ---------------------------------------------------------------------------
# verifiers


def verify_steiner(d: Design, witness_limit: int = MAX_WITNESSES) -> VerifyReport:
    """Check that every t-subset of points lies in exactly one block."""
    rep = VerifyReport(_limit=witness_limit)
    counts = _coverage(d.blocks, d.t, d.v)
    if len(d.sizes) == 1:
        (k,) = d.sizes
        expect, exact = expected_block_count(d.t, k, d.v)
        rep.counts["expected_blocks"] = expect if exact else -1
    rep.counts["blocks"] = len(d.blocks)
    if counts != b"\x01" * len(counts):
        for r, c in enumerate(counts):
            if c != 1:
                rep.flag("covered %d times" % c, subset_unrank(r, d.t))
                if len(rep.violations) >= rep._limit:
                    break
    return rep


def _expected_cross_coverage(v: int, t: int, groups: tuple[tuple[int, ...], ...]) -> bytes:
    """1 at the rank of every t-set meeting t distinct groups, else 0."""
    gof = [0] * v
    for gi, cell in enumerate(groups):
        for p in cell:
            gof[p] = gi
    expected = bytearray(math.comb(v, t))
    for sub in itertools.combinations(range(v), t):
        if len({gof[p] for p in sub}) == t:
            expected[subset_rank(sub)] = 1
    return bytes(expected)


_cross_coverage_cache: dict[tuple, bytes] = {}


def verify_gdd(g: Gdd, witness_limit: int = MAX_WITNESSES) -> VerifyReport:
    """Check the block/group intersection rule and exact cross coverage."""
    d = g.design
    rep = VerifyReport(_limit=witness_limit)
    rep.counts["blocks"] = len(d.blocks)
    gof = g.group_of
    for b in d.blocks:
        hit = [gof[p] for p in b]
        if len(set(hit)) != len(hit):
            rep.flag("block meets a group twice", b)
    key = (d.v, d.t, g.groups)
    expected = _cross_coverage_cache.get(key)
    if expected is None:
        expected = _cross_coverage_cache[key] = _expected_cross_coverage(
            d.v, d.t, g.groups
        )
    counts = _coverage(d.blocks, d.t, d.v)
    if counts != expected:
        for r, (c, e) in enumerate(zip(counts, expected)):
            if c != e:
                kind = (
                    "cross set covered %d times" % c if e else "non-cross set covered"
                )
                rep.flag(kind, subset_unrank(r, d.t))
                if len(rep.violations) >= rep._limit:
                    break
    rep.counts["groups"] = len(g.groups)
    return rep


def is_partition(blocks: Sequence[Block], ground: Sequence[int]) -> tuple[str, object] | None:
    """Return a violation witness if ``blocks`` do not partition ``ground``."""
    seen = Counter()
    for b in blocks:
        seen.update(b)
    want = Counter(ground)
    if seen == want:
        return None
    extra = seen - want
    if extra:
        return ("point covered twice or foreign", next(iter(extra)))
    return ("point uncovered", next(iter(want - seen)))


def verify_resolution(r: Resolution, witness_limit: int = MAX_WITNESSES) -> VerifyReport:
    """Each class partitions the ground set; classes exhaust the target."""
    rep = VerifyReport(_limit=witness_limit)
    rep.counts["classes"] = len(r.classes)
    rep.counts["blocks"] = len(r.target)
    union: Counter[Block] = Counter()
    for ci, cls in enumerate(r.classes):
        bad = is_partition(cls, r.ground)
        if bad is not None:
            rep.flag(f"class {ci}: {bad[0]}", bad[1])
        union.update(cls)
    want = Counter(r.target)
    if union != want:
        for b in (union - want):
            rep.flag("block not in target (or over-used)", b)
            break
        for b in (want - union):
            rep.flag("target block missing from classes", b)
            break
    return rep


# ---------------------------------------------------------------------------
# derivation and translation


def derived_design(d: Design, x: Label | str | int) -> Design:
    """Blocks through x with x removed; strength and sizes drop by one.

    The surviving points are re-indexed densely in their original order;
    labels carry over, so label-based lookups keep working.
    """
    xid = d.point(x)
    old_to_new = {}
    labels = []
    for i, lab in enumerate(d.labels):
        if i != xid:
            old_to_new[i] = len(labels)
            labels.append(lab)
    blocks = [
        tuple(old_to_new[p] for p in b if p != xid) for b in d.blocks if xid in b
    ]
    return make_design(
        t=d.t - 1,
        sizes={s - 1 for s in d.sizes},
        labels=labels,
        blocks=blocks,
        kind={"SQS": "STS"}.get(d.kind, "RAW"),
    )


def derived_gdd(g: Gdd, x: Label | str | int) -> Gdd:
    """Remove x's whole group, puncture the blocks through x."""
    d = g.design
    xid = d.point(x)
    gone = g.groups[g.group_of[xid]]
    drop = set(gone)
    old_to_new = {}
    labels = []
    for i, lab in enumerate(d.labels):
        if i not in drop:
            old_to_new[i] = len(labels)
            labels.append(lab)
    blocks = [
        tuple(old_to_new[p] for p in b if p != xid) for b in d.blocks if xid in b
    ]
    design = make_design(
        t=d.t - 1,
        sizes={s - 1 for s in d.sizes},
        labels=labels,
        blocks=blocks,
        kind="GDD",
    )
    groups = tuple(
        tuple(old_to_new[p] for p in cell) for cell in g.groups if cell is not gone
    )
    return Gdd(design=design, groups=groups)


def _permutation(labels: Sequence[Label], index: dict[Label, int], action) -> list[int]:
    perm = []
    for lab in labels:
        img = action(lab)
        if img not in index:
            raise ParameterError(f"action maps {lab.text} outside the point set")
        perm.append(index[img])
    if len(set(perm)) != len(perm):
        raise ParameterError("action is not a bijection on the labels")
    return perm


def translate(obj, action, labels: Sequence[Label] | None = None):
    """Image of a design, GDD, or resolution under a label permutation."""
    if isinstance(obj, Design):
        perm = _permutation(obj.labels, obj.label_index, action)
        blocks = sorted(tuple(sorted(perm[p] for p in b)) for b in obj.blocks)
        return Design(obj.t, obj.sizes, obj.labels, tuple(blocks), obj.kind)
    if isinstance(obj, Gdd):
        design = translate(obj.design, action)
        perm = _permutation(obj.design.labels, obj.design.label_index, action)
        groups = sorted(tuple(sorted(perm[p] for p in cell)) for cell in obj.groups)
        return Gdd(design=design, groups=tuple(groups))
    if isinstance(obj, Resolution):
        if labels is None:
            raise ParameterError("translating a resolution needs the label table")
        index = {lab: i for i, lab in enumerate(labels)}
        perm = _permutation(labels, index, action)
        ground = tuple(sorted(perm[p] for p in obj.ground))
        classes = tuple(
            tuple(sorted(tuple(sorted(perm[p] for p in b)) for b in cls))
            for cls in obj.classes
        )
        target = tuple(sorted(tuple(sorted(perm[p] for p in b)) for b in obj.target))
        return Resolution(ground=ground, classes=classes, target=target)
    raise ParameterError(f"cannot translate {type(obj).__name__}")


def admissible(kind: str, v: int) -> bool:
    """Existence congruence: SQS iff v = 2,4 (mod 6); KTS iff v = 3 (mod 6)."""
    if v < 1:
        raise ParameterError("order must be positive")
    if kind.upper() == "SQS":
        return v % 6 in (2, 4)
    if kind.upper() == "KTS":
        return v % 6 == 3
    raise ParameterError(f"unknown design kind {kind!r}")
