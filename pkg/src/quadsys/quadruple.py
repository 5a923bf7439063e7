"""Quadrupling construction: an RDSQS(4v) from a star-certified SQS(v).

The engine is a fixed template: the Boolean SQS(16) on GF(16) (zero-sum
quadruples), whose 35 translation orbits split into 7 rows of 5, each row
a resolvable S(2,4,16).  Inside it sit a parallel class P of four groups
(the orbit of {0,1,a,a^4}), a 2-resolvable TD(3,4,4) on those groups (the
16 distinguished orbits, resolving into four TD(2,4,4) rows), and a
remainder that coincides with the two-column blocks cut out by the
one-factorization F1,F2,F3 of Z4.  Everything is renamed once to
Z4 x Z4 coordinates and re-verified from scratch at template build time.

For an input SQS(v) on points X, the output design on X x Z4 is

    union of TD(3,4,4) copies over all blocks,  +  two-column blocks over
    all point pairs,  +  the v column quadruples,

and the per-point parallel classes of the derived KTS(4v-1) are assembled
from the template's derived classes, steered by the star certificate's
class structure and a deterministic first/second-occurrence ledger.
Every assembled class is checked; nothing rests on the construction being
correct on paper.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from . import gf16
from .core import (
    Block,
    ConstructionError,
    Design,
    Gdd,
    Label,
    ParameterError,
    Resolution,
    VerifyReport,
    is_partition,
    make_design,
    verify_gdd,
    verify_resolution,
    verify_steiner,
)
from .star import StarCertificate, StarPointCertificate, verify_star

# one-factorization of Z4: F[s] is a perfect matching on {0,1,2,3}
FACTORIZATION = (
    ((0, 1), (2, 3)),
    ((0, 2), (1, 3)),
    ((0, 3), (1, 2)),
)

# Base-block table of the Boolean SQS(16), one row per S(2,4,16).
# Elements are alpha-power codes: -1 is the zero element, k >= 0 is a^k.
# The first block of the first row generates the group parallel class; the
# blocks flagged in _TD_BASES generate the TD(3,4,4) on those groups.
_ROW_BASES = (
    ((-1, 0, 1, 4), (-1, 2, 3, 6), (-1, 5, 7, 13), (-1, 10, 11, 14), (-1, 8, 9, 12)),
    ((-1, 0, 2, 8), (-1, 1, 7, 14), (-1, 4, 6, 12), (-1, 3, 5, 11), (-1, 9, 10, 13)),
    ((-1, 0, 3, 14), (-1, 2, 4, 10), (-1, 1, 12, 13), (-1, 5, 6, 9), (-1, 7, 8, 11)),
    ((-1, 0, 5, 10), (-1, 1, 6, 11), (-1, 4, 9, 14), (-1, 2, 7, 12), (-1, 3, 8, 13)),
    ((-1, 0, 6, 13), (-1, 3, 4, 7), (-1, 1, 8, 10), (-1, 2, 9, 11), (-1, 5, 12, 14)),
    ((-1, 0, 11, 12), (-1, 1, 3, 9), (-1, 4, 5, 8), (-1, 6, 7, 10), (-1, 2, 13, 14)),
    ((-1, 0, 7, 9), (-1, 1, 2, 5), (-1, 4, 11, 13), (-1, 6, 8, 14), (-1, 3, 10, 12)),
)
# positions of the TD-generating base blocks within _ROW_BASES
_TD_POSITIONS = ((0, 1), (0, 2), (0, 3), (0, 4)) + tuple(
    (r, c) for r in range(1, 7) for c in (3, 4)
)
# rows of the TD(3,4,4) 2-resolution: each row is a resolvable TD(2,4,4)
_TD_ROW_BASES = (
    ((-1, 2, 3, 6), (-1, 5, 7, 13), (-1, 10, 11, 14), (-1, 8, 9, 12)),
    ((-1, 3, 5, 11), (-1, 2, 7, 12), (-1, 9, 10, 13), (-1, 6, 8, 14)),
    ((-1, 5, 6, 9), (-1, 7, 8, 11), (-1, 2, 13, 14), (-1, 3, 10, 12)),
    ((-1, 3, 8, 13), (-1, 2, 9, 11), (-1, 5, 12, 14), (-1, 6, 7, 10)),
)
# renaming of GF(16) onto Z4 x Z4: row a lists the elements named a_0..a_3
_RENAMING = (
    (-1, 0, 1, 4),
    (2, 8, 5, 10),
    (3, 14, 9, 7),
    (6, 13, 11, 12),
)


def _elem(code: int) -> int:
    return 0 if code == -1 else gf16.alpha_power(code)


def _orbit(block: frozenset[int]) -> list[frozenset[int]]:
    """Distinct translates of a block under the additive group."""
    out = []
    for t in range(16):
        img = frozenset(gf16.add(e, t) for e in block)
        if img not in out:
            out.append(img)
    return out


@dataclass(frozen=True)
class Sqs16Template:
    """The Boolean SQS(16) in Z4 x Z4 coordinates (point 4a+i is a_i).

    ``row_classes[r]`` holds row r as 5 orbit parallel classes; rows 1..6
    in table order provide the derived class indices 0..5 used by the
    quadrupling construction, row 0 (the group-carrying row) is index 6.
    ``td_derived[p][j]`` are the 4 derived triples of TD row j at point p;
    ``e_derived[p][j]`` the 5 derived triples of template row (j+1 mod 7)
    at p, with ``e_derived[p][6]`` containing ``degenerate[p]``, the column
    triple through p.
    """

    blocks: tuple[Block, ...]
    row_classes: tuple[tuple[tuple[Block, ...], ...], ...]
    group_blocks: tuple[Block, ...]
    td_blocks: tuple[Block, ...]
    td_row_classes: tuple[tuple[tuple[Block, ...], ...], ...]
    two_column_blocks: tuple[Block, ...]
    td_derived: tuple[tuple[tuple[Block, ...], ...], ...]
    e_derived: tuple[tuple[tuple[Block, ...], ...], ...]
    degenerate: tuple[Block, ...]


def _z_block(block: frozenset[int], rename: dict[int, int]) -> Block:
    return tuple(sorted(rename[e] for e in block))


@lru_cache(maxsize=None)
def template() -> Sqs16Template:
    rename = {}
    for a, row in enumerate(_RENAMING):
        for i, code in enumerate(row):
            rename[_elem(code)] = 4 * a + i
    if len(rename) != 16:
        raise ConstructionError("renaming is not a bijection")

    row_classes = []
    all_blocks: list[Block] = []
    for row in _ROW_BASES:
        classes = []
        for base in row:
            orbit = _orbit(frozenset(_elem(c) for c in base))
            classes.append(tuple(sorted(_z_block(b, rename) for b in orbit)))
        row_classes.append(tuple(classes))
        for cls in classes:
            all_blocks.extend(cls)
    all_blocks.sort()

    group_blocks = row_classes[0][0]
    td_blocks: list[Block] = []
    td_set_positions = set(_TD_POSITIONS)
    two_column: list[Block] = []
    for r, row in enumerate(row_classes):
        for c, cls in enumerate(row):
            if (r, c) in td_set_positions:
                td_blocks.extend(cls)
            elif (r, c) != (0, 0):
                two_column.extend(cls)
    td_blocks.sort()
    two_column.sort()

    td_row_classes = []
    for row in _TD_ROW_BASES:
        classes = []
        for base in row:
            orbit = _orbit(frozenset(_elem(c) for c in base))
            classes.append(tuple(sorted(_z_block(b, rename) for b in orbit)))
        td_row_classes.append(tuple(classes))

    td_derived = []
    e_derived = []
    degenerate = []
    for p in range(16):
        td_derived.append(
            tuple(
                tuple(
                    sorted(
                        tuple(q for q in blk if q != p)
                        for cls in row
                        for blk in cls
                        if p in blk
                    )
                )
                for row in td_row_classes
            )
        )
        # rows 1..6 take indices 0..5, the group-carrying row 0 is index 6
        e_derived.append(
            tuple(
                tuple(
                    sorted(
                        tuple(q for q in blk if q != p)
                        for cls in row_classes[(j + 1) % 7]
                        for blk in cls
                        if p in blk
                    )
                )
                for j in range(7)
            )
        )
        degenerate.append(tuple(q for q in range(4 * (p // 4), 4 * (p // 4) + 4) if q != p))

    return Sqs16Template(
        blocks=tuple(all_blocks),
        row_classes=tuple(row_classes),
        group_blocks=group_blocks,
        td_blocks=tuple(td_blocks),
        td_row_classes=tuple(td_row_classes),
        two_column_blocks=tuple(two_column),
        td_derived=tuple(td_derived),
        e_derived=tuple(e_derived),
        degenerate=tuple(degenerate),
    )


def _z_labels() -> tuple[Label, ...]:
    return tuple(Label.pair(a, i) for a in range(4) for i in range(4))


@lru_cache(maxsize=None)
def verify_template() -> VerifyReport:
    """Re-prove every structural claim the construction relies on."""
    rep = VerifyReport()
    tpl = template()

    zero_sum = sorted(
        tuple(sorted(b))
        for b in (
            tuple(q) for q in itertools.combinations(range(16), 4)
        )
        if 0 == _xor_sum(b)
    )
    rename = {}
    for a, row in enumerate(_RENAMING):
        for i, code in enumerate(row):
            rename[_elem(code)] = 4 * a + i
    zero_sum_z = sorted(tuple(sorted(rename[e] for e in b)) for b in zero_sum)
    if list(tpl.blocks) != zero_sum_z:
        rep.flag("developed blocks differ from the zero-sum quadruples", None)
    if len(tpl.blocks) != 140:
        rep.flag("block count", len(tpl.blocks))

    labels = _z_labels()
    columns = tuple(tuple(range(4 * a, 4 * a + 4)) for a in range(4))
    if tuple(sorted(tpl.group_blocks)) != columns:
        rep.flag("group orbit is not the four columns", tpl.group_blocks)

    for r, row in enumerate(tpl.row_classes):
        flat = [b for cls in row for b in cls]
        d = make_design(2, {4}, labels, flat, kind="RAW")
        sub = verify_steiner(d)
        if not sub.passed:
            rep.flag(f"row {r} is not an S(2,4,16)", sub.violations[:1])
        for ci, cls in enumerate(row):
            bad = is_partition(cls, range(16))
            if bad is not None:
                rep.flag(f"row {r} orbit {ci} is not a parallel class", bad[1])

    td = Gdd(
        design=make_design(3, {4}, labels, tpl.td_blocks, kind="TD"),
        groups=columns,
    )
    sub = verify_gdd(td)
    if not sub.passed:
        rep.flag("distinguished orbits are not a TD(3,4,4)", sub.violations[:1])
    if sorted(len(g) for g in td.groups) != [4, 4, 4, 4]:
        rep.flag("TD type", td.groups)

    td_rows_flat: list[Block] = []
    for r, row in enumerate(tpl.td_row_classes):
        flat = [b for cls in row for b in cls]
        td_rows_flat.extend(flat)
        sub = verify_gdd(
            Gdd(design=make_design(2, {4}, labels, flat, kind="TD"), groups=columns)
        )
        if not sub.passed:
            rep.flag(f"TD row {r} is not a TD(2,4,4)", sub.violations[:1])
        for ci, cls in enumerate(row):
            bad = is_partition(cls, range(16))
            if bad is not None:
                rep.flag(f"TD row {r} orbit {ci} is not a parallel class", bad[1])
    if sorted(td_rows_flat) != list(tpl.td_blocks):
        rep.flag("TD rows do not partition the TD blocks", None)

    want_c = sorted(two_column_blocks(range(4)))
    if list(tpl.two_column_blocks) != want_c:
        rep.flag("remainder orbits differ from the two-column blocks", None)

    for p in range(16):
        others = tuple(q for q in range(16) if q != p)
        for j in range(7):
            cls = tpl.e_derived[p][j]
            if len(cls) != 5 or is_partition(cls, others) is not None:
                rep.flag(f"derived class {j} at {p} is not a parallel class", cls)
        if tpl.degenerate[p] not in tpl.e_derived[p][6]:
            rep.flag("column triple missing from derived class 6", p)
        for j in range(4):
            cls = tpl.td_derived[p][j]
            ground = tuple(q for q in others if q // 4 != p // 4)
            if len(cls) != 4 or is_partition(cls, ground) is not None:
                rep.flag(f"derived TD class {j} at {p} is not a parallel class", cls)
    return rep


def _xor_sum(block: Iterable[int]) -> int:
    acc = 0
    for e in block:
        acc ^= e
    return acc


# ---------------------------------------------------------------------------
# public pieces


def boolean_sqs16() -> Design:
    """The Boolean SQS(16): all zero-sum quadruples of GF(16)."""
    labels = tuple(Label.f16(b) for b in range(16))
    blocks = [
        b
        for b in itertools.combinations(range(16), 4)
        if _xor_sum(b) == 0
    ]
    return make_design(3, {4}, labels, blocks, kind="SQS")


def rdtd_blocks(block: Block) -> list[Block]:
    """The TD(3,4,4) copy on block x Z4, groups in sorted block order.

    Points of the ambient 4v-point design are numbered 4*x+i for x a point
    id of the input design and i in Z4.
    """
    if len(block) != 4:
        raise ParameterError("TD copies exist only over 4-point blocks")
    b = sorted(block)
    return [
        tuple(sorted(4 * b[q // 4] + q % 4 for q in tb))
        for tb in template().td_blocks
    ]


def two_column_blocks(points: Iterable[int]) -> list[Block]:
    """Blocks {(x,a),(x,b),(y,c),(y,d)} with both edges in one factor."""
    out = []
    for x, y in itertools.combinations(sorted(points), 2):
        for factor in FACTORIZATION:
            for a, b in factor:
                for c, d in factor:
                    out.append(tuple(sorted((4 * x + a, 4 * x + b, 4 * y + c, 4 * y + d))))
    return out


def assemble_design(cert: StarCertificate) -> Design:
    """The SQS(4v): TD copies over blocks + two-column blocks + columns."""
    d = cert.design
    labels = tuple(Label.pair(m, j) for m in range(d.v) for j in range(4))
    blocks: list[Block] = []
    for b in d.blocks:
        blocks.extend(rdtd_blocks(b))
    blocks.extend(two_column_blocks(range(d.v)))
    blocks.extend(tuple(range(4 * x, 4 * x + 4)) for x in range(d.v))
    return make_design(3, {4}, labels, blocks, kind="SQS")


def e_classes(b4: Block, x: int, i: int) -> tuple[tuple[Block, ...], ...]:
    """The 7 derived classes at (x,i) of the SQS(16) copy on b4 x Z4.

    ``b4`` must contain x.  Class 6 is the one containing the column
    triple ({x} x Z4) minus (x,i); classes 0..5 follow the template's row
    order.
    """
    bs = sorted(b4)
    a = bs.index(x)
    tpl = template()
    out = []
    for j in range(7):
        out.append(
            tuple(
                tuple(sorted(4 * bs[q // 4] + q % 4 for q in tri))
                for tri in tpl.e_derived[4 * a + i][j]
            )
        )
    return tuple(out)


# ---------------------------------------------------------------------------
# the assembly


def occurrence_map(pc: StarPointCertificate) -> dict[tuple[int, int, Block], int]:
    """First/second occurrence of each non-special triple, in (group, class)
    lexicographic order over the certificate's class list."""
    seen: Counter[Block] = Counter()
    occ: dict[tuple[int, int, Block], int] = {}
    for k, grp in enumerate(pc.groups):
        for l, cls in enumerate(grp.classes):
            for tri in cls:
                if tri == grp.common:
                    continue
                n = seen[tri]
                if n > 1:
                    raise ConstructionError(
                        f"triple {tri} occurs more than twice outside the special class"
                    )
                occ[(k, l, tri)] = n
                seen[tri] = n + 1
    return occ


class QuadrupleAssembly:
    """An SQS(4v) plus one verified resolution per point.

    Construction is deterministic: given the same certificate, every block
    list, class list, and report is identical between runs.
    """

    def __init__(self, cert: StarCertificate):
        self.cert = cert
        self.design = assemble_design(cert)
        self._tpl = template()
        # derived triples of the assembled design, per point, in parent ids
        derived: list[list[Block]] = [[] for _ in range(self.design.v)]
        for blk in self.design.blocks:
            for p in blk:
                derived[p].append(tuple(q for q in blk if q != p))
        self._derived = [tuple(sorted(t)) for t in derived]
        self._occ: dict[int, dict[tuple[int, int, Block], int]] = {}

    def _occ_for(self, x: int) -> dict[tuple[int, int, Block], int]:
        if x not in self._occ:
            self._occ[x] = occurrence_map(self.cert.per_point[x])
        return self._occ[x]

    def point_resolution(self, p: int) -> Resolution:
        """The 2v-1 parallel classes of the derived design at point p."""
        x, i = divmod(p, 4)
        pc = self.cert.per_point[x]
        occ = self._occ_for(x)
        tpl = self._tpl
        ground = tuple(q for q in range(self.design.v) if q != p)
        degenerate = tuple(q for q in range(4 * x, 4 * x + 4) if q != p)

        classes: list[tuple[Block, ...]] = []
        for k, grp in enumerate(pc.groups):
            b4 = sorted(grp.common + (x,))
            zp = 4 * b4.index(x) + i
            for l, cls in enumerate(grp.classes):
                for r in (0, 1):
                    blocks: list[Block] = []
                    for tri in cls:
                        if tri == grp.common:
                            continue
                        bb = sorted(tri + (x,))
                        zq = 4 * bb.index(x) + i
                        r_prime = r + 2 * occ[(k, l, tri)]
                        for tb in tpl.td_derived[zq][r_prime]:
                            blocks.append(
                                tuple(sorted(4 * bb[q // 4] + q % 4 for q in tb))
                            )
                    for tb in tpl.e_derived[zp][2 * l + r]:
                        blocks.append(
                            tuple(sorted(4 * b4[q // 4] + q % 4 for q in tb))
                        )
                    bad = is_partition(blocks, ground)
                    if bad is not None:
                        raise ConstructionError(
                            f"class (x={x}, i={i}, k={k}, l={l}, r={r}) "
                            f"is not a parallel class: {bad}"
                        )
                    classes.append(tuple(sorted(blocks)))

        final: list[Block] = [degenerate]
        for grp in pc.groups:
            b4 = sorted(grp.common + (x,))
            zp = 4 * b4.index(x) + i
            for tb in tpl.e_derived[zp][6]:
                if tb == tpl.degenerate[zp]:
                    continue
                final.append(tuple(sorted(4 * b4[q // 4] + q % 4 for q in tb)))
        bad = is_partition(final, ground)
        if bad is not None:
            raise ConstructionError(
                f"final class at (x={x}, i={i}) is not a parallel class: {bad}"
            )
        classes.append(tuple(sorted(final)))

        return Resolution(
            ground=ground, classes=tuple(classes), target=self._derived[p]
        )

    def verify_point(self, p: int) -> VerifyReport:
        return verify_resolution(self.point_resolution(p))

    def iter_resolutions(self) -> Iterator[tuple[int, Resolution]]:
        for p in range(self.design.v):
            yield p, self.point_resolution(p)


def construct_rdsqs_4v(cert: StarCertificate, progress=None) -> QuadrupleAssembly:
    """Build and fully verify the RDSQS(4v); fails loudly otherwise.

    Checks, in order: the template's structural claims, the certificate,
    strength 3 of the assembled design over every point triple, and the
    partition/multiset conditions of all 4v derived resolutions.
    """
    verify_template().require("SQS(16) template")
    verify_star(cert).require("star certificate")
    asm = QuadrupleAssembly(cert)
    verify_steiner(asm.design).require(f"SQS({asm.design.v})")
    for p in range(asm.design.v):
        asm.verify_point(p).require(
            f"derived resolution at {asm.design.labels[p].text}"
        )
        if progress is not None:
            progress(p)
    return asm
