"""Star certificates: per-point resolution data for the doubling input.

A star certificate for an SQS(v) with v = 1 (mod 3) fixes, at every point
x, a distinguished parallel class P'_x of derived triples plus a partition
of the multiset M (each P'_x triple three times, every other derived
triple twice) into v-1 parallel classes, grouped in threes that share
their P'_x triple.  ``verify_star_point`` checks all of that exhaustively
against the derived block multiset, so a certificate that verifies is a
proof.

Certificates are expressed in the ids of the ambient design; classes are
kept in certificate order because the quadrupling construction indexes
them by (group, class) position.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .core import (
    Block,
    DataIntegrityError,
    Design,
    Shift,
    VerifyReport,
    admissible,
    is_partition,
    verify_steiner,
)


@dataclass(frozen=True)
class StarGroup:
    """Three parallel classes sharing one common triple."""

    common: Block
    classes: tuple[tuple[Block, ...], ...]


@dataclass(frozen=True)
class StarPointCertificate:
    point: int
    special: tuple[Block, ...]
    groups: tuple[StarGroup, ...]

    def all_classes(self) -> tuple[tuple[Block, ...], ...]:
        """The v-1 classes in (group, class) order."""
        return tuple(cls for grp in self.groups for cls in grp.classes)


@dataclass(frozen=True)
class StarCertificate:
    design: Design
    per_point: dict[int, StarPointCertificate]


def derived_block_multiset(d: Design, xid: int) -> Counter[Block]:
    return Counter(
        tuple(p for p in b if p != xid) for b in d.blocks if xid in b
    )


def star_multiset(bx: Counter[Block], special: tuple[Block, ...]) -> Counter[Block]:
    """M: each special triple three times, each remaining triple twice."""
    m = Counter()
    for b, c in bx.items():
        m[b] = 2 * c
    for b in special:
        m[b] += 1
    return m


def verify_star_point(d: Design, cert: StarPointCertificate) -> VerifyReport:
    rep = VerifyReport()
    xid = cert.point
    ground = tuple(p for p in range(d.v) if p != xid)
    n = (d.v - 1) // 3

    bx = derived_block_multiset(d, xid)

    bad = is_partition(cert.special, ground)
    if bad is not None:
        rep.flag(f"special class: {bad[0]}", bad[1])
    for b in cert.special:
        if b not in bx:
            rep.flag("special triple not a derived block", b)

    if len(cert.groups) != n:
        rep.flag("group count", len(cert.groups))
    commons = Counter(grp.common for grp in cert.groups)
    if commons != Counter(cert.special):
        rep.flag("common triples do not equal the special class", None)

    union: Counter[Block] = Counter()
    for gi, grp in enumerate(cert.groups):
        for li, cls in enumerate(grp.classes):
            if grp.common not in cls:
                rep.flag(f"group {gi} class {li} misses its common triple", grp.common)
            bad = is_partition(cls, ground)
            if bad is not None:
                rep.flag(f"group {gi} class {li}: {bad[0]}", bad[1])
            union.update(cls)

    m = star_multiset(bx, cert.special)
    if union != m:
        over = union - m
        under = m - union
        if over:
            rep.flag("triple over-used in the class multiset", next(iter(over)))
        if under:
            rep.flag("triple missing from the class multiset", next(iter(under)))
    rep.counts["classes"] = sum(len(g.classes) for g in cert.groups)
    rep.counts["multiset"] = sum(union.values())
    return rep


def translate_star_point(
    d: Design, cert: StarPointCertificate, action: Shift
) -> StarPointCertificate:
    """Image of a point certificate under a label automorphism."""
    index = d.label_index
    perm = [index[action(lab)] for lab in d.labels]

    def move(b: Block) -> Block:
        return tuple(sorted(perm[p] for p in b))

    def move_class(cls: tuple[Block, ...]) -> tuple[Block, ...]:
        return tuple(sorted(move(b) for b in cls))

    return StarPointCertificate(
        point=perm[cert.point],
        special=tuple(sorted(move(b) for b in cert.special)),
        groups=tuple(
            StarGroup(common=move(g.common), classes=tuple(move_class(c) for c in g.classes))
            for g in cert.groups
        ),
    )


def expand_certificate(
    d: Design,
    seeds: dict[int, StarPointCertificate],
    action: Shift,
    order: int,
    verify: bool = True,
) -> StarCertificate:
    """Spread seed certificates over the whole point set by a cyclic action.

    Every translated certificate is re-verified; shipped data is never
    trusted past parse time.
    """
    per_point: dict[int, StarPointCertificate] = {}
    for seed in seeds.values():
        cert = seed
        for j in range(order):
            if cert.point in per_point:
                raise DataIntegrityError(
                    f"point {d.labels[cert.point].text} covered twice by expansion"
                )
            if verify:
                verify_star_point(d, cert).require(
                    f"star certificate at {d.labels[cert.point].text}"
                )
            per_point[cert.point] = cert
            if j + 1 < order:
                cert = translate_star_point(d, cert, action)
    if len(per_point) != d.v:
        raise DataIntegrityError(
            f"expansion covers {len(per_point)} of {d.v} points"
        )
    return StarCertificate(design=d, per_point=per_point)


def verify_star(cert: StarCertificate) -> VerifyReport:
    """Full certificate check: SQS + admissibility + every point."""
    rep = VerifyReport()
    d = cert.design
    if d.v % 3 != 1 or not admissible("SQS", d.v):
        rep.flag("order not admissible for a star certificate", d.v)
    steiner = verify_steiner(d)
    if not steiner.passed:
        rep.flag("underlying design is not Steiner", steiner.violations[:1])
    missing = set(range(d.v)) - set(cert.per_point)
    for p in sorted(missing):
        rep.flag("point without certificate", p)
    for p, pc in sorted(cert.per_point.items()):
        if not 0 <= p < d.v:
            rep.flag("certificate for a point outside the design", p)
            continue
        if pc.point != p:
            rep.flag("certificate filed under wrong point", p)
            continue
        sub = verify_star_point(d, pc)
        if not sub.passed:
            rep.flag(f"point {d.labels[p].text}", sub.violations[:2])
    rep.counts["points"] = len(cert.per_point)
    rep.counts["blocks"] = len(d.blocks)
    return rep
