"""Generators for the concrete designs shipped with the package.

Small quadruple systems are developed from base blocks under a cyclic
action (short orbits detected by iteration, duplicates across orbits are a
hard error).  The two group divisible designs are built by expanding every
block of a quadruple-system master into a transversal design on
block x Z3, where the transversal design is cut out by a signed congruence
on the second coordinates.  Large tabular data (derived-design
resolutions, the 28-point base blocks and star certificate) ships as text
files under data/ and is re-verified by the callers; nothing is trusted
because it was checked in.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import formats, quadruple
from .core import (
    Block,
    ConstructionError,
    Design,
    DuplicateBlockError,
    Gdd,
    Label,
    ParameterError,
    Resolution,
    Shift,
    TableError,
    make_design,
    plain_labels,
    translate,
    verify_gdd,
    verify_resolution,
)
from .star import StarCertificate, expand_certificate


# ---------------------------------------------------------------------------
# orbit development


@dataclass(frozen=True)
class BaseBlockSystem:
    """Base blocks plus the cyclic label action that develops them."""

    t: int
    sizes: frozenset[int]
    labels: tuple[Label, ...]
    base_blocks: tuple[tuple[Label, ...], ...]
    action: Shift
    kind: str = "SQS"


def develop(sys: BaseBlockSystem) -> Design:
    """Union of the base-block orbits, each block appearing exactly once."""
    index = {lab: i for i, lab in enumerate(sys.labels)}
    try:
        perm = [index[sys.action(lab)] for lab in sys.labels]
    except KeyError as exc:
        raise ParameterError(f"action leaves the label set at {exc.args[0]}") from None
    seen: dict[Block, tuple[Label, ...]] = {}
    blocks: list[Block] = []
    for base in sys.base_blocks:
        start = tuple(sorted(index[lab] for lab in base))
        b = start
        while True:
            if b in seen:
                raise DuplicateBlockError(
                    f"block {b} generated by both {seen[b]} and {base}"
                )
            seen[b] = base
            blocks.append(b)
            b = tuple(sorted(perm[p] for p in b))
            if b == start:
                break
    return make_design(sys.t, sys.sizes, sys.labels, blocks, kind=sys.kind)


# ---------------------------------------------------------------------------
# congruence-rule transversal designs and the filling construction


@dataclass(frozen=True)
class CongruenceRule:
    """Blocks {(a0,x),(a1,y),(a2,z),(a3,u)} with c0*x+c1*y+c2*z+c3*u = m(x).

    The tuple order is the table's, not sorted: the congruence is
    order-sensitive.  ``rhs`` maps the first coordinate x to m; constant
    right-hand sides are stored as constant maps.
    """

    points: tuple[Label, ...]
    coeffs: tuple[int, int, int, int]
    rhs: tuple[int, int, int]

    def key(self) -> frozenset[Label]:
        return frozenset(self.points)


def expand_label(lab: Label, j: int) -> Label:
    """The copy of a master point in fibre j (plain a -> a_j, inf -> inf_j)."""
    if lab.kind == "plain":
        return Label.pair(lab.a, j)
    if lab.kind == "inf":
        return Label.inf(j)
    raise ParameterError(f"cannot expand label kind {lab.kind!r}")


def td343(rule: CongruenceRule) -> Gdd:
    """The 27-block TD(3,4,3) on tuple x Z3 cut out by the congruence."""
    if any(c not in (1, -1) for c in rule.coeffs):
        raise ParameterError("congruence coefficients must be +1 or -1")
    labels = sorted(
        (expand_label(lab, j) for lab in rule.points for j in range(3)),
        key=Label.sort_key,
    )
    index = {lab: i for i, lab in enumerate(labels)}
    c0, c1, c2, c3 = rule.coeffs
    inv3 = {1: 1, -1: 2}[c3]  # inverse of c3 mod 3
    blocks = []
    for x in range(3):
        for y in range(3):
            for z in range(3):
                u = (inv3 * (rule.rhs[x] - c0 * x - c1 * y - c2 * z)) % 3
                blocks.append(
                    (
                        index[expand_label(rule.points[0], x)],
                        index[expand_label(rule.points[1], y)],
                        index[expand_label(rule.points[2], z)],
                        index[expand_label(rule.points[3], u)],
                    )
                )
    design = make_design(3, {4}, labels, blocks, kind="TD")
    groups = tuple(
        sorted(
            tuple(sorted(index[expand_label(lab, j)] for j in range(3)))
            for lab in rule.points
        )
    )
    gdd = Gdd(design=design, groups=groups)
    report = verify_gdd(gdd)
    if not report.passed:  # unreachable for +-1 coefficients; kept as a guard
        raise ConstructionError(f"congruence rule is not a TD: {report.violations[:2]}")
    return gdd


def rule_for_block(
    d: Design, block: Block, table: tuple[CongruenceRule, ...],
    default: CongruenceRule | None = None,
) -> CongruenceRule:
    """The unique table row matching a developed block (set equality)."""
    want = frozenset(d.labels[p] for p in block)
    hits = [r for r in table if r.key() == want]
    if len(hits) > 1:
        raise TableError(f"block {block} matches {len(hits)} rows")
    if hits:
        return hits[0]
    if default is not None:
        return CongruenceRule(
            points=tuple(d.labels[p] for p in block),
            coeffs=default.coeffs,
            rhs=default.rhs,
        )
    raise TableError(f"block {block} matches no row")


def audit_rules(
    d: Design, table: tuple[CongruenceRule, ...], default: CongruenceRule | None
) -> dict[Block, CongruenceRule]:
    """Match every block to exactly one rule; any inconsistency is an error."""
    blocks = {frozenset(d.labels[p] for p in b): b for b in d.blocks}
    if len(blocks) != len(d.blocks):
        raise TableError("design has repeated blocks")
    used = set()
    for ri, rule in enumerate(table):
        if rule.key() not in blocks:
            raise TableError(f"row {ri} ({[l.text for l in rule.points]}) is not a block")
        if rule.key() in used:
            raise TableError(f"row {ri} duplicates an earlier row")
        used.add(rule.key())
    return {b: rule_for_block(d, b, table, default) for b in d.blocks}


def fill_gdd(master: Design, rules: dict[Block, CongruenceRule], g: int = 3) -> Gdd:
    """Replace every master block by its transversal design on block x Zg.

    The result is a GDD(t, 4, g*v) of type g^v with groups {y} x Zg; its
    defining property is certified separately by verify_gdd.
    """
    labels = sorted(
        (expand_label(lab, j) for lab in master.labels for j in range(g)),
        key=Label.sort_key,
    )
    index = {lab: i for i, lab in enumerate(labels)}
    blocks: list[Block] = []
    for b in master.blocks:
        sub = td343(rules[b])
        sub_labels = sub.design.labels
        for blk in sub.design.blocks:
            blocks.append(tuple(sorted(index[sub_labels[p]] for p in blk)))
    design = make_design(master.t, {4}, labels, blocks, kind="GDD")
    groups = tuple(
        sorted(
            tuple(sorted(index[expand_label(lab, j)] for j in range(g)))
            for lab in master.labels
        )
    )
    return Gdd(design=design, groups=groups)


# ---------------------------------------------------------------------------
# the shipped designs


def _plain(*ns: int) -> tuple[Label, ...]:
    return tuple(Label.plain(n) for n in ns)


_INF = Label.inf(0)


@lru_cache(maxsize=None)
def sqs8() -> Design:
    labels = plain_labels(7) + (_INF,)
    bases = (
        (_INF, Label.plain(0), Label.plain(1), Label.plain(3)),
        _plain(0, 1, 2, 5),
    )
    return develop(BaseBlockSystem(3, frozenset({4}), labels, bases, Shift(1, 7)))


_SQS14_BASES = (
    (0, 1, 2, 3), (0, 3, 5, 9), (0, 5, 6, 13), (0, 3, 4, 13), (1, 7, 11, 13),
    (0, 2, 7, 9), (0, 1, 6, 7), (0, 3, 7, 10), (0, 3, 6, 11), (0, 2, 11, 13),
    (0, 2, 4, 8), (0, 1, 4, 5), (1, 6, 10, 12),
)


@lru_cache(maxsize=None)
def sqs14() -> Design:
    labels = plain_labels(14)
    bases = tuple(_plain(*b) for b in _SQS14_BASES)
    return develop(BaseBlockSystem(3, frozenset({4}), labels, bases, Shift(2, 14)))


_SQS22_BASES = (
    (0, 1, 5, None), (0, 1, 2, 4), (0, 2, 5, 13), (0, 1, 9, 18), (0, 1, 11, 16),
    (0, 3, 9, None), (0, 2, 7, 9), (0, 3, 7, 16), (0, 1, 6, 10), (0, 2, 15, 18),
    (0, 2, 10, None), (0, 1, 7, 12), (0, 1, 13, 17), (0, 2, 6, 12), (0, 3, 10, 14),
    (0, 7, 14, None), (0, 1, 8, 14), (0, 1, 15, 19), (0, 2, 8, 11),
)


@lru_cache(maxsize=None)
def sqs22() -> Design:
    labels = plain_labels(21) + (_INF,)
    bases = tuple(
        tuple(_INF if n is None else Label.plain(n) for n in b) for b in _SQS22_BASES
    )
    return develop(BaseBlockSystem(3, frozenset({4}), labels, bases, Shift(1, 21)))


@lru_cache(maxsize=None)
def sqs16() -> Design:
    return quadruple.boolean_sqs16()


@lru_cache(maxsize=None)
def sqs28() -> Design:
    """Developed from the shipped 117 base blocks under +1 mod 7 on a_i."""
    raw = formats.parse_design(formats.read_data("sqs28_base.blocks"))
    assert isinstance(raw, Design)
    bases = tuple(tuple(raw.labels[p] for p in b) for b in raw.blocks)
    return develop(
        BaseBlockSystem(3, frozenset({4}), raw.labels, bases, Shift(1, 7))
    )


# ---------------------------------------------------------------------------
# congruence tables


def _rule(points, coeffs, rhs) -> CongruenceRule:
    rhs = (rhs, rhs, rhs) if isinstance(rhs, int) else tuple(rhs)
    return CongruenceRule(points=tuple(points), coeffs=tuple(coeffs), rhs=rhs)


def _p(n: int) -> Label:
    return Label.plain(n)


@lru_cache(maxsize=None)
def rule_table_24() -> tuple[CongruenceRule, ...]:
    rows = []
    for i in (0, 1):
        rows.append(_rule((_INF, _p(i), _p(1 + i), _p(3 + i)), (1, 1, 1, 1), (0, 2, 1)))
    for i in (2, 3, 4, 5, 6):
        rows.append(
            _rule((_INF, _p(i), _p((1 + i) % 7), _p((3 + i) % 7)), (1, 1, 1, 1), 0)
        )
    for i in (0, 2, 6):
        rows.append(
            _rule(
                (_p(i), _p((1 + i) % 7), _p((2 + i) % 7), _p((5 + i) % 7)),
                (1, 1, -1, -1),
                0,
            )
        )
    for i in (1, 3):
        rows.append(
            _rule(
                (_p(i), _p((1 + i) % 7), _p((2 + i) % 7), _p((5 + i) % 7)),
                (1, 1, 1, 1),
                0,
            )
        )
    rows.append(_rule((_p(4), _p(5), _p(6), _p(2)), (1, 1, -1, 1), (0, 2, 1)))
    rows.append(_rule((_p(5), _p(6), _p(0), _p(3)), (1, 1, -1, 1), 0))
    return tuple(rows)


_TABLE_42_SUM_102 = ((4, 6, 8, 12), (2, 5, 7, 11), (8, 11, 12, 7))
_TABLE_42_SUM_210 = ((0, 2, 7, 9), (10, 12, 3, 5))
_TABLE_42_DIFF_1 = (
    (8, 9, 12, 13), (4, 6, 11, 13), (11, 3, 7, 9),
    (4, 5, 11, 10), (6, 8, 5, 3), (10, 13, 9, 0),
    (12, 3, 7, 1), (9, 4, 6, 0), (12, 4, 9, 1),
)
_TABLE_42_DIFF_2 = (
    (13, 4, 10, 8), (12, 5, 8, 1), (12, 2, 11, 1),
    (12, 9, 11, 0), (6, 12, 5, 11), (12, 13, 3, 2),
    (4, 7, 9, 13), (6, 9, 5, 10),
)


@lru_cache(maxsize=None)
def rule_table_42() -> tuple[CongruenceRule, ...]:
    rows = []
    for tup in _TABLE_42_SUM_102:
        rows.append(_rule(_plain(*tup), (1, 1, 1, 1), (1, 0, 2)))
    for tup in _TABLE_42_SUM_210:
        rows.append(_rule(_plain(*tup), (1, 1, 1, 1), (2, 1, 0)))
    for tup in _TABLE_42_DIFF_1:
        rows.append(_rule(_plain(*tup), (1, 1, 1, -1), 1))
    for tup in _TABLE_42_DIFF_2:
        rows.append(_rule(_plain(*tup), (1, 1, 1, -1), 2))
    return tuple(rows)


_DEFAULT_SUM0 = CongruenceRule(points=(), coeffs=(1, 1, 1, 1), rhs=(0, 0, 0))


@lru_cache(maxsize=None)
def rdgdd24() -> Gdd:
    master = sqs8()
    rules = audit_rules(master, rule_table_24(), default=None)
    return fill_gdd(master, rules)


@lru_cache(maxsize=None)
def rdgdd42() -> Gdd:
    master = sqs14()
    rules = audit_rules(master, rule_table_42(), default=_DEFAULT_SUM0)
    return fill_gdd(master, rules)


# ---------------------------------------------------------------------------
# shipped resolutions and certificates


def _verified(res: dict[str, Resolution]) -> dict[str, Resolution]:
    """Ingested resolution data is never trusted, only re-proven."""
    for point, r in res.items():
        verify_resolution(r).require(f"shipped resolution at {point}")
    return res


@lru_cache(maxsize=None)
def rdgdd24_resolutions() -> dict[str, Resolution]:
    g = rdgdd24()
    raw = formats.parse_resolution(formats.read_data("rdgdd24_derived.res"), g.design)
    return _verified({
        point: formats.gdd_resolution_for_point(g, point, classes)
        for point, classes in raw.items()
    })


@lru_cache(maxsize=None)
def rdgdd42_resolutions() -> dict[str, Resolution]:
    g = rdgdd42()
    raw = formats.parse_resolution(formats.read_data("rdgdd42_derived.res"), g.design)
    return _verified({
        point: formats.gdd_resolution_for_point(g, point, classes)
        for point, classes in raw.items()
    })


@lru_cache(maxsize=None)
def sqs22_resolutions() -> dict[str, Resolution]:
    """Listed resolutions at inf_0 and 0, the other 20 points by +p mod 21."""
    d = sqs22()
    raw = formats.parse_resolution(formats.read_data("sqs22_derived.res"), d)
    out = {
        point: formats.resolution_for_point(d, point, classes)
        for point, classes in raw.items()
    }
    base = out["0"]
    for p in range(1, 21):
        img = translate(base, Shift(p, 21), labels=d.labels)
        out[str(p)] = img
    return _verified(out)


@lru_cache(maxsize=None)
def sqs28_star() -> StarCertificate:
    """The full 28-point star certificate, expanded from the 4 seed points."""
    d = sqs28()
    seeds = formats.parse_star(formats.read_data("sqs28_star.star"), d)
    by_id = {cert.point: cert for cert in seeds.values()}
    return expand_certificate(d, by_id, Shift(1, 7), order=7)


GENERATORS = {
    "sqs8": sqs8,
    "sqs14": sqs14,
    "sqs16": sqs16,
    "sqs22": sqs22,
    "sqs28": sqs28,
    "rdgdd24": rdgdd24,
    "rdgdd42": rdgdd42,
}
