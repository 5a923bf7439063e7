import itertools
import math

import pytest

from quadsys import (
    DuplicateBlockError,
    Label,
    Shift,
    TableError,
    catalog,
    develop,
    verify_gdd,
    verify_resolution,
    verify_steiner,
)
from quadsys.catalog import (
    BaseBlockSystem,
    CongruenceRule,
    audit_rules,
    fill_gdd,
    rule_table_24,
    rule_table_42,
    rule_for_block,
    td343,
)


def steiner_block_count(t, k, v):
    return math.comb(v, t) // math.comb(k, t)


# ---------------------------------------------------------------------------
# orbit development


@pytest.mark.parametrize(
    "name,v,blocks",
    [("sqs8", 8, 14), ("sqs14", 14, 91), ("sqs22", 22, 385), ("sqs28", 28, 819)],
)
def test_catalog_systems_develop_and_verify(name, v, blocks):
    d = catalog.GENERATORS[name]()
    assert d.v == v
    assert len(d.blocks) == blocks == steiner_block_count(3, 4, v)
    assert verify_steiner(d).passed


def test_short_orbit_of_0_7_14_infinity_has_length_7():
    labels = tuple(Label.plain(n) for n in range(21)) + (Label.inf(0),)
    base = (Label.plain(0), Label.plain(7), Label.plain(14), Label.inf(0))
    d = develop(
        BaseBlockSystem(3, frozenset({4}), labels, (base,), Shift(1, 21), kind="RAW")
    )
    assert len(d.blocks) == 7


def test_develop_rejects_overlapping_orbits():
    labels = tuple(Label.plain(n) for n in range(7))
    bases = (
        tuple(Label.plain(n) for n in (0, 1, 2, 5)),
        tuple(Label.plain(n) for n in (1, 2, 3, 6)),  # same orbit, shifted
    )
    with pytest.raises(DuplicateBlockError):
        develop(BaseBlockSystem(3, frozenset({4}), labels, bases, Shift(1, 7), kind="RAW"))


def test_sqs14_orbits_all_have_length_7():
    d = catalog.sqs14()
    assert len(d.blocks) == 13 * 7


# ---------------------------------------------------------------------------
# congruence rules


def test_td343_from_constant_rule():
    rule = CongruenceRule(
        points=tuple(Label.plain(n) for n in (0, 1, 2, 5)),
        coeffs=(1, 1, 1, 1),
        rhs=(0, 0, 0),
    )
    g = td343(rule)
    assert len(g.design.blocks) == 27
    assert g.type_multiset == (3, 3, 3, 3)
    assert verify_gdd(g).passed
    for b in g.design.blocks:
        assert len({p // 3 for p in b}) == 4  # ids are grouped in threes


def test_td343_from_tabulated_rule():
    rule = CongruenceRule(
        points=tuple(Label.plain(n) for n in (4, 5, 6, 2)),
        coeffs=(1, 1, -1, 1),
        rhs=(0, 2, 1),
    )
    g = td343(rule)
    assert len(g.design.blocks) == 27
    assert verify_gdd(g).passed


def test_td343_brute_force_cross_triple_coverage():
    rule = rule_table_24()[0]
    g = td343(rule)
    blocks = set(g.design.blocks)
    gof = g.group_of
    cover = {
        sub: 0
        for sub in itertools.combinations(range(12), 3)
        if len({gof[p] for p in sub}) == 3
    }
    for b in blocks:
        for sub in itertools.combinations(b, 3):
            cover[sub] += 1
    assert set(cover.values()) == {1}


def test_rule_tables_expand_to_the_documented_row_counts():
    assert len(rule_table_24()) == 14
    assert len(rule_table_42()) == 22


def test_rule_for_block_matches_documented_rows():
    d8 = catalog.sqs8()
    block = tuple(sorted(d8.point(x) for x in ("inf_0", "2", "3", "5")))
    rule = rule_for_block(d8, block, rule_table_24())
    assert [lab.text for lab in rule.points] == ["inf_0", "2", "3", "5"]
    assert rule.rhs == (0, 0, 0)

    d14 = catalog.sqs14()
    block = tuple(sorted(d14.point(x) for x in ("0", "2", "7", "9")))
    rule = rule_for_block(d14, block, rule_table_42())
    assert rule.rhs == (2, 1, 0)
    assert rule.coeffs == (1, 1, 1, 1)


def test_audit_rules_matches_every_block_exactly_once():
    d8 = catalog.sqs8()
    rules = audit_rules(d8, rule_table_24(), default=None)
    assert len(rules) == 14
    d14 = catalog.sqs14()
    rules42 = audit_rules(d14, rule_table_42(), default=catalog._DEFAULT_SUM0)
    assert len(rules42) == 91
    explicit = {r.key() for r in rule_table_42()}
    defaulted = sum(
        1 for b, r in rules42.items() if r.key() not in explicit
    )
    assert defaulted == 91 - 22


def test_rule_for_block_without_default_raises_on_miss():
    d14 = catalog.sqs14()
    with pytest.raises(TableError):
        rule_for_block(d14, d14.blocks[0], rule_table_24())


def test_audit_rejects_rows_that_are_not_blocks():
    d8 = catalog.sqs8()
    bogus = CongruenceRule(
        points=tuple(Label.plain(n) for n in (0, 1, 2, 3)),
        coeffs=(1, 1, 1, 1),
        rhs=(0, 0, 0),
    )
    with pytest.raises(TableError):
        audit_rules(d8, rule_table_24() + (bogus,), default=None)


# ---------------------------------------------------------------------------
# filled GDDs


def test_rdgdd24_block_count_and_verification():
    g = catalog.rdgdd24()
    assert len(g.design.blocks) == 14 * 27 == 378
    assert g.type_multiset == (3,) * 8
    assert verify_gdd(g).passed


def test_rdgdd42_block_count_and_verification():
    g = catalog.rdgdd42()
    assert len(g.design.blocks) == 91 * 27 == 2457
    assert g.type_multiset == (3,) * 14
    assert verify_gdd(g).passed


def test_fill_gdd_of_single_block_master_is_the_td_itself():
    labels = tuple(Label.plain(n) for n in range(4))
    from quadsys import make_design

    master = make_design(3, {4}, labels, [(0, 1, 2, 3)], kind="RAW")
    rule = CongruenceRule(
        points=labels, coeffs=(1, 1, 1, 1), rhs=(0, 0, 0)
    )
    filled = fill_gdd(master, {(0, 1, 2, 3): rule})
    td = td343(rule)
    assert filled.design.blocks == td.design.blocks
    assert filled.groups == td.groups


# ---------------------------------------------------------------------------
# shipped resolutions


def test_shipped_resolutions_verify_at_every_point_of_rdgdd24():
    res = catalog.rdgdd24_resolutions()
    assert len(res) == 24
    for point, r in res.items():
        assert len(r.classes) == 9
        assert all(len(cls) == 7 for cls in r.classes)
        assert verify_resolution(r).passed, point


def test_shipped_resolutions_verify_at_every_point_of_rdgdd42():
    res = catalog.rdgdd42_resolutions()
    assert len(res) == 42
    for point, r in res.items():
        assert len(r.classes) == 18
        assert all(len(cls) == 13 for cls in r.classes)
        assert verify_resolution(r).passed, point


def test_sqs22_resolutions_listed_and_translated():
    d = catalog.sqs22()
    res = catalog.sqs22_resolutions()
    assert len(res) == 22
    first_inf = res["inf_0"].classes[0][0]
    assert tuple(d.labels[p].text for p in first_inf) == ("0", "1", "5")
    first_zero = res["0"].classes[0][0]
    assert {d.labels[p].text for p in first_zero} == {"1", "5", "inf_0"}
    for point, r in res.items():
        assert len(r.classes) == 10
        assert verify_resolution(r).passed, point


def test_sqs22_resolution_at_point_13_comes_from_translation():
    d = catalog.sqs22()
    res = catalog.sqs22_resolutions()
    from quadsys import translate

    moved = translate(res["0"], Shift(13, 21), labels=d.labels)
    assert moved.classes == res["13"].classes
    assert verify_resolution(res["13"]).passed


def test_corrupt_shipped_data_is_rejected_at_load(tmp_path, monkeypatch):
    import shutil

    from quadsys import DataIntegrityError
    from quadsys.formats import data_dir

    alt = tmp_path / "data"
    shutil.copytree(data_dir(), alt)
    path = alt / "sqs22_derived.res"
    text = path.read_text()
    # swap two block lines between classes of the first point section
    lines = text.splitlines()
    first = next(i for i, l in enumerate(lines) if l == "CLASS") + 1
    second = next(
        i for i, l in enumerate(lines[first:], start=first) if l == "CLASS"
    ) + 1
    lines[first], lines[second] = lines[second], lines[first]
    path.write_text("\n".join(lines) + "\n")
    monkeypatch.setenv("DESIGN_DATA_DIR", str(alt))
    catalog.sqs22_resolutions.cache_clear()
    catalog.sqs22.cache_clear()
    try:
        with pytest.raises(DataIntegrityError):
            catalog.sqs22_resolutions()
    finally:
        monkeypatch.delenv("DESIGN_DATA_DIR")
        catalog.sqs22_resolutions.cache_clear()
        catalog.sqs22.cache_clear()


def test_shipped_data_orientation_anchors():
    # frozen spot values pin the data files against transposed labels or
    # regeneration drift; the full verification suite proves the rest
    g = catalog.rdgdd24()
    first = catalog.rdgdd24_resolutions()["inf_0"].classes[0]
    texts = {" ".join(g.design.labels[p].text for p in b) for b in first}
    assert "0_0 1_0 3_0" in texts

    g42 = catalog.rdgdd42()
    first42 = catalog.rdgdd42_resolutions()["0_0"].classes[0]
    texts42 = {" ".join(g42.design.labels[p].text for p in b) for b in first42}
    assert {"9_2 10_0 13_2", "1_2 2_2 3_2"} <= texts42

    d28 = catalog.sqs28()
    from quadsys.formats import parse_design, read_data

    raw = parse_design(read_data("sqs28_base.blocks"))
    base_texts = {
        " ".join(raw.labels[p].text for p in b) for b in raw.blocks
    }
    assert {"0_0 1_0 2_1 4_1", "0_0 0_1 0_2 0_3", "4_1 4_3 5_1 5_3"} <= base_texts

    cert = catalog.sqs28_star().per_point[d28.point("0_0")]
    special = [" ".join(d28.labels[p].text for p in b) for b in cert.special]
    assert special == [
        "3_3 5_2 6_1", "1_3 4_3 6_0", "1_2 4_0 6_2", "2_0 3_1 4_1",
        "2_2 3_0 4_2", "3_2 5_1 6_3", "1_0 2_3 5_3", "1_1 2_1 5_0",
        "0_1 0_2 0_3",
    ]
