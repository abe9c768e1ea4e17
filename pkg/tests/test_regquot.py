import json

import pytest

from alcove.affweyl import context
from alcove.fusion import build_table
from alcove.regquot import (Kind, LinkageError, NoBaseDatumError, PrincipalFusionRule, RegObject,
                            RegQuotError, ZERO, builtin_a2_rules, linkage_class_of, make_label,
                            omega_inverse, omega_mul, omega_twist, regpart_objects, regpart_tensor,
                            rules_for, translate, translate_between)


@pytest.fixture(scope="module")
def a2():
    ctx = context("A", 2, 5)
    return ctx, build_table(ctx), builtin_a2_rules()


def L(ctx, word, lam=(0, 0)):
    return make_label(ctx, Kind.SIMPLE, word, lam)


def M(ctx, lam=(0, 0)):
    return make_label(ctx, Kind.CUSTOM, None, lam, "M")


def test_label_rendering_and_canonical_form(a2):
    ctx, _, _ = a2
    assert L(ctx, "e").render(ctx) == "L(0,0)"
    assert L(ctx, "s0s2", (2, 0)).render(ctx) == "L(s0s2;2,0)"
    assert M(ctx).render(ctx) == "M(0,0)"
    assert make_label(ctx, Kind.TILTING, None, (7, 1)).render(ctx) == "T(7,1)"
    # the Ω part of x is absorbed into the weight slot
    label = L(ctx, "s0s2w1")
    assert ctx.omega_of(label.x).index == 0
    assert label.lam == ctx.omega_by_name("w1").zero_image
    assert label.highest_weight(ctx) == (ctx.ell, 0)


def test_label_validation(a2):
    ctx, _, _ = a2
    with pytest.raises(RegQuotError):
        L(ctx, "e", (3, 0))  # outside the fundamental alcove
    with pytest.raises(RegQuotError):
        L(ctx, "e", (1, 0, 0))
    with pytest.raises(RegQuotError):
        L(ctx, "s1")  # not in the dominant chamber
    with pytest.raises(RegQuotError):
        make_label(ctx, Kind.CUSTOM, "s0", (0, 0), "M")
    with pytest.raises(RegQuotError):
        make_label(ctx, Kind.CUSTOM, None, (0, 0))
    with pytest.raises(RegQuotError):
        make_label(ctx, Kind.TILTING, None, (-1, 0))


def test_kind_parse():
    assert Kind.parse("simple") is Kind.SIMPLE
    assert Kind.parse("L") is Kind.SIMPLE
    assert Kind.parse("delta") is Kind.WEYL
    assert Kind.parse("T") is Kind.TILTING


def test_translate(a2):
    ctx, _, _ = a2
    assert translate(ctx, ZERO, (1, 1)) == ZERO
    obj = RegObject.of([M(ctx), L(ctx, "s0")])
    moved = translate(ctx, obj, (1, 1))
    assert moved == RegObject.of([M(ctx, (1, 1)), L(ctx, "s0", (1, 1))])
    assert translate_between(ctx, moved, (1, 1), (2, 0)) == translate(ctx, obj, (2, 0))
    with pytest.raises(RegQuotError):
        translate_between(ctx, obj, (1, 1), (2, 0))  # labels do not sit at (1,1)
    with pytest.raises(RegQuotError):
        translate(ctx, obj, (3, 0))


def test_omega_twist(a2):
    ctx, _, _ = a2
    e, w1, w2 = ctx.omega_group
    obj = RegObject.of([L(ctx, "e"), M(ctx)])
    assert omega_twist(ctx, obj, e) == obj
    assert omega_twist(ctx, RegObject.of([L(ctx, "e")]), w1) == RegObject.of([L(ctx, "e", (2, 0))])
    assert omega_twist(ctx, omega_twist(ctx, obj, w1), omega_inverse(ctx, w1)) == obj
    assert omega_mul(ctx, w1, w1) == w2 and omega_mul(ctx, w1, w2) == e


def test_regobject_arithmetic_and_render(a2):
    ctx, _, _ = a2
    a = RegObject.of([L(ctx, "e")])
    b = (a + a + RegObject.of([M(ctx)]))
    assert b.render(ctx) == "M(0,0) + L(0,0)^2"
    assert b.scaled(0) == ZERO and not ZERO and len(b) == 3
    assert ZERO.render(ctx) == "0"


def test_principal_rules_reproduced_at_zero(a2):
    ctx, table, rules = a2
    got = regpart_tensor(ctx, ("s0", (0, 0), None), ("s0", (0, 0), None), rules, table)
    assert got == RegObject.of([M(ctx), L(ctx, "e")])
    got = regpart_tensor(ctx, ("s0s1", (0, 0), None), ("s0s2", (0, 0), None), rules, table)
    assert got == RegObject.of([L(ctx, "s0s1s2s1"), L(ctx, "e")])


def test_regpart_symmetric_and_unit(a2):
    ctx, table, rules = a2
    weights = ctx.fundamental_weights_in_alcove
    for lam in weights:
        for mu in weights:
            a = regpart_tensor(ctx, ("s0s1", lam, None), ("s0s2", mu, None), rules, table)
            b = regpart_tensor(ctx, ("s0s2", mu, None), ("s0s1", lam, None), rules, table)
            assert a == b
            unit = regpart_tensor(ctx, ("s0s1s2s1", lam, None), ("e", mu, None), rules, table)
            assert unit == RegObject.of(
                [(L(ctx, "s0s1s2s1", nu), c) for nu, c in table.row(lam, mu).items()])


def test_regpart_result_is_linkage_blocked(a2):
    ctx, table, rules = a2
    got = regpart_tensor(ctx, ("s0", (1, 0), None), ("s0", (0, 1), None), rules, table)
    for nu in table.row((1, 0), (0, 1)):
        block = RegObject.of([(lb, m) for lb, m in got.items if lb.lam == nu])
        assert linkage_class_of(ctx, block) == nu


def test_missing_base_datum(a2):
    ctx, table, rules = a2
    with pytest.raises(NoBaseDatumError):
        regpart_tensor(ctx, ("s0", (0, 0), None), ("s0s1", (0, 0), None), rules, table)
    with pytest.raises(NoBaseDatumError):
        regpart_objects(ctx, RegObject.of([make_label(ctx, Kind.WEYL, "s0")]),
                        RegObject.of([L(ctx, "s0")]), rules, table)
    with pytest.raises(RegQuotError):
        regpart_tensor(ctx, ("s1", (0, 0), None), ("e", (0, 0), None), rules, table)


def test_min_ell_guard():
    ctx = context("A", 2, 4)
    table = build_table(ctx)
    rules = builtin_a2_rules()
    with pytest.raises(NoBaseDatumError, match="ell >= 5"):
        regpart_tensor(ctx, ("s0s1", (0, 0), None), ("s0s2", (0, 0), None), rules, table)
    assert regpart_tensor(ctx, ("s0", (0, 0), None), ("s0", (0, 0), None), rules, table)


def test_linkage_errors(a2):
    ctx, _, _ = a2
    with pytest.raises(LinkageError):
        linkage_class_of(ctx, ZERO)
    with pytest.raises(LinkageError):
        linkage_class_of(ctx, RegObject.of([L(ctx, "e"), L(ctx, "s0", (1, 0))]))
    assert linkage_class_of(ctx, RegObject.of([L(ctx, "s0s1", (1, 0)), M(ctx, (1, 0))])) == (1, 0)


def test_negligible_summands_are_dropped(a2):
    ctx, table, rules = a2
    a = RegObject.of([L(ctx, "s0", (1, 0))])
    b = RegObject.of([L(ctx, "s0", (0, 1))])
    base = regpart_objects(ctx, a, b, rules, table)
    noisy = b + RegObject.of([make_label(ctx, Kind.TILTING, None, (4, 0))])
    assert regpart_objects(ctx, a, noisy, rules, table) == base


def test_rule_file_round_trip(a2, tmp_path):
    ctx, table, _ = a2
    data = {
        "family": "a", "rank": 2,
        "rules": [{"x": "s0", "y": "s0s1", "out": [{"kind": "L", "w": "s0s1s2s1", "mult": 2}]}],
        "custom": {"N": {"factors": {"e": 1}, "layers": [["e"]], "relation": "[N]=[T]"}},
    }
    path = tmp_path / "rules.json"
    path.write_text(json.dumps(data))
    extra = PrincipalFusionRule.load(path)
    assert extra.custom["N"].layers == (("e",),)
    rules = rules_for(ctx, extra)
    got = regpart_tensor(ctx, ("s0s1", (0, 0), None), ("s0", (0, 0), None), rules, table)
    assert got == RegObject.of([(L(ctx, "s0s1s2s1"), 2)])
    with pytest.raises(RegQuotError):
        PrincipalFusionRule.from_json('{"family": "A"}')
    with pytest.raises(RegQuotError):
        rules_for(context("B", 2, 5), extra)
