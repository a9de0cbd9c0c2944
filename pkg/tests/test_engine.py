"""Invariant engine: frozen fixtures for every rule family, bounds,
families, and the report plumbing."""

import random

import pytest

from wqometer import (
    Gamma,
    HypothesisNotMet,
    Ord,
    Pf,
    Sim,
    SimExt,
    UnsupportedComputation,
    Words,
    cmp,
    invariants,
    nat_prod,
    parse_expr,
    parse_ordinal,
    pf_bounds,
    pf_phi_invariants,
    phi_invariants,
    sim_invariants,
    two_pow,
    weak_mot,
)

from genlib import random_elementary

o = parse_ordinal


def rep(text):
    return invariants(parse_expr(text))


def exact(result):
    assert result.kind == "exact", result
    return result.value


# --- the example table (the twelve frozen values) ---------------------------


def test_example_table_base_orders():
    for text in ("(w+w)|(w+w)", "(w|w)+(w|w)"):
        r = rep(text)
        assert str(exact(r.mot)) == "w*4"
        assert str(exact(r.height)) == "w*2"
        assert str(exact(r.width)) == "2"


def test_example_table_powersets():
    r = rep("Pf((w+w)|(w+w))")
    assert str(exact(r.mot)) == "w^2*4"
    assert str(exact(r.height)) == "w*3"
    assert str(exact(r.width)) == "w*3"

    r = rep("Pf((w|w)+(w|w))")
    assert str(exact(r.mot)) == "w^2*2"
    assert str(exact(r.height)) == "w*2"
    assert str(exact(r.width)) == "w"


# --- exact elementary path ----------------------------------------------------


def test_elementary_fixtures():
    r = rep("Pf(o(w^w))")
    assert exact(r.mot) == o("w^w")
    assert exact(r.height) == o("w^w")
    assert exact(r.width) == o("1")
    # Pf over an ordinal rewrites away, so the weakened m.o.t. is the
    # leaf's (consistent with h(Pf(Pf(a))) = h(Pf(a)) = a)
    assert r.weak_mot == o("w^w")

    r = rep("o(w^w)|o(w^(w^2))")
    assert exact(r.mot) == o("w^(w^2)+w^w")
    assert exact(r.height) == o("w^(w^2)")
    assert exact(r.width) == o("2")
    assert r.weak_mot == o("w^(w^2)")

    r = rep("o(w^w)*o(w^w)")
    assert exact(r.mot) == o("w^(w*2)")
    assert exact(r.height) == o("w^w")  # hat-sum of two limits
    assert exact(r.width) == o("w^(w*2)")

    r = rep("M(o(w^w))")
    assert exact(r.mot) == o("w^(w^w)")
    assert exact(r.height) == o("w^w")
    assert exact(r.width) == o("w^(w^w)")


def test_words_tower_fixture():
    r = rep("Pf(o(w^w)^<w)")
    tower = o("w^(w^(w^(w^w)))")
    assert exact(r.mot) == tower
    assert exact(r.width) == tower
    assert exact(r.height) == o("w^w")
    assert r.weak_mot == o("w^(w^w)")

    r = rep("Pf(Pf(o(w^w)^<w))")
    assert exact(r.height) == o("w^(w^w)")  # 2^(w^w)


def test_weak_mot_fixtures():
    assert weak_mot(parse_expr("o(w^w)")) == o("w^w")
    assert weak_mot(parse_expr("o(w^w)^<w")) == o("w^w")
    assert weak_mot(parse_expr("Pf(o(w^(w^2))^<w)")) == o("w^(w^(w^2))")
    assert weak_mot(parse_expr("M(o(w^w))|o(w^(w^2))")) == o("w^(w^2)")
    with pytest.raises(UnsupportedComputation):
        weak_mot(parse_expr("G(3)"))
    with pytest.raises(UnsupportedComputation):
        weak_mot(parse_expr("w"))


def test_weak_mot_always_mult_indecomposable():
    rng = random.Random(4242)
    for _ in range(150):
        e = random_elementary(rng, rng.randint(1, 10))
        assert weak_mot(e).is_multiplicatively_indecomposable


def test_powerset_sandwich_coherence():
    # o(Pf(E)) = 2^o(E) whenever w(E) = o(E) (unions and bare ordinals are
    # the only elementary shapes that miss the hypothesis), and the exact
    # values always sit inside the bound table's sound intervals
    rng = random.Random(515)
    for _ in range(60):
        e = random_elementary(rng, rng.randint(1, 6))
        base = invariants(e)
        full = invariants(Pf(e))
        assert full.mot.kind == "exact"
        if base.width.value == base.mot.value:
            assert full.mot.value == two_pow(base.mot.value)
            assert full.width.value == full.mot.value
        bounds = pf_bounds(e)
        assert bounds.mot.admits(full.mot.value)
        assert bounds.height.admits(full.height.value)
        assert bounds.width.admits(full.width.value)


# --- omega-elementary height --------------------------------------------------


def test_omega_elementary_height():
    for text in ("M(o(w))", "Pf(w^<w)", "M(M(w))", "Pf(w|w)*M(w)"):
        r = rep(text)
        assert exact(r.height) == o("w"), text
        assert "omega-elementary-height" in r.notes

    r = rep("M(o(w))")
    assert exact(r.mot) == o("w^w")
    assert exact(r.width) == o("w^w")


# --- general compositional rules ----------------------------------------------


def test_general_ordinal_and_gamma():
    r = rep("o(w^2+3)")
    assert exact(r.mot) == o("w^2+3")
    assert exact(r.height) == o("w^2+3")
    assert exact(r.width) == o("1")

    r = rep("0")
    assert exact(r.mot) == o("0")
    assert exact(r.width) == o("0")

    r = rep("G(4)")
    assert exact(r.mot) == o("4")
    assert exact(r.height) == o("1")
    assert exact(r.width) == o("4")


def test_general_sums():
    r = rep("G(2)|o(w)")
    assert exact(r.mot) == o("w+2")
    assert exact(r.height) == o("w")
    assert exact(r.width) == o("3")

    r = rep("o(w)++G(2)")
    assert exact(r.mot) == o("w+2")
    assert exact(r.height) == o("w+1")
    assert exact(r.width) == o("2")


def test_cartesian_product_general():
    r = rep("o(w)*o(w*2)")
    assert exact(r.mot) == o("w^2*2")
    assert exact(r.height) == o("w*2")
    assert exact(r.width) == o("w*2")  # w(w x alpha) = alpha
    r = rep("o(w*2)*o(w*2)")
    assert exact(r.width) == o("w*3")  # catalogued fixture
    r = rep("G(2)*3")
    assert exact(r.mot) == o("6")
    assert exact(r.height) == o("3")  # 1 hat-sum 3
    assert r.width.kind == "unsupported"
    assert r.width.reason == "width-of-product-non-functional"


def test_product_width_lower_bound():
    r = rep("M(o(w))*G(3)")
    assert exact(r.mot) == o("w^w*3")
    assert r.width.kind == "lower"
    assert r.width.lower == o("w^w*3")  # w(M(w)) * o(G(3))


def test_product_units():
    r = rep("o(w^2)*1")
    assert exact(r.mot) == o("w^2")
    assert exact(r.width) == o("1")
    r = rep("0*G(3)")
    assert exact(r.mot) == o("0")
    r = rep("o(w^2).1")
    assert exact(r.mot) == o("w^2")


def test_lex_product():
    r = rep("3.w")
    assert exact(r.mot) == o("w")
    assert exact(r.height) == o("w")
    assert exact(r.width) == o("1")

    r = rep("o(w).o(w^2)")
    assert exact(r.mot) == o("w^3")
    assert exact(r.height) == o("w^3")
    assert exact(r.width) == o("1")

    # chain . chain fuses into a single chain, so no hypothesis is needed
    r = rep("o(w).3")
    assert exact(r.mot) == o("w*3")
    assert exact(r.height) == o("w*3")
    assert exact(r.width) == o("1")

    # o(B) successor with a non-chain left factor: the m.o.t. rule's
    # hypothesis fails while h and w still come out exact
    r = rep("w^<w.3")
    assert r.mot.kind == "unsupported"
    assert r.mot.reason == "hypothesis-not-met:lex-product-mot:o(B) is a limit ordinal"
    assert exact(r.height) == o("w*3")
    assert exact(r.width) == o("w^(w^w)")

    # width via the unrolled-sum product
    r = rep("(G(2)|G(2)).o(w)")
    assert r.width.kind == "unsupported"  # 4 is not additively indecomposable
    assert r.width.reason == "unsupported-odot"


def test_words_general():
    r = rep("G(2)^<w")
    assert exact(r.mot) == o("w^w")
    assert exact(r.height) == o("w")
    assert exact(r.width) == o("w^w")

    r = rep("2^<w")
    assert exact(r.mot) == o("w^w")  # w^(w^pm(2)) = w^(w^1)
    assert exact(r.height) == o("w")
    assert exact(r.width) == o("w^w")

    r = rep("1^<w")
    assert exact(r.mot) == o("w")
    assert exact(r.height) == o("w")
    assert exact(r.width) == o("1")

    r = rep("0^<w")
    assert exact(r.mot) == o("1")

    r = rep("o(w+1)^<w")
    assert exact(r.mot) == o("w^(w^(w+1))")
    assert exact(r.height) == o("w^2")  # hstar(w+1)


def test_multisets_general():
    r = rep("M(G(2))")
    assert exact(r.mot) == o("w^2")
    assert exact(r.height) == o("w")
    assert r.width.kind == "unsupported"
    assert r.width.reason.startswith("hypothesis-not-met:multisets-width")

    r = rep("M(o(w^2))")
    assert exact(r.mot) == o("w^(w^2)")
    assert exact(r.height) == o("w^2")
    assert exact(r.width) == o("w^(w^2)")

    r = rep("M(1)")
    assert exact(r.mot) == o("w")
    assert exact(r.width) == o("1")

    r = rep("M(0)")
    assert exact(r.mot) == o("1")


def test_fixed_size_multisets():
    r = rep("Mn(G(2), 0)")
    assert exact(r.mot) == o("1")
    r = rep("Mn(G(2), 2)")
    assert r.mot.kind == "unsupported"
    assert r.mot.reason == "fixed-size-multisets-no-rule"


def test_pf_general_bounds():
    r = rep("Pf(G(3))")
    assert r.mot.kind == "interval"
    assert (r.mot.lower, r.mot.upper) == (o("4"), o("8"))
    assert r.height.kind == "interval" and r.height.finite_multiple
    assert r.height.lower == o("2")
    assert r.width.kind == "lower" and r.width.lower == o("3")

    # powerset of a surviving product: bounds over exact parts
    r = rep("Pf(o(w)*o(w))")
    assert r.mot.kind == "interval"
    assert (r.mot.lower, r.mot.upper) == (o("w^2"), o("w^w"))
    assert exact(r.height) == o("w")  # [1+w, 2^w] collapses; omega-elementary too
    assert r.width.kind == "lower" and r.width.lower == o("w")


def test_pf_plus_general():
    r = rep("Pf+(G(2))")
    assert r.mot.kind == "interval"
    assert (r.mot.lower, r.mot.upper) == (o("2"), o("3"))
    assert r.height.kind == "interval" and r.height.finite_multiple
    assert r.height.lower == o("1")
    assert r.width.kind == "lower" and r.width.lower == o("2")

    r = rep("Pf+(0)")
    assert exact(r.mot) == o("0")


def test_report_json_schema():
    data = rep("Pf(G(2))").to_json()
    assert set(data) == {"mot", "height", "width", "weak_mot", "notes"}
    assert data["mot"]["kind"] == "interval"
    assert data["height"]["upper_modifier"] == "finite-multiple"
    assert data["width"]["kind"] == "lower"
    assert data["weak_mot"] is None

    data = rep("o(w^w)").to_json()
    assert data["mot"] == {"kind": "exact", "value": "w^w"}
    assert data["weak_mot"] == "w^w"

    data = rep("Mn(G(2), 2)").to_json()
    assert data["mot"] == {"kind": "unsupported", "reason": "fixed-size-multisets-no-rule"}


# --- powerset bound table ------------------------------------------------------


def test_pf_bounds_fixtures():
    r = pf_bounds(parse_expr("Phi(w^2)"))  # base height is w^2
    assert (r.height.lower, r.height.upper) == (o("w^2"), o("w^w"))
    assert not r.height.finite_multiple

    r = pf_bounds(parse_expr("o(w)"))
    assert r.mot.kind == "exact" and r.mot.value == o("w")
    assert r.height.kind == "exact" and r.height.value == o("w")

    r = pf_bounds(parse_expr("G(4)"))
    assert (r.mot.lower, r.mot.upper) == (o("5"), o("16"))
    assert r.width.lower == o("6")  # Sperner C(4,2)
    assert any(n.startswith("width-cap") for n in r.notes)

    r = pf_bounds(parse_expr("o(w+1)"))  # successor height -> finite multiple
    assert r.height.finite_multiple
    # 1+(w+1) = w+1 and 2^(w+1) = w*2
    assert (r.height.lower, r.height.upper) == (o("w+1"), o("w*2"))


# --- families -------------------------------------------------------------------


def test_phi_family():
    r = phi_invariants(o("w^2+w"))
    assert exact(r.mot) == o("w^2+w")
    assert exact(r.width) == o("w^2+w")
    assert exact(r.height) == o("w^2")

    r = phi_invariants(o("3"))
    assert exact(r.mot) == o("3")
    assert exact(r.height) == o("1")

    with pytest.raises(HypothesisNotMet):
        phi_invariants(o("0"))


def test_pf_phi_family():
    r = pf_phi_invariants(o("w"))
    assert exact(r.mot) == o("w")
    assert exact(r.width) == o("w")
    assert exact(r.height) == o("w")  # interval [w, 2^w] collapses

    r = pf_phi_invariants(o("w^2"))
    assert exact(r.mot) == o("w^w")
    assert exact(r.width) == o("w^w")
    assert (r.height.lower, r.height.upper) == (o("w^2"), o("w^w"))

    r = pf_phi_invariants(o("4"))
    assert exact(r.mot) == o("16")
    assert exact(r.width) == o("6")

    # the engine dispatches Pf(Phi(a)) to the family values
    r = rep("Pf(Phi(w^2))")
    assert exact(r.mot) == o("w^w")
    assert exact(r.width) == o("w^w")


def test_sim_family():
    r = sim_invariants(o("w^w"))
    assert exact(r.height) == o("w^w")
    assert exact(r.mot) == o("w^(w^(w^(w^w)))")
    assert r.weak_mot == o("w^(w^w)")

    r = sim_invariants(o("w"))
    assert exact(r.mot) == o("w")
    assert exact(r.width) == o("1")

    r = rep("Pf(Sim(w^w))")
    assert exact(r.height) == o("w^(w^w)")  # 2^(w^w)

    with pytest.raises(HypothesisNotMet):
        sim_invariants(o("w^2"))
    with pytest.raises(HypothesisNotMet):
        sim_invariants(o("w*2"))
    with pytest.raises(HypothesisNotMet):
        invariants(Sim(o("5")))


def test_sim_extended_family():
    r = sim_invariants(o("w^w"), ext=3)
    assert exact(r.height) == o("w^w+1")
    assert exact(r.mot) == o("w^(w^(w^(w^w)))*3+3")
    assert r.width.kind == "lower"
    assert any("powerset-height-lower-bound: w^(w^w)*3" == n for n in r.notes)

    r = rep("Pf(SimExt(w^w, 3))")
    assert r.height.kind == "lower"
    assert r.height.lower == o("w^(w^w)*3")  # 2^(w^w) * 3

    with pytest.raises(ValueError):
        sim_invariants(o("w^w"), ext=0)


# --- cross-cutting sanity --------------------------------------------------------


def test_exact_reports_satisfy_inequalities():
    rng = random.Random(606)
    texts = [
        "(w+w)|(w+w)",
        "Pf((w+w)|(w+w))",
        "M(o(w))",
        "G(3)*G(2)",
        "o(w)*o(w*2)",
        "Phi(w^2+1)|o(w^3)",
    ]
    for t in texts:
        r = rep(t)
        if r.mot.kind == r.height.kind == r.width.kind == "exact":
            assert cmp(r.height.value, r.mot.value) <= 0
            assert cmp(r.width.value, r.mot.value) <= 0
            assert cmp(r.mot.value, nat_prod(r.height.value, r.width.value)) <= 0
    for _ in range(80):
        e = random_elementary(rng, rng.randint(1, 8))
        r = invariants(e)
        assert cmp(r.mot.value, nat_prod(r.height.value, r.width.value)) <= 0


def test_families_compose_inside_expressions():
    r = rep("Phi(w)|G(2)")
    assert exact(r.mot) == o("w+2")
    assert exact(r.height) == o("w")
    assert exact(r.width) == o("w+2")
