import json
import random

import pytest

from peirce_lab import (
    MapTable,
    SpecError,
    additivity_defect,
    build_map,
    check_additive,
    check_defect_identities,
    check_reverse_law,
    classify_map,
    construct_catalog_ring,
    is_generalized_derivation,
    is_n_multiplicative,
    load_map,
    peirce_decompose,
    verify_reverse_map_structure,
)

import oracles


# -- construction -----------------------------------------------------------------


def test_build_catalog_eg1_map_values(eg1_z5):
    m = build_map(eg1_z5, "eg1_map")
    # image of M(m,n,p) is M(m, n*p, -p)
    assert m(eg1_z5.element((0, 2, 2))) == eg1_z5.element((0, 4, 3))
    assert m(eg1_z5.element((1, 2, 3))) == eg1_z5.element((1, 1, 2))


def test_build_catalog_eg1_map_mod7():
    ring = construct_catalog_ring("eg1", [7])
    m = build_map(ring, "eg1_map")
    assert m(ring.element((1, 2, 3))) == ring.element((1, 6, 4))


def test_zero_map(eg2):
    z = build_map(eg2, "zero")
    assert all(z(x) == eg2.zero for x in eg2.elements())


def test_build_from_raw_table(z4):
    m = build_map(z4, [0, 0, 2, 0], label="t")
    assert m(z4.element((2,))) == z4.element((2,))
    with pytest.raises(SpecError):
        build_map(z4, [0, 0, 9, 0])
    with pytest.raises(SpecError):
        build_map(z4, [0, 0])


def test_build_arity_mismatch(eg2):
    with pytest.raises(SpecError, match="coordinates"):
        build_map(eg2, "eg1_map")


def test_build_unknown_catalog(eg2):
    with pytest.raises(SpecError, match="unknown catalog map"):
        build_map(eg2, "not_a_map")


def test_map_file_formats(tmp_path, eg2):
    catalog = tmp_path / "m1.json"
    catalog.write_text(json.dumps({"type": "catalog", "name": "eg2_map"}))
    m1 = load_map(eg2, str(catalog))

    expr = tmp_path / "m2.json"
    expr.write_text(
        json.dumps({"type": "expr", "vars": ["a", "b"], "expr": "vars a,b : (0, b)"})
    )
    m2 = load_map(eg2, str(expr))

    table = tmp_path / "m3.json"
    table.write_text(json.dumps(m1.to_dict()))
    m3 = load_map(eg2, str(table))

    assert m1.as_tuple() == m2.as_tuple() == m3.as_tuple()


def test_map_file_validation(tmp_path, eg2):
    bad_vars = {"type": "expr", "vars": ["x", "y"], "expr": "vars a,b : (0, b)"}
    with pytest.raises(SpecError, match="disagree"):
        build_map(eg2, bad_vars)
    partial = {"type": "table", "entries": [[[0, 0], [0, 0]]]}
    with pytest.raises(SpecError, match="not total"):
        build_map(eg2, partial)
    with pytest.raises(SpecError, match="unknown map source"):
        build_map(eg2, {"type": "wat"})


# -- classification of the worked examples ------------------------------------------


def test_eg1_map_is_nonadditive_reverse_derivable(eg1_z5):
    cls = classify_map(build_map(eg1_z5, "eg1_map"))
    assert cls.reverse_derivation.ok
    assert not cls.additive.ok
    # lowest violating pair, frozen from the plain-loop scan
    assert cls.additive.witness == (
        eg1_z5.element((0, 1, 0)),
        eg1_z5.element((0, 0, 1)),
    )


def test_eg1_map_witness_matches_naive_scan(eg1_z5):
    m = build_map(eg1_z5, "eg1_map")
    assert classify_map(m).additive.witness == oracles.naive_first_nonadditive_pair(m)


def test_lambda_is_reverse_derivation_not_derivation(eg3_z5):
    cls = classify_map(build_map(eg3_z5, "lambda"))
    assert cls.reverse_derivation.ok
    assert cls.additive.ok
    assert not cls.derivation.ok


def test_phi_is_derivation_not_reverse(eg3_z5):
    cls = classify_map(build_map(eg3_z5, "phi"))
    assert cls.derivation.ok
    assert cls.additive.ok
    assert not cls.reverse_derivation.ok


def test_eg2_map_is_additive_reverse_derivable(eg2):
    cls = classify_map(build_map(eg2, "eg2_map"))
    assert cls.reverse_derivation.ok
    assert cls.additive.ok


def test_classification_flags_match_naive(eg3_z5):
    for name in ("lambda", "phi", "zero"):
        m = build_map(eg3_z5, name)
        cls = classify_map(m)
        assert cls.additive.ok == oracles.naive_is_additive(m)
        assert cls.reverse_derivation.ok == oracles.naive_is_reverse_derivable(m)
        assert cls.derivation.ok == oracles.naive_is_derivation_law(m)


def test_failing_flags_carry_violating_witnesses(eg3_z5):
    ring = eg3_z5
    rng = random.Random(7)
    for _ in range(5):
        m = MapTable(ring, [rng.randrange(ring.order) for _ in range(ring.order)])
        cls = classify_map(m)
        for check, law in (
            (cls.additive, lambda a, b: m(ring.add(a, b)) == ring.add(m(a), m(b))),
            (
                cls.reverse_derivation,
                lambda a, b: m(ring.mul(a, b))
                == ring.add(ring.mul(m(b), a), ring.mul(b, m(a))),
            ),
            (
                cls.derivation,
                lambda a, b: m(ring.mul(a, b))
                == ring.add(ring.mul(m(a), b), ring.mul(a, m(b))),
            ),
            (cls.left_centralizer, lambda a, b: m(ring.mul(a, b)) == ring.mul(m(a), b)),
            (cls.right_centralizer, lambda a, b: m(ring.mul(a, b)) == ring.mul(a, m(b))),
        ):
            if not check.ok:
                a, b = check.witness
                assert not law(a, b)


def test_commutative_ring_derivation_equals_reverse(z4, eg2):
    rng = random.Random(3)
    for ring in (z4, eg2):
        for _ in range(20):
            m = MapTable(ring, [rng.randrange(ring.order) for _ in range(ring.order)])
            cls = classify_map(m)
            assert cls.derivation.ok == cls.reverse_derivation.ok


def test_jordan_flag_on_jordan_but_not_derivation(m2z2):
    # every map satisfying the derivation law satisfies the Jordan law
    rng = random.Random(11)
    seen_jordan = 0
    for _ in range(50):
        m = MapTable(m2z2, [rng.randrange(16) for _ in range(16)])
        cls = classify_map(m)
        if cls.derivation.ok:
            assert cls.jordan_derivation.ok
        if cls.jordan_derivation.ok:
            seen_jordan += 1
    z = build_map(m2z2, "zero")
    assert classify_map(z).jordan_derivation.ok


# -- n-multiplicative --------------------------------------------------------------


def test_two_multiplicative_equals_derivation_law(eg3_z5):
    phi = build_map(eg3_z5, "phi")
    assert is_n_multiplicative(phi, 2).ok == classify_map(phi).derivation.ok


def test_zero_map_is_n_multiplicative(eg2):
    z = build_map(eg2, "zero")
    assert is_n_multiplicative(z, 2).ok
    assert is_n_multiplicative(z, 3).ok


def test_eg1_map_is_3_multiplicative(eg1_z5):
    # all triple products vanish, so the triple law reduces to sums of terms
    # with two zero factors
    assert is_n_multiplicative(build_map(eg1_z5, "eg1_map"), 3).ok


def test_n_multiplicative_rejects_bad_n(eg2):
    with pytest.raises(SpecError):
        is_n_multiplicative(build_map(eg2, "zero"), 4)


def test_n_multiplicative_witness(z4):
    m = MapTable(z4, [0, 1, 0, 0])
    check = is_n_multiplicative(m, 3)
    if not check.ok:
        a, b, c = check.witness
        abc = z4.mul(z4.mul(a, b), c)
        rhs = z4.add(
            z4.add(z4.mul(z4.mul(m(a), b), c), z4.mul(z4.mul(a, m(b)), c)),
            z4.mul(z4.mul(a, b), m(c)),
        )
        assert m(abc) != rhs


# -- generalized derivations ----------------------------------------------------------


def test_derivation_is_generalized_over_itself(eg3_z5):
    phi = build_map(eg3_z5, "phi")
    assert is_generalized_derivation(phi, phi).ok


def test_zero_pair_is_generalized(eg2):
    z = build_map(eg2, "zero")
    assert is_generalized_derivation(z, z).ok


def test_phi_lambda_pair_decided_by_scan(eg3_z5):
    phi = build_map(eg3_z5, "phi")
    lam = build_map(eg3_z5, "lambda")
    check = is_generalized_derivation(phi, lam)
    ring = eg3_z5
    expected = all(
        phi(ring.mul(a, b)) == ring.add(ring.mul(phi(a), b), ring.mul(a, lam(b)))
        for a in ring.elements()
        for b in ring.elements()
    )
    assert check.ok == expected


def test_generalized_derivation_ring_mismatch(eg2, z4):
    with pytest.raises(SpecError, match="different rings"):
        is_generalized_derivation(build_map(eg2, "zero"), build_map(z4, "zero"))


# -- additivity defect ----------------------------------------------------------------


def test_defect_at_zero_vanishes(eg1_z5):
    m = build_map(eg1_z5, "eg1_map")
    for x in eg1_z5.elements():
        assert additivity_defect(m, x, eg1_z5.zero) == eg1_z5.zero
        assert additivity_defect(m, eg1_z5.zero, x) == eg1_z5.zero


def test_defect_frozen_value(eg1_z5):
    m = build_map(eg1_z5, "eg1_map")
    x = eg1_z5.element((0, 1, 1))
    assert additivity_defect(m, x, x) == eg1_z5.element((0, 2, 0))


def test_defect_vanishes_for_additive_map(eg2):
    m = build_map(eg2, "eg2_map")
    for x in eg2.elements():
        for y in eg2.elements():
            assert additivity_defect(m, x, y) == eg2.zero


def test_additive_flag_iff_defect_zero_everywhere(z4):
    # cross-check of two code paths on the full table space of Z4 samples
    rng = random.Random(5)
    maps = [MapTable(z4, [rng.randrange(4) for _ in range(4)]) for _ in range(30)]
    maps.append(build_map(z4, "zero"))
    for m in maps:
        flag = check_additive(m).ok
        defect_zero = all(
            additivity_defect(m, x, y) == z4.zero
            for x in z4.elements()
            for y in z4.elements()
        )
        assert flag == defect_zero


# -- defect translation identities ------------------------------------------------------


def test_defect_identities_eg1_z3():
    ring = construct_catalog_ring("eg1", [3])
    m = build_map(ring, "eg1_map")
    assert check_defect_identities(m).ok
    assert oracles.naive_defect_identities_hold(m)


def test_defect_identities_zero_and_eg2(eg2):
    assert check_defect_identities(build_map(eg2, "zero")).ok
    assert check_defect_identities(build_map(eg2, "eg2_map")).ok


def test_defect_identities_require_reverse_map(eg3_z5):
    with pytest.raises(SpecError, match="reverse derivable"):
        check_defect_identities(build_map(eg3_z5, "phi"))


# -- forced values ------------------------------------------------------------------------


def test_reverse_maps_kill_zero_and_unit(eg2, eg1_z5, eg3_z5):
    for ring, name in ((eg2, "eg2_map"), (eg1_z5, "eg1_map"), (eg3_z5, "lambda")):
        m = build_map(ring, name)
        assert check_reverse_law(m).ok
        assert m(ring.zero) == ring.zero
        if ring.unit is not None:
            assert m(ring.unit) == ring.zero


# -- structure observations -----------------------------------------------------------------


def test_eg2_map_structure_all_pass(eg2):
    dec = peirce_decompose(eg2, eg2.element((3, 0)))
    m = build_map(eg2, "eg2_map")
    rep = verify_reverse_map_structure(m, dec)
    assert m(eg2.element((3, 0))) == eg2.zero
    assert rep.item("e_image_zero").passed
    assert rep.all_passed()


def test_zero_map_structure_all_pass(m2z2):
    dec = peirce_decompose(m2z2, m2z2.element((1, 0, 0, 0)))
    rep = verify_reverse_map_structure(build_map(m2z2, "zero"), dec)
    assert rep.all_passed()


def test_structure_matches_naive_observer(eg2):
    e = eg2.element((3, 0))
    dec = peirce_decompose(eg2, e)
    m = build_map(eg2, "eg2_map")
    rep = verify_reverse_map_structure(m, dec)
    expected = oracles.naive_structure_observations(m, eg2, e)
    for item in rep.items:
        assert item.passed == expected[item.item_id], item.item_id


def test_structure_requires_reverse_map(eg3_z5, m2z2):
    dec = peirce_decompose(m2z2, m2z2.element((1, 0, 0, 0)))
    not_reverse = MapTable(m2z2, [1] + [0] * 15)
    with pytest.raises(SpecError, match="reverse derivable"):
        verify_reverse_map_structure(not_reverse, dec)


def test_structure_skips_containment_when_e_not_killed():
    # upper triangular 2x2 over Z2 admits a reverse derivation sending the
    # idempotent E11 to E12, so the containment items must be skipped
    from peirce_lab import Ring

    t2 = Ring(
        "T2(Z2)",
        [2, 2, 2],
        [
            [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
            [[0, 0, 0], [0, 0, 0], [0, 1, 0]],
            [[0, 0, 0], [0, 0, 0], [0, 0, 1]],
        ],
        unit=[1, 0, 1],
    )
    m = MapTable(t2, [0, 2, 0, 2, 2, 0, 2, 0], "found_by_search")
    assert check_reverse_law(m).ok
    e = t2.element((1, 0, 0))
    assert m(e) != t2.zero
    rep = verify_reverse_map_structure(m, peirce_decompose(t2, e))
    assert rep.item("e_image_zero").passed is False
    for tag in ("11", "12", "21", "22"):
        assert rep.item(f"containment_{tag}").passed is None


def test_structure_report_dict(eg2):
    dec = peirce_decompose(eg2, eg2.element((3, 0)))
    rep = verify_reverse_map_structure(build_map(eg2, "eg2_map"), dec)
    d = rep.to_dict()
    assert d["all_pass"] is True
    assert {i["id"] for i in d["items"]} >= {
        "e_image_zero",
        "containment_12",
        "additive_on_11",
        "additive_on_mixed_pairs",
        "additive_on_eR",
    }
