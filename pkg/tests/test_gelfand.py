"""Strong Gelfand pair decisions and the Schur-ring cross-check."""

import numpy as np
import pytest

from sgplab.chartab import dixon_schneider, regular_character
from sgplab.errors import ResourceBoundError, SubgroupError
from sgplab.gelfand import (is_gelfand_pair, is_multiplicity_free,
                            is_strong_gelfand_pair, scan_maximal_sp4,
                            schur_commutes, total_char_shortcut)
from sgplab.groups import (all_subgroups, build_group, cyclic_subgroup,
                           element_order, mulclose, perm_group,
                           squares_subgroup, subgroup)


def _s5():
    return build_group("so4-:2")


def test_multiplicity_free_of_regular_character():
    s3 = build_group("sl2:2")
    T = dixon_schneider(s3)
    ok, witness = is_multiplicity_free(regular_character(s3), T)
    assert not ok
    idx, mult = witness
    assert int(T.irreducibles[idx].degree) == 2 and mult == 2


def test_multiplicity_free_of_irreducibles_and_total():
    from sgplab.chartab import total_character
    g = build_group("sl2:4")
    T = dixon_schneider(g)
    for ch in T.irreducibles:
        assert is_multiplicity_free(ch, T) == (True, None)
    assert is_multiplicity_free(total_character(T), T) == (True, None)


def test_multiplicity_free_rejects_non_characters():
    from sgplab.chartab import Character
    from sgplab.exactnum import Cyclo
    g = build_group("sl2:2")
    T = dixon_schneider(g)
    cd = T.classes
    # the indicator of the identity has multiplicity chi(1)/|G|, never integral
    vals = [Cyclo.from_rational(1 if j == cd.identity_class else 0)
            for j in range(len(cd))]
    with pytest.raises(ValueError):
        is_multiplicity_free(Character(g, tuple(vals)), T)


def test_self_pair_is_sgp():
    g = build_group("sl2:4")
    v = is_strong_gelfand_pair(g, g)
    assert v.verdict == "sgp" and v.witness is None


def test_s6_pairs():
    s6 = build_group("s6")
    a6 = squares_subgroup(s6, "a6")
    assert is_strong_gelfand_pair(s6, a6).verdict == "sgp"
    assert is_strong_gelfand_pair(s6, _s5()).verdict == "sgp"


def test_restrict_and_induce_sides_agree():
    s6 = build_group("s6")
    for H in (_s5(), squares_subgroup(_s5(), "a5")):
        a = is_strong_gelfand_pair(s6, H, side="restrict")
        b = is_strong_gelfand_pair(s6, H, side="induce")
        assert a.verdict == b.verdict


def test_gelfand_pair_examples():
    s6 = build_group("s6")
    assert is_gelfand_pair(s6, s6)
    assert is_gelfand_pair(s6, _s5())


def test_sgp_implies_gelfand():
    s6 = build_group("s6")
    for H in (squares_subgroup(s6, "a6"), _s5(), build_group("so4+:2")):
        if is_strong_gelfand_pair(s6, H).verdict == "sgp":
            assert is_gelfand_pair(s6, H)


def test_shortcut_values():
    assert total_char_shortcut(316, 425) == "not_sgp"
    assert total_char_shortcut(324, 425) == "not_sgp"
    assert total_char_shortcut(76, 16) == "inconclusive"
    with pytest.raises(ValueError):
        total_char_shortcut(0, 5)


def test_shortcut_soundness_against_full_check():
    # whenever the shortcut fires on a computed pair, the full check agrees
    s6 = build_group("s6")
    from sgplab.chartab import total_character
    maxdeg = dixon_schneider(s6).max_degree()
    k = next(k for k in s6.keys if element_order(s6.ops, k) == 6)
    for H in (cyclic_subgroup(s6, k, "c6"), squares_subgroup(_s5(), "a5")):
        tau = total_character(dixon_schneider(H)).degree
        if total_char_shortcut(tau, maxdeg) == "not_sgp":
            assert is_strong_gelfand_pair(s6, H).verdict == "not_sgp"


def test_subgroup_validation():
    with pytest.raises(SubgroupError):
        is_strong_gelfand_pair(build_group("sl2:4"), build_group("wreath-sp2:2"))


def test_scan_q2_all_sgp():
    verdicts = scan_maximal_sp4(2)
    assert len(verdicts) == 7
    assert all(v.verdict == "sgp" for v in verdicts)
    labels = {v.h_label for v in verdicts}
    assert "a6" in labels and "so4-:2" in labels


def test_scan_rejects_large_q():
    with pytest.raises(ResourceBoundError):
        scan_maximal_sp4(8)


def test_schur_self_and_trivial():
    g = build_group("sl2:4")
    assert schur_commutes(g, g)   # the class algebra is the center
    triv = subgroup(g, np.array([g.ops.identity], dtype=np.uint64), "triv")
    # singleton H-classes span the whole group algebra: commutative iff G is
    assert not schur_commutes(g, triv)


def test_schur_matches_sgp_on_s4_d8_q8():
    s4 = perm_group([(1, 0, 2, 3), (1, 2, 3, 0)], "s4")
    for ks in all_subgroups(s4):
        H = subgroup(s4, ks, f"h{ks.size}")
        assert schur_commutes(s4, H) == (is_strong_gelfand_pair(s4, H).verdict == "sgp")
    d8 = next(subgroup(s4, ks, "d8") for ks in all_subgroups(s4) if ks.size == 8)
    for ks in all_subgroups(d8):
        H = subgroup(d8, ks, f"d8h{ks.size}")
        assert schur_commutes(d8, H) == (is_strong_gelfand_pair(d8, H).verdict == "sgp")
    q8 = _quaternion_group()
    for ks in all_subgroups(q8):
        H = subgroup(q8, ks, f"q8h{ks.size}")
        assert schur_commutes(q8, H) == (is_strong_gelfand_pair(q8, H).verdict == "sgp")


def _quaternion_group():
    # Q8 inside the unitriangular 4x4 matrices over GF(2): search for a pair
    # with A^4 = 1 = B^4, B^2 = A^2, B^-1 A B = A^-1, |<A,B>| = 8
    from sgplab.gfield import field_ctx
    from sgplab.groups import FinGroup, mat_ops
    ops = mat_ops(field_ctx(1), 4, "generic")
    import itertools
    ut = []
    for bits in itertools.product((0, 1), repeat=6):
        m = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        (m[0][1], m[0][2], m[0][3], m[1][2], m[1][3], m[2][3]) = bits
        ut.append(ops.from_rows(m))
    for a in ut:
        if element_order(ops, a) != 4:
            continue
        a2 = ops.mul1(a, a)
        ainv = ops.inv(np.array([a], dtype=np.uint64))[0]
        for b in ut:
            if b == a or element_order(ops, b) != 4:
                continue
            if ops.mul1(b, b) != a2:
                continue
            binv = ops.inv(np.array([b], dtype=np.uint64))[0]
            if ops.mul1(ops.mul1(binv, a), b) != ainv:
                continue
            keys = mulclose(ops, [a, b], 100)
            if keys.size == 8:
                G = FinGroup("q8", ops, keys, [a, b])
                invol = [k for k in keys if element_order(ops, k) == 2]
                assert len(invol) == 1
                return G
    raise AssertionError("no quaternion group found in UT4(2)")


def test_schur_agrees_on_s6_pairs():
    s6 = build_group("s6")
    assert schur_commutes(s6, _s5())
    assert schur_commutes(s6, squares_subgroup(s6, "a6"))
    k = next(k for k in s6.keys if element_order(s6.ops, k) == 6)
    assert not schur_commutes(s6, cyclic_subgroup(s6, k, "c6"))


def test_schur_resource_bound():
    class Fat:
        order = 50000
    with pytest.raises(ResourceBoundError):
        schur_commutes(Fat(), Fat())


def test_monotonicity_on_chains():
    # not_sgp(G, K) forces not_sgp(G, H) for H <= K
    s6 = build_group("s6")
    s5 = _s5()
    a5 = squares_subgroup(s5, "a5")
    k5 = next(k for k in a5.keys if element_order(a5.ops, k) == 5)
    c5 = cyclic_subgroup(s6, k5, "c5")
    chain = [(a5, c5)]
    for K, H in chain:
        if is_strong_gelfand_pair(s6, K).verdict == "not_sgp":
            assert is_strong_gelfand_pair(s6, H).verdict == "not_sgp"


def test_verdict_json():
    s6 = build_group("s6")
    a5 = squares_subgroup(_s5(), "a5")
    v = is_strong_gelfand_pair(s6, a5)
    blob = v.to_json()
    assert blob["verdict"] == "not_sgp" and blob["method"] == "full_check"
    assert blob["witness"]["multiplicity"] >= 2
    assert set(blob["witness"]) == {"g_char_degree", "h_char_degree", "multiplicity"}
