import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ssmcalc.euler as euler
from ssmcalc.classes import make_space
from ssmcalc.euler import (DimensionContradiction, chi_multi_intersection, expected_dim,
                           richardson_chi, signed_E, structure_constants, verify_nfold_sign,
                           verify_orthogonality, verify_positivity)


def test_a1_by_hand():
    sp = make_space("A1")
    s1 = sp.element("s1")
    # P^1 minus three points, P^1 minus two points, and a single A^1
    assert chi_multi_intersection(sp, [s1, s1, s1]) == -1
    assert chi_multi_intersection(sp, [s1, s1]) == 0
    assert chi_multi_intersection(sp, [s1]) == 1
    assert chi_multi_intersection(sp, [0, s1]) == 1
    assert chi_multi_intersection(sp, [0, 0]) == 0
    assert structure_constants(sp, s1, s1) == {0: -1, s1: 1}
    assert signed_E(sp, s1, s1, s1) == 1
    assert signed_E(sp, s1, s1, 0) == 1
    assert richardson_chi(sp, s1, s1) == 1
    assert richardson_chi(sp, s1, 0) == 0


def test_p2_by_hand():
    sp = make_space("A2", (2,))
    top = sp.top
    # P^2 minus three general lines
    assert chi_multi_intersection(sp, [top, top, top]) == 0
    # two general A^2's: P^2 minus two lines
    assert chi_multi_intersection(sp, [top, top]) == 0
    line = sp.element("s1")
    # a line minus a point, minus one more point from a general line
    assert chi_multi_intersection(sp, [line, top]) == 0


def test_expected_dim():
    sp = make_space("A2")
    s1 = sp.element("s1")
    assert expected_dim(sp, [sp.top, sp.top, sp.top]) == 3
    assert expected_dim(sp, [s1, s1, s1]) == 3 - 3 * 2
    with pytest.raises(ValueError):
        expected_dim(sp, [])


def test_negative_dimension_is_empty():
    sp = make_space("A2")
    assert signed_E(sp, 0, 0, 0) == 0
    assert chi_multi_intersection(sp, [0, 0, 0]) == 0


def test_dimension_contradiction(monkeypatch):
    sp = make_space("A2")
    monkeypatch.setattr(euler, "chi_multi_intersection", lambda space, cells: 1)
    with pytest.raises(DimensionContradiction, match="dimension contradiction"):
        signed_E(sp, 0, 0, 0)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_chi_is_symmetric(data):
    sp = make_space("A3", (1, 3))
    cells = data.draw(st.lists(st.sampled_from(sp.basis), min_size=1, max_size=4))
    perm = data.draw(st.permutations(cells))
    assert chi_multi_intersection(sp, cells) == chi_multi_intersection(sp, perm)


@pytest.mark.parametrize("label,sub", [("A2", ()), ("B2", ()), ("A3", (1, 3))])
def test_structure_constants_expand_product(label, sub):
    sp = make_space(label, sub)
    for lam, mu in itertools.combinations_with_replacement(sp.basis, 2):
        consts = structure_constants(sp, lam, mu)
        rebuilt = sp.zero()
        for nu, a in consts.items():
            rebuilt = rebuilt + sp.ssm_cell(nu).scale(a)
        assert rebuilt == sp.ssm_cell(lam) * sp.ssm_cell(mu)
        assert consts == structure_constants(sp, mu, lam)


def test_sweep_agrees_with_single_computations():
    sp = make_space("B2")
    report = verify_positivity(sp)
    assert len(report.entries) == len(sp.basis) ** 3
    for e in report.entries[::17]:
        nu = sp.opposite_class_index(e.nuprime)
        assert e.a == structure_constants(sp, e.lam, e.mu).get(nu, 0)
        assert e.E == signed_E(sp, e.lam, e.mu, e.nuprime)


@pytest.mark.parametrize("label,sub", [("A1", ()), ("A2", ()), ("A2", (2,)), ("G2", ())])
def test_orthogonality(label, sub):
    report = verify_orthogonality(make_space(label, sub))
    assert report.violations == []
    n = len(report.labels)
    assert report.matrix == [[int(i == j) for j in range(n)] for i in range(n)]


def test_parallel_matches_serial():
    sp = make_space("A3", (1, 3))
    assert verify_positivity(sp, jobs=1) == verify_positivity(sp, jobs=2)
    assert verify_nfold_sign(sp, 3, jobs=1) == verify_nfold_sign(sp, 3, jobs=3)


def test_nfold_sampling_is_seeded():
    sp = make_space("A2")
    a = verify_nfold_sign(sp, 4, max_tuples=20, seed=5)
    b = verify_nfold_sign(sp, 4, max_tuples=20, seed=5)
    assert a.sampled and len(a.entries) == 20
    assert a == b
    assert verify_nfold_sign(sp, 4).sampled is False


def test_nfold_pairs_follow_duality():
    sp = make_space("A3", (1, 3))
    report = verify_nfold_sign(sp, 2)
    assert report.violations == []
    ones = {e.cells for e in report.entries if e.signed == 1}
    expected = {tuple(sorted((sp.opposite_class_index(m), m), key=sp.basis.index)) for m in sp.basis}
    assert ones == expected
