from fractions import Fraction
from math import comb

import pytest

from ssmcalc.classes import (CohClass, Space, SpaceError, csm_operator, divided_difference,
                             invert_class, make_space, parabolic_pushforward, space_from_group)
from ssmcalc.weyl import WeylError, WeylGroup, build_root_system

SPACES = [("A1", ()), ("A2", ()), ("A2", (2,)), ("B2", ()), ("G2", ()), ("A3", ()),
          ("A3", (1, 3)), ("A3", (2,)), ("C3", ()), ("B3", (2, 3))]


def reduced_words(g, w):
    if g.lengths[w] == 0:
        return [()]
    out = []
    for i in g.right_descents(g[w]):
        out += [word + (i,) for word in reduced_words(g, g.rmul[w][i - 1])]
    return out


def cls(space, d):
    return CohClass(space, {space.element(k): v for k, v in d.items()})


# -- A1 by hand -------------------------------------------------------------

def test_a1_classes():
    sp = make_space("A1")
    assert sp.total_chern() == cls(sp, {"e": 1, "s1": 2})
    assert sp.csm_cell(sp.element("s1")) == cls(sp, {"e": 1, "s1": 1})
    assert sp.csm_cell(0) == sp.point()
    assert sp.total_chern_inverse() == cls(sp, {"e": 1, "s1": -2})
    assert sp.ssm_cell(sp.element("s1")) == cls(sp, {"e": 1, "s1": -1})
    assert sp.ssm_cell(0) == sp.point()
    x = sp.schubert(sp.element("s1"))
    assert csm_operator(1, sp.one()) == -sp.one()  # d_1(1) = 0
    assert csm_operator(1, x) == sp.one() + x


def test_dd_is_g_over_b_only():
    sp = make_space("A2", (2,))
    with pytest.raises(SpaceError, match="G/B only"):
        divided_difference(2, sp.one())


def test_cell_must_be_min_rep():
    sp = make_space("A2", (2,))
    with pytest.raises(SpaceError, match="not a minimal representative"):
        sp.cell("s2")


# -- structural invariants ------------------------------------------------------

@pytest.mark.parametrize("label,sub", SPACES)
def test_csm_sums_and_degrees(label, sub):
    sp = make_space(label, sub)
    total = sp.zero()
    for w in sp.basis:
        c = sp.csm_cell(w)
        assert c.integrate() == 1
        assert c.is_integral()
        low = c.lowest_component()
        dual = sp.pd_dual_index(w)
        # leading term is the fundamental class of the closure X(w)
        assert low == sp.schubert(dual)
        assert sp.group.lengths[dual] == sp.dim - sp.group.lengths[w]
        total = total + c
    assert total == sp.total_chern()
    assert sp.total_chern().integrate() == len(sp.basis)
    assert sp.total_chern().constant_term() == 1


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3"])
def test_reduced_word_independence(label):
    sp = make_space(label)
    g = sp.group
    for w in sp.basis:
        words = reduced_words(g, w)
        ref = sp.csm_cell(w)
        for word in words:
            assert sp.csm_cell(w, word=word) == ref


def test_bad_word_rejected():
    sp = make_space("A2")
    with pytest.raises(WeylError):
        sp.csm_cell(sp.element("s1s2"), word=(2, 1))


@pytest.mark.parametrize("label,sub", SPACES)
def test_pairing_is_permutation(label, sub):
    sp = make_space(label, sub)
    m = sp.pairing_matrix()
    for a, u in enumerate(sp.basis):
        row = m[a]
        assert sorted(row) == [0] * (len(row) - 1) + [1]
        assert sp.basis[row.index(1)] == sp.expected_dual(u)


@pytest.mark.parametrize("label,sub", SPACES)
def test_opposite_index_involution(label, sub):
    sp = make_space(label, sub)
    for nu in sp.basis:
        opp = sp.opposite_class_index(nu)
        assert sp.opposite_class_index(opp) == nu
        assert sp.group.lengths[opp] == sp.dim - sp.group.lengths[nu]


@pytest.mark.parametrize("label,sub", SPACES)
def test_inverse_chern(label, sub):
    sp = make_space(label, sub)
    assert sp.total_chern() * sp.total_chern_inverse() == sp.one()
    for w in sp.basis:
        assert sp.ssm_cell(w) * sp.total_chern() == sp.csm_cell(w)


def test_invert_examples():
    sp = make_space("A2")
    a = sp.one().scale(2) + sp.schubert(sp.element("s1"))
    assert a * invert_class(a) == sp.one()
    assert invert_class(a).constant_term() == Fraction(1, 2)
    with pytest.raises(SpaceError, match="not invertible"):
        invert_class(sp.schubert(sp.element("s1")))


def test_cup_matches_table():
    sp = make_space("A2")
    s1, s2 = sp.element("s1"), sp.element("s2")
    assert sp.schubert(s1) * sp.schubert(s2) == cls(sp, {"s1s2": 1, "s2s1": 1})
    assert (sp.schubert(s1) * sp.point()).coeffs == {}


# -- projective space closed forms ------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_projective_space(n):
    sp = make_space(f"A{n}", range(2, n + 1))
    h = {sp.group.lengths[w]: w for w in sp.basis}
    assert sorted(h) == list(range(n + 1))
    chern = {h[j]: comb(n + 1, j) for j in range(n + 1)}
    assert sp.total_chern().coeffs == chern
    for k in range(n + 1):
        # a k-cell is P^k minus a hyperplane: c_SM = h^{n-k} (1+h)^k
        expected = {h[n - k + j]: comb(k, j) for j in range(k + 1)}
        assert sp.csm_cell(h[k]).coeffs == expected


def test_projective_plane_pushforward():
    p2 = make_space("A2", (2,))
    full = p2.full_flag
    for w in full.basis:
        image = parabolic_pushforward(full.csm_cell(w), p2)
        rep = p2.pd.coset_min_rep(full.group[w]).id
        # X(w) fibres over X(rep) with affine-space fibres, so chi of a fibre is 1
        assert image == p2.csm_cell(rep)


def test_root_class_of_simple_root():
    sp = make_space("B2")
    # alpha_i = sum_j a_ji omega_j, and omega_j maps to sigma_{s_j}
    c = sp.root_class((1, 0))
    assert c == cls(sp, {"s1": 2, "s2": -2})
    c = sp.root_class((0, 1))
    assert c == cls(sp, {"s1": -1, "s2": 2})


def test_transposed_root_convention_fails(monkeypatch):
    """Using a_ij in place of a_ji for the class of a root breaks integral c(TX) = |W|."""
    def transposed(self, beta):
        r = self.rs.rank
        coeffs = {}
        for j in range(r):
            c = sum(self.rs.cartan[k][j] * beta[k] for k in range(r))
            if c:
                coeffs[self.group.simple(j + 1).id] = c
        return CohClass(self, coeffs)

    results = {}
    for label in ["B2", "G2"]:
        monkeypatch.setattr(Space, "root_class", transposed)
        sp = space_from_group(WeylGroup(build_root_system(label)))
        results[label] = sp.total_chern().integrate()
        monkeypatch.undo()
        good = space_from_group(WeylGroup(build_root_system(label)))
        assert good.total_chern().integrate() == len(good.basis)
    assert results["B2"] != 8 and results["G2"] != 12
