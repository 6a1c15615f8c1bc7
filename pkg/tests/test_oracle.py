import pytest

from ssmcalc.oracle import ProjIntersectionSpec, proj_cell_chi, proj_cross_check, projective_space


@pytest.mark.parametrize("n,dims,chi", [
    (1, (1,), 1),          # A^1
    (1, (1, 1), 0),        # P^1 minus two points
    (1, (1, 1, 1), -1),    # P^1 minus three points
    (1, (0, 1), 1),        # a point inside A^1
    (1, (0, 0), 0),        # two distinct points
    (2, (2, 2), 0),        # P^2 minus two lines
    (2, (2, 2, 2), 0),     # P^2 minus three lines
    (2, (2, 2, 2, 2), 1),  # P^2 minus four general lines: 3 - 8 + 6
    (2, (1, 2), 0),        # A^1 minus a point
    (2, (1, 1), 1),        # two general A^1's meet in one point
    (3, (2, 2), 0),        # P^1 minus two points
    (3, (1, 1), 0),        # skew lines
])
def test_examples(n, dims, chi):
    assert proj_cell_chi(ProjIntersectionSpec(n, dims)) == chi
    assert proj_cell_chi((n, list(dims))) == chi


def test_invalid_spec():
    with pytest.raises(ValueError):
        ProjIntersectionSpec(2, (3,))
    with pytest.raises(ValueError):
        ProjIntersectionSpec(2, ())


def test_projective_space_shape():
    sp = projective_space(3)
    assert sp.dim == 3 and len(sp.basis) == 4


@pytest.mark.parametrize("n", [1, 2, 3])
def test_cross_check(n):
    report = proj_cross_check(n)
    assert report.ok, report.mismatches
    assert report.checked > 0
