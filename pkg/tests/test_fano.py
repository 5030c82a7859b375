import pytest

from qbic import QbicError, TypeSignature, make_field, standard_gram
from qbic.builtin_forms import fermat_form
from qbic.fano import (ProjSubspace, count_isotropic, enumerate_subspaces,
                       fano_tangent_dim, gaussian_binomial,
                       is_isotropic_subspace, isotropic_subspaces,
                       line_count_report, lines_through_point, subspace_count)
from qbic.formulas import maximal_hermitian_subspace_count, zeta_point_count_S
from qbic.geometry import hypersurface_points, is_cone_point


def form(ctx, text, e=1):
    return standard_gram(TypeSignature.parse(text), ctx, e)


def test_subspace_counts():
    assert subspace_count(2, 3, 1) == 35
    assert subspace_count(4, 4, 1) == 5797
    assert subspace_count(4, 5, 2) == 376805
    assert gaussian_binomial(4, 2, 1) == 5


def test_enumerate_subspaces_matches_count():
    F2 = make_field(2, 1)
    lines = list(enumerate_subspaces(F2, 3, 1))
    assert len(lines) == 35
    assert len({L.basis for L in lines}) == 35
    F4 = make_field(2, 2)
    assert sum(1 for _ in enumerate_subspaces(F4, 4, 1)) == 5797


def test_enumerate_subspaces_rref_canonical(F4):
    for L in enumerate_subspaces(F4, 3, 1):
        M = L.subspace().basis_matrix()
        R, rank, _ = M.rref()
        assert rank == 2 and R.data == M.data


def test_vectorized_blocks_agree_with_iterator(F4):
    from qbic.fano import _subspace_blocks
    expect = {L.basis for L in enumerate_subspaces(F4, 3, 1)}
    got = set()
    for block in _subspace_blocks(F4, 3, 2):
        for row in block:
            got.add(tuple(tuple(int(x) for x in r) for r in row))
    assert got == expect


def test_isotropic_subspace_examples(F4):
    # a line inside the radical is isotropic
    f = form(F4, "N1+N1+1")
    S = ProjSubspace(F4, 2, 1, ((1, 0, 0), (0, 1, 0)))
    assert is_isotropic_subspace(f, S)
    # Fermat q=2, n=3: the line through (1:c:0:0) and (0:0:1:c) with c^3 = 1
    f4 = form(F4, "1+1+1+1")
    line = ProjSubspace(F4, 3, 1, ((1, 1, 0, 0), (0, 0, 1, 1)))
    assert is_isotropic_subspace(f4, line)
    bad = ProjSubspace(F4, 3, 1, ((1, 1, 0, 0), (0, 0, 1, 2)))
    assert not is_isotropic_subspace(f4, bad)


@pytest.mark.parametrize("p,n,r,expected", [
    (2, 3, 1, 27),
    (3, 3, 1, 112),
    (2, 4, 1, 297),
    (2, 5, 2, 891),
])
def test_count_isotropic_on_fermat(p, n, r, expected):
    f = fermat_form(p, 1, n, m=1)
    assert count_isotropic(f, r, 1) == expected


def test_count_isotropic_threefold_matches_zeta(F4):
    assert count_isotropic(fermat_form(2, 1, 4, m=1), 1, 1) == zeta_point_count_S(2, 1)


def test_count_isotropic_planes_matches_formula():
    assert count_isotropic(fermat_form(2, 1, 5, m=1), 2, 1) == \
        maximal_hermitian_subspace_count(2, 5)


def test_count_isotropic_invariant_under_basis_change(F4, rng):
    from qbic import MatrixGF
    f = form(F4, "N2+1+1")
    base = count_isotropic(f, 1, 1)
    for _ in range(3):
        while True:
            A = MatrixGF(F4, [[rng.randrange(4) for _ in range(4)] for _ in range(4)])
            if A.is_invertible():
                break
        assert count_isotropic(f.gram_in_basis(A), 1, 1) == base


def test_every_isotropic_line_passes_the_predicate(F4):
    f = form(F4, "N2+N2")
    for L in isotropic_subspaces(f, 1, 1):
        assert is_isotropic_subspace(f, L)
        assert f.restrict(L.subspace()).gram.is_zero()


def test_lines_through_point_fermat_surface(F4):
    f = form(F4, "1+1+1+1")
    pts = hypersurface_points(f, 1)
    assert len(pts) == 45
    for pt in pts[:10]:
        lns = lines_through_point(f, pt, 1)
        assert len(lns) == 3
        for L in lns:
            assert is_isotropic_subspace(f, L)
            assert L.subspace().contains(list(pt))


def test_lines_through_special_points_of_corank1_surface(F4):
    f = form(F4, "N2+1+1")
    through_minus = lines_through_point(f, (1, 0, 0, 0), 1)
    through_plus = lines_through_point(f, (0, 1, 0, 0), 1)
    assert len(through_minus) == 3 and len(through_plus) == 3
    # every line of X hits exactly one of x-, x+
    all_lines = isotropic_subspaces(f, 1, 1)
    assert len(all_lines) == 6
    for L in all_lines:
        S = L.subspace()
        hits = int(S.contains([1, 0, 0, 0])) + int(S.contains([0, 1, 0, 0]))
        assert hits == 1


def test_n3_plus_1_has_single_line(F4):
    f = form(F4, "N3+1")
    lines = isotropic_subspaces(f, 1, 1)
    assert len(lines) == 1
    # the line joins the singular and special points
    S = lines[0].subspace()
    assert S.contains([1, 0, 0, 0]) and S.contains([0, 0, 1, 0])


def test_every_line_in_x_appears_through_its_points(F4):
    f = form(F4, "N2+N2")
    all_lines = {L.basis for L in isotropic_subspaces(f, 1, 1)}
    seen = set()
    for pt in hypersurface_points(f, 1):
        for L in lines_through_point(f, pt, 1):
            seen.add(L.basis)
    assert seen == all_lines


def test_lines_through_point_requires_x_point(F4):
    f = form(F4, "1+1+1+1")
    with pytest.raises(QbicError):
        lines_through_point(f, (1, 0, 0, 0), 1)


def test_fano_tangent_dims_fermat(F4):
    f3 = form(F4, "1+1+1+1")
    for L in isotropic_subspaces(f3, 1, 1):
        assert fano_tangent_dim(f3, L) == 0
    f4 = form(F4, "1^5")
    lines = isotropic_subspaces(f4, 1, 1)
    assert len(lines) == 297
    assert {fano_tangent_dim(f4, L) for L in lines} == {2}


def test_fano_tangent_dim_jumps_on_singular_lines(F4):
    f = form(F4, "N2+1+1+1")
    through_sing = lines_through_point(f, (0, 1, 0, 0, 0), 1)
    assert through_sing
    for L in through_sing:
        assert fano_tangent_dim(f, L) > 2


def test_fano_tangent_dim_requires_isotropic(F4):
    f = form(F4, "1+1+1+1")
    bad = ProjSubspace(F4, 3, 1, ((1, 0, 0, 0), (0, 1, 0, 0)))
    with pytest.raises(QbicError):
        fano_tangent_dim(f, bad)


def test_maximal_plane_points_are_cone_points_on_fourfold(F4):
    # planes in the q=2 fourfold consist of GF(4)-points that are cone points
    f = form(F4, "1^6")
    planes = isotropic_subspaces(f, 2, 1)
    assert len(planes) == 891
    for P in planes[:5]:
        for pt in P.points():
            assert is_cone_point(f, pt)


def test_incidence_double_count_surface(F4):
    q = 2
    f = form(F4, "1+1+1+1")
    lines = isotropic_subspaces(f, 1, 1)
    pts = hypersurface_points(f, 1)
    per_point = {pt.coords: 0 for pt in pts}
    for L in lines:
        npts = 0
        for pt in L.points():
            per_point[pt.coords] += 1
            npts += 1
        assert npts == q**2 + 1
    assert set(per_point.values()) == {q + 1}
    # double count: lines x points-per-line = points x lines-per-point
    assert sum(per_point.values()) == len(lines) * (q**2 + 1) == len(pts) * (q + 1)


def test_line_count_report_fermat(F4):
    rep = line_count_report(form(F4, "1+1+1+1"), 1)
    assert rep["total_lines"] == 27
    assert rep["lines_per_point_histogram"] == {"3": 45}
    assert rep["singular_point_line_counts"] == {}
    assert rep["type"] == "1+1+1+1"


def test_line_count_report_n2n2(F4):
    rep = line_count_report(form(F4, "N2+N2"), 1)
    assert rep["total_lines"] == 7


def test_line_count_report_cone(F4):
    rep = line_count_report(form(F4, "N1+1+1+1"), 1)
    assert rep["total_lines"] == 9
    # all 9 lines pass through the vertex (1:0:0:0)
    f = form(F4, "N1+1+1+1")
    for L in isotropic_subspaces(f, 1, 1):
        assert L.subspace().contains([1, 0, 0, 0])
