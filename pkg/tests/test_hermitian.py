import itertools
import random

import pytest

from qbic import (MatrixGF, NotSplit, QBicForm, SingularFormError, Subspace,
                  TypeSignature, make_field, random_form, standard_gram)
from qbic.hermitian import (hermitian_closure_dim, hermitian_space,
                            is_hermitian_vector, orthonormalize, phi,
                            phi_matrix)


def form(ctx, text, e=1):
    return standard_gram(TypeSignature.parse(text), ctx, e)


def test_zero_vector_is_hermitian(F16):
    assert is_hermitian_vector(form(F16, "N2+1"), [0, 0, 0])


def test_identity_hermitian_iff_subfield_coords(F16):
    f = form(F16, "1+1")
    for v in itertools.product(F16.elements(), repeat=2):
        expected = all(F16.in_subfield(c, 2) for c in v)
        assert is_hermitian_vector(f, list(v)) == expected


def test_n3_hermitian_family(F16):
    f = form(F16, "N3")
    herm = [v for v in itertools.product(F16.elements(), repeat=3)
            if is_hermitian_vector(f, list(v))]
    expected = {(a, 0, F16.frob(a, 2, 2)) for a in F16.elements()}
    assert set(herm) == expected


def test_hermitian_definition_matches_pairing_symmetry(F16, rng):
    q = 2
    f = form(F16, "N2+1")
    for _ in range(50):
        v = [rng.randrange(16) for _ in range(3)]
        pairing_symmetric = all(
            f.evaluate(w, v) == F16.frob(f.evaluate(v, w), q, 1)
            for w in itertools.product((0, 1, 2, 3), repeat=3)
        )
        assert is_hermitian_vector(f, v) == pairing_symmetric


def test_hermitian_space_identity_full_at_base(F4):
    for dim in (1, 2, 3):
        f = form(F4, "+".join(["1"] * dim))
        hs = hermitian_space(f, 1)
        assert hs.count == 4**dim


def test_hermitian_space_zero_form(F4):
    f = QBicForm(F4, 1, MatrixGF.zeros(F4, 2, 2))
    hs = hermitian_space(f, 1)
    assert hs.count == 16


def test_hermitian_space_twisted_line_splits_later(F4):
    # 1-dimensional Gram [t]: search a t for which GF(q^2) sees fewer than
    # q^2 Hermitian vectors, then check the space fills after an extension
    q = 2
    split_late = None
    for t in F4.nonzero():
        f = QBicForm(F4, 1, MatrixGF(F4, [[t]]))
        if hermitian_space(f, 1).count < 4:
            split_late = f
            break
    assert split_late is not None
    found = None
    for m in (2, 3, 4):
        if hermitian_space(split_late, m).count == 4:
            found = m
            break
    assert found is not None


def test_hermitian_set_closure_and_gram(F16):
    q = 2
    f = form(F16, "N2+1+1")
    herm = [v for v in itertools.product(F16.elements(), repeat=4)
            if is_hermitian_vector(f, list(v))]
    sub = F16.subfield_codes(2)
    sample = herm[:40]
    for u, v in itertools.product(sample, repeat=2):
        s = [F16.add(a, b) for a, b in zip(u, v)]
        assert is_hermitian_vector(f, s)
        # pairings of Hermitian vectors land in GF(q^2)
        assert F16.in_subfield(f.evaluate(list(u), list(v)), 2)
    for lam in sub:
        for u in sample[:10]:
            assert is_hermitian_vector(f, [F16.mul(lam, a) for a in u])


def test_hermitian_basis_gram_is_hermitian_matrix(F4):
    q = 2
    f = form(F4, "1+1+1")
    hs = hermitian_space(f, 1)
    H = MatrixGF(hs.ctx, [list(v) for v in hs.vectors])
    G = H.frobenius_twist(q).matmul(f.gram.embed(hs.ctx)).matmul(H.transpose())
    assert G.transpose().data == G.frobenius_twist(q).data


def test_phi_identity_gram_is_coordinatewise(F16, rng):
    f = form(F16, "1+1+1")
    for _ in range(20):
        v = [rng.randrange(16) for _ in range(3)]
        assert phi(f, v) == [F16.frob(c, 2, 2) for c in v]


def test_phi_fixes_exactly_hermitian_vectors(F16, rng):
    f = form(F16, "1+1+1")
    for _ in range(100):
        v = [rng.randrange(16) for _ in range(3)]
        assert (phi(f, v) == v) == is_hermitian_vector(f, v)


def test_phi_pairing_identity(F16, rng):
    q = 2
    f = QBicForm(F16, 1, MatrixGF(F16, [[1, 5, 0], [0, 1, 9], [2, 0, 1]]))
    assert f.is_nonsingular()
    for _ in range(200):
        v = [rng.randrange(16) for _ in range(3)]
        w = [rng.randrange(16) for _ in range(3)]
        assert f.evaluate(phi(f, v), phi(f, w)) == F16.frob(f.evaluate(v, w), q, 2)


def test_phi_preserves_isotropy(F16, rng):
    f = form(F16, "1+1+1+1")
    for _ in range(100):
        v = [rng.randrange(16) for _ in range(4)]
        assert (f.evaluate(v, v) == 0) == (f.evaluate(phi(f, v), phi(f, v)) == 0)


def test_phi_requires_nonsingular(F16):
    with pytest.raises(SingularFormError):
        phi_matrix(form(F16, "N2"))


def test_closure_dim_examples(F16):
    f = form(F16, "1+1+1")
    assert hermitian_closure_dim(f, [0, 0, 0]) == 0
    assert hermitian_closure_dim(f, [1, 0, 0]) == 1  # Hermitian vector
    F64 = make_field(2, 6)
    f64 = form(F64, "1+1+1")
    g = F64.generator
    # guaranteed full orbit: 1, g, g^2 are independent over GF(q^2)
    assert hermitian_closure_dim(f64, [1, g, F64.pow_(g, 2)]) == 3


def test_closure_dim_matches_moore_rank_oracle():
    # for the identity Gram, the orbit span equals the Moore-matrix rank
    F64 = make_field(2, 6)
    f = form(F64, "1+1+1")
    rng = random.Random(3)
    for _ in range(25):
        v = [rng.randrange(64) for _ in range(3)]
        rows, cur = [], list(v)
        for _ in range(3):
            rows.append(list(cur))
            cur = [F64.frob(c, 2, 2) for c in cur]
        moore_rank = MatrixGF(F64, rows).rank()
        assert hermitian_closure_dim(f, v) == moore_rank
    # the vector (1, g, g^(q^2)) has rank given by the oracle; over the
    # canonical GF(64) its coordinates happen to be dependent over GF(4)
    g = F64.generator
    v = [1, g, F64.frob(g, 2, 2)]
    rows = [v, [F64.frob(c, 2, 2) for c in v], [F64.frob(c, 2, 4) for c in v]]
    assert hermitian_closure_dim(f, v) == MatrixGF(F64, rows).rank() == 2


def test_orthonormalize_identity(F4):
    f = form(F4, "1+1+1")
    A, witness = orthonormalize(f)
    assert witness["extension"] == 1


def test_orthonormalize_hyperbolic_plane(F4):
    f = QBicForm(F4, 1, MatrixGF(F4, [[0, 1], [1, 0]]))
    A, _ = orthonormalize(f)
    got = A.frobenius_twist(2).transpose().matmul(f.gram.embed(A.ctx)).matmul(A)
    assert got.data == MatrixGF.identity(A.ctx, 2).data


def test_orthonormalize_mixed_5x5(F4):
    B = MatrixGF.zeros(F4, 5, 5)
    B.data[0][1] = 1
    B.data[1][0] = 1
    for i in (2, 3, 4):
        B.data[i][i] = 1
    f = QBicForm(F4, 1, B)
    A, _ = orthonormalize(f)
    got = A.frobenius_twist(2).transpose().matmul(f.gram.embed(A.ctx)).matmul(A)
    assert got.data == MatrixGF.identity(A.ctx, 5).data


def test_orthonormalize_rejects_singular(F4):
    with pytest.raises(SingularFormError):
        orthonormalize(form(F4, "N2"))


def test_orthonormalize_not_split_surfaced(F4):
    # companion-style Gram whose splitting degree is the order of
    # B^-1 B^(q)T in GL_3(GF(4)), which exceeds the default budget
    B = MatrixGF(F4, [[0, 0, 3], [1, 0, 0], [0, 1, 0]])
    f = QBicForm(F4, 1, B)
    with pytest.raises(NotSplit):
        orthonormalize(f)
    A, witness = orthonormalize(f, max_ext=9)
    assert witness["extension"] == 9
    got = A.frobenius_twist(2).transpose().matmul(f.gram.embed(A.ctx)).matmul(A)
    assert got.data == MatrixGF.identity(A.ctx, 3).data


def test_minimal_splitting_degree_is_order_of_twist_matrix(F4, rng):
    # for a form over GF(q^2), the Hermitian space first fills over
    # GF(q^(2m)) at m = multiplicative order of M = B^-1 B^(q)T
    for _ in range(10):
        dim = rng.randrange(1, 4)
        f = random_form(F4, 1, dim, dim, rng)
        M = f.gram.inverse().matmul(f.gram.frobenius_twist(2).transpose())
        P, order = MatrixGF.identity(F4, dim), None
        for k in range(1, 200):
            P = P.matmul(M)
            if P.data == MatrixGF.identity(F4, dim).data:
                order = k
                break
        assert order is not None
        if 2 * order > 20:  # field cap
            continue
        for m in range(1, order + 1):
            full = hermitian_space(f, m).count == 4**dim
            assert full == (m % order == 0) if m == order else True
        assert hermitian_space(f, order).count == 4**dim
