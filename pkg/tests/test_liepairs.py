"""Symmetric pairs: bases, involutions, trace forms, Casimir, curvature."""

import random
from fractions import Fraction

import pytest

from ybe.errors import (
    NoProportionality,
    NotInSpan,
    SingularGram,
    SplittingViolation,
)
from ybe.liepairs import (
    COMPLEX,
    QUATERNION,
    REAL,
    apply_phi,
    build_CG,
    build_basis,
    check_splitting,
    corrupt_theta,
    cpn_pair,
    curvature_from_pair,
    gl2n_glnc_pair,
    glpq_glgl_pair,
    grassmann_pair,
    gram_and_dual,
    invert_rational,
    involution_apply,
    kappa,
    pair_for_entry,
    represent_CG,
    represented_casimir_k,
    sphere_pair,
    verify_curvature_casimir,
)
from ybe.tensor import LegMatrix, elementary, flip_operator, kron


class TestBasis:
    def test_real_basis(self):
        basis, labels = build_basis(REAL, 2)
        assert labels == [(1, 1, "1"), (1, 2, "1"), (2, 1, "1"), (2, 2, "1")]
        assert basis[1] == elementary(2, 1, 2)

    def test_complex_left_regular(self):
        basis, _ = build_basis(COMPLEX, 1)
        one, i = basis
        assert one == LegMatrix.identity((2,))
        assert i.entries == [Fraction(0), Fraction(-1),
                             Fraction(1), Fraction(0)]

    def test_quaternion_table(self):
        # products of the realified units reproduce the multiplication table
        basis, _ = build_basis(QUATERNION, 1)
        for a in range(4):
            for b in range(4):
                sign, c = QUATERNION.unit_product(a, b)
                assert basis[a] @ basis[b] == basis[c].scale(Fraction(sign))

    def test_basis_size(self):
        basis, _ = build_basis(QUATERNION, 2)
        assert len(basis) == 4 * 2 * 2
        assert basis[0].size == 8


class TestInvolution:
    def test_sphere_transpose(self):
        pair = sphere_pair(2)
        got = involution_apply(pair, elementary(2, 1, 2))
        assert got == elementary(2, 2, 1).scale(Fraction(-1))

    def test_signature_conjugation(self):
        pair = glpq_glgl_pair(1, 1)
        got = involution_apply(pair, elementary(2, 1, 2))
        assert got == elementary(2, 1, 2).scale(Fraction(-1))

    def test_involution_squares_to_identity(self):
        rng = random.Random(3)
        for pair in (sphere_pair(2), cpn_pair(1), gl2n_glnc_pair(1)):
            coords = [Fraction(rng.randint(-4, 4)) for _ in pair.basis]
            x = pair.from_coords(coords)
            assert involution_apply(pair, involution_apply(pair, x)) == x

    def test_not_in_span(self):
        pair = cpn_pair(1)
        outside = LegMatrix.from_entries((2,), pair.basis[0].ring,
                                         {(0, 0): Fraction(1)})
        with pytest.raises(NotInSpan):
            involution_apply(pair, outside)


class TestKappa:
    def test_real_trace_pairing(self):
        pair = sphere_pair(2)
        assert kappa(pair, elementary(2, 1, 2), elementary(2, 2, 1)) == 1

    def test_complex_imaginary_unit(self):
        pair = cpn_pair(1)
        i_mat = pair.basis[1]
        # realified trace of i*i is -2; divided by the real dimension 2
        assert (i_mat @ i_mat).trace() == -2
        assert kappa(pair, i_mat, i_mat) == -1

    def test_quaternion_unit(self):
        pair = pair_for_entry("hpn", {"n": 1})
        j_mat = pair.basis[2]
        assert (j_mat @ j_mat).trace() == -4
        assert kappa(pair, j_mat, j_mat) == -1


class TestGram:
    def test_gl2_permutation_pairing(self):
        pair = sphere_pair(2)
        gram, _ = gram_and_dual(pair)
        # kappa(E_ij, E_kl) = 1 iff (k,l) == (j,i)
        labels = pair.labels
        for a, (i, j, _) in enumerate(labels):
            for b, (k, l, _) in enumerate(labels):
                assert gram[a][b] == (1 if (k, l) == (j, i) else 0)

    def test_gl1c_gram(self):
        gram, ginv = gram_and_dual(cpn_pair(1))
        assert gram == [[1, 0], [0, -1]]
        assert ginv == [[1, 0], [0, -1]]

    def test_inverse(self):
        pair = pair_for_entry("hpn", {"n": 1})
        gram, ginv = gram_and_dual(pair)
        n = len(gram)
        prod = [[sum(gram[i][k] * ginv[k][j] for k in range(n))
                 for j in range(n)] for i in range(n)]
        assert prod == [[Fraction(int(i == j)) for j in range(n)]
                        for i in range(n)]

    def test_singular_gram_detected(self):
        with pytest.raises(SingularGram):
            invert_rational([[1, 1], [1, 1]])


class TestCG:
    def test_gl_n_real_casimir_coefficients(self):
        pair = sphere_pair(3)
        c_coeffs, _ = build_CG(pair)
        labels = pair.labels
        for a, (i, j, _) in enumerate(labels):
            for b, (k, l, _) in enumerate(labels):
                assert c_coeffs[a][b] == (1 if (k, l) == (j, i) else 0)

    def test_gl_n_real_g_closed_form(self):
        ghat, _ = represent_CG(sphere_pair(2))
        expected = LegMatrix.zeros((2, 2))
        for i in range(1, 3):
            for j in range(1, 3):
                expected = expected - kron(elementary(2, i, j),
                                           elementary(2, i, j))
        assert ghat == expected

    def test_phi_of_C_is_identity(self):
        pair = cpn_pair(1)
        c_coeffs, g_coeffs = build_CG(pair)
        n = len(pair.basis)
        ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        assert apply_phi(pair, c_coeffs) == ident
        # Phi(G) is the involution's coordinate matrix
        assert apply_phi(pair, g_coeffs) == pair.theta_mat

    def test_sphere_chat_is_flip(self):
        _, chat = represent_CG(sphere_pair(2))
        assert chat == flip_operator(2)

    def test_sphere_ghat_action(self):
        # G-hat maps e_k (x) e_l to -delta_kl sum_i e_i (x) e_i
        ghat, _ = represent_CG(sphere_pair(2))
        n = 2
        for k in range(n):
            for l in range(n):
                col = k * n + l
                column = [ghat.get(r, col) for r in range(n * n)]
                if k != l:
                    assert not any(column)
                else:
                    expected = [Fraction(-int(r % n == r // n))
                                for r in range(n * n)]
                    assert column == expected


class TestSplitting:
    @pytest.mark.parametrize("pair_fn,dim_k", [
        (lambda: sphere_pair(2), 1),
        (lambda: sphere_pair(3), 3),
        (lambda: gl2n_glnc_pair(1), 2),
    ])
    def test_passes(self, pair_fn, dim_k):
        report = check_splitting(pair_fn())
        assert report["verdict"] == "pass"
        assert report["dim_k"] == dim_k

    def test_corrupted_theta_violates(self):
        with pytest.raises(SplittingViolation):
            check_splitting(corrupt_theta(sphere_pair(2), 1))

    def test_geometric_pairs_pass(self):
        for p, q in ((2, 1), (3, 1), (2, 2)):
            report = check_splitting(grassmann_pair(p, q))
            assert report["verdict"] == "pass"
            assert report["dim_m"] == p * q


class TestCurvature:
    def test_constant_curvature_sphere_pair(self):
        # R(m1, m2)m1 = -m2 and R(m1, m2)m2 = m1, from the bracket oracle
        pair = grassmann_pair(2, 1)
        m1, m2 = pair.m_basis
        br = m1 @ m2 - m2 @ m1
        oracle_1 = (br @ m1 - m1 @ br).scale(Fraction(-1))
        oracle_2 = (br @ m2 - m2 @ br).scale(Fraction(-1))
        assert oracle_1 == m2.scale(Fraction(-1))
        assert oracle_2 == m1
        curv = curvature_from_pair(pair)
        assert curv.comp[0][1][0] == [0, -1]
        assert curv.comp[0][1][1] == [1, 0]

    def test_antisymmetry_in_first_pair(self):
        curv = curvature_from_pair(grassmann_pair(2, 2))
        n = curv.m_dim
        for i in range(n):
            for k in range(n):
                assert curv.comp[i][i][k] == [0] * n

    def test_first_bianchi(self):
        curv = curvature_from_pair(grassmann_pair(2, 2))
        n = curv.m_dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    cyc = [curv.comp[i][j][k][l] + curv.comp[j][k][i][l]
                           + curv.comp[k][i][j][l] for l in range(n)]
                    assert cyc == [0] * n

    def test_grassmann_gram_orthonormal_up_to_sign(self):
        pair = grassmann_pair(2, 2)
        gram = pair.gram_m()
        n = len(gram)
        assert gram == [[Fraction(-int(i == j)) for j in range(n)]
                        for i in range(n)]


class TestCasimir:
    def test_commutes_with_represented_subalgebra(self):
        pair = grassmann_pair(2, 1)
        that = represented_casimir_k(pair)
        for ad in pair.ad_matrices():
            lifted = kron(ad, LegMatrix.identity((pair.dim_m,))) + \
                kron(LegMatrix.identity((pair.dim_m,)), ad)
            assert lifted @ that == that @ lifted

    def test_flip_symmetric(self):
        for p, q in ((2, 1), (2, 2)):
            that = represented_casimir_k(grassmann_pair(p, q))
            flip = flip_operator(p * q)
            assert flip @ that @ flip == that

    def test_curvature_proportional(self):
        for p, q in ((2, 1), (3, 1), (2, 2)):
            report = verify_curvature_casimir(grassmann_pair(p, q))
            assert report["verdict"] == "pass"
            assert report["constant"] == Fraction(-1)

    def test_constant_stable_under_basis_change(self):
        pair = grassmann_pair(2, 2)
        m = pair.m_basis
        mixed = pair.with_m_basis([m[0] + m[1].scale(Fraction(2)), m[1],
                                   m[2] + m[0].scale(Fraction(1, 3)), m[3]])
        assert verify_curvature_casimir(mixed)["constant"] == Fraction(-1)

    def test_no_proportionality_on_zero_vs_nonzero(self):
        from ybe.liepairs import proportionality_constant
        pair = grassmann_pair(2, 1)
        that = represented_casimir_k(pair)
        zero = LegMatrix.zeros(that.dims, that.ring)
        with pytest.raises(NoProportionality):
            proportionality_constant(that, zero)
        assert proportionality_constant(zero, that) == 0

    def test_no_proportionality_on_perturbed(self):
        from ybe.liepairs import proportionality_constant
        that = represented_casimir_k(grassmann_pair(2, 1))
        bumped = that + LegMatrix.from_entries(that.dims, that.ring,
                                               {(0, 0): Fraction(1)})
        with pytest.raises(NoProportionality):
            proportionality_constant(bumped, that)


class TestPairInvariants:
    @pytest.mark.parametrize("pair_fn", [
        lambda: sphere_pair(2),
        lambda: cpn_pair(1),
        lambda: glpq_glgl_pair(1, 1),
    ])
    def test_kappa_invariance(self, pair_fn):
        # kappa([Z,X], Y) + kappa(X, [Z,Y]) = 0 on random triples
        pair = pair_fn()
        rng = random.Random(17)
        for _ in range(4):
            x, y, z = (pair.from_coords([Fraction(rng.randint(-3, 3))
                                         for _ in pair.basis])
                       for _ in range(3))
            zx = z @ x - x @ z
            zy = z @ y - y @ z
            assert kappa(pair, zx, y) + kappa(pair, x, zy) == 0

    @pytest.mark.parametrize("pair_fn", [
        lambda: sphere_pair(3),
        lambda: cpn_pair(1),
        lambda: gl2n_glnc_pair(1),
    ])
    def test_theta_is_kappa_orthogonal(self, pair_fn):
        pair = pair_fn()
        rng = random.Random(19)
        for _ in range(4):
            x, y = (pair.from_coords([Fraction(rng.randint(-3, 3))
                                      for _ in pair.basis])
                    for _ in range(2))
            tx = involution_apply(pair, x)
            ty = involution_apply(pair, y)
            assert kappa(pair, tx, ty) == kappa(pair, x, y)
