"""Leg matrices: Kronecker products, embeddings, the flip operator."""

import random
from fractions import Fraction

import pytest

from ybe.errors import DimensionMismatch, DuplicateLeg
from ybe.scalars import P_H, P_U, RatFunc
from ybe.tensor import (
    LegMatrix,
    RATFUNC_RING,
    RATIONAL_RING,
    elementary,
    embed_on_legs,
    flip_operator,
    kron,
    kron_all,
)


def random_matrix(rng, n, ring=RATIONAL_RING):
    m = LegMatrix.zeros((n,), ring)
    for i in range(n * n):
        m.entries[i] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return m


def random_vector(rng, n):
    return [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n)]


def apply(m, vec):
    n = m.size
    return [sum(m.entries[i * n + j] * vec[j] for j in range(n))
            for i in range(n)]


class TestKron:
    def test_elementary_with_identity(self):
        k = kron(elementary(2, 1, 1), LegMatrix.identity((2,)))
        assert [k.get(i, i) for i in range(4)] == [1, 1, 0, 0]
        assert sum(1 for _ in k.nonzero_items()) == 2

    def test_identity_kron_identity(self):
        k = kron(LegMatrix.identity((3,)), LegMatrix.identity((2,)))
        assert k == LegMatrix.identity((3, 2))

    def test_mixed_product_on_vectors(self):
        # (A x B)(x x y) = Ax x By, against a direct double loop
        rng = random.Random(11)
        a, b = random_matrix(rng, 2), random_matrix(rng, 3)
        x, y = random_vector(rng, 2), random_vector(rng, 3)
        xy = [xi * yj for xi in x for yj in y]
        left = apply(kron(a, b), xy)
        ax, by = apply(a, x), apply(b, y)
        right = [ai * bj for ai in ax for bj in by]
        assert left == right


class TestEmbed:
    def test_two_leg_embedding_is_kron_with_identity(self):
        c = flip_operator(2)
        assert embed_on_legs(c, (0, 1), (2, 2, 2)) == \
            kron(c, LegMatrix.identity((2,)))

    def test_split_legs(self):
        a = kron(elementary(2, 1, 2), elementary(2, 2, 1))
        emb = embed_on_legs(a, (0, 2), (2, 2, 2))
        direct = kron_all([elementary(2, 1, 2), LegMatrix.identity((2,)),
                           elementary(2, 2, 1)])
        assert emb == direct

    def test_embedding_preserves_products(self):
        rng = random.Random(5)
        a = kron(random_matrix(rng, 2), random_matrix(rng, 2))
        b = kron(random_matrix(rng, 2), random_matrix(rng, 2))
        legs, amb = (0, 2), (2, 2, 2)
        assert embed_on_legs(a, legs, amb) @ embed_on_legs(b, legs, amb) == \
            embed_on_legs(a @ b, legs, amb)

    def test_disjoint_legs_commute(self):
        rng = random.Random(6)
        a = kron(random_matrix(rng, 2), random_matrix(rng, 2))
        b = random_matrix(rng, 2)
        ea = embed_on_legs(a, (0, 1), (2, 2, 2))
        eb = embed_on_legs(b, (2,), (2, 2, 2))
        assert ea @ eb == eb @ ea

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            embed_on_legs(flip_operator(2), (0, 1), (2, 3, 2))

    def test_duplicate_leg(self):
        with pytest.raises(DuplicateLeg):
            embed_on_legs(flip_operator(2), (1, 1), (2, 2, 2))


class TestFlip:
    def test_flip_2_permutation(self):
        p = flip_operator(2)
        # basis order (11, 12, 21, 22) maps to (11, 21, 12, 22)
        cols = [next(j for j in range(4) if p.get(i, j)) for i in range(4)]
        assert cols == [0, 2, 1, 3]

    def test_involution(self):
        p = flip_operator(2)
        assert p @ p == LegMatrix.identity((2, 2))

    def test_flip_matches_elementary_sum(self):
        n = 3
        s = LegMatrix.zeros((n, n))
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                s = s + kron(elementary(n, i, j), elementary(n, j, i))
        assert flip_operator(n) == s

    def test_flip_conjugation_swaps_factors(self):
        rng = random.Random(7)
        x, y = random_matrix(rng, 3), random_matrix(rng, 3)
        p = flip_operator(3)
        assert p @ kron(x, y) @ p == kron(y, x)


class TestMatOps:
    def test_flip_square_is_identity(self):
        c = flip_operator(2)
        assert c @ c == LegMatrix.identity((2, 2))

    def test_scale_then_eval(self):
        m = LegMatrix.identity((2,), RATFUNC_RING).scale(RatFunc(P_H, P_U))
        point = {"s": 0, "u": Fraction(1), "v": 0, "h": Fraction(2)}
        evaluated = m.eval_entries(point)
        assert evaluated == LegMatrix.identity((2,)).scale(Fraction(2))

    def test_associativity_on_random_matrices(self):
        rng = random.Random(13)
        a, b, c = (random_matrix(rng, 4) for _ in range(3))
        assert (a @ b) @ c == a @ (b @ c)

    def test_incompatible_dims(self):
        with pytest.raises(DimensionMismatch):
            LegMatrix.identity((2,)) @ LegMatrix.identity((3,))

    def test_subst_all_entries(self):
        m = LegMatrix.identity((2,), RATFUNC_RING).scale(RatFunc(P_H, P_U))
        swapped = m.subst_var("u", P_H * 2)
        assert swapped.get(0, 0) == RatFunc(P_H, P_H * 2)

    def test_transpose_and_trace(self):
        m = LegMatrix.from_entries((2,), RATIONAL_RING,
                                   {(0, 1): Fraction(3)})
        assert m.transpose().get(1, 0) == 3
        assert m.trace() == 0


class TestSerialization:
    def test_rational_round_trip(self):
        m = kron(elementary(2, 1, 2), elementary(2, 2, 1)).scale(
            Fraction(-3, 7))
        again = LegMatrix.from_json_dict(m.to_json_dict())
        assert again == m

    def test_ratfunc_round_trip(self):
        m = LegMatrix.identity((2, 2), RATFUNC_RING).scale(
            RatFunc(P_H, P_U + P_H))
        data = m.to_json_dict()
        assert data["ring"] == "ratfunc"
        assert data["dims"] == [2, 2]
        assert data["vars"] == ["s", "u", "v", "h"]
        assert LegMatrix.from_json_dict(data) == m

    def test_entries_sorted_and_nonzero(self):
        m = flip_operator(2)
        data = m.to_json_dict()
        assert data["entries"] == sorted(data["entries"])
        assert all(LegMatrix.from_json_dict(data).get(i, j)
                   for i, j, _ in data["entries"])
