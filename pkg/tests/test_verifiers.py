"""Classical and quantum checks, identity suites, unitarity, sampling."""

from fractions import Fraction

import pytest

from ybe.catalog import assemble_R, build_GC_closed, classical_r
from ybe.liepairs import curvature_from_pair, grassmann_pair
from ybe.scalars import MultiPoly, P_H, P_S, P_U, P_V, RatFunc
from ybe.tensor import (
    LegMatrix,
    RATFUNC_RING,
    RATIONAL_RING,
    embed_on_legs,
    flip_operator,
)
from ybe.verifiers import (
    SamplerConfig,
    check_cybe,
    check_cybe_index,
    check_identity_suite,
    check_qybe,
    check_unitarity,
    clear_denominators,
    identity_letters,
)

INV_S = RatFunc(MultiPoly.const(1), P_S)


def badge(entry_id, params):
    ghat, chat = build_GC_closed(entry_id, params)
    return ghat, chat


class TestClearDenominators:
    def test_collects_lcm(self):
        m = LegMatrix.zeros((2,), RATFUNC_RING)
        m.entries[0] = RatFunc(P_H, P_U)
        m.entries[3] = RatFunc(1, P_U + P_H)
        cleared, factor = clear_denominators(m)
        assert factor == P_U * (P_U + P_H)
        assert cleared.entries[0] == RatFunc(P_H * (P_U + P_H))
        assert all(x.den.is_one() for x in cleared.entries if x)

    def test_noop_on_polynomials(self):
        m = LegMatrix.identity((2,), RATFUNC_RING)
        cleared, factor = clear_denominators(m)
        assert factor == MultiPoly.const(1)
        assert cleared == m


class TestCybe:
    def test_sphere_classical_r(self):
        rep = check_cybe(classical_r("sphere", {"n": 2}),
                         entry="sphere", params={"n": 2})
        assert rep.verdict == "pass"

    def test_casimir_alone(self):
        _, chat = badge("sphere", {"n": 2})
        rep = check_cybe(chat.to_ratfunc().scale(INV_S))
        assert rep.verdict == "pass"

    def test_g_alone_fails(self):
        # no claim covers G-hat/s by itself; the machine verdict is fail
        ghat, _ = badge("sphere", {"n": 3})
        rep = check_cybe(ghat.to_ratfunc().scale(INV_S))
        assert rep.verdict == "fail"
        assert rep.witness is not None

    @pytest.mark.parametrize("entry_id,params", [
        ("cpn", {"n": 1}), ("hpn", {"n": 1}),
        ("glpq_sopq", {"p": 2, "q": 1}), ("gl2n_glnc", {"n": 1}),
    ])
    def test_classical_r_all_families(self, entry_id, params):
        assert check_cybe(classical_r(entry_id, params)).verdict == "pass"


class TestCybeIndex:
    @pytest.mark.parametrize("p,q", [(2, 1), (3, 1), (2, 2)])
    def test_geometric_pairs(self, p, q):
        curv = curvature_from_pair(grassmann_pair(p, q))
        rep = check_cybe_index(curv, params={"p": p, "q": q})
        assert rep.verdict == "pass"

    def test_perturbed_tensor_fails(self):
        curv = curvature_from_pair(grassmann_pair(2, 1))
        curv.comp[0][1][0][1] += Fraction(1, 3)
        rep = check_cybe_index(curv)
        assert rep.verdict == "fail"
        assert "indices" in rep.witness


class TestQybe:
    def test_sphere_n2(self):
        rep = check_qybe(assemble_R("sphere", {"n": 2, "k": 1}).matrix,
                         entry="sphere", params={"n": 2, "k": 1})
        assert rep.verdict == "pass"
        assert rep.backend == "exact"

    def test_cpn_n1(self):
        rep = check_qybe(assemble_R("cpn", {"n": 1}).matrix)
        assert rep.verdict == "pass"

    def test_negative_control_g_only(self):
        ghat, _ = badge("sphere", {"n": 3})
        bad = (LegMatrix.identity((3, 3), RATFUNC_RING)
               + ghat.to_ratfunc().scale(RatFunc(P_H, P_S)))
        rep = check_qybe(bad)
        assert rep.verdict == "fail"
        assert set(rep.witness) == {"row", "col", "value"}

    def test_sampled_matches_exact_pass(self):
        matrix = assemble_R("sphere", {"n": 2, "k": 1}).matrix
        rep = check_qybe(matrix, mode="sampled", sampler=SamplerConfig(seed=0))
        assert rep.verdict == "pass"
        assert len(rep.points) == 5
        assert rep.seed == 0

    def test_sampled_matches_exact_fail(self):
        ghat, _ = badge("sphere", {"n": 3})
        bad = (LegMatrix.identity((3, 3), RATFUNC_RING)
               + ghat.to_ratfunc().scale(RatFunc(P_H, P_S)))
        rep = check_qybe(bad, mode="sampled", sampler=SamplerConfig(seed=0))
        assert rep.verdict == "fail"

    def test_sampled_deterministic(self):
        matrix = assemble_R("sphere", {"n": 2, "k": 1}).matrix
        first = check_qybe(matrix, mode="sampled",
                           sampler=SamplerConfig(seed=42))
        second = check_qybe(matrix, mode="sampled",
                            sampler=SamplerConfig(seed=42))
        assert first.points == second.points
        assert first.verdict == second.verdict

    def test_flip_covariance_of_residual(self):
        # conjugating all legs by the order reversal sends the residual of
        # (u, v) to minus the residual of (v, u)
        matrix = assemble_R("sphere", {"n": 2, "k": 1}).matrix
        n = 2
        dims3 = (n, n, n)

        def residual(m):
            m12 = embed_on_legs(m.subst_var("s", P_U), (0, 1), dims3)
            m13 = embed_on_legs(m.subst_var("s", P_U + P_V), (0, 2), dims3)
            m23 = embed_on_legs(m.subst_var("s", P_V), (1, 2), dims3)
            return (m12 @ m13 @ m23) - (m23 @ m13 @ m12)

        res = residual(matrix)
        rev = LegMatrix.zeros(dims3, RATIONAL_RING)
        size = n ** 3
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    rev.entries[(a * n * n + b * n + c) * size
                                + (c * n * n + b * n + a)] = Fraction(1)
        rev = rev.to_ratfunc()
        swapped = (-res).subst_map({"u": P_V, "v": P_U})
        assert rev @ res @ rev == swapped

    def test_pluggable_argument_assignment(self):
        # scaling every argument by 2 preserves the difference structure
        matrix = assemble_R("sphere", {"n": 2, "k": 1}).matrix
        assign = {(0, 1): P_U * 2, (0, 2): (P_U + P_V) * 2, (1, 2): P_V * 2}
        assert check_qybe(matrix, assign=assign).verdict == "pass"


class TestIdentities:
    def test_sphere_letters(self):
        assert identity_letters("sphere") == tuple("abcdefghijk")

    def test_cpn_letters_skip_contraction_chains(self):
        assert identity_letters("cpn") == tuple("abfghijk")

    def test_hpn_letters(self):
        assert identity_letters("hpn") == tuple("abcdefghijk")

    @pytest.mark.parametrize("entry_id,params", [
        ("sphere", {"n": 2}), ("sphere", {"n": 3}), ("sphere", {"n": 4}),
        ("cpn", {"n": 1}), ("cpn", {"n": 2}), ("hpn", {"n": 1}),
    ])
    def test_all_chains_pass(self, entry_id, params):
        reports = check_identity_suite(entry_id, params)
        assert len(reports) == len(identity_letters(entry_id))
        assert all(r.verdict == "pass" for r in reports)

    def test_sphere_e_chain(self):
        reports = {r.check: r for r in check_identity_suite("sphere",
                                                            {"n": 2})}
        assert reports["identity-e"].verdict == "pass"

    def test_sphere_full_a_chain_with_1_over_n(self):
        reports = {r.check: r for r in check_identity_suite("sphere",
                                                            {"n": 3})}
        assert reports["identity-a"].verdict == "pass"

    def test_no_suite_for_block_entries(self):
        with pytest.raises(ValueError):
            check_identity_suite("glpq_glgl", {"p": 1, "q": 1})


class TestUnitarity:
    @pytest.mark.parametrize("n", [2, 3])
    def test_sphere_factor(self, n):
        rep = check_unitarity(assemble_R("sphere", {"n": n, "k": 1}).matrix)
        assert rep.verdict == "pass"
        expected = RatFunc(P_S ** 2 - P_H ** 2, P_S ** 2)
        assert rep.extra["factor"] == str(expected)

    def test_identity_matrix(self):
        rep = check_unitarity(LegMatrix.identity((2, 2), RATFUNC_RING))
        assert rep.verdict == "pass"
        assert rep.extra["factor"] == str(RatFunc(1))

    def test_cpn_not_proportional(self):
        rep = check_unitarity(assemble_R("cpn", {"n": 1}).matrix)
        assert rep.verdict == "fail"
        assert rep.witness is not None

    def test_hpn_passes_with_shifted_factor(self):
        rep = check_unitarity(assemble_R("hpn", {"n": 1}).matrix)
        assert rep.verdict == "pass"
        expected = RatFunc(P_S ** 2 - P_H ** 2 * 4, P_S ** 2)
        assert rep.extra["factor"] == str(expected)


class TestReports:
    def test_json_shape(self):
        rep = check_qybe(assemble_R("sphere", {"n": 2, "k": 1}).matrix,
                         entry="sphere", params={"n": 2, "k": 1})
        data = rep.to_json_dict()
        assert data["check"] == "qybe"
        assert data["entry"] == "sphere"
        assert data["params"] == {"n": 2, "k": 1}
        assert data["backend"] == "exact"
        assert data["verdict"] == "pass"
        assert data["witness"] is None
        assert "elapsed_ms" in data
