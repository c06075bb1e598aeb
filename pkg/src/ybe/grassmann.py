"""Composed R-matrices on Grassmannian tangent spaces.

The tangent space of the real Grassmannian of p-planes in (p+q)-space is
the space m of p x q matrices.  Tensor powers of m reshape into a pair of
tensor powers,

    m^(x l)  ~  (R^p)^(x l)  (x)  (R^q)^(x l),

by splitting row and column indices.  Two sphere-family operators act on
the two sides: the composed operator is

    R-hat(v) = R^p v R^q     (left row action, right column action),

an operator on m (x) m whose quantum residual factors through the p-side
and q-side residuals.  The same mechanism runs with complex/quaternionic
projective factors on realified legs, where m^(x)m is only a subspace of
the realified row/column tensor product; coordinates are then extracted
against the orthogonal realified basis.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .catalog import assemble_R
from .errors import DimensionMismatch, ParamOutOfRange
from .liepairs import ALGEBRAS, REAL, grassmann_pair, realified_elementary, \
    represented_casimir_k
from .scalars import MultiPoly, P_S, RatFunc
from .semiclassical import expand_R
from .tensor import LegMatrix, RATFUNC_RING, RATIONAL_RING, embed_on_legs
from .verifiers import (
    SamplerConfig,
    VerificationReport,
    check_qybe,
    clear_denominators,
)

_F0 = Fraction(0)
_F1 = Fraction(1)


# ---------------------------------------------------------------------------
# leg reshaping (real case): m-multi-indices vs row/column multi-indices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LegReshape:
    """Index bijection between (m)^(x l) and (R^p)^(x l) (x) (R^q)^(x l)."""

    p: int
    q: int
    legs: int

    def m_to_pair(self, m_index: int):
        """Flat m^(x l) index -> (row multi-index, column multi-index)."""
        digits = []
        rest = m_index
        for _ in range(self.legs):
            digits.append(rest % (self.p * self.q))
            rest //= self.p * self.q
        digits.reverse()
        row = col = 0
        for d in digits:
            row = row * self.p + d // self.q
            col = col * self.q + d % self.q
        return row, col

    def pair_to_m(self, row: int, col: int) -> int:
        rows, cols = [], []
        r, c = row, col
        for _ in range(self.legs):
            rows.append(r % self.p)
            r //= self.p
            cols.append(c % self.q)
            c //= self.q
        rows.reverse()
        cols.reverse()
        out = 0
        for i, j in zip(rows, cols):
            out = out * (self.p * self.q) + i * self.q + j
        return out


def build_leg_maps(p: int, q: int, legs: int) -> LegReshape:
    if p < 1 or q < 1:
        raise ParamOutOfRange("p, q must be at least 1")
    if legs not in (1, 2, 3):
        raise ParamOutOfRange("reshaping is provided for 1 to 3 legs")
    return LegReshape(p, q, legs)


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------

@dataclass
class ComposedRMatrix:
    p: int
    q: int
    algebra: str               # real | complex | quaternion
    k_curv: int
    rp: object                 # ParametricRMatrix of the p-side factor
    rq: object                 # ParametricRMatrix of the q-side factor
    matrix: LegMatrix          # action on m (x) m over Q(s, h)


def _m_basis_realized(algebra, p: int, q: int):
    """Realified basis of m = Hom(K^q, K^p) as sparse {(row, col): value}
    dicts of size (d p) x (d q), ordered i, then j, then unit."""
    mats = []
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            for e in range(algebra.dim):
                block = algebra.left_regular(e)
                entries = {}
                for r in range(algebra.dim):
                    for c in range(algebra.dim):
                        val = block.entries[r * algebra.dim + c]
                        if val:
                            entries[((i - 1) * algebra.dim + r,
                                     (j - 1) * algebra.dim + c)] = val
                mats.append(entries)
    return mats


def _kron_sparse(a: dict, b: dict, b_rows: int, b_cols: int):
    out = {}
    for (ra, ca), va in a.items():
        for (rb, cb), vb in b.items():
            out[(ra * b_rows + rb, ca * b_cols + cb)] = va * vb
    return out


def _factor_entry(algebra_kind: str):
    return {"real": "sphere", "complex": "cpn",
            "quaternion": "hpn"}[algebra_kind]


def _factor_R(algebra_kind: str, n: int, k_curv: int):
    entry = _factor_entry(algebra_kind)
    params = {"n": n, "k": k_curv} if entry == "sphere" else {"n": n}
    return assemble_R(entry, params)


def compose_R(p: int, q: int, k_curv: int = 1, algebra: str = "real",
              _cross_q_legs: bool = False) -> ComposedRMatrix:
    """The composed operator v -> R^p v R^q on m (x) m over Q(s, h).

    Both factors carry the same difference argument s.  For the complex
    and quaternionic variants the factor families are the projective-space
    entries at sizes p and q acting on realified legs.

    ``_cross_q_legs`` mis-wires the realization by pairing the q-side legs
    in transposed order; it exists as a negative control and is the wrong
    reading of the right action (its first-order term is not the
    represented Casimir).
    """
    if p < 1 or q < 1:
        raise ParamOutOfRange("p, q must be at least 1")
    if algebra not in ALGEBRAS:
        raise ParamOutOfRange(f"unknown division algebra {algebra!r}")
    alg = ALGEBRAS[algebra]
    rp = _factor_R(algebra, p, k_curv)
    rq = _factor_R(algebra, q, k_curv)
    rq_matrix = rq.matrix

    dp = alg.dim * p               # realified row dimension
    dq = alg.dim * q
    basis = _m_basis_realized(alg, p, q)
    m_dim = len(basis)             # = d p q
    norm = Fraction(alg.dim)       # entrywise self-overlap of one basis matrix

    # work with cleared factors so the inner products are polynomial; the
    # common scalar denominator is divided back out of the coordinates
    rp_cleared, dfac_p = clear_denominators(rp.matrix)
    rq_cleared, dfac_q = clear_denominators(rq_matrix)
    dfac = dfac_p * dfac_q

    # columns of Rp (by inner index) and rows of Rq, as sparse dicts
    np2 = dp * dp
    cols_p = [{} for _ in range(np2)]
    for i, j, val in rp_cleared.nonzero_items():
        cols_p[j][i] = val
    nq2 = dq * dq
    rows_q = [{} for _ in range(nq2)]
    for i, j, val in rq_cleared.nonzero_items():
        rows_q[i][j] = val

    size = m_dim * m_dim
    out = LegMatrix.zeros((m_dim, m_dim), RATFUNC_RING)
    zero = RATFUNC_RING.zero
    def realize(b1, b2):
        if not _cross_q_legs:
            return _kron_sparse(basis[b1], basis[b2], dp, dq)
        out_entries = {}
        for (r1, c1), v1 in basis[b1].items():
            for (r2, c2), v2 in basis[b2].items():
                out_entries[(r1 * dp + r2, c2 * dq + c1)] = v1 * v2
        return out_entries

    # the realified basis supports partition the (d p) x (d q) cells, so
    # every cell is owned by exactly one basis element
    cell_owner = {}
    for idx, entries in enumerate(basis):
        for cell, val in entries.items():
            cell_owner[cell] = (idx, val)

    inv_norm2 = RatFunc.const(1 / (norm * norm))
    for b1 in range(m_dim):
        for b2 in range(m_dim):
            realized = realize(b1, b2)
            # W = Rp . realized . Rq  as a sparse dict over Q(s, h)
            w = {}
            for (r, c), mval in realized.items():
                for rr, pval in cols_p[r].items():
                    left = pval * mval
                    for cc, qval in rows_q[c].items():
                        key = (rr, cc)
                        cur = w.get(key)
                        term = left * qval
                        w[key] = term if cur is None else cur + term
            # coordinates against the orthogonal realified basis
            col_index = b1 * m_dim + b2
            coords = {}
            for (rr, cc), val in w.items():
                if not val:
                    continue
                own1 = cell_owner.get((rr // dp, cc // dq))
                own2 = cell_owner.get((rr % dp, cc % dq))
                if own1 is None or own2 is None:
                    raise DimensionMismatch(
                        "composed action left the span of m (x) m")
                a = own1[0] * m_dim + own2[0]
                contrib = val * (own1[1] * own2[1])
                cur = coords.get(a)
                coords[a] = contrib if cur is None else cur + contrib
            accounted = {}
            for a, coeff in coords.items():
                coeff = coeff * inv_norm2
                if not coeff:
                    continue
                out.entries[a * size + col_index] = RatFunc(
                    coeff.num, coeff.den * dfac)
                a1, a2 = divmod(a, m_dim)
                for (ra, ca), va in basis[a1].items():
                    for (rb, cb), vb in basis[a2].items():
                        key = (ra * dp + rb, ca * dq + cb)
                        cur = accounted.get(key)
                        term = coeff * (va * vb)
                        accounted[key] = term if cur is None else cur + term
            for key, val in w.items():
                if val and accounted.get(key, zero) != val:
                    raise DimensionMismatch(
                        "composed action left the span of m (x) m")
    return ComposedRMatrix(p, q, algebra, k_curv, rp, rq, out)


def compose_variant(p: int, q: int, algebra: str,
                    k_curv: int = 1) -> ComposedRMatrix:
    """Composition with complex or quaternionic projective factors."""
    if algebra not in ("complex", "quaternion"):
        raise ParamOutOfRange("variant algebra must be complex or quaternion")
    return compose_R(p, q, k_curv=k_curv, algebra=algebra)


def compose_R_corrupted(p: int, q: int, k_curv: int = 1) -> ComposedRMatrix:
    """Negative control: compose with the q-side leg pairing transposed."""
    return compose_R(p, q, k_curv=k_curv, _cross_q_legs=True)


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def check_qybe_grassmann(p: int, q: int, mode: str = "exact",
                         sampler: SamplerConfig = None, algebra: str = "real",
                         corrupted: bool = False) -> VerificationReport:
    """Quantum check of the composed operator, run directly on the composed
    matrices on m^(x 3) rather than through the factorization argument."""
    if corrupted:
        composed = compose_R_corrupted(p, q)
    else:
        composed = compose_R(p, q, algebra=algebra)
    report = check_qybe(composed.matrix, entry="grassmann",
                        params={"p": p, "q": q, "algebra": algebra},
                        mode=mode, sampler=sampler)
    report.check = "grassmann-qybe"
    return report


def expansion_check_grassmann(p: int, q: int) -> VerificationReport:
    """Orders 0..2 of the composed operator: id, t-hat/s, and
    (1/2 t-hat^2 - id)/s^2, with t-hat the represented Casimir element."""
    t0 = time.perf_counter()
    composed = compose_R(p, q)
    series = expand_R(composed.matrix, 2)
    that = represented_casimir_k(grassmann_pair(p, q))
    m_dim = p * q
    ident = LegMatrix.identity((m_dim, m_dim), RATIONAL_RING)
    inv_s = RatFunc(MultiPoly.const(1), P_S)
    inv_s2 = RatFunc(MultiPoly.const(1), P_S ** 2)
    half = Fraction(1, 2)
    expected = [
        ident.to_ratfunc(),
        that.to_ratfunc().scale(inv_s),
        ((that @ that).scale(half) - ident).to_ratfunc().scale(inv_s2),
    ]
    witness = None
    for k, (got, want) in enumerate(zip(series.coeff_mats, expected)):
        if got != want:
            delta = got - want
            i, j, val = delta.first_nonzero()
            witness = {"order": k, "row": i, "col": j, "value": str(val)}
            break
    return VerificationReport("grassmann-expansion", "grassmann",
                              {"p": p, "q": q}, "exact",
                              "pass" if witness is None else "fail", witness,
                              elapsed_ms=(time.perf_counter() - t0) * 1e3)
