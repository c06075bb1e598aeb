"""Exact and sampled verification of the Yang-Baxter equations.

All checks return a ``VerificationReport``; a failing check reports a
witness (the first nonzero residual entry) instead of raising, so batch
runs can record fail verdicts.  Exceptions are reserved for structural
misuse (wrong dimensions, bad parameters).

The spectral arguments follow the difference convention: on three legs
the pair (1,2) carries u, (1,3) carries u+v and (2,3) carries v.  A
different assignment can be passed explicitly.

Exact mode works over Q(u, v, h); internally each embedded factor is
multiplied by the least common denominator of its entries, which turns
the triple products into pure polynomial arithmetic.  Both sides of the
equation acquire the same overall factor, so the residual vanishes for
the cleared matrices exactly when it vanishes for the originals.

Sampled mode substitutes seeded random rational points for (u, v, h) and
demands exact zero at every point; there is no floating point and no
tolerance anywhere.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import build_GC_closed, validate_params
from .errors import DimensionMismatch, EvalPole
from .liepairs import CurvatureTensor
from .scalars import MultiPoly, P_U, P_V, RatFunc, poly_divexact, poly_lcm
from .tensor import LegMatrix, RATFUNC_RING, RATIONAL_RING, embed_on_legs

_F0 = Fraction(0)

LEG_PAIRS = ((0, 1), (0, 2), (1, 2))

DIFFERENCE_ARGS = {(0, 1): P_U, (0, 2): P_U + P_V, (1, 2): P_V}


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    num_points: int = 5
    numerator_bound: int = 256
    denominator_bound: int = 64
    max_retries: int = 32

    def draw(self, rng: random.Random) -> Fraction:
        return Fraction(rng.randint(-self.numerator_bound,
                                    self.numerator_bound),
                        rng.randint(1, self.denominator_bound))


@dataclass
class VerificationReport:
    check: str
    entry: str
    params: dict
    backend: str
    verdict: str                      # pass | fail | pole-retry-exhausted
    witness: object = None
    seed: int = None
    points: list = None
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json_dict(self) -> dict:
        out = {
            "check": self.check,
            "entry": self.entry,
            "params": self.params,
            "backend": self.backend,
            "verdict": self.verdict,
            "witness": self.witness,
            "seed": self.seed,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.points is not None:
            out["points"] = self.points
        if self.extra:
            out.update(self.extra)
        return out


def _witness(i: int, j: int, value) -> dict:
    return {"row": i, "col": j, "value": str(value)}


def clear_denominators(m: LegMatrix):
    """(D * m with polynomial entries, D); D is the lcm of entry denominators."""
    if m.ring is not RATFUNC_RING:
        raise DimensionMismatch("clear_denominators needs a ratfunc matrix")
    lcm = MultiPoly.const(1)
    for x in m.entries:
        if x and not x.den.is_one():
            lcm = poly_lcm(lcm, x.den)
    if lcm.is_one():
        return m, lcm
    out = []
    zero = RATFUNC_RING.zero
    for x in m.entries:
        if not x:
            out.append(zero)
        else:
            out.append(RatFunc._raw(x.num * poly_divexact(lcm, x.den),
                                    MultiPoly.const(1)))
    return LegMatrix(m.dims, RATFUNC_RING, out), lcm


def _three_leg_factors(matrix: LegMatrix, assign=None, cleared=True):
    """Embed the parametric two-leg operator on all three leg pairs with its
    spectral argument substituted; optionally cleared of denominators."""
    if len(matrix.dims) != 2 or matrix.dims[0] != matrix.dims[1]:
        raise DimensionMismatch(f"expected two equal legs, got {matrix.dims}")
    assign = DIFFERENCE_ARGS if assign is None else assign
    n = matrix.dims[0]
    dims3 = (n, n, n)
    factors = {}
    dprod = MultiPoly.const(1)
    for pair in LEG_PAIRS:
        sub = matrix.subst_var("s", assign[pair])
        if cleared:
            sub, dfac = clear_denominators(sub)
            dprod = dprod * dfac
        factors[pair] = embed_on_legs(sub, pair, dims3)
    return factors, dprod


def check_qybe(matrix: LegMatrix, *, entry: str = "custom", params=None,
               mode: str = "exact", sampler: SamplerConfig = None,
               assign=None) -> VerificationReport:
    """R12(u) R13(u+v) R23(v) - R23(v) R13(u+v) R12(u) on three legs."""
    params = dict(params or {})
    t0 = time.perf_counter()
    if mode == "exact":
        factors, dprod = _three_leg_factors(matrix, assign)
        m12, m13, m23 = (factors[p] for p in LEG_PAIRS)
        residual = (m12 @ m13 @ m23) - (m23 @ m13 @ m12)
        probe = residual.first_nonzero()
        if probe is None:
            verdict, witness = "pass", None
        else:
            i, j, val = probe
            true_val = RatFunc(val.num, val.den * dprod)
            verdict, witness = "fail", _witness(i, j, true_val)
        return VerificationReport("qybe", entry, params, "exact", verdict,
                                  witness,
                                  elapsed_ms=(time.perf_counter() - t0) * 1e3)
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    sampler = sampler or SamplerConfig()
    assign = DIFFERENCE_ARGS if assign is None else assign
    n = matrix.dims[0]
    dims3 = (n, n, n)
    rng = random.Random(sampler.seed)
    points = []
    verdict, witness = "pass", None
    for _ in range(sampler.num_points):
        for attempt in range(sampler.max_retries):
            uval, vval = sampler.draw(rng), sampler.draw(rng)
            hval = sampler.draw(rng)
            base = {"s": _F0, "u": uval, "v": vval, "h": hval}
            try:
                embedded = {}
                for pair in LEG_PAIRS:
                    sval = assign[pair].eval(base)
                    rational = matrix.eval_entries(
                        {"s": sval, "u": _F0, "v": _F0, "h": hval})
                    embedded[pair] = embed_on_legs(rational, pair, dims3)
            except EvalPole:
                continue
            points.append({"u": str(uval), "v": str(vval), "h": str(hval)})
            m12, m13, m23 = (embedded[p] for p in LEG_PAIRS)
            residual = (m12 @ m13 @ m23) - (m23 @ m13 @ m12)
            probe = residual.first_nonzero()
            if probe is not None:
                verdict = "fail"
                witness = _witness(probe[0], probe[1], probe[2])
            break
        else:
            verdict = "pole-retry-exhausted"
        if verdict != "pass":
            break
    return VerificationReport("qybe", entry, params, "sampled", verdict,
                              witness, seed=sampler.seed, points=points,
                              elapsed_ms=(time.perf_counter() - t0) * 1e3)


def check_cybe(rmat: LegMatrix, *, entry: str = "custom", params=None,
               check: str = "cybe", assign=None) -> VerificationReport:
    """[r12(u), r13(u+v)] + [r12(u), r23(v)] + [r13(u+v), r23(v)] over Q(u,v).

    Unlike the triple products of the quantum check, the three commutators
    enter a sum, so per-factor denominator clearing would rescale the terms
    unequally; this check runs on plain rational-function arithmetic.
    """
    params = dict(params or {})
    t0 = time.perf_counter()
    factors, _ = _three_leg_factors(rmat.to_ratfunc(), assign, cleared=False)
    m12, m13, m23 = (factors[p] for p in LEG_PAIRS)

    def comm(a, b):
        return a @ b - b @ a

    residual = comm(m12, m13) + comm(m12, m23) + comm(m13, m23)
    probe = residual.first_nonzero()
    if probe is None:
        verdict, witness = "pass", None
    else:
        i, j, val = probe
        verdict, witness = "fail", _witness(i, j, val)
    return VerificationReport(check, entry, params, "exact", verdict, witness,
                              elapsed_ms=(time.perf_counter() - t0) * 1e3)


def check_cybe_index(curv: CurvatureTensor, *, entry: str = "curvature",
                     params=None) -> VerificationReport:
    """The four-term quadratic identity on the index-form curvature tensor,
    with raising and lowering done by the Gram matrix of m."""
    params = dict(params or {})
    t0 = time.perf_counter()
    t = curv.mixed()
    n = curv.m_dim
    rng_n = range(n)
    witness = None
    for i in rng_n:
        for nn in rng_n:
            for k in rng_n:
                for l in rng_n:
                    for r in rng_n:
                        for s in rng_n:
                            acc = _F0
                            for m in rng_n:
                                acc += (t[i][m][k][l] * t[m][nn][r][s]
                                        - t[m][nn][k][l] * t[i][m][r][s]
                                        + t[i][nn][k][m] * t[m][l][r][s]
                                        - t[i][nn][m][l] * t[k][m][r][s])
                            if acc:
                                witness = {"indices": [i, nn, k, l, r, s],
                                           "value": str(acc)}
                                break
                        if witness:
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    verdict = "pass" if witness is None else "fail"
    return VerificationReport("cybe-index", entry, params, "exact", verdict,
                              witness,
                              elapsed_ms=(time.perf_counter() - t0) * 1e3)


# ---------------------------------------------------------------------------
# identity suites
# ---------------------------------------------------------------------------

# Chains of equal products on three legs.  Each member is (coefficient,
# list of factors); a factor is "G" or "C" with a leg pair.  Coefficients
# are literal fractions or the tokens 1/n, 1/(2n), 1/(4n) resolved against
# the entry's size parameter.
#
# The sphere suite is the full list (a)-(k).  For the realified complex
# and quaternionic entries the two leading chains are replaced (with the
# 1/(2n) resp. 1/2 and 1/(4n) factors) and the two-factor chains (f)-(k)
# survive literally.  The three-factor contraction chains (c), (d), (e)
# pick up one factor of the realification dimension d on their one-factor
# tails (the realified C-hat satisfies C12 C13 C23 = d * C13); for the
# complex entry even that correction fails -- the products only reduce on
# the complex-linear subspace -- so (c)-(e) are omitted there.  All of
# this is machine-verified in the test suite.

_G, _C = "G", "C"


def _chain(*members):
    return list(members)


IDENTITY_CHAINS = {
    "sphere": {
        "a": _chain(("1", [(_G, 12), (_G, 23)]),
                    ("-1", [(_C, 13), (_G, 23)]),
                    ("-1", [(_G, 12), (_C, 13)]),
                    ("-1", [(_G, 12), (_G, 13), (_G, 23)]),
                    ("1/n", [(_G, 12), (_C, 13), (_G, 23)]),
                    ("-1", [(_G, 12), (_C, 13), (_C, 23)]),
                    ("-1", [(_C, 23), (_G, 13), (_C, 12)]),
                    ("-1", [(_C, 12), (_C, 13), (_G, 23)])),
        "b": _chain(("1", [(_G, 23), (_G, 12)]),
                    ("-1", [(_G, 23), (_C, 13)]),
                    ("-1", [(_C, 13), (_G, 12)]),
                    ("-1", [(_G, 23), (_G, 13), (_G, 12)]),
                    ("1/n", [(_G, 23), (_C, 13), (_G, 12)]),
                    ("-1", [(_G, 23), (_C, 13), (_C, 12)]),
                    ("-1", [(_C, 12), (_G, 13), (_C, 23)]),
                    ("-1", [(_C, 23), (_C, 13), (_G, 12)])),
    },
    "cpn": {
        "a": _chain(("1", [(_G, 12), (_G, 23)]),
                    ("-1", [(_C, 13), (_G, 23)]),
                    ("-1", [(_G, 12), (_C, 13)]),
                    ("1/(2n)", [(_G, 12), (_C, 13), (_G, 23)])),
        "b": _chain(("1", [(_G, 23), (_G, 12)]),
                    ("-1", [(_G, 23), (_C, 13)]),
                    ("-1", [(_C, 13), (_G, 12)]),
                    ("1/(2n)", [(_G, 23), (_C, 13), (_G, 12)])),
    },
    "hpn": {
        "a": _chain(("1", [(_G, 12), (_G, 23)]),
                    ("-1", [(_C, 13), (_G, 23)]),
                    ("-1", [(_G, 12), (_C, 13)]),
                    ("1/2", [(_G, 12), (_G, 13), (_G, 23)]),
                    ("1/(4n)", [(_G, 12), (_C, 13), (_G, 23)]),
                    ("1/2", [(_G, 12), (_C, 13), (_C, 23)]),
                    ("1/2", [(_C, 23), (_G, 13), (_C, 12)]),
                    ("1/2", [(_C, 12), (_C, 13), (_G, 23)])),
        "b": _chain(("1", [(_G, 23), (_G, 12)]),
                    ("-1", [(_G, 23), (_C, 13)]),
                    ("-1", [(_C, 13), (_G, 12)]),
                    ("1/2", [(_G, 23), (_G, 13), (_G, 12)]),
                    ("1/(4n)", [(_G, 23), (_C, 13), (_G, 12)]),
                    ("1/2", [(_G, 23), (_C, 13), (_C, 12)]),
                    ("1/2", [(_C, 12), (_G, 13), (_C, 23)]),
                    ("1/2", [(_C, 23), (_C, 13), (_G, 12)])),
    },
}

_CONTRACTION_CHAINS = {
    # tail coefficient token "t" is the entry's contraction factor:
    # 1 for the sphere, d for the quaternionic entry
    "c": _chain(("1", [(_C, 12), (_G, 13), (_G, 23)]),
                ("1", [(_G, 23), (_G, 13), (_C, 12)]),
                ("-t", [(_G, 23)])),
    "d": _chain(("1", [(_G, 12), (_G, 13), (_C, 23)]),
                ("1", [(_C, 23), (_G, 13), (_G, 12)]),
                ("-t", [(_G, 12)])),
    "e": _chain(("1", [(_C, 12), (_C, 13), (_C, 23)]),
                ("1", [(_C, 23), (_C, 13), (_C, 12)]),
                ("t", [(_C, 13)])),
}

_SHARED_CHAINS = {
    "f": _chain(("1", [(_G, 13), (_G, 23)]),
                ("-1", [(_C, 12), (_G, 23)]),
                ("-1", [(_G, 13), (_C, 12)])),
    "g": _chain(("1", [(_G, 12), (_G, 13)]),
                ("-1", [(_C, 23), (_G, 13)]),
                ("-1", [(_G, 12), (_C, 23)])),
    "h": _chain(("1", [(_G, 13), (_G, 12)]),
                ("-1", [(_C, 23), (_G, 12)]),
                ("-1", [(_G, 13), (_C, 23)])),
    "i": _chain(("1", [(_G, 23), (_G, 13)]),
                ("-1", [(_C, 12), (_G, 13)]),
                ("-1", [(_G, 23), (_C, 12)])),
    "j": _chain(("1", [(_C, 12), (_C, 13)]),
                ("1", [(_C, 23), (_C, 12)]),
                ("1", [(_C, 13), (_C, 23)])),
    "k": _chain(("1", [(_C, 13), (_C, 12)]),
                ("1", [(_C, 12), (_C, 23)]),
                ("1", [(_C, 23), (_C, 13)])),
}

_LEG_CODES = {12: (0, 1), 13: (0, 2), 23: (1, 2)}

# contraction factor of the one-factor tails in chains (c), (d), (e)
_CONTRACTION_FACTOR = {"sphere": 1, "hpn": 4}


def _coeff_value(token: str, n: int, tail: int) -> Fraction:
    if token == "1":
        return Fraction(1)
    if token == "-1":
        return Fraction(-1)
    if token == "1/2":
        return Fraction(1, 2)
    if token == "1/n":
        return Fraction(1, n)
    if token == "1/(2n)":
        return Fraction(1, 2 * n)
    if token == "1/(4n)":
        return Fraction(1, 4 * n)
    if token == "t":
        return Fraction(tail)
    if token == "-t":
        return Fraction(-tail)
    raise ValueError(f"unknown coefficient token {token!r}")


def _chains_for(entry_id: str) -> dict:
    chains = dict(IDENTITY_CHAINS[entry_id])
    if entry_id in _CONTRACTION_FACTOR:
        chains.update(_CONTRACTION_CHAINS)
    chains.update(_SHARED_CHAINS)
    return chains


def identity_letters(entry_id: str):
    if entry_id not in IDENTITY_CHAINS:
        raise ValueError(f"no identity suite for entry {entry_id!r}")
    return tuple(sorted(_chains_for(entry_id)))


def check_identity_suite(entry_id: str, params: dict):
    """Every product identity chain of the entry, checked as exact matrix
    equations on the three-leg space; one report per identity letter."""
    entry = validate_params(entry_id, params)
    if entry_id not in IDENTITY_CHAINS:
        raise ValueError(f"no identity suite for entry {entry_id!r}")
    n_param = entry.params["n"]
    ghat, chat = build_GC_closed(entry_id, entry.params)
    leg = ghat.dims[0]
    dims3 = (leg, leg, leg)
    embedded = {}
    for code, pair in _LEG_CODES.items():
        embedded[(_G, code)] = embed_on_legs(ghat, pair, dims3)
        embedded[(_C, code)] = embed_on_legs(chat, pair, dims3)

    tail = _CONTRACTION_FACTOR.get(entry_id, 1)

    def evaluate(member):
        token, factors = member
        acc = None
        for sym, code in factors:
            mat = embedded[(sym, code)]
            acc = mat if acc is None else acc @ mat
        coeff = _coeff_value(token, n_param, tail)
        return acc if coeff == 1 else acc.scale(coeff)

    chains = _chains_for(entry_id)
    reports = []
    for letter in sorted(chains):
        chain = chains[letter]
        t0 = time.perf_counter()
        head = evaluate(chain[0])
        witness = None
        for link_idx, member in enumerate(chain[1:], start=1):
            other = evaluate(member)
            if head != other:
                delta = head - other
                i, j, val = delta.first_nonzero()
                witness = {"identity": letter, "link": link_idx,
                           "row": i, "col": j, "value": str(val)}
                break
        reports.append(VerificationReport(
            f"identity-{letter}", entry_id, entry.params, "exact",
            "pass" if witness is None else "fail", witness,
            elapsed_ms=(time.perf_counter() - t0) * 1e3))
    return reports


def check_unitarity(matrix: LegMatrix, *, entry: str = "custom",
                    params=None) -> VerificationReport:
    """Is R(s) R(-s) a scalar multiple f(s,h) of the identity?  The factor
    is reported on pass; the first off-proportional entry on fail."""
    params = dict(params or {})
    t0 = time.perf_counter()
    neg_s = -MultiPoly.variable("s")
    prod = matrix @ matrix.subst_var("s", neg_s)
    n = prod.size
    factor = prod.get(0, 0)
    witness = None
    for idx, val in enumerate(prod.entries):
        i, j = divmod(idx, n)
        expected = factor if i == j else RATFUNC_RING.zero
        if val != expected:
            witness = _witness(i, j, val)
            break
    verdict = "pass" if witness is None else "fail"
    extra = {"factor": str(factor)} if verdict == "pass" else {}
    return VerificationReport("unitarity", entry, params, "exact", verdict,
                              witness,
                              elapsed_ms=(time.perf_counter() - t0) * 1e3,
                              extra=extra)
