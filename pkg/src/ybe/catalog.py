"""Closed-form catalog of the six parametric R-matrix families.

Each entry supplies explicit matrices G-hat and C-hat on m (x) m, the
coefficient pair

    a = h / (s + c_a h),      b = h / s,

and the assembled operator R(s) = id + a G-hat + b C-hat over Q(s, h).
The classical companion is r(s) = (C-hat + G-hat) / s.

Entries and their shift constants c_a:

    sphere      gl(n,R)   / so(n)          leg n      c_a = k(n-2)/2
    cpn         gl(n,C)   / u(n)           leg 2n     c_a = n
    hpn         gl(n,H)   / sp(n)          leg 4n     c_a = 2n+2
    glpq_glgl   gl(p+q,R) / gl(p) x gl(q)  leg p+q    c_a = 0
    glpq_sopq   gl(p+q,R) / so(p,q)        leg p+q    c_a = (p+q-2)/2
    gl2n_glnc   gl(2n,R)  / gl(n,C)        leg 2n     c_a = 0

The sphere's G-hat and C-hat do not depend on the curvature sign k; only
the coefficient a does.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Mismatch, ParamOutOfRange
from .liepairs import (
    COMPLEX,
    QUATERNION,
    pair_for_entry,
    realified_elementary,
    represent_CG,
)
from .scalars import MultiPoly, P_H, P_S, RatFunc
from .tensor import (
    LegMatrix,
    RATIONAL_RING,
    RATFUNC_RING,
    elementary,
    flip_operator,
    kron,
)

ENTRY_IDS = ("sphere", "cpn", "hpn", "glpq_glgl", "glpq_sopq", "gl2n_glnc")

_PARAM_SCHEMAS = {
    "sphere": {"n": "int >= 1", "k": "curvature sign in {1, 0, -1}"},
    "cpn": {"n": "int >= 1"},
    "hpn": {"n": "int >= 1"},
    "glpq_glgl": {"p": "int >= 1", "q": "int >= 1"},
    "glpq_sopq": {"p": "int >= 1", "q": "int >= 1"},
    "gl2n_glnc": {"n": "int >= 1"},
}


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    params: dict
    leg_dim: int

    def label(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.id}({inner})"

    def __hash__(self):
        return hash((self.id, tuple(sorted(self.params.items()))))


@dataclass(frozen=True)
class CoefficientPair:
    """a = h/(s + c_a h) and b = h/(s + c_b h); every entry has c_b = 0."""

    a: RatFunc
    b: RatFunc
    c_a: Fraction
    c_b: Fraction


@dataclass
class ParametricRMatrix:
    entry: CatalogEntry
    ghat: LegMatrix
    chat: LegMatrix
    coeffs: CoefficientPair
    matrix: LegMatrix          # R(s) = id + a G-hat + b C-hat over Q(s, h)


def list_entries():
    """Catalog metadata: ids, parameter schemas, leg dimensions."""
    return [
        {"id": "sphere", "params": _PARAM_SCHEMAS["sphere"],
         "leg_dim": "n", "pair": "(gl(n,R), so(n))"},
        {"id": "cpn", "params": _PARAM_SCHEMAS["cpn"],
         "leg_dim": "2n", "pair": "(gl(n,C), u(n))"},
        {"id": "hpn", "params": _PARAM_SCHEMAS["hpn"],
         "leg_dim": "4n", "pair": "(gl(n,H), sp(n))"},
        {"id": "glpq_glgl", "params": _PARAM_SCHEMAS["glpq_glgl"],
         "leg_dim": "p+q", "pair": "(gl(p+q,R), gl(p) x gl(q))"},
        {"id": "glpq_sopq", "params": _PARAM_SCHEMAS["glpq_sopq"],
         "leg_dim": "p+q", "pair": "(gl(p+q,R), so(p,q))"},
        {"id": "gl2n_glnc", "params": _PARAM_SCHEMAS["gl2n_glnc"],
         "leg_dim": "2n", "pair": "(gl(2n,R), gl(n,C))"},
    ]


def validate_params(entry_id: str, params: dict) -> CatalogEntry:
    if entry_id not in ENTRY_IDS:
        raise ParamOutOfRange(f"unknown entry {entry_id!r}")
    schema = _PARAM_SCHEMAS[entry_id]
    clean = {}
    for key in schema:
        if key == "k":
            k = params.get("k", 1)
            if k not in (1, 0, -1):
                raise ParamOutOfRange(f"curvature sign k={k!r} not in 1,0,-1")
            clean["k"] = int(k)
            continue
        if key not in params:
            raise ParamOutOfRange(f"entry {entry_id} needs parameter {key}")
        val = params[key]
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise ParamOutOfRange(f"parameter {key}={val!r} must be int >= 1")
        clean[key] = val
    extra = set(params) - set(schema)
    if extra:
        raise ParamOutOfRange(f"unknown parameters {sorted(extra)} "
                              f"for entry {entry_id}")
    return CatalogEntry(entry_id, clean, _leg_dim(entry_id, clean))


def _leg_dim(entry_id: str, params: dict) -> int:
    if entry_id == "sphere":
        return params["n"]
    if entry_id == "cpn":
        return 2 * params["n"]
    if entry_id == "hpn":
        return 4 * params["n"]
    if entry_id in ("glpq_glgl", "glpq_sopq"):
        return params["p"] + params["q"]
    return 2 * params["n"]


# ---------------------------------------------------------------------------
# closed-form G-hat and C-hat
# ---------------------------------------------------------------------------

def _gc_sphere(n: int):
    ghat = LegMatrix.zeros((n, n), RATIONAL_RING)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            eij = elementary(n, i, j)
            ghat = ghat - kron(eij, eij)
    return ghat, flip_operator(n)


def _gc_unit_family(alg, n: int):
    # G-hat = -sum_e (e E_ij) (x) (e E_ij);  C-hat pairs E_ij with E_ji and
    # carries a minus sign on every imaginary unit (the dual basis signs)
    dim_m = alg.dim * n
    ghat = LegMatrix.zeros((dim_m, dim_m), RATIONAL_RING)
    chat = LegMatrix.zeros((dim_m, dim_m), RATIONAL_RING)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for e in range(alg.dim):
                left = realified_elementary(alg, n, i, j, e)
                ghat = ghat - kron(left, left)
                right = realified_elementary(alg, n, j, i, e)
                sign = 1 if e == 0 else -1
                chat = chat + kron(left, right).scale(Fraction(sign))
    return ghat, chat


def _block_sign(idx: int, p: int) -> int:
    # -1 on the first p indices, +1 on the rest (1-based index)
    return -1 if idx <= p else 1


def _gc_glpq_glgl(p: int, q: int):
    n = p + q
    ghat = LegMatrix.zeros((n, n), RATIONAL_RING)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            sign = _block_sign(i, p) * _block_sign(j, p)
            ghat = ghat + kron(elementary(n, i, j),
                               elementary(n, j, i)).scale(Fraction(sign))
    return ghat, flip_operator(n)


def _gc_glpq_sopq(p: int, q: int):
    n = p + q
    ghat = LegMatrix.zeros((n, n), RATIONAL_RING)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            sign = -_block_sign(i, p) * _block_sign(j, p)
            eij = elementary(n, i, j)
            ghat = ghat + kron(eij, eij).scale(Fraction(sign))
    return ghat, flip_operator(n)


def _gc_gl2n_glnc(n: int):
    size = 2 * n
    ghat = LegMatrix.zeros((size, size), RATIONAL_RING)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            ghat = ghat + kron(elementary(size, i + n, j + n),
                               elementary(size, j, i))
            ghat = ghat + kron(elementary(size, i, j),
                               elementary(size, j + n, i + n))
            ghat = ghat - kron(elementary(size, i, j + n),
                               elementary(size, j, i + n))
            ghat = ghat - kron(elementary(size, i + n, j),
                               elementary(size, j + n, i))
    return ghat, flip_operator(size)


def build_GC_closed(entry_id: str, params: dict):
    """(G-hat, C-hat) for one entry, as rational matrices on m (x) m."""
    entry = validate_params(entry_id, params)
    p = entry.params
    if entry_id == "sphere":
        return _gc_sphere(p["n"])
    if entry_id == "cpn":
        return _gc_unit_family(COMPLEX, p["n"])
    if entry_id == "hpn":
        return _gc_unit_family(QUATERNION, p["n"])
    if entry_id == "glpq_glgl":
        return _gc_glpq_glgl(p["p"], p["q"])
    if entry_id == "glpq_sopq":
        return _gc_glpq_sopq(p["p"], p["q"])
    return _gc_gl2n_glnc(p["n"])


# ---------------------------------------------------------------------------
# coefficients and assembly
# ---------------------------------------------------------------------------

def shift_constant(entry_id: str, params: dict) -> Fraction:
    entry = validate_params(entry_id, params)
    p = entry.params
    if entry_id == "sphere":
        return Fraction(p["k"] * (p["n"] - 2), 2)
    if entry_id == "cpn":
        return Fraction(p["n"])
    if entry_id == "hpn":
        return Fraction(2 * p["n"] + 2)
    if entry_id == "glpq_glgl":
        return Fraction(0)
    if entry_id == "glpq_sopq":
        return Fraction(p["p"] + p["q"] - 2, 2)
    return Fraction(0)


def coefficient_funcs(c_a: Fraction, c_b: Fraction = Fraction(0)) \
        -> CoefficientPair:
    a = RatFunc(P_H, P_S + MultiPoly.const(c_a) * P_H)
    b = RatFunc(P_H, P_S + MultiPoly.const(c_b) * P_H)
    return CoefficientPair(a, b, c_a, c_b)


def coefficients(entry_id: str, params: dict) -> CoefficientPair:
    """The coefficient pair a = h/(s + c_a h), b = h/s of one entry."""
    return coefficient_funcs(shift_constant(entry_id, params))


def assemble_R(entry_id: str, params: dict) -> ParametricRMatrix:
    """R(s) = id + a G-hat + b C-hat over Q(s, h)."""
    entry = validate_params(entry_id, params)
    ghat, chat = build_GC_closed(entry_id, params)
    coeffs = coefficients(entry_id, params)
    matrix = (LegMatrix.identity(ghat.dims, RATFUNC_RING)
              + ghat.to_ratfunc().scale(coeffs.a)
              + chat.to_ratfunc().scale(coeffs.b))
    return ParametricRMatrix(entry, ghat, chat, coeffs, matrix)


def assemble_R_with_shift(entry_id: str, params: dict,
                          c_a: Fraction) -> ParametricRMatrix:
    """Same assembly with an explicit shift constant (used by the fitter)."""
    entry = validate_params(entry_id, params)
    ghat, chat = build_GC_closed(entry_id, params)
    coeffs = coefficient_funcs(Fraction(c_a))
    matrix = (LegMatrix.identity(ghat.dims, RATFUNC_RING)
              + ghat.to_ratfunc().scale(coeffs.a)
              + chat.to_ratfunc().scale(coeffs.b))
    return ParametricRMatrix(entry, ghat, chat, coeffs, matrix)


def classical_r(entry_id: str, params: dict) -> LegMatrix:
    """r(s) = (C-hat + G-hat)/s over Q(s)."""
    ghat, chat = build_GC_closed(entry_id, params)
    inv_s = RatFunc(MultiPoly.const(1), P_S)
    return (ghat + chat).to_ratfunc().scale(inv_s)


def crosscheck_closed_vs_computed(entry_id: str, params: dict) -> dict:
    """Entrywise comparison of the catalog closed forms with the pair's
    represented Phi^-1 elements; reports the first differing entry."""
    ghat, chat = build_GC_closed(entry_id, params)
    pair = pair_for_entry(entry_id, validate_params(entry_id, params).params)
    ghat_fp, chat_fp = represent_CG(pair)
    for name, closed, computed in (("G", ghat, ghat_fp),
                                   ("C", chat, chat_fp)):
        if closed != computed:
            delta = closed - computed
            raise Mismatch(f"{name}-hat differs for {entry_id}{params} at "
                           f"{delta.first_nonzero()!r}")
    return {"entry": entry_id, "params": dict(params), "verdict": "pass"}
