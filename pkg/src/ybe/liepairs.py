"""Symmetric pairs of matrix Lie algebras, built from first principles.

Two flavours of pair are constructed:

* ``SymmetricPair`` -- the realified general linear algebras gl(n, K) for
  K in {R, C, H} (and gl(p+q, R), gl(2n, R)) together with an involution
  and the normalized trace form.  These act on the realified column space
  m and supply the elements C = Phi^-1(id) and G = Phi^-1(theta) whose
  represented images are cross-checked against closed forms elsewhere.

* ``GeomPair`` -- so(p+q) split by conjugation with diag(-1_p, 1_q) into
  so(p) x so(q) acting on the off-diagonal blocks.  These feed the
  curvature tensor, the represented Casimir element of the subalgebra,
  and the curvature-vs-Casimir proportionality check.

Quaternions are realified through the left regular representation on
R^4 with basis (1, i, j, k); m = K^n becomes R^(d*n) with n blocks of d.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    NoProportionality,
    NotInSpan,
    SingularGram,
    SplittingViolation,
)
from .tensor import LegMatrix, RATIONAL_RING, elementary, kron

_F0 = Fraction(0)
_F1 = Fraction(1)


# ---------------------------------------------------------------------------
# exact linear algebra over Q (list-of-rows of Fractions)
# ---------------------------------------------------------------------------

def invert_rational(rows):
    """Inverse of a square matrix of Fractions; raises SingularGram."""
    n = len(rows)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            raise SingularGram(f"singular at column {col}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def solve_in_span(span_vectors, target):
    """Coordinates of ``target`` in the span of the given vectors, or None.

    Vectors are flat lists of Fractions; the span vectors must be linearly
    independent.
    """
    m = len(span_vectors)
    if m == 0:
        return [] if not any(target) else None
    cols = len(span_vectors[0])
    # augmented system [span^T | target], eliminated by Gauss
    rows = [[span_vectors[k][c] for k in range(m)] + [target[c]]
            for c in range(cols)]
    pivots = []
    r = 0
    for c in range(m):
        pivot = next((i for i in range(r, cols) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(cols):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if len(pivots) != m:
        raise ValueError("span vectors are linearly dependent")
    coords = [_F0] * m
    for row_idx, c in enumerate(pivots):
        coords[c] = rows[row_idx][m]
    for i in range(r, cols):
        if rows[i][m]:
            return None
    return coords


def independent_subset(vectors):
    """Indices of a maximal linearly independent subset, scanned in order."""
    basis_rows = []
    chosen = []
    for idx, vec in enumerate(vectors):
        row = list(vec)
        for prow in basis_rows:
            lead = next(i for i, x in enumerate(prow) if x)
            if row[lead]:
                f = row[lead]
                row = [x - f * y for x, y in zip(row, prow)]
        lead = next((i for i, x in enumerate(row) if x), None)
        if lead is None:
            continue
        inv = 1 / row[lead]
        basis_rows.append([x * inv for x in row])
        chosen.append(idx)
    return chosen


def _flatten(m: LegMatrix):
    return m.entries


# ---------------------------------------------------------------------------
# division algebras and realification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DivisionAlgebra:
    """R, C or H with its unit multiplication table.

    ``table[a][b] = (sign, c)`` encodes unit_a * unit_b = sign * unit_c.
    """

    kind: str
    dim: int
    unit_names: tuple
    table: tuple

    def unit_product(self, a: int, b: int):
        return self.table[a][b]

    def left_regular(self, a: int) -> LegMatrix:
        """The unit's left-multiplication operator on K = R^dim."""
        m = LegMatrix.zeros((self.dim,), RATIONAL_RING)
        for b in range(self.dim):
            sign, c = self.table[a][b]
            m.entries[c * self.dim + b] = Fraction(sign)
        return m


REAL = DivisionAlgebra("real", 1, ("1",), (((1, 0),),))

COMPLEX = DivisionAlgebra(
    "complex", 2, ("1", "i"),
    (((1, 0), (1, 1)),
     ((1, 1), (-1, 0))))

# basis order (1, i, j, k); ij = k, jk = i, ki = j
QUATERNION = DivisionAlgebra(
    "quaternion", 4, ("1", "i", "j", "k"),
    (((1, 0), (1, 1), (1, 2), (1, 3)),
     ((1, 1), (-1, 0), (1, 3), (-1, 2)),
     ((1, 2), (-1, 3), (-1, 0), (1, 1)),
     ((1, 3), (1, 2), (-1, 1), (-1, 0))))

ALGEBRAS = {a.kind: a for a in (REAL, COMPLEX, QUATERNION)}


def realified_elementary(alg: DivisionAlgebra, n: int, i: int, j: int,
                         unit: int) -> LegMatrix:
    """E_ij * unit as a (d n) x (d n) real matrix (i, j are 1-based)."""
    d = alg.dim
    size = d * n
    m = LegMatrix.zeros((size,), RATIONAL_RING)
    block = alg.left_regular(unit)
    for r in range(d):
        for c in range(d):
            val = block.entries[r * d + c]
            if val:
                m.entries[((i - 1) * d + r) * size + ((j - 1) * d + c)] = val
    return m


def build_basis(alg: DivisionAlgebra, n: int):
    """Realified basis {E_ij * q} of gl(n, K), ordered i, then j, then unit."""
    if n < 1:
        raise DimensionMismatch("n must be at least 1")
    basis = []
    labels = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for e in range(alg.dim):
                basis.append(realified_elementary(alg, n, i, j, e))
                labels.append((i, j, alg.unit_names[e]))
    return basis, labels


# ---------------------------------------------------------------------------
# symmetric pairs acting on the realified column space
# ---------------------------------------------------------------------------

@dataclass
class SymmetricPair:
    """Realified g-tilde with involution theta and normalized trace form."""

    name: str
    algebra: DivisionAlgebra
    params: dict
    basis: list
    labels: list
    theta_mat: list            # theta on basis coordinates, columns = images
    kappa_scale: Fraction      # kappa(X, Y) = kappa_scale * tr(XY)
    _gram: list = field(default=None, repr=False)
    _gram_inv: list = field(default=None, repr=False)

    @property
    def dim_m(self) -> int:
        return self.basis[0].size

    def coords_of(self, x: LegMatrix):
        """Coordinates of x in the basis span; raises NotInSpan."""
        d = self.algebra.dim
        size = self.dim_m
        if x.size != size:
            raise NotInSpan(f"matrix size {x.size} vs span on {size}")
        coords = []
        for i, j, ename in self.labels:
            e = self.algebra.unit_names.index(ename)
            coords.append(x.entries[((i - 1) * d + e) * size + (j - 1) * d])
        # confirm the readback reproduces x exactly
        recon = [Fraction(0)] * (size * size)
        for c, b in zip(coords, self.basis):
            if c:
                for pos, val in enumerate(b.entries):
                    if val:
                        recon[pos] += c * val
        if recon != x.entries:
            raise NotInSpan("matrix is not in the span of the pair's basis")
        return coords

    def from_coords(self, coords) -> LegMatrix:
        out = LegMatrix.zeros((self.dim_m,), RATIONAL_RING)
        for c, b in zip(coords, self.basis):
            if c:
                for pos, val in enumerate(b.entries):
                    if val:
                        out.entries[pos] += c * val
        return out

    def theta_apply(self, x: LegMatrix) -> LegMatrix:
        coords = self.coords_of(x)
        B = len(self.basis)
        img = [sum((self.theta_mat[a][b] * coords[b]
                    for b in range(B) if coords[b]), _F0) for a in range(B)]
        return self.from_coords(img)

    def kappa(self, x: LegMatrix, y: LegMatrix) -> Fraction:
        self.coords_of(x)
        self.coords_of(y)
        return self.kappa_scale * (x @ y).trace()

    def gram(self):
        if self._gram is None:
            B = len(self.basis)
            g = [[self.kappa_scale * (self.basis[a] @ self.basis[b]).trace()
                  for b in range(B)] for a in range(B)]
            self._gram = g
        return self._gram

    def gram_inv(self):
        if self._gram_inv is None:
            self._gram_inv = invert_rational(self.gram())
        return self._gram_inv


def _theta_matrix(basis, labels, alg, theta_fn):
    probe = SymmetricPair("probe", alg, {}, basis, labels,
                          None, _F1)
    cols = [probe.coords_of(theta_fn(b)) for b in basis]
    B = len(basis)
    return [[cols[b][a] for b in range(B)] for a in range(B)]


def _make_pair(name, alg, params, n_blocks, theta_fn, kappa_scale):
    basis, labels = build_basis(alg, n_blocks)
    theta_mat = _theta_matrix(basis, labels, alg, theta_fn)
    return SymmetricPair(name, alg, params, basis, labels, theta_mat,
                         kappa_scale)


def _signature_matrix(p: int, q: int) -> LegMatrix:
    m = LegMatrix.identity((p + q,), RATIONAL_RING)
    for i in range(p):
        m.entries[i * (p + q) + i] = Fraction(-1)
    return m


def _complex_structure(n: int) -> LegMatrix:
    m = LegMatrix.zeros((2 * n,), RATIONAL_RING)
    size = 2 * n
    for k in range(n):
        m.entries[k * size + (k + n)] = Fraction(1)
        m.entries[(k + n) * size + k] = Fraction(-1)
    return m


def sphere_pair(n: int) -> SymmetricPair:
    """(gl(n, R), so(n)) with theta(X) = -X^T, kappa = tr."""
    return _make_pair("sphere", REAL, {"n": n}, n,
                      lambda x: -x.transpose(), _F1)


def cpn_pair(n: int) -> SymmetricPair:
    """(gl(n, C), u(n)) realified; theta(X) = -X^dagger, kappa = Re tr."""
    # on realified matrices the conjugate transpose is the plain transpose
    return _make_pair("cpn", COMPLEX, {"n": n}, n,
                      lambda x: -x.transpose(), Fraction(1, 2))


def hpn_pair(n: int) -> SymmetricPair:
    """(gl(n, H), sp(n)) realified; theta(X) = -conj(X)^T, kappa = Sc tr."""
    return _make_pair("hpn", QUATERNION, {"n": n}, n,
                      lambda x: -x.transpose(), Fraction(1, 4))


def glpq_glgl_pair(p: int, q: int) -> SymmetricPair:
    """(gl(p+q, R), gl(p) x gl(q)); theta = conjugation by diag(-1_p, 1_q)."""
    ipq = _signature_matrix(p, q)
    return _make_pair("glpq_glgl", REAL, {"p": p, "q": q}, p + q,
                      lambda x: ipq @ x @ ipq, _F1)


def glpq_sopq_pair(p: int, q: int) -> SymmetricPair:
    """(gl(p+q, R), so(p, q)); theta(X) = -I_{p,q} X^T I_{p,q}."""
    ipq = _signature_matrix(p, q)
    return _make_pair("glpq_sopq", REAL, {"p": p, "q": q}, p + q,
                      lambda x: -(ipq @ x.transpose() @ ipq), _F1)


def gl2n_glnc_pair(n: int) -> SymmetricPair:
    """(gl(2n, R), gl(n, C)); theta = conjugation by the complex structure.

    With I^2 = -1 the conjugation X -> I X I^{-1} equals -I X I; its fixed
    points are exactly the matrices commuting with I, i.e. gl(n, C).
    """
    cplx = _complex_structure(n)
    return _make_pair("gl2n_glnc", REAL, {"n": n}, 2 * n,
                      lambda x: -(cplx @ x @ cplx), _F1)


_PAIR_BUILDERS = {
    "sphere": lambda params: sphere_pair(params["n"]),
    "cpn": lambda params: cpn_pair(params["n"]),
    "hpn": lambda params: hpn_pair(params["n"]),
    "glpq_glgl": lambda params: glpq_glgl_pair(params["p"], params["q"]),
    "glpq_sopq": lambda params: glpq_sopq_pair(params["p"], params["q"]),
    "gl2n_glnc": lambda params: gl2n_glnc_pair(params["n"]),
}


def pair_for_entry(entry_id: str, params: dict) -> SymmetricPair:
    if entry_id not in _PAIR_BUILDERS:
        raise KeyError(f"no symmetric pair for entry {entry_id!r}")
    return _PAIR_BUILDERS[entry_id](params)


def involution_apply(pair: SymmetricPair, x: LegMatrix) -> LegMatrix:
    return pair.theta_apply(x)


def kappa(pair: SymmetricPair, x: LegMatrix, y: LegMatrix) -> Fraction:
    return pair.kappa(x, y)


def gram_and_dual(pair: SymmetricPair):
    """Gram matrix of kappa over the basis and its exact inverse."""
    return pair.gram(), pair.gram_inv()


def build_CG(pair: SymmetricPair):
    """Coefficient matrices of C = Phi^-1(id) and G = Phi^-1(theta) over
    basis (x) basis: C = Gram^-1 and G = theta . Gram^-1."""
    ginv = pair.gram_inv()
    B = len(pair.basis)
    t = pair.theta_mat
    g = [[sum((t[c][a] * ginv[a][b] for a in range(B) if ginv[a][b]), _F0)
          for b in range(B)] for c in range(B)]
    return ginv, g


def apply_phi(pair: SymmetricPair, coeffs) -> list:
    """Phi(sum coeffs_ab b_a (x) b_b) as a matrix on basis coordinates,
    using the defining formula Phi(X (x) Y)(Z) = X kappa(Y, Z)."""
    B = len(pair.basis)
    gram = pair.gram()
    return [[sum((coeffs[a][b] * gram[b][c] for b in range(B)
                  if coeffs[a][b]), _F0) for c in range(B)]
            for a in range(B)]


def represent_CG(pair: SymmetricPair):
    """(G-hat, C-hat) on m (x) m under the realified matrix action."""
    c_coeffs, g_coeffs = build_CG(pair)
    dm = pair.dim_m
    ghat = LegMatrix.zeros((dm, dm), RATIONAL_RING)
    chat = LegMatrix.zeros((dm, dm), RATIONAL_RING)
    B = len(pair.basis)
    for a in range(B):
        for b in range(B):
            if c_coeffs[a][b]:
                chat = chat + kron(pair.basis[a], pair.basis[b]).scale(
                    c_coeffs[a][b])
            if g_coeffs[a][b]:
                ghat = ghat + kron(pair.basis[a], pair.basis[b]).scale(
                    g_coeffs[a][b])
    return ghat, chat


# ---------------------------------------------------------------------------
# splitting check
# ---------------------------------------------------------------------------

def _span_basis_coords(pair: SymmetricPair, sign: int):
    """Coordinate basis of the (+1 or -1) eigenspace of theta."""
    B = len(pair.basis)
    t = pair.theta_mat
    half = Fraction(1, 2)
    cols = []
    for b in range(B):
        col = [(Fraction(int(a == b)) + sign * t[a][b]) * half
               for a in range(B)]
        cols.append(col)
    chosen = independent_subset(cols)
    return [cols[i] for i in chosen]


def check_splitting(pair) -> dict:
    """Verify the bracket relations [k,k] in k, [k,m] in m, [m,m] in k for
    the eigenspaces of theta; raises SplittingViolation with a witness."""
    if isinstance(pair, GeomPair):
        return _check_splitting_geom(pair)
    B = len(pair.basis)
    t = pair.theta_mat
    for b in range(B):
        img = [sum((t[a][c] * t[c][b] for c in range(B) if t[c][b]), _F0)
               for a in range(B)]
        expected = [Fraction(int(a == b)) for a in range(B)]
        if img != expected:
            raise SplittingViolation(
                f"theta is not an involution on basis vector {pair.labels[b]}")
    k_coords = _span_basis_coords(pair, +1)
    m_coords = _span_basis_coords(pair, -1)
    if len(k_coords) + len(m_coords) != B:
        raise SplittingViolation("eigenspaces do not span the algebra")
    k_mats = [pair.from_coords(c) for c in k_coords]
    m_mats = [pair.from_coords(c) for c in m_coords]

    def eigen_part(x: LegMatrix, sign: int) -> LegMatrix:
        tx = pair.theta_apply(x)
        half = Fraction(1, 2)
        return (x + tx.scale(Fraction(sign))).scale(half)

    def expect_in(x, sign, who, a_label, b_label):
        # the component in the opposite eigenspace must vanish
        bad = eigen_part(x, -sign)
        if not bad.is_zero():
            raise SplittingViolation(
                f"[{who}] bracket of {a_label} and {b_label} leaves the "
                f"expected eigenspace")

    for ia, ka in enumerate(k_mats):
        for ib, kb in enumerate(k_mats):
            expect_in(ka @ kb - kb @ ka, +1, "k,k", f"k{ia}", f"k{ib}")
        for ib, mb in enumerate(m_mats):
            expect_in(ka @ mb - mb @ ka, -1, "k,m", f"k{ia}", f"m{ib}")
    for ia, ma in enumerate(m_mats):
        for ib, mb in enumerate(m_mats):
            expect_in(ma @ mb - mb @ ma, +1, "m,m", f"m{ia}", f"m{ib}")
    return {"dim_k": len(k_mats), "dim_m": len(m_mats), "verdict": "pass"}


def corrupt_theta(pair: SymmetricPair, index: int) -> SymmetricPair:
    """Copy of the pair with theta's action on one basis vector sign-flipped
    (a deliberately broken involution, used as a negative control)."""
    B = len(pair.basis)
    t = [[pair.theta_mat[a][b] * (-1 if b == index else 1) for b in range(B)]
         for a in range(B)]
    return SymmetricPair(pair.name + "-corrupt", pair.algebra, pair.params,
                         pair.basis, pair.labels, t, pair.kappa_scale)


# ---------------------------------------------------------------------------
# geometric pairs so(p+q) / (so(p) x so(q)) and curvature
# ---------------------------------------------------------------------------

def _so_generator(size: int, a: int, b: int) -> LegMatrix:
    """A_ab = E_ab - E_ba (1-based indices)."""
    m = LegMatrix.zeros((size,), RATIONAL_RING)
    m.entries[(a - 1) * size + (b - 1)] = _F1
    m.entries[(b - 1) * size + (a - 1)] = -_F1
    return m


@dataclass
class GeomPair:
    """so(p+q) with the block splitting so(p) x so(q) + off-diagonal m.

    kappa(X, Y) = kappa_scale * tr(XY); the default scale 1/2 makes the
    off-diagonal m-basis orthonormal up to sign.
    """

    name: str
    p: int
    q: int
    k_basis: list
    m_basis: list
    kappa_scale: Fraction = Fraction(1, 2)

    @property
    def dim_m(self) -> int:
        return len(self.m_basis)

    def m_coords(self, x: LegMatrix):
        coords = solve_in_span([_flatten(b) for b in self.m_basis],
                               _flatten(x))
        if coords is None:
            raise NotInSpan("matrix is not in the span of the m-basis")
        return coords

    def k_coords(self, x: LegMatrix):
        coords = solve_in_span([_flatten(b) for b in self.k_basis],
                               _flatten(x))
        if coords is None:
            raise NotInSpan("matrix is not in the span of the k-basis")
        return coords

    def gram_m(self):
        return [[self.kappa_scale * (a @ b).trace() for b in self.m_basis]
                for a in self.m_basis]

    def gram_k(self):
        return [[self.kappa_scale * (a @ b).trace() for b in self.k_basis]
                for a in self.k_basis]

    def ad_matrices(self):
        """Adjoint action of each k-basis element on m, as dim_m matrices."""
        mats = []
        for k in self.k_basis:
            cols = [self.m_coords(k @ m - m @ k) for m in self.m_basis]
            mat = LegMatrix.zeros((self.dim_m,), RATIONAL_RING)
            for j, col in enumerate(cols):
                for i, val in enumerate(col):
                    if val:
                        mat.entries[i * self.dim_m + j] = val
            mats.append(mat)
        return mats

    def with_m_basis(self, new_m_basis) -> "GeomPair":
        return GeomPair(self.name, self.p, self.q, self.k_basis,
                        list(new_m_basis), self.kappa_scale)


def grassmann_pair(p: int, q: int) -> GeomPair:
    """so(p+q) split for the Grassmannian of p-planes; m is ordered as the
    p x q blocks B_ij (row-major), matching the composed R-matrix legs."""
    if p < 1 or q < 1:
        raise DimensionMismatch("p, q must be at least 1")
    size = p + q
    k_basis = [_so_generator(size, a, b)
               for a in range(1, p + 1) for b in range(a + 1, p + 1)]
    k_basis += [_so_generator(size, p + a, p + b)
                for a in range(1, q + 1) for b in range(a + 1, q + 1)]
    m_basis = [_so_generator(size, i, p + j)
               for i in range(1, p + 1) for j in range(1, q + 1)]
    return GeomPair(f"so({p + q})/so({p})xso({q})", p, q, k_basis, m_basis)


def _check_splitting_geom(pair: GeomPair) -> dict:
    for ia, ka in enumerate(pair.k_basis):
        for ib, kb in enumerate(pair.k_basis):
            try:
                pair.k_coords(ka @ kb - kb @ ka)
            except NotInSpan as exc:
                raise SplittingViolation(f"[k,k] fails at ({ia},{ib})") from exc
        for ib, mb in enumerate(pair.m_basis):
            try:
                pair.m_coords(ka @ mb - mb @ ka)
            except NotInSpan as exc:
                raise SplittingViolation(f"[k,m] fails at ({ia},{ib})") from exc
    for ia, ma in enumerate(pair.m_basis):
        for ib, mb in enumerate(pair.m_basis):
            try:
                pair.k_coords(ma @ mb - mb @ ma)
            except NotInSpan as exc:
                raise SplittingViolation(f"[m,m] fails at ({ia},{ib})") from exc
    return {"dim_k": len(pair.k_basis), "dim_m": len(pair.m_basis),
            "verdict": "pass"}


@dataclass
class CurvatureTensor:
    """Curvature components of (X, Y, Z) -> -[[X, Y], Z] over an m-basis.

    comp[i][j][k][l] is the coefficient of m_l in R(m_i, m_j) m_k; gram is
    the Gram matrix of kappa restricted to m, used to raise and lower.
    """

    m_dim: int
    comp: list
    gram: list

    def mixed(self):
        """Components with the first and third slot raised; these are the
        coefficients of the curvature as an element of End(m) (x) End(m)."""
        n = self.m_dim
        ginv = invert_rational(self.gram)
        # lower the output slot:  low[a][j][b][l] = kappa(R(m_a,m_j)m_b, m_l)
        low = [[[[sum((self.comp[a][j][b][m] * self.gram[m][l]
                       for m in range(n) if self.comp[a][j][b][m]), _F0)
                  for l in range(n)] for b in range(n)]
                for j in range(n)] for a in range(n)]
        mixed = [[[[sum((ginv[i][a] * ginv[k][b] * low[a][j][b][l]
                         for a in range(n) for b in range(n)
                         if ginv[i][a] and ginv[k][b] and low[a][j][b][l]),
                        _F0)
                    for l in range(n)] for k in range(n)]
                  for j in range(n)] for i in range(n)]
        return mixed

    def as_leg_matrix(self) -> LegMatrix:
        """The raised tensor as an operator on m (x) m (kron convention)."""
        n = self.m_dim
        mixed = self.mixed()
        out = LegMatrix.zeros((n, n), RATIONAL_RING)
        size = n * n
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        val = mixed[i][j][k][l]
                        if val:
                            out.entries[(i * n + k) * size + (j * n + l)] = val
        return out


def curvature_from_pair(pair: GeomPair) -> CurvatureTensor:
    """Curvature tensor of the symmetric space via the bracket formula."""
    check_splitting(pair)
    n = pair.dim_m
    comp = [[[None] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            bracket = (pair.m_basis[i] @ pair.m_basis[j]
                       - pair.m_basis[j] @ pair.m_basis[i])
            for k in range(n):
                z = pair.m_basis[k]
                triple = bracket @ z - z @ bracket
                comp[i][j][k] = [-c for c in pair.m_coords(triple)]
    return CurvatureTensor(n, comp, pair.gram_m())


def represented_casimir_k(pair: GeomPair) -> LegMatrix:
    """t-hat = sum (Gram_k^-1)_ab ad(k_a) (x) ad(k_b) on m (x) m."""
    if not pair.k_basis:
        n = pair.dim_m
        return LegMatrix.zeros((n, n), RATIONAL_RING)
    ginv = invert_rational(pair.gram_k())
    ads = pair.ad_matrices()
    n = pair.dim_m
    out = LegMatrix.zeros((n, n), RATIONAL_RING)
    for a, ra in enumerate(ads):
        for b, rb in enumerate(ads):
            if ginv[a][b]:
                out = out + kron(ra, rb).scale(ginv[a][b])
    return out


def proportionality_constant(left: LegMatrix, right: LegMatrix) -> Fraction:
    """The unique scalar c with left = c * right; NoProportionality if none
    exists (in particular when exactly one of the two matrices is zero)."""
    probe = right.first_nonzero()
    if probe is None:
        if left.is_zero():
            return _F0
        raise NoProportionality("left side nonzero but right side vanishes")
    i, j, rval = probe
    c = left.get(i, j) / rval
    if left != right.scale(c):
        delta = left - right.scale(c)
        raise NoProportionality(
            f"no constant works; first residual at {delta.first_nonzero()!r}")
    return c


def verify_curvature_casimir(pair: GeomPair) -> dict:
    """Find the unique rational c* with curvature = c* . t-hat on m (x) m."""
    curv = curvature_from_pair(pair).as_leg_matrix()
    that = represented_casimir_k(pair)
    c = proportionality_constant(curv, that)
    return {"constant": c, "verdict": "pass"}
