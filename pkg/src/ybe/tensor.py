"""Dense square matrices with tensor-leg structure over an exact scalar ring.

A LegMatrix is an operator on a tensor product V_1 (x) ... (x) V_k; the
per-leg dimensions are recorded in ``dims`` and rows/columns are addressed
by the row-major multi-index with leg 0 most significant.  Entries live in
one of two rings: plain rationals or rational functions in (s, u, v, h).

Matrix products skip zero entries, which keeps exact arithmetic on the
very sparse operators built elsewhere in the package cheap.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch, DuplicateLeg, ParseError
from .scalars import RatFunc, ratfunc_from_str, ratfunc_to_str


class ScalarRing:
    """Tag describing the entry ring of a LegMatrix."""

    __slots__ = ("name", "zero", "one", "to_str", "from_str")

    def __init__(self, name, zero, one, to_str, from_str):
        self.name = name
        self.zero = zero
        self.one = one
        self.to_str = to_str
        self.from_str = from_str

    def __repr__(self):
        return f"ScalarRing({self.name})"


def _frac_from_str(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {text!r}") from exc


RATIONAL_RING = ScalarRing("rational", Fraction(0), Fraction(1),
                           str, _frac_from_str)
RATFUNC_RING = ScalarRing("ratfunc", RatFunc.const(0), RatFunc.const(1),
                          ratfunc_to_str, ratfunc_from_str)

_RINGS = {r.name: r for r in (RATIONAL_RING, RATFUNC_RING)}


def ring_by_name(name: str) -> ScalarRing:
    if name not in _RINGS:
        raise ParseError(f"unknown ring {name!r}")
    return _RINGS[name]


class LegMatrix:
    """Square matrix of size prod(dims), stored row-major as a flat list."""

    __slots__ = ("dims", "ring", "entries")

    def __init__(self, dims, ring: ScalarRing, entries):
        self.dims = tuple(int(d) for d in dims)
        if any(d < 1 for d in self.dims):
            raise DimensionMismatch(f"bad leg dimensions {dims!r}")
        self.ring = ring
        n = self.size
        if len(entries) != n * n:
            raise DimensionMismatch(
                f"entry list of length {len(entries)} for size {n}")
        self.entries = list(entries)

    @property
    def size(self) -> int:
        n = 1
        for d in self.dims:
            n *= d
        return n

    @classmethod
    def zeros(cls, dims, ring=RATIONAL_RING) -> "LegMatrix":
        n = 1
        for d in dims:
            n *= d
        return cls(dims, ring, [ring.zero] * (n * n))

    @classmethod
    def identity(cls, dims, ring=RATIONAL_RING) -> "LegMatrix":
        m = cls.zeros(dims, ring)
        n = m.size
        for i in range(n):
            m.entries[i * n + i] = ring.one
        return m

    @classmethod
    def from_entries(cls, dims, ring, nonzero: dict) -> "LegMatrix":
        m = cls.zeros(dims, ring)
        n = m.size
        for (i, j), val in nonzero.items():
            m.entries[i * n + j] = val
        return m

    def get(self, i: int, j: int):
        return self.entries[i * self.size + j]

    def rows(self):
        n = self.size
        for i in range(n):
            yield self.entries[i * n:(i + 1) * n]

    def nonzero_items(self):
        n = self.size
        for idx, val in enumerate(self.entries):
            if val:
                yield divmod(idx, n) + (val,)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def first_nonzero(self):
        """(row, col, value) of the first nonzero entry, or None."""
        n = self.size
        for idx, val in enumerate(self.entries):
            if val:
                i, j = divmod(idx, n)
                return (i, j, val)
        return None

    # -- arithmetic -----------------------------------------------------

    def _check_compat(self, other: "LegMatrix"):
        if self.dims != other.dims:
            raise DimensionMismatch(f"dims {self.dims} vs {other.dims}")
        if self.ring is not other.ring:
            raise DimensionMismatch(
                f"rings {self.ring.name} vs {other.ring.name}")

    def __add__(self, other):
        self._check_compat(other)
        a, b = self.entries, other.entries
        out = [x + y if (x or y) else self.ring.zero
               for x, y in zip(a, b)]
        return LegMatrix(self.dims, self.ring, out)

    def __sub__(self, other):
        self._check_compat(other)
        out = [x - y if (x or y) else self.ring.zero
               for x, y in zip(self.entries, other.entries)]
        return LegMatrix(self.dims, self.ring, out)

    def __neg__(self):
        return LegMatrix(self.dims, self.ring,
                         [-x if x else x for x in self.entries])

    def __matmul__(self, other):
        return self.__mul__(other)

    def __mul__(self, other):
        if not isinstance(other, LegMatrix):
            return NotImplemented
        self._check_compat(other)
        n = self.size
        zero = self.ring.zero
        a, b = self.entries, other.entries
        out = [zero] * (n * n)
        for i in range(n):
            arow = i * n
            for k in range(n):
                aik = a[arow + k]
                if not aik:
                    continue
                brow = k * n
                orow = arow
                for j in range(n):
                    bkj = b[brow + j]
                    if bkj:
                        cur = out[orow + j]
                        out[orow + j] = aik * bkj if not cur else cur + aik * bkj
        return LegMatrix(self.dims, self.ring, out)

    def scale(self, scalar) -> "LegMatrix":
        if not scalar:
            return LegMatrix.zeros(self.dims, self.ring)
        return LegMatrix(self.dims, self.ring,
                         [scalar * x if x else x for x in self.entries])

    def transpose(self) -> "LegMatrix":
        n = self.size
        out = [self.ring.zero] * (n * n)
        for idx, val in enumerate(self.entries):
            if val:
                i, j = divmod(idx, n)
                out[j * n + i] = val
        return LegMatrix(self.dims, self.ring, out)

    def trace(self):
        n = self.size
        total = self.ring.zero
        for i in range(n):
            x = self.entries[i * n + i]
            if x:
                total = total + x
        return total

    def __eq__(self, other):
        if not isinstance(other, LegMatrix):
            return NotImplemented
        return (self.dims == other.dims and self.ring is other.ring
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.dims, self.ring.name, tuple(self.entries)))

    # -- ring changes, substitution, evaluation --------------------------

    def map_entries(self, fn, ring=None) -> "LegMatrix":
        ring = ring or self.ring
        zero = ring.zero
        return LegMatrix(self.dims, ring,
                         [fn(x) if x else zero for x in self.entries])

    def to_ratfunc(self) -> "LegMatrix":
        if self.ring is RATFUNC_RING:
            return self
        return self.map_entries(RatFunc.const, RATFUNC_RING)

    def subst_var(self, var: str, expr) -> "LegMatrix":
        """Substitute a polynomial for one variable in every entry."""
        return self.map_entries(lambda x: x.subst(var, expr))

    def subst_map(self, mapping: dict) -> "LegMatrix":
        return self.map_entries(lambda x: x.subst_map(mapping))

    def eval_entries(self, point: dict) -> "LegMatrix":
        """Evaluate every entry at a rational point; result over Q."""
        if self.ring is RATIONAL_RING:
            return self
        return self.map_entries(lambda x: x.eval(point), RATIONAL_RING)

    # -- serialization ----------------------------------------------------

    def to_json_dict(self) -> dict:
        entries = [[i, j, self.ring.to_str(val)]
                   for i, j, val in self.nonzero_items()]
        return {"dims": list(self.dims), "ring": self.ring.name,
                "vars": ["s", "u", "v", "h"], "entries": entries}

    @classmethod
    def from_json_dict(cls, data: dict) -> "LegMatrix":
        ring = ring_by_name(data["ring"])
        m = cls.zeros(tuple(data["dims"]), ring)
        n = m.size
        for i, j, text in data["entries"]:
            if not (0 <= i < n and 0 <= j < n):
                raise ParseError(f"entry index ({i},{j}) out of range")
            m.entries[i * n + j] = ring.from_str(text)
        return m

    def __repr__(self):
        return f"LegMatrix(dims={self.dims}, ring={self.ring.name})"


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def elementary(n: int, i: int, j: int, ring=RATIONAL_RING) -> LegMatrix:
    """Elementary matrix E_ij of size n (indices 1-based as in E_11)."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise DimensionMismatch(f"E_{i}{j} needs 1 <= i,j <= {n}")
    m = LegMatrix.zeros((n,), ring)
    m.entries[(i - 1) * n + (j - 1)] = ring.one
    return m


def kron(a: LegMatrix, b: LegMatrix) -> LegMatrix:
    """Kronecker product; the result's legs are a's legs followed by b's."""
    if a.ring is not b.ring:
        raise DimensionMismatch(f"rings {a.ring.name} vs {b.ring.name}")
    na, nb = a.size, b.size
    n = na * nb
    zero = a.ring.zero
    out = [zero] * (n * n)
    for ia, ja, va in a.nonzero_items():
        base_row = ia * nb
        base_col = ja * nb
        for ib, jb, vb in b.nonzero_items():
            out[(base_row + ib) * n + (base_col + jb)] = va * vb
    return LegMatrix(a.dims + b.dims, a.ring, out)


def kron_all(mats) -> LegMatrix:
    mats = list(mats)
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


def flip_operator(n: int, ring=RATIONAL_RING) -> LegMatrix:
    """The permutation P(x (x) y) = y (x) x on two legs of dimension n."""
    m = LegMatrix.zeros((n, n), ring)
    size = n * n
    for x in range(n):
        for y in range(n):
            m.entries[(x * n + y) * size + (y * n + x)] = ring.one
    return m


def _strides(dims):
    out = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        out[i] = out[i + 1] * dims[i + 1]
    return out


def embed_on_legs(a: LegMatrix, target_legs, ambient_dims) -> LegMatrix:
    """Embed a k-leg operator onto named legs of a larger tensor product,
    acting as the identity on every other leg.

    ``target_legs[t]`` is the 0-based ambient position of a's leg t.
    """
    target_legs = tuple(target_legs)
    ambient_dims = tuple(ambient_dims)
    if len(target_legs) != len(a.dims):
        raise DimensionMismatch(
            f"{len(a.dims)} legs cannot map onto {len(target_legs)} targets")
    if len(set(target_legs)) != len(target_legs):
        raise DuplicateLeg(f"repeated target leg in {target_legs}")
    for t, leg in enumerate(target_legs):
        if not (0 <= leg < len(ambient_dims)):
            raise DimensionMismatch(f"target leg {leg} outside ambient")
        if ambient_dims[leg] != a.dims[t]:
            raise DimensionMismatch(
                f"leg {t} has dim {a.dims[t]} but ambient leg {leg} "
                f"has dim {ambient_dims[leg]}")

    out = LegMatrix.zeros(ambient_dims, a.ring)
    n_out = out.size
    strides = _strides(ambient_dims)
    spectator = [i for i in range(len(ambient_dims)) if i not in target_legs]

    # offsets contributed by identity legs: all joint assignments
    spec_offsets = [0]
    for leg in spectator:
        spec_offsets = [off + x * strides[leg]
                        for off in spec_offsets
                        for x in range(ambient_dims[leg])]

    a_strides = _strides(a.dims)
    for ia, ja, val in a.nonzero_items():
        row_base = 0
        col_base = 0
        for t, leg in enumerate(target_legs):
            row_base += ((ia // a_strides[t]) % a.dims[t]) * strides[leg]
            col_base += ((ja // a_strides[t]) % a.dims[t]) * strides[leg]
        for off in spec_offsets:
            out.entries[(row_base + off) * n_out + (col_base + off)] = val
    return out
