"""Dense exact linear algebra over Q and Q(t).

Matrices are immutable row-major grids tagged with their field.  Subspaces
are stored by the reduced row-echelon form of a spanning set, so equal
subspaces have identical bases and compare with ``==``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .field import (
    QQ,
    QT,
    FieldError,
    RatFunc,
    coerce,
    evaluate,
    one,
    tag_of,
    zero,
)


class DimensionError(ValueError):
    pass


class SingularMatrixError(ArithmeticError):
    pass


class Matrix:
    __slots__ = ("rows", "nrows", "ncols", "field", "_hash")

    def __init__(self, rows: Sequence[Sequence], field: Optional[str] = None):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged matrix")
        if field is None:
            field = QQ
            for r in rows:
                for x in r:
                    if isinstance(x, RatFunc):
                        field = QT
                        break
        self.rows: Tuple[Tuple, ...] = tuple(tuple(coerce(x, field) for x in r) for r in rows)
        self.nrows = nrows
        self.ncols = ncols
        self.field = field
        self._hash = None

    @classmethod
    def _raw(cls, rows, field, ncols=None) -> "Matrix":
        m = cls.__new__(cls)
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = len(m.rows[0]) if m.rows else (ncols or 0)
        m.field = field
        m._hash = None
        return m

    @classmethod
    def identity(cls, r: int, field: str = QQ) -> "Matrix":
        z, o = zero(field), one(field)
        return cls._raw([[o if i == j else z for j in range(r)] for i in range(r)], field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: str = QQ) -> "Matrix":
        z = zero(field)
        return cls._raw([[z] * ncols for _ in range(nrows)], field, ncols)

    @classmethod
    def diag(cls, entries: Sequence, field: Optional[str] = None) -> "Matrix":
        field = field or (QT if any(isinstance(x, RatFunc) for x in entries) else QQ)
        z = zero(field)
        r = len(entries)
        return cls._raw(
            [[coerce(entries[i], field) if i == j else z for j in range(r)] for i in range(r)],
            field,
        )

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self):
        from .field import format_scalar

        body = "; ".join(", ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"Matrix[{self.field}]({body})"

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in addition")
        return Matrix._raw(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.field, self.ncols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionError("shape mismatch in subtraction")
        return Matrix._raw(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.field, self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw([[-a for a in r] for r in self.rows], self.field, self.ncols)

    def scale(self, c) -> "Matrix":
        c = coerce(c, self.field)
        return Matrix._raw([[c * a for a in r] for r in self.rows], self.field, self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        z = zero(self.field)
        cols = other.ncols
        orows = other.rows
        out = []
        for r in self.rows:
            acc = [z] * cols
            for k, a in enumerate(r):
                if not a:
                    continue
                brow = orows[k]
                for j in range(cols):
                    b = brow[j]
                    if b:
                        acc[j] = acc[j] + a * b
            out.append(acc)
        return Matrix._raw(out, self.field, cols)

    def apply(self, v: Sequence) -> Tuple:
        """Matrix times column vector."""
        z = zero(self.field)
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, v):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.nrows, self.field)
        base = self
        while k:
            if k & 1:
                out = out @ base
            k >>= 1
            if k:
                base = base @ base
        return out

    def transpose(self) -> "Matrix":
        return Matrix._raw(list(zip(*self.rows)) if self.rows else [], self.field, self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def column(self, j: int) -> Tuple:
        return tuple(r[j] for r in self.rows)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise DimensionError("inverse of non-square matrix")
        r = self.nrows
        ident = Matrix.identity(r, self.field)
        aug = Matrix._raw([a + b for a, b in zip(self.rows, ident.rows)], self.field)
        red, _, pivots = rref(aug)
        if pivots[:r] != list(range(r)):
            raise SingularMatrixError("matrix is singular")
        return Matrix._raw([row[r:] for row in red.rows[:r]], self.field)

    def is_invertible(self) -> bool:
        return self.is_square() and rank(self) == self.nrows

    def flatten(self) -> Tuple:
        return tuple(x for r in self.rows for x in r)

    def map(self, fn, field: str) -> "Matrix":
        return Matrix._raw([[fn(x) for x in r] for r in self.rows], field, self.ncols)

    def specialize(self, p) -> "Matrix":
        """Evaluate a Q(t) matrix at ``t = p``; raises PoleError on poles."""
        if self.field != QT:
            raise FieldError("only Q(t) matrices can be specialized")
        p = Fraction(p)
        return self.map(lambda x: evaluate(x, p), QQ)

    def block_diag(self, other: "Matrix") -> "Matrix":
        self._check(other)
        z = zero(self.field)
        top = [list(r) + [z] * other.ncols for r in self.rows]
        bot = [[z] * self.ncols + list(r) for r in other.rows]
        return Matrix._raw(top + bot, self.field, self.ncols + other.ncols)


def as_matrix(rows, field: Optional[str] = None) -> Matrix:
    return rows if isinstance(rows, Matrix) else Matrix(rows, field)


# ---------------------------------------------------------------------------
# elimination

def _rref_rows(rows: List[list], ncols: int):
    """In-place Gauss-Jordan; leftmost pivot, first nonzero row below."""
    nrows = len(rows)
    pivots: List[int] = []
    pr = 0
    for c in range(ncols):
        if pr >= nrows:
            break
        sel = None
        for i in range(pr, nrows):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        if sel != pr:
            rows[pr], rows[sel] = rows[sel], rows[pr]
        prow = rows[pr]
        inv = 1 / prow[c]
        if prow[c] != 1:
            prow = [x * inv if x else x for x in prow]
            rows[pr] = prow
        for i in range(nrows):
            if i == pr:
                continue
            f = rows[i][c]
            if not f:
                continue
            row = rows[i]
            rows[i] = [x - f * y if y else x for x, y in zip(row, prow)]
        pivots.append(c)
        pr += 1
    return pivots


def rref(m: Matrix) -> Tuple[Matrix, int, List[int]]:
    """Reduced row-echelon form, rank and pivot columns (deterministic)."""
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(rows, m.ncols)
    return Matrix._raw(rows, m.field, m.ncols), len(pivots), pivots


def rank(m: Matrix) -> int:
    return rref(m)[1]


@dataclass(frozen=True)
class Subspace:
    """Row span of ``basis`` (RREF, full row rank) inside ``field^ambient_dim``."""

    ambient_dim: int
    field: str
    basis: Tuple[Tuple, ...]

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int, field: str) -> "Subspace":
        rows = [list(coerce(x, field) for x in v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionError("vector length does not match ambient dimension")
        if not rows:
            return cls(ambient_dim, field, ())
        pivots = _rref_rows(rows, ambient_dim)
        return cls(ambient_dim, field, tuple(tuple(r) for r in rows[: len(pivots)]))

    @classmethod
    def zero(cls, ambient_dim: int, field: str) -> "Subspace":
        return cls(ambient_dim, field, ())

    @classmethod
    def full(cls, ambient_dim: int, field: str) -> "Subspace":
        return cls(ambient_dim, field, Matrix.identity(ambient_dim, field).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def contains(self, v: Sequence) -> bool:
        if not any(v):
            return True
        return Subspace.span(list(self.basis) + [v], self.ambient_dim, self.field).dim == self.dim

    def __contains__(self, v):
        return self.contains(v)

    def issubspace(self, other: "Subspace") -> bool:
        return sum_(self, other).dim == other.dim

    def matrix(self) -> Matrix:
        return Matrix._raw(self.basis, self.field, self.ambient_dim)

    def image_under(self, m: Matrix) -> "Subspace":
        return Subspace.span([m.apply(v) for v in self.basis], m.nrows, self.field)

    def is_invariant(self, m: Matrix) -> bool:
        return all(self.contains(m.apply(v)) for v in self.basis)


def image(m: Matrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace.span(m.transpose().rows, m.nrows, m.field)


def kernel(m: Matrix) -> Subspace:
    """Null space ``{v : m v = 0}`` as a canonical subspace."""
    red, rk, pivots = rref(m)
    n = m.ncols
    free = [j for j in range(n) if j not in set(pivots)]
    z, o = zero(m.field), one(m.field)
    vecs = []
    for fcol in free:
        v = [z] * n
        v[fcol] = o
        for i, pc in enumerate(pivots):
            v[pc] = -red.rows[i][fcol]
        vecs.append(v)
    ker = Subspace.span(vecs, n, m.field)
    assert ker.dim + rk == n, "rank-nullity violated"
    return ker


def _same_space(u: Subspace, w: Subspace):
    if u.ambient_dim != w.ambient_dim:
        raise DimensionError(f"ambient mismatch: {u.ambient_dim} vs {w.ambient_dim}")
    if u.field != w.field:
        raise FieldError(f"field mismatch: {u.field} vs {w.field}")


def sum_(u: Subspace, w: Subspace) -> Subspace:
    _same_space(u, w)
    return Subspace.span(list(u.basis) + list(w.basis), u.ambient_dim, u.field)


def intersect(u: Subspace, w: Subspace) -> Subspace:
    """Zassenhaus: echelonize [[u, u], [w, 0]]; rows with zero left half span u ∩ w."""
    _same_space(u, w)
    n = u.ambient_dim
    if not u.dim or not w.dim:
        return Subspace.zero(n, u.field)
    z = zero(u.field)
    rows = [list(b) + list(b) for b in u.basis] + [list(b) + [z] * n for b in w.basis]
    pivots = _rref_rows(rows, 2 * n)
    inter = [r[n:] for r, p in zip(rows, pivots) if p >= n]
    out = Subspace.span(inter, n, u.field)
    return out


def intersect_all(spaces: Sequence[Subspace]) -> Subspace:
    out = spaces[0]
    for s in spaces[1:]:
        if not out.dim:
            break
        out = intersect(out, s)
    return out


# alias matching the operation name; ``sum_`` avoids shadowing the builtin
subspace_sum = sum_


def gen_eigenspace_dims(c: Matrix, lam) -> List[int]:
    """``[dim Ker (c - lam I)^k for k = 1..r]``."""
    if not c.is_square():
        raise DimensionError("generalized eigenspaces need a square matrix")
    r = c.nrows
    shifted = c - Matrix.identity(r, c.field).scale(lam)
    dims = []
    power = shifted
    for k in range(1, r + 1):
        d = r - rank(power)
        dims.append(d)
        if k > 1 and d == dims[-2]:
            dims.extend([d] * (r - k))
            break
        if k < r:
            power = power @ shifted
    return dims


def jordan_block_counts(dims: Sequence[int]) -> List[int]:
    """Number of Jordan blocks of size exactly k, read from the kernel filtration."""
    at_least = [dims[0]] + [dims[k] - dims[k - 1] for k in range(1, len(dims))]
    at_least.append(0)
    return [at_least[k] - at_least[k + 1] for k in range(len(dims))]


# ---------------------------------------------------------------------------
# matrix algebra closure

@dataclass(frozen=True)
class ClosureResult:
    dim: int
    cap: int
    reached_cap: bool
    full: bool  # dim == r^2


class _Echelon:
    """Incrementally maintained echelon basis of flattened matrices."""

    def __init__(self, width: int):
        self.width = width
        self.rows: dict = {}  # pivot column -> normalized row

    def reduce(self, v: list) -> Optional[list]:
        v = list(v)
        for c in sorted(self.rows):
            f = v[c]
            if f:
                row = self.rows[c]
                v = [x - f * y if y else x for x, y in zip(v, row)]
        for c, x in enumerate(v):
            if x:
                inv = 1 / x
                return [y * inv if y else y for y in v], c
        return None

    def add(self, v) -> bool:
        red = self.reduce(v)
        if red is None:
            return False
        row, c = red
        # keep rows reduced against the new pivot so reduce() stays one pass
        for pc, other in list(self.rows.items()):
            f = other[c]
            if f:
                self.rows[pc] = [x - f * y if y else x for x, y in zip(other, row)]
        self.rows[c] = row
        return True

    def __len__(self):
        return len(self.rows)


def algebra_closure(gens: Sequence[Matrix], cap: Optional[int] = None) -> ClosureResult:
    """Dimension of the unital algebra generated by ``gens`` (breadth-first word closure)."""
    if not gens:
        raise ValueError("need at least one generator")
    r = gens[0].nrows
    field = gens[0].field
    for g in gens:
        if g.shape != (r, r) or g.field != field:
            raise DimensionError("generators must be square of equal size and field")
    full = r * r
    cap = full if cap is None else min(cap, full)
    ech = _Echelon(full)
    frontier = []
    for m in [Matrix.identity(r, field)] + list(gens):
        if len(ech) >= cap:
            break
        if ech.add(m.flatten()):
            frontier.append(m)
    while frontier and len(ech) < cap:
        nxt = []
        for m in frontier:
            for g in gens:
                p = g @ m
                if ech.add(p.flatten()):
                    nxt.append(p)
                    if len(ech) >= cap:
                        break
            if len(ech) >= cap:
                break
        frontier = nxt
    d = min(len(ech), cap)
    return ClosureResult(dim=d, cap=cap, reached_cap=d >= cap, full=d == full)


def algebra_closure_dim(gens: Sequence[Matrix], cap: Optional[int] = None) -> int:
    return algebra_closure(gens, cap).dim


# ---------------------------------------------------------------------------
# characteristic polynomial and in-field roots

def charpoly(m: Matrix) -> list:
    """Coefficients ``[c_0, ..., c_r]`` (low -> high, monic) of det(x I - m).

    Faddeev-LeVerrier; fine in characteristic zero.
    """
    if not m.is_square():
        raise DimensionError("charpoly of non-square matrix")
    r = m.nrows
    field = m.field
    ident = Matrix.identity(r, field)
    high = [one(field)]  # c_r, c_{r-1}, ..., c_0
    mk = Matrix.zeros(r, r, field)
    for k in range(1, r + 1):
        mk = m @ mk + ident.scale(high[-1])
        am = m @ mk
        tr = zero(field)
        for i in range(r):
            tr = tr + am.rows[i][i]
        high.append(-tr / k)
    return list(reversed(high))


def _to_sympy(coeffs, field):
    import sympy

    lam, t = sympy.symbols("lam t")
    expr = 0
    for k, c in enumerate(coeffs):
        if field == QT:
            num = sum(sympy.Rational(a.numerator, a.denominator) * t**i for i, a in enumerate(c.num))
            den = sum(sympy.Rational(a.numerator, a.denominator) * t**i for i, a in enumerate(c.den))
            expr += num / den * lam**k
        else:
            expr += sympy.Rational(c.numerator, c.denominator) * lam**k
    return sympy.together(expr), lam, t


def _from_sympy(expr, t, field):
    import sympy

    expr = sympy.together(expr)
    num, den = sympy.fraction(expr)
    if field == QQ:
        val = sympy.Rational(expr)
        return Fraction(int(val.p), int(val.q))
    pn = sympy.Poly(num, t)
    pd = sympy.Poly(den, t)

    def coeffs(p):
        cs = p.all_coeffs()[::-1]
        return [Fraction(int(sympy.Rational(c).p), int(sympy.Rational(c).q)) for c in cs]

    return RatFunc(coeffs(pn), coeffs(pd))


def field_roots(coeffs: Sequence, field: str) -> list:
    """Distinct roots in the ambient field of a polynomial with field coefficients.

    Only linear factors are searched (sympy factorization over Q or Q[t]).
    """
    import sympy

    if field == QQ:
        coeffs = [Fraction(c) for c in coeffs]
    expr, lam, t = _to_sympy(coeffs, field)
    num, _ = sympy.fraction(expr)
    gens = (lam, t) if field == QT else (lam,)
    _, factors = sympy.factor_list(sympy.Poly(num, *gens))
    roots = []
    for fac, _mult in factors:
        if fac.degree(lam) != 1:
            continue
        a = fac.as_expr().coeff(lam, 1)
        b = fac.as_expr().coeff(lam, 0)
        root = _from_sympy(-b / a, t, field)
        if root not in roots:
            roots.append(root)
    return roots


def eigenvalues_in_field(m: Matrix) -> list:
    return field_roots(charpoly(m), m.field)


def det(m: Matrix):
    """Determinant by elimination (tracks swaps and pivots)."""
    if not m.is_square():
        raise DimensionError("determinant of non-square matrix")
    rows = [list(r) for r in m.rows]
    n = m.nrows
    acc = one(m.field)
    for c in range(n):
        sel = next((i for i in range(c, n) if rows[i][c]), None)
        if sel is None:
            return zero(m.field)
        if sel != c:
            rows[c], rows[sel] = rows[sel], rows[c]
            acc = -acc
        p = rows[c][c]
        acc = acc * p
        inv = 1 / p
        for i in range(c + 1, n):
            f = rows[i][c]
            if f:
                f = f * inv
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], rows[c])]
    return acc


__all__ = [
    "Matrix",
    "Subspace",
    "ClosureResult",
    "DimensionError",
    "SingularMatrixError",
    "rref",
    "rank",
    "image",
    "kernel",
    "intersect",
    "intersect_all",
    "sum_",
    "subspace_sum",
    "gen_eigenspace_dims",
    "jordan_block_counts",
    "algebra_closure",
    "algebra_closure_dim",
    "charpoly",
    "field_roots",
    "eigenvalues_in_field",
    "det",
    "tag_of",
]
