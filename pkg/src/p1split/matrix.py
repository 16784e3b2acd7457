"""Dense matrices over polynomial-like scalars, and linear algebra over the base field."""

from __future__ import annotations

from .arith import LaurentPolynomial, Polynomial, RationalFunction


class SingularMatrix(ArithmeticError):
    pass


def _zero_like(x):
    return type(x).zero(x.field)


def _one_like(x):
    return type(x).one(x.field)


class Matrix:
    """Immutable dense matrix, row-major, of Polynomial / LaurentPolynomial /
    RationalFunction entries (all over one field)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows):
        rows = [tuple(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = n
        self.entries = tuple(x for r in rows for x in r)

    @classmethod
    def identity(cls, n: int, like) -> Matrix:
        z, o = _zero_like(like), _one_like(like)
        return cls([[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, diag) -> Matrix:
        z = _zero_like(diag[0])
        n = len(diag)
        return cls([[diag[i] if i == j else z for j in range(n)] for i in range(n)])

    @property
    def field(self):
        return self.entries[0].field

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return self.entries[j::self.cols]

    def tolist(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def map(self, fn) -> Matrix:
        return Matrix([[fn(x) for x in self.row(i)] for i in range(self.rows)])

    def transpose(self) -> Matrix:
        return Matrix([list(self.col(j)) for j in range(self.cols)])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and all(a == b for a, b in zip(self.entries, other.entries)))

    def __hash__(self):
        return hash((self.shape, self.entries))

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(self.row(i), other.row(i))] for i in range(self.rows)])

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a - b for a, b in zip(self.row(i), other.row(i))] for i in range(self.rows)])

    def __neg__(self):
        return self.map(lambda x: -x)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            line = []
            for c in cols:
                acc = None
                for a, b in zip(r, c):
                    if not a or not b:
                        continue
                    acc = a * b if acc is None else acc + a * b
                line.append(acc if acc is not None else _zero_like(r[0] * c[0]))
            out.append(line)
        return Matrix(out)

    def scale(self, c) -> Matrix:
        return self.map(lambda x: x * c)

    def apply(self, vec):
        """Matrix-vector product for a sequence of scalars."""
        if len(vec) != self.cols:
            raise ValueError("length mismatch")
        out = []
        for i in range(self.rows):
            acc = None
            for a, b in zip(self.row(i), vec):
                if not a or not b:
                    continue
                acc = a * b if acc is None else acc + a * b
            if acc is None:
                acc = _zero_like(self.row(i)[0] * vec[0])
            out.append(acc)
        return out

    def to_rational(self) -> Matrix:
        return self.map(_as_rational)

    def minor(self, i, j) -> Matrix:
        return Matrix([[self[r, c] for c in range(self.cols) if c != j]
                       for r in range(self.rows) if r != i])

    def det(self):
        """Determinant.  RationalFunction entries use Gaussian elimination;
        ring entries use fraction-free Bareiss elimination."""
        if not self.is_square():
            raise ValueError("determinant of non-square matrix")
        if isinstance(self.entries[0], RationalFunction):
            return _det_field(self.tolist())
        if isinstance(self.entries[0], LaurentPolynomial):
            # shift into k[t], then shift back
            lo = min((x.lo for x in self.entries if x), default=0)
            shifted = [[x.shift(-lo).to_poly() for x in self.row(i)] for i in range(self.rows)]
            d = _det_bareiss(shifted)
            return LaurentPolynomial.from_poly(d, lo * self.rows)
        return _det_bareiss(self.tolist())

    def __repr__(self):
        return "Matrix([" + ", ".join("[" + ", ".join(str(x) for x in self.row(i)) + "]"
                                      for i in range(self.rows)) + "])"


def _as_rational(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction.from_poly(x)
    return x.to_rational()


def _det_bareiss(a):
    n = len(a)
    a = [list(r) for r in a]
    sign = 1
    prev = _one_like(a[0][0])
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return _zero_like(prev)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def _det_field(a):
    n = len(a)
    a = [list(r) for r in a]
    det = _one_like(a[0][0])
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            return _zero_like(det)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = det * a[k][k]
        inv = a[k][k].inverse()
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv
                for j in range(k + 1, n):
                    if a[k][j]:
                        a[i][j] = a[i][j] - f * a[k][j]
    return det


def matrix_inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square RationalFunction matrix (Gauss-Jordan)."""
    if not m.is_square():
        raise ValueError("inverse of non-square matrix")
    m = m.to_rational()
    n = m.rows
    F = m.field
    zero, one = RationalFunction.zero(F), RationalFunction.one(F)
    a = [list(m.row(i)) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for k in range(n):
        piv = next((r for r in range(k, n) if a[r][k]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        inv = a[k][k].inverse()
        a[k] = [x * inv if x else x for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                f = a[i][k]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[k])]
    return Matrix([r[n:] for r in a])


def laurent_span(m: Matrix):
    """``(lo, hi)``: extreme exponents over all nonzero entries of a Laurent matrix."""
    nz = [x for x in m.entries if x]
    if not nz:
        raise ValueError("laurent_span of the zero matrix")
    return min(x.lo for x in nz), max(x.hi for x in nz)


# -- linear algebra over the base field -----------------------------------

def rref(rows, ncols, field):
    """Reduced row echelon form of a list of rows (field elements).

    Returns ``(rows, pivots)``; the input is not modified.
    """
    p = field.p
    a = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(a)):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = field.inv(a[r][c])
        if p:
            a[r] = [x * inv % p for x in a[r]]
        else:
            a[r] = [x * inv for x in a[r]]
        pr = a[r]
        nz = [j for j in range(c, ncols) if pr[j]]
        for i in range(len(a)):
            if i != r:
                f = a[i][c]
                if f:
                    ai = a[i]
                    if p:
                        for j in nz:
                            ai[j] = (ai[j] - f * pr[j]) % p
                    else:
                        for j in nz:
                            ai[j] = ai[j] - f * pr[j]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows, ncols, field):
    """Basis of ``{x : A x = 0}``, one vector per free column in increasing order."""
    red, pivots = rref(rows, ncols, field)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for row, pc in zip(red, pivots):
            if row[free]:
                v[pc] = field.neg(row[free])
        basis.append(v)
    return basis


def rank(rows, ncols, field) -> int:
    return len(rref(rows, ncols, field)[1])


def rf_nullspace(rows):
    """Kernel basis over k(t) of a list of RationalFunction rows."""
    if not rows:
        raise ValueError("empty system")
    ncols = len(rows[0])
    F = rows[0][0].field
    zero, one = RationalFunction.zero(F), RationalFunction.one(F)
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv if x else x for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(a, pivots):
            if row[free]:
                v[pc] = -row[free]
        basis.append(v)
    return basis, len(pivots)
