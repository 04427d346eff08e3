"""Exact dense linear algebra over the rationals (and small prime fields).

Everything downstream (module categories, derived windows, functor categories)
reduces to rank / kernel / solve questions on small dense matrices, so the
kit here is deliberately minimal: row reduction over fractions.Fraction with
no pivoting heuristics beyond "first nonzero".  Matrices stay well under
50 x 50 in every caller.
"""

from __future__ import annotations

from fractions import Fraction


class Mat:
    """Dense matrix with exact entries (Fraction, int, or GFElem)."""

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError(f"bad shape ({rows}, {cols})")
        self.rows = rows
        self.cols = cols
        if entries is None:
            self.data = [[Fraction(0)] * cols for _ in range(rows)]
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ValueError("entry grid does not match shape")
            self.data = [[_as_scalar(x) for x in row] for row in entries]

    @classmethod
    def identity(cls, n):
        m = cls(n, n)
        for i in range(n):
            m.data[i][i] = Fraction(1)
        return m

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    def copy(self):
        m = Mat(self.rows, self.cols)
        m.data = [row[:] for row in self.data]
        return m

    def transpose(self):
        m = Mat(self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                m.data[j][i] = self.data[i][j]
        return m

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * {other.rows}x{other.cols}")
        out = Mat(self.rows, other.cols)
        for i in range(self.rows):
            row = self.data[i]
            for k in range(self.cols):
                a = row[k]
                if not a:
                    continue
                orow = other.data[k]
                trow = out.data[i]
                for j in range(other.cols):
                    b = orow[j]
                    if b:
                        trow[j] = trow[j] + a * b
        return out

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in +")
        out = Mat(self.rows, self.cols)
        out.data = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)]
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = _as_scalar(c)
        out = Mat(self.rows, self.cols)
        out.data = [[c * a for a in row] for row in self.data]
        return out

    def apply(self, vec):
        """Matrix times column vector (a plain list)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for row in self.data:
            acc = Fraction(0)
            for j in range(self.cols):
                if vec[j] and row[j]:
                    acc = acc + row[j] * vec[j]
            out.append(acc)
        return out

    def is_zero(self):
        return all(not x for row in self.data for x in row)

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols})"


def _as_scalar(x):
    if isinstance(x, (int,)):
        return Fraction(x)
    return x


def _row_echelon(data, rows, cols):
    """In-place row echelon; returns list of pivot column indices."""
    pivots = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if data[i][c]:
                pr = i
                break
        if pr is None:
            continue
        data[r], data[pr] = data[pr], data[r]
        inv = data[r][c] ** -1
        data[r] = [inv * x for x in data[r]]
        for i in range(rows):
            if i != r and data[i][c]:
                f = data[i][c]
                data[i] = [x - f * y for x, y in zip(data[i], data[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return pivots


def rank(m: Mat) -> int:
    data = [row[:] for row in m.data]
    return len(_row_echelon(data, m.rows, m.cols))


def kernel_basis(m: Mat):
    """Basis of the right kernel {v : m v = 0}, as column vectors (lists).

    Free variables are set to 1 one at a time, so the result has exactly
    cols - rank(m) independent vectors, each annihilated by m.
    """
    data = [row[:] for row in m.data]
    pivots = _row_echelon(data, m.rows, m.cols)
    pivot_set = set(pivots)
    one = Fraction(1)
    if m.rows and m.cols and not isinstance(m.data[0][0], Fraction):
        one = m.data[0][0] ** 0
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [one * 0] * m.cols
        v[free] = one
        for r, pc in enumerate(pivots):
            v[pc] = -data[r][free]
        basis.append(v)
    return basis


def solve(m: Mat, b):
    """One solution of m x = b, or None if inconsistent.

    b is a plain list of length m.rows; a length mismatch is an input error.
    """
    if len(b) != m.rows:
        raise ValueError(f"rhs length {len(b)} != rows {m.rows}")
    data = [row[:] + [_as_scalar(b[i])] for i, row in enumerate(m.data)]
    pivots = _row_echelon(data, m.rows, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    one = Fraction(1)
    if m.rows and m.cols and not isinstance(m.data[0][0], Fraction):
        one = m.data[0][0] ** 0
    x = [one * 0] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = data[r][m.cols]
    return x


def quotient_dim(ambient_dim: int, subspace_gens) -> int:
    """dim(ambient / span(gens)); gens are vectors of length ambient_dim."""
    if not subspace_gens:
        return ambient_dim
    m = Mat(len(subspace_gens), ambient_dim, subspace_gens)
    return ambient_dim - rank(m)


def span_rank(vectors, length):
    """Rank of the span of the given vectors inside k^length."""
    if not vectors:
        return 0
    return rank(Mat(len(vectors), length, vectors))


def in_span(vectors, length, target):
    """Is target in the span of vectors?  All are length-`length` lists."""
    if all(not x for x in target):
        return True
    if not vectors:
        return False
    m = Mat(length, len(vectors), [[v[i] for v in vectors] for i in range(length)])
    return solve(m, list(target)) is not None


def hstack(a: Mat, b: Mat) -> Mat:
    if a.rows != b.rows:
        raise ValueError("hstack row mismatch")
    out = Mat(a.rows, a.cols + b.cols)
    out.data = [ra[:] + rb[:] for ra, rb in zip(a.data, b.data)]
    return out


def vstack(a: Mat, b: Mat) -> Mat:
    if a.cols != b.cols:
        raise ValueError("vstack col mismatch")
    out = Mat(a.rows + b.rows, a.cols)
    out.data = [r[:] for r in a.data] + [r[:] for r in b.data]
    return out


class GFElem:
    """Element of GF(p).  Tiny; only what the module-enumeration oracle needs."""

    __slots__ = ("p", "v")

    def __init__(self, p, v):
        self.p = p
        if not isinstance(v, int):
            v = _gf_val(v, p)
        self.v = v % p

    def __add__(self, o):
        return GFElem(self.p, self.v + _gf_val(o, self.p))

    __radd__ = __add__

    def __sub__(self, o):
        return GFElem(self.p, self.v - _gf_val(o, self.p))

    def __rsub__(self, o):
        return GFElem(self.p, _gf_val(o, self.p) - self.v)

    def __mul__(self, o):
        return GFElem(self.p, self.v * _gf_val(o, self.p))

    __rmul__ = __mul__

    def __neg__(self):
        return GFElem(self.p, -self.v)

    def __pow__(self, n):
        if n < 0:
            return GFElem(self.p, pow(self.v, -1, self.p)) ** (-n)
        return GFElem(self.p, pow(self.v, n, self.p))

    def __bool__(self):
        return self.v != 0

    def __eq__(self, o):
        if isinstance(o, GFElem):
            return self.p == o.p and self.v == o.v
        if isinstance(o, int):
            return self.v == o % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __repr__(self):
        return f"{self.v}(mod {self.p})"


def _gf_val(o, p):
    if isinstance(o, GFElem):
        if o.p != p:
            raise ValueError("mixed characteristics")
        return o.v
    if isinstance(o, int):
        return o
    if isinstance(o, Fraction):
        if o.denominator % p == 0:
            raise ValueError(f"denominator {o.denominator} not invertible mod {p}")
        return o.numerator * pow(o.denominator, -1, p)
    raise TypeError(f"cannot coerce {o!r} into GF({p})")


def gf_mat(p, rows, cols, entries=None):
    """Mat over GF(p); entries may be ints, Fractions with unit denominator, or GFElem."""
    m = Mat(rows, cols, entries=None)
    zero = GFElem(p, 0)
    if entries is None:
        m.data = [[zero] * cols for _ in range(rows)]
    else:
        m.data = [[GFElem(p, _gf_val(x, p)) for x in row] for row in entries]
        if len(m.data) != rows or any(len(r) != cols for r in m.data):
            raise ValueError("entries shape mismatch")
    return m
