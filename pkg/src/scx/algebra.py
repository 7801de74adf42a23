"""Exact linear algebra over Q, prime fields F_p and the Laurent ring F[t^±1].

Every value is immutable after construction and every operation is a pure
function, so all of this is safe to share across threads.  There is no
floating point anywhere: rationals are `fractions.Fraction`, F_p elements are
canonical ints in [0, p), and Laurent polynomials are coefficient tuples with
an explicit lowest exponent.  Matrix entries are opaque to `Matrix` itself and
are interpreted through the matrix's domain object.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class AlgebraError(Exception):
    pass


# ---------------------------------------------------------------------------
# coefficient domains


class RationalField:
    """The rationals, with Fraction entries.

    >>> QQ.add(Fraction(1, 2), Fraction(1, 3))
    Fraction(5, 6)
    """

    name = "Q"
    is_field = True
    characteristic = 0

    def of(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise AlgebraError(f"cannot coerce {x!r} into Q")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise AlgebraError("division by zero in Q")
        return 1 / a

    def div(self, a, b):
        return a / b

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def to_str(self, a):
        return str(a)

    def __repr__(self):
        return "QQ"


QQ = RationalField()

_prime_fields: dict[int, "PrimeField"] = {}


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """F_p with int entries stored as canonical representatives in [0, p)."""

    is_field = True

    def __init__(self, p: int):
        if not _is_prime(p) or p >= 2**31:
            raise AlgebraError(f"{p} is not a supported prime")
        self.p = p
        self.name = f"F{p}"
        self.characteristic = p

    def of(self, x):
        if isinstance(x, Fraction):
            den = x.denominator % self.p
            if den == 0:
                raise AlgebraError(f"denominator divisible by {self.p}")
            return (x.numerator % self.p) * pow(den, -1, self.p) % self.p
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, str):
            return self.of(Fraction(x))
        raise AlgebraError(f"cannot coerce {x!r} into {self.name}")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise AlgebraError(f"division by zero in {self.name}")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a % self.p == 0

    def eq(self, a, b):
        return (a - b) % self.p == 0

    def to_str(self, a):
        return str(a % self.p)

    def __repr__(self):
        return f"GF({self.p})"


def GF(p: int) -> PrimeField:
    if p not in _prime_fields:
        _prime_fields[p] = PrimeField(p)
    return _prime_fields[p]


def field_by_tag(tag: str):
    """Resolve a field tag like 'q', 'f2', 'f5' from the CLI / rep files."""
    tag = tag.lower()
    if tag == "q":
        return QQ
    if tag.startswith("f") and tag[1:].isdigit():
        return GF(int(tag[1:]))
    raise AlgebraError(f"unknown field tag {tag!r}")


@dataclass(frozen=True)
class LaurentPoly:
    """Canonical Laurent polynomial: coeffs[0] is the coefficient of t^low.

    The coefficient tuple has nonzero first and last entry, and the zero
    polynomial is the empty tuple with low = 0.
    """

    low: int
    coeffs: tuple

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def high(self) -> int:
        return self.low + len(self.coeffs) - 1

    def degree_span(self):
        """deg p = highest minus lowest exponent; None for the zero polynomial."""
        return None if self.is_zero() else len(self.coeffs) - 1


class LaurentRing:
    """F[t^±1] over an exact coefficient field."""

    is_field = False

    def __init__(self, base):
        self.base = base
        self.name = f"{base.name}[t^±1]"
        self.characteristic = base.characteristic

    def poly(self, low: int, coeffs) -> LaurentPoly:
        cs = [self.base.of(c) if not _is_elem(self.base, c) else c for c in coeffs]
        lo = low
        while cs and self.base.is_zero(cs[0]):
            cs.pop(0)
            lo += 1
        while cs and self.base.is_zero(cs[-1]):
            cs.pop()
        if not cs:
            return LaurentPoly(0, ())
        return LaurentPoly(lo, tuple(cs))

    def of(self, x):
        if isinstance(x, LaurentPoly):
            return x
        return self.poly(0, [self.base.of(x)])

    def monomial(self, c, n: int) -> LaurentPoly:
        return self.poly(n, [c])

    @property
    def zero(self):
        return LaurentPoly(0, ())

    @property
    def one(self):
        return self.poly(0, [self.base.one])

    def t(self, n: int = 1) -> LaurentPoly:
        return self.poly(n, [self.base.one])

    def add(self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
        if a.is_zero():
            return b
        if b.is_zero():
            return a
        lo = min(a.low, b.low)
        hi = max(a.high, b.high)
        cs = [self.base.zero] * (hi - lo + 1)
        for i, c in enumerate(a.coeffs):
            cs[a.low - lo + i] = c
        for i, c in enumerate(b.coeffs):
            cs[b.low - lo + i] = self.base.add(cs[b.low - lo + i], c)
        return self.poly(lo, cs)

    def neg(self, a: LaurentPoly) -> LaurentPoly:
        return LaurentPoly(a.low, tuple(self.base.neg(c) for c in a.coeffs))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
        if a.is_zero() or b.is_zero():
            return self.zero
        cs = [self.base.zero] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ca in enumerate(a.coeffs):
            for j, cb in enumerate(b.coeffs):
                cs[i + j] = self.base.add(cs[i + j], self.base.mul(ca, cb))
        return self.poly(a.low + b.low, cs)

    def shift(self, a: LaurentPoly, n: int) -> LaurentPoly:
        if a.is_zero():
            return a
        return LaurentPoly(a.low + n, a.coeffs)

    def is_zero(self, a: LaurentPoly) -> bool:
        return a.is_zero()

    def eq(self, a: LaurentPoly, b: LaurentPoly) -> bool:
        return a.low == b.low and len(a.coeffs) == len(b.coeffs) and all(
            self.base.eq(x, y) for x, y in zip(a.coeffs, b.coeffs))

    def divmod_shifted(self, a: LaurentPoly, b: LaurentPoly):
        """(q, r) with a = q*b + r and span(r) < span(b).

        q may have negative exponents; exact for the Euclidean steps used by
        the diagonalization below.
        """
        if b.is_zero():
            raise AlgebraError("division by zero polynomial")
        q = self.zero
        r = a
        while not r.is_zero() and len(r.coeffs) >= len(b.coeffs):
            c = self.base.div(r.coeffs[-1], b.coeffs[-1])
            mono = self.monomial(c, r.high - b.high)
            q = self.add(q, mono)
            r = self.sub(r, self.mul(mono, b))
        return q, r

    def exact_div(self, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
        q, r = self.divmod_shifted(a, b)
        if not r.is_zero():
            raise AlgebraError("inexact polynomial division")
        return q

    def unit_canonical(self, a: LaurentPoly) -> LaurentPoly:
        """Normalize up to units c*t^n: lowest exponent 0 and monic top."""
        if a.is_zero():
            return a
        lead = a.coeffs[-1]
        inv = self.base.inv(lead)
        return self.poly(0, [self.base.mul(c, inv) for c in a.coeffs])

    def to_str(self, a: LaurentPoly) -> str:
        return poly_to_str(self, a)

    def __repr__(self):
        return f"LaurentRing({self.base!r})"


def _is_elem(base, c):
    if base is QQ:
        return isinstance(c, Fraction)
    if isinstance(base, PrimeField):
        return isinstance(c, int) and not isinstance(c, bool)
    return False


def poly_to_str(ring: LaurentRing, p: LaurentPoly) -> str:
    """Ascending-exponent sparse form, e.g. '1 - t + t^2'.

    >>> R = LaurentRing(QQ)
    >>> poly_to_str(R, R.poly(0, [1, -1, 1]))
    '1 - t + t^2'
    >>> poly_to_str(R, R.poly(-1, [Fraction(1, 2), 0, 3]))
    '1/2*t^-1 + 3*t'
    """
    if p.is_zero():
        return "0"
    base = ring.base
    out = []
    for i, c in enumerate(p.coeffs):
        if base.is_zero(c):
            continue
        e = p.low + i
        cs = base.to_str(c)
        neg = cs.startswith("-")
        mag = cs[1:] if neg else cs
        if e == 0:
            body = mag
        else:
            tpart = "t" if e == 1 else f"t^{e}"
            body = tpart if mag == "1" else f"{mag}*{tpart}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(out)


def poly_from_str(ring: LaurentRing, text: str) -> LaurentPoly:
    """Inverse of poly_to_str on canonical strings."""
    text = text.strip()
    if text == "0":
        return ring.zero
    norm = text.replace("- ", "+ -").replace(" ", "")
    if norm.startswith("+"):
        norm = norm[1:]
    total = ring.zero
    for term in norm.split("+"):
        if not term:
            continue
        neg = term.startswith("-")
        if neg:
            term = term[1:]
        if "t" not in term:
            coeff, exp = term, 0
        else:
            head, _, tail = term.partition("t")
            coeff = head[:-1] if head.endswith("*") else (head or "1")
            coeff = coeff or "1"
            exp = int(tail[1:]) if tail.startswith("^") else 1
        c = ring.base.of(Fraction(coeff))
        if neg:
            c = ring.base.neg(c)
        total = ring.add(total, ring.monomial(c, exp))
    return total


# ---------------------------------------------------------------------------
# dense matrices


class Matrix:
    """Immutable dense matrix over an explicit domain."""

    __slots__ = ("dom", "m", "n", "rows")

    def __init__(self, dom, rows, m=None, n=None):
        self.dom = dom
        rows = [list(r) for r in rows]
        self.m = len(rows) if m is None else m
        self.n = (len(rows[0]) if rows else 0) if n is None else n
        for r in rows:
            if len(r) != self.n:
                raise AlgebraError("ragged matrix rows")
        self.rows = rows

    @classmethod
    def from_rows(cls, dom, rows):
        return cls(dom, [[dom.of(x) if not _dom_elem(dom, x) else x for x in r]
                         for r in rows])

    @classmethod
    def zeros(cls, dom, m, n):
        return cls(dom, [[dom.zero] * n for _ in range(m)], m, n)

    @classmethod
    def identity(cls, dom, n):
        return cls(dom, [[dom.one if i == j else dom.zero for j in range(n)]
                         for i in range(n)], n, n)

    def entry(self, i, j):
        return self.rows[i][j]

    def transpose(self):
        return Matrix(self.dom, [[self.rows[i][j] for i in range(self.m)]
                                 for j in range(self.n)], self.n, self.m)

    def __mul__(self, other):
        if self.n != other.m:
            raise AlgebraError(f"shape mismatch {self.m}x{self.n} * {other.m}x{other.n}")
        d = self.dom
        out = [[d.zero] * other.n for _ in range(self.m)]
        for i in range(self.m):
            ri = self.rows[i]
            for k in range(self.n):
                a = ri[k]
                if d.is_zero(a):
                    continue
                rk = other.rows[k]
                oi = out[i]
                for j in range(other.n):
                    if not d.is_zero(rk[j]):
                        oi[j] = d.add(oi[j], d.mul(a, rk[j]))
        return Matrix(d, out, self.m, other.n)

    def __add__(self, other):
        d = self.dom
        return Matrix(d, [[d.add(self.rows[i][j], other.rows[i][j])
                           for j in range(self.n)] for i in range(self.m)],
                      self.m, self.n)

    def __sub__(self, other):
        d = self.dom
        return Matrix(d, [[d.sub(self.rows[i][j], other.rows[i][j])
                           for j in range(self.n)] for i in range(self.m)],
                      self.m, self.n)

    def scale(self, c):
        d = self.dom
        return Matrix(d, [[d.mul(c, x) for x in r] for r in self.rows],
                      self.m, self.n)

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.m != other.m or self.n != other.n:
            return False
        d = self.dom
        return all(d.eq(self.rows[i][j], other.rows[i][j])
                   for i in range(self.m) for j in range(self.n))

    def __hash__(self):
        raise TypeError("matrices are not hashable")

    def is_zero_matrix(self):
        d = self.dom
        return all(d.is_zero(x) for r in self.rows for x in r)

    def hstack(self, other):
        if self.m != other.m:
            raise AlgebraError("hstack row mismatch")
        return Matrix(self.dom, [self.rows[i] + other.rows[i] for i in range(self.m)],
                      self.m, self.n + other.n)

    def column(self, j):
        return [self.rows[i][j] for i in range(self.m)]

    def columns(self, idx):
        return Matrix(self.dom, [[self.rows[i][j] for j in idx] for i in range(self.m)],
                      self.m, len(idx))

    def row_subset(self, idx):
        return Matrix(self.dom, [self.rows[i] for i in idx], len(idx), self.n)

    def map_entries(self, dom, f):
        return Matrix(dom, [[f(x) for x in r] for r in self.rows], self.m, self.n)

    def __repr__(self):
        return f"<Matrix {self.m}x{self.n} over {self.dom.name}>"


def _dom_elem(dom, x):
    if isinstance(dom, LaurentRing):
        return isinstance(x, LaurentPoly)
    return _is_elem(dom, x)


def block_matrix(dom, blocks):
    """Assemble a matrix from a 2d grid of equally-shaped Matrix blocks."""
    rows = []
    for brow in blocks:
        height = brow[0].m
        for i in range(height):
            rows.append([x for blk in brow for x in blk.rows[i]])
    return Matrix(dom, rows)


# ---------------------------------------------------------------------------
# elimination over fields


def rref(mat: Matrix):
    """Reduced row echelon form and pivot columns; deterministic pivoting."""
    d = mat.dom
    if not d.is_field:
        raise AlgebraError("rref needs field entries")
    rows = [r[:] for r in mat.rows]
    m, n = mat.m, mat.n
    pivots = []
    r = 0
    for c in range(n):
        pr = None
        for i in range(r, m):
            if not d.is_zero(rows[i][c]):
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = d.inv(rows[r][c])
        rows[r] = [d.mul(inv, x) for x in rows[r]]
        for i in range(m):
            if i != r and not d.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [d.sub(rows[i][j], d.mul(f, rows[r][j])) for j in range(n)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return Matrix(d, rows, m, n), pivots


def rank(mat: Matrix) -> int:
    """Rank of a matrix over a field; the empty matrix has rank 0."""
    if mat.m == 0 or mat.n == 0:
        return 0
    return len(rref(mat)[1])


def kernel_basis(mat: Matrix) -> Matrix:
    """Columns form the canonical echelon-derived basis of the null space.

    >>> kernel_basis(Matrix.from_rows(QQ, [[2, -1]])).columns([0]).column(0)
    [Fraction(1, 2), Fraction(1, 1)]
    """
    d = mat.dom
    if mat.n == 0:
        return Matrix.zeros(d, 0, 0)
    if mat.m == 0:
        return Matrix.identity(d, mat.n)
    R, pivots = rref(mat)
    pivset = set(pivots)
    free = [j for j in range(mat.n) if j not in pivset]
    cols = []
    for f in free:
        v = [d.zero] * mat.n
        v[f] = d.one
        for r, p in enumerate(pivots):
            v[p] = d.neg(R.rows[r][f])
        cols.append(v)
    return Matrix(d, [[cols[k][i] for k in range(len(cols))] for i in range(mat.n)],
                  mat.n, len(cols))


def inverse(mat: Matrix) -> Matrix:
    if mat.m != mat.n:
        raise AlgebraError("inverse of non-square matrix")
    d = mat.dom
    aug = mat.hstack(Matrix.identity(d, mat.n))
    R, pivots = rref(aug)
    if pivots[: mat.n] != list(range(mat.n)):
        raise AlgebraError("singular matrix")
    return R.columns(list(range(mat.n, 2 * mat.n)))


def solve(mat: Matrix, target: Matrix):
    """One exact solution per target column (free variables zero), or None."""
    d = mat.dom
    aug = mat.hstack(target)
    R, pivots = rref(aug)
    if any(p >= mat.n for p in pivots):
        return None
    sols = []
    for t in range(target.n):
        v = [d.zero] * mat.n
        for r, p in enumerate(pivots):
            v[p] = R.rows[r][mat.n + t]
        sols.append(v)
    return Matrix(d, [[sols[t][i] for t in range(target.n)] for i in range(mat.n)],
                  mat.n, target.n)


# ---------------------------------------------------------------------------
# integer Smith normal form


def snf_integers(rows) -> tuple:
    """Smith normal form diagonal with divisibility chain, entries >= 0.

    Accepts a Matrix over Q with integral entries or a plain list of rows.

    >>> snf_integers([[2, 0], [0, 3]])
    (1, 6)
    >>> snf_integers([[0]])
    (0,)
    """
    if isinstance(rows, Matrix):
        grid = []
        for r in rows.rows:
            line = []
            for x in r:
                f = Fraction(x)
                if f.denominator != 1:
                    raise AlgebraError("snf_integers needs integral entries")
                line.append(f.numerator)
            grid.append(line)
    else:
        grid = [[int(x) for x in r] for r in rows]
    m = len(grid)
    n = len(grid[0]) if m else 0
    diag = []
    k = 0
    while k < min(m, n):
        pivot = None
        for i in range(k, m):
            for j in range(k, n):
                if grid[i][j] != 0 and (pivot is None or
                                        abs(grid[i][j]) < abs(grid[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        grid[k], grid[pi] = grid[pi], grid[k]
        for row in grid:
            row[k], row[pj] = row[pj], row[k]
        while True:
            dirty = False
            for i in range(m):
                if i != k and grid[i][k] != 0:
                    q = grid[i][k] // grid[k][k]
                    for j in range(n):
                        grid[i][j] -= q * grid[k][j]
                    if grid[i][k] != 0:
                        grid[k], grid[i] = grid[i], grid[k]
                        dirty = True
            for j in range(n):
                if j != k and grid[k][j] != 0:
                    q = grid[k][j] // grid[k][k]
                    for i in range(m):
                        grid[i][j] -= q * grid[i][k]
                    if grid[k][j] != 0:
                        for row in grid:
                            row[k], row[j] = row[j], row[k]
                        dirty = True
            if not dirty:
                break
        diag.append(abs(grid[k][k]))
        k += 1
    diag += [0] * (min(m, n) - len(diag))
    # enforce d1 | d2 | ...
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            a, b = diag[i], diag[i + 1]
            if a == 0 and b != 0:
                diag[i], diag[i + 1] = b, 0
                changed = True
            elif a != 0 and b % a != 0:
                g = gcd(a, b)
                diag[i], diag[i + 1] = g, a * b // g
                changed = True
    return tuple(diag)


# ---------------------------------------------------------------------------
# Laurent polynomial matrices: determinant and diagonalization


def det_poly(mat: Matrix) -> LaurentPoly:
    """Exact determinant of a square matrix over F[t^±1].

    Fraction-free Bareiss after clearing the negative exponents row by row;
    the cleared powers are restored at the end.  The 0x0 determinant is 1.
    """
    ring = mat.dom
    if not isinstance(ring, LaurentRing):
        raise AlgebraError("det_poly expects Laurent entries")
    if mat.m != mat.n:
        raise AlgebraError("determinant of non-square matrix")
    n = mat.n
    if n == 0:
        return ring.one
    rows = [r[:] for r in mat.rows]
    total_shift = 0
    for i in range(n):
        lows = [p.low for p in rows[i] if not p.is_zero()]
        if lows and min(lows) < 0:
            s = -min(lows)
            rows[i] = [ring.shift(p, s) for p in rows[i]]
            total_shift += s
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if rows[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not rows[i][k].is_zero()), None)
            if swap is None:
                return ring.zero
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(rows[k][k], rows[i][j]),
                               ring.mul(rows[i][k], rows[k][j]))
                rows[i][j] = ring.exact_div(num, prev)
            rows[i][k] = ring.zero
        prev = rows[k][k]
    det = rows[n - 1][n - 1]
    if sign < 0:
        det = ring.neg(det)
    return ring.shift(det, -total_shift)


def diagonalize_laurent(mat: Matrix):
    """(diag, U, V, Vinv) with U*mat*V diagonal over F[t^±1].

    The diagonal is not put into a divisibility chain: downstream uses only
    need the zero positions and the product of the nonzero entries.
    """
    ring = mat.dom
    m, n = mat.m, mat.n
    a = [r[:] for r in mat.rows]
    U = Matrix.identity(ring, m).rows
    V = Matrix.identity(ring, n).rows
    Vinv = Matrix.identity(ring, n).rows

    def span(p):
        return p.degree_span()

    def col_swap(j1, j2):
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        for row in V:
            row[j1], row[j2] = row[j2], row[j1]
        Vinv[j1], Vinv[j2] = Vinv[j2], Vinv[j1]

    def col_addmul(jdst, jsrc, q):
        for row in a:
            row[jdst] = ring.add(row[jdst], ring.mul(q, row[jsrc]))
        for row in V:
            row[jdst] = ring.add(row[jdst], ring.mul(q, row[jsrc]))
        Vinv[jsrc] = [ring.sub(Vinv[jsrc][l], ring.mul(q, Vinv[jdst][l]))
                      for l in range(n)]

    def col_shift(j, s):
        for row in a:
            row[j] = ring.shift(row[j], s)
        for row in V:
            row[j] = ring.shift(row[j], s)
        Vinv[j] = [ring.shift(p, -s) for p in Vinv[j]]

    def row_swap(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]
        U[i1], U[i2] = U[i2], U[i1]

    def row_addmul(idst, isrc, q):
        a[idst] = [ring.add(a[idst][j], ring.mul(q, a[isrc][j])) for j in range(n)]
        U[idst] = [ring.add(U[idst][j], ring.mul(q, U[isrc][j])) for j in range(m)]

    for j in range(n):
        lows = [a[i][j].low for i in range(m) if not a[i][j].is_zero()]
        if lows and min(lows) < 0:
            col_shift(j, -min(lows))
    k = 0
    while k < min(m, n):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if not a[i][j].is_zero():
                    if best is None or span(a[i][j]) < span(a[best[0]][best[1]]):
                        best = (i, j)
        if best is None:
            break
        row_swap(k, best[0])
        col_swap(k, best[1])
        while True:
            dirty = False
            for i in range(m):
                if i != k and not a[i][k].is_zero():
                    q, _ = ring.divmod_shifted(a[i][k], a[k][k])
                    row_addmul(i, k, ring.neg(q))
                    if not a[i][k].is_zero():
                        row_swap(k, i)
                        dirty = True
            for j in range(n):
                if j != k and not a[k][j].is_zero():
                    q, _ = ring.divmod_shifted(a[k][j], a[k][k])
                    col_addmul(j, k, ring.neg(q))
                    if not a[k][j].is_zero():
                        col_swap(k, j)
                        dirty = True
            if not dirty:
                break
        k += 1
    diag = [a[i][i] for i in range(min(m, n))]
    return (diag, Matrix(ring, U, m, m), Matrix(ring, V, n, n),
            Matrix(ring, Vinv, n, n))


def pid_homology_order(d_in: Matrix, d_out: Matrix) -> LaurentPoly:
    """Order of ker(d_out)/im(d_in) as an F[t^±1]-module.

    d_in maps C_{i+1} -> C_i and d_out maps C_i -> C_{i-1}; the composition
    must vanish.  Returns 0 when the module has positive rank, otherwise the
    product of the elementary divisors, canonicalized to lowest exponent 0
    and monic leading coefficient.
    """
    ring = d_in.dom
    if not isinstance(ring, LaurentRing):
        raise AlgebraError("pid_homology_order expects Laurent matrices")
    if d_out.n != d_in.m:
        raise AlgebraError("boundary shapes do not compose")
    if d_out.m and d_in.n and not (d_out * d_in).is_zero_matrix():
        raise AlgebraError("d_out o d_in is nonzero")
    n_mid = d_in.m
    if n_mid == 0:
        return ring.one
    diag, _, _, Vinv = diagonalize_laurent(d_out)
    rank_out = sum(1 for p in diag if not p.is_zero())
    kernel_idx = [j for j in range(n_mid)
                  if j >= len(diag) or diag[j].is_zero()]
    # reorder so nonzero-diagonal positions come first
    nz_idx = [j for j in range(len(diag)) if not diag[j].is_zero()]
    y = Vinv * d_in if d_in.n else Matrix.zeros(ring, n_mid, 0)
    for i in nz_idx:
        if any(not p.is_zero() for p in y.rows[i]):
            raise AlgebraError("image does not lie in the kernel")
    ysub = y.row_subset(kernel_idx)
    ediag, *_ = diagonalize_laurent(ysub)
    nonzero = [p for p in ediag if not p.is_zero()]
    if len(nonzero) < n_mid - rank_out:
        return ring.zero
    prod = ring.one
    for p in nonzero:
        prod = ring.mul(prod, p)
    return ring.unit_canonical(prod)
