"""Exact integer matrices and polynomials.

Everything here works over Python's arbitrary-precision ``int``; there is no
floating point anywhere.  Characteristic polynomials use Faddeev-LeVerrier,
rank uses Bareiss fraction-free elimination.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from operator import add
from typing import Iterable, Sequence


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [tuple(int(a) for a in r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), cols, tuple(a for r in rows for a in r))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "IntMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def ones(cls, rows: int, cols: int | None = None) -> "IntMatrix":
        cols = rows if cols is None else cols
        return cls(rows, cols, (1,) * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def tolist(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)], self.rows)

    T = property(transpose)

    def _check_same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(
                f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols, tuple(map(add, self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_same_shape(other)
        return IntMatrix(self.rows, self.cols,
                         tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        cols = [other.entries[j::other.cols] for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum(a * b for a, b in zip(r, c)) for c in cols)
        return IntMatrix(self.rows, other.cols, tuple(out))

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))


def block_matrix(blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
    """Assemble a matrix from a grid of blocks (zero-size blocks allowed)."""
    rows = []
    for band in blocks:
        height = band[0].rows
        if any(b.rows != height for b in band):
            raise DimensionError("blocks in one band must share a height")
        for i in range(height):
            rows.append([a for b in band for a in b.row(i)])
    cols = sum(b.cols for b in blocks[0])
    return IntMatrix.from_rows(rows, cols)


def _strip(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial, ``coeffs[i]`` is the coefficient of x**i."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in self.coeffs))

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(tuple(map(add, a, b + (0,) * (len(a) - len(b)))))

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial(tuple(other * c for c in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result, base = IntPolynomial((1,)), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reflect(self) -> "IntPolynomial":
        """p(-x)."""
        return IntPolynomial(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))

    def lowest_degree(self) -> int:
        """Multiplicity of 0 as a root (the x-adic valuation)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ValueError("zero polynomial")

    def divmod_exact(self, d: "IntPolynomial"):
        """Long division over Z.  Returns (q, r) or None when a quotient
        coefficient would leave the integers."""
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        lead, dd = d.leading(), d.degree
        q = [0] * max(len(r) - dd, 0)
        for i in range(len(r) - 1, dd - 1, -1):
            if not r[i]:
                continue
            t, rem = divmod(r[i], lead)
            if rem:
                return None
            q[i - dd] = t
            for j, c in enumerate(d.coeffs):
                r[i - dd + j] -= t * c
        return IntPolynomial(q), IntPolynomial(r[:dd] if dd > 0 else [])

    def __floordiv__(self, d):
        res = self.divmod_exact(d)
        if res is None or not res[1].is_zero():
            raise ArithmeticError(f"{d} does not divide {self}")
        return res[0]

    def to_json(self) -> str:
        return json.dumps([str(c) for c in self.coeffs])

    @classmethod
    def from_json(cls, text: str) -> "IntPolynomial":
        return cls(tuple(int(c) for c in json.loads(text)))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            body = str(a) if (a != 1 or i == 0) else ""
            parts.append((sign, body + mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        return out + "".join(s + t for s, t in parts[1:])

    def __repr__(self):
        return f"IntPolynomial({self})"


def poly_divides(d: IntPolynomial, p: IntPolynomial) -> bool:
    """True iff p = d*q for some q with integer coefficients."""
    if d.is_zero():
        raise ZeroDivisionError("divisor is the zero polynomial")
    res = p.divmod_exact(d)
    return res is not None and res[1].is_zero()


def char_poly(m: IntMatrix) -> IntPolynomial:
    """det(xI - m) via Faddeev-LeVerrier.

    M_0 = 0, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.  The
    products only touch the nonzero entries of A, so sparse adjacency
    matrices of order ~70 stay cheap.
    """
    if not m.is_square:
        raise DimensionError(f"char_poly needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    sparse = [[(j, a) for j, a in enumerate(m.row(i)) if a] for i in range(n)]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    M = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        nxt = []
        for i in range(n):
            acc = [0] * n
            for j, a in sparse[i]:
                if a == 1:
                    acc = list(map(add, acc, M[j]))
                else:
                    acc = [s + a * t for s, t in zip(acc, M[j])]
            acc[i] += c
            nxt.append(acc)
        M = nxt
        tr = sum(a * M[j][i] for i in range(n) for j, a in sparse[i])
        c, rem = divmod(-tr, k)
        if rem:  # cannot happen for integer input
            raise ArithmeticError("inexact division in Faddeev-LeVerrier")
        coeffs[n - k] = c
    return IntPolynomial(coeffs)


ORACLE_MAX_ORDER = 8


def char_poly_oracle(m: IntMatrix) -> IntPolynomial:
    """det(xI - m) by Laplace expansion along rows; independent check for
    char_poly.  Minors are memoised on their column set."""
    if not m.is_square:
        raise DimensionError("char_poly_oracle needs a square matrix")
    n = m.rows
    if n > ORACLE_MAX_ORDER:
        raise ValueError(f"oracle refuses order {n} > {ORACLE_MAX_ORDER}")
    X = IntPolynomial.x()

    def entry(i, j):
        e = IntPolynomial.const(-m[i, j])
        return e + X if i == j else e

    memo = {}

    def minor(row, cols):
        # det of rows row..n-1 restricted to the (sorted) column set cols
        if row == n:
            return IntPolynomial((1,))
        if cols in memo:
            return memo[cols]
        total = IntPolynomial()
        for pos, j in enumerate(cols):
            e = entry(row, j)
            if e.is_zero():
                continue
            term = e * minor(row + 1, cols[:pos] + cols[pos + 1:])
            total = total - term if pos % 2 else total + term
        memo[cols] = total
        return total

    return minor(0, tuple(range(n)))


def rank(m: IntMatrix) -> int:
    """Rank over Q by Bareiss fraction-free elimination."""
    a = m.tolist()
    rows, cols = m.rows, m.cols
    r, prev = 0, 1
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, rows):
            f = a[i][c]
            a[i] = [(p * a[i][j] - f * a[r][j]) // prev for j in range(cols)]
        prev = p
        r += 1
    return r
