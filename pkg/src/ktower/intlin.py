"""Exact integer linear algebra: matrices over Z, Smith normal form,
minor-gcd invariant factors, and integral linear solving.

Everything here works with Python's arbitrary-precision integers.  No
floating point, no fixed-width arithmetic, so no overflow anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

# minor_gcd_factors enumerates all k x k minors, which is only sane for
# small matrices; above this the caller should use snf instead.
MINOR_ORACLE_LIMIT = 6


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major, possibly zero-dimensional."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows:
            raise ValueError("entry rows do not match declared row count")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows in matrix entries")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        """Build a matrix from nested sequences.

        >>> IntMatrix.from_rows([[1, 2], [3, 4]]).entries
        ((1, 2), (3, 4))
        """
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return IntMatrix(len(data), cols, data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @staticmethod
    def column(values: Sequence[int]) -> "IntMatrix":
        return IntMatrix.from_rows([[int(v)] for v in values], cols=1)

    @staticmethod
    def diagonal(values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return IntMatrix(
            n, n, tuple(tuple(int(values[i]) if i == j else 0 for j in range(n)) for i in range(n))
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = other.entries
        out = []
        for row in self.entries:
            acc = [0] * other.cols
            for k, a in enumerate(row):
                if a:
                    orow = ot[k]
                    for j in range(other.cols):
                        acc[j] += a * orow[j]
            out.append(tuple(acc))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("hstack requires equal row counts")
        return IntMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(
            len(row_idx),
            len(col_idx),
            tuple(tuple(self.entries[i][j] for j in col_idx) for i in row_idx),
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def scale(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(tuple(k * x for x in row) for row in self.entries))


@dataclass(frozen=True)
class SmithDecomposition:
    """u @ a @ v = s with u, v unimodular and s diagonal.

    The diagonal of ``s`` is nonnegative, nonzero entries come first, and
    each nonzero entry divides the next.  ``factors`` lists that diagonal.
    """

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    factors: tuple[int, ...]


@dataclass(frozen=True)
class SmithWithInverses:
    """Smith decomposition plus the inverses of both transforms.

    Kept separate from SmithDecomposition so the common result stays
    small; quotient-group bookkeeping needs u_inv to transport elements.
    """

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix
    factors: tuple[int, ...]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """g, x, y with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def _snf_core(a: IntMatrix) -> SmithWithInverses:
    m, n = a.rows, a.cols
    s = [list(row) for row in a.entries]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    ui = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    vi = [[int(i == j) for j in range(n)] for i in range(n)]

    # Every row operation is applied to u and inverted on the columns of
    # ui; every column operation goes to v and is inverted on the rows of
    # vi.  Clearing uses single 2x2 unimodular gcd transforms rather than
    # repeated Euclidean subtraction, which keeps the transform entries
    # from exploding.

    def row_sub(i: int, t: int, q: int) -> None:
        for mat in (s, u):
            ri, rt = mat[i], mat[t]
            for j in range(len(ri)):
                ri[j] -= q * rt[j]
        for r in ui:
            r[t] += q * r[i]

    def row_swap(i: int, t: int) -> None:
        if i == t:
            return
        s[i], s[t] = s[t], s[i]
        u[i], u[t] = u[t], u[i]
        for r in ui:
            r[i], r[t] = r[t], r[i]

    def row_neg(t: int) -> None:
        s[t] = [-x for x in s[t]]
        u[t] = [-x for x in u[t]]
        for r in ui:
            r[t] = -r[t]

    def row_gcd_combine(t: int, i: int) -> None:
        # rows (t, i) <- T @ (t, i) with T = [[x, y], [-e//g, p//g]],
        # after which s[t][t] = gcd(p, e) and s[i][t] = 0
        p, e = s[t][t], s[i][t]
        g, x, y = _xgcd(p, e)
        pg, eg = p // g, e // g
        for mat in (s, u):
            rt, ri = mat[t], mat[i]
            for j in range(len(rt)):
                rt[j], ri[j] = x * rt[j] + y * ri[j], -eg * rt[j] + pg * ri[j]
        for r in ui:
            # columns pick up T^{-1} = [[pg, -y], [eg, x]] on the right
            r[t], r[i] = pg * r[t] + eg * r[i], -y * r[t] + x * r[i]

    def col_sub(j: int, t: int, q: int) -> None:
        for r in s:
            r[j] -= q * r[t]
        for r in v:
            r[j] -= q * r[t]
        rt, rj = vi[t], vi[j]
        for k in range(len(rt)):
            rt[k] += q * rj[k]

    def col_swap(j: int, t: int) -> None:
        if j == t:
            return
        for r in s:
            r[j], r[t] = r[t], r[j]
        for r in v:
            r[j], r[t] = r[t], r[j]
        vi[j], vi[t] = vi[t], vi[j]

    def col_gcd_combine(t: int, j: int) -> None:
        # cols (t, j) <- (t, j) @ F with F = [[x, -e//g], [y, p//g]],
        # after which s[t][t] = gcd(p, e) and s[t][j] = 0
        p, e = s[t][t], s[t][j]
        g, x, y = _xgcd(p, e)
        pg, eg = p // g, e // g
        for mat in (s, v):
            for r in mat:
                r[t], r[j] = x * r[t] + y * r[j], -eg * r[t] + pg * r[j]
        rt, rj = vi[t], vi[j]
        for k in range(len(rt)):
            # rows pick up F^{-1} = [[pg, eg], [-y, x]] on the left
            rt[k], rj[k] = pg * rt[k] + eg * rj[k], -y * rt[k] + x * rj[k]

    t = 0
    limit = min(m, n)
    while t < limit:
        # Pivot strategy: smallest nonzero absolute value in the live
        # block, moved to (t, t) by swaps.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = s[i][j]
                if x and (best is None or abs(x) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(best[0], t)
        col_swap(best[1], t)

        while True:
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    e = s[i][t]
                    if e:
                        if e % s[t][t] == 0:
                            row_sub(i, t, e // s[t][t])
                        else:
                            row_gcd_combine(t, i)
                        dirty = True
                for j in range(t + 1, n):
                    e = s[t][j]
                    if e:
                        if e % s[t][t] == 0:
                            col_sub(j, t, e // s[t][t])
                        else:
                            col_gcd_combine(t, j)
                        dirty = True
            # Pivot must divide the whole remaining block to give the
            # divisibility chain; fold an offending row in and redo.
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % s[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_sub(t, bad, -1)
        if s[t][t] < 0:
            row_neg(t)
        t += 1

    factors = tuple(s[i][i] for i in range(limit))
    return SmithWithInverses(
        u=IntMatrix.from_rows(u, cols=m),
        s=IntMatrix.from_rows(s, cols=n),
        v=IntMatrix.from_rows(v, cols=n),
        u_inv=IntMatrix.from_rows(ui, cols=m),
        v_inv=IntMatrix.from_rows(vi, cols=n),
        factors=factors,
    )


def snf(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form of an integer matrix.

    >>> snf(IntMatrix.from_rows([[2, 4], [6, 8]])).factors
    (2, 4)
    >>> snf(IntMatrix.from_rows([[1, 0], [0, 1]])).factors
    (1, 1)
    """
    full = _snf_core(a)
    return SmithDecomposition(u=full.u, s=full.s, v=full.v, factors=full.factors)


def snf_with_inverses(a: IntMatrix) -> SmithWithInverses:
    """Like snf but also returns u_inv and v_inv."""
    return _snf_core(a)


def determinant(a: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if a.rows != a.cols:
        raise ValueError("determinant requires a square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot_row is None:
                return 0
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def minor_gcd_factors(a: IntMatrix) -> tuple[int, ...]:
    """Invariant factors from gcds of k x k minors, no elimination involved.

    d_k = gcd(all k x k minors) / gcd(all (k-1) x (k-1) minors), stopping at
    the rank (the first k whose minors are all zero).  The gcd over an empty
    set is 0 and the empty 0 x 0 minor has determinant 1.  Deliberately an
    independent route from snf so the two can cross-check each other.

    >>> minor_gcd_factors(IntMatrix.from_rows([[2, 4], [6, 8]]))
    (2, 4)
    >>> minor_gcd_factors(IntMatrix.zero(3, 3))
    ()
    """
    if min(a.rows, a.cols) > MINOR_ORACLE_LIMIT:
        raise ValueError(
            f"minor oracle limited to dimension {MINOR_ORACLE_LIMIT}; use snf for larger matrices"
        )
    out = []
    g_prev = 1
    for k in range(1, min(a.rows, a.cols) + 1):
        g = 0
        for rset in combinations(range(a.rows), k):
            for cset in combinations(range(a.cols), k):
                g = math.gcd(g, determinant(a.submatrix(rset, cset)))
        if g == 0:
            break
        out.append(g // g_prev)
        g_prev = g
    return tuple(out)


def solve_integral(a: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Solve a @ x = b over the integers; None when no integral solution.

    b may have several columns; each is solved simultaneously.

    >>> a = IntMatrix.from_rows([[2, 0], [0, 3]])
    >>> solve_integral(a, IntMatrix.column([4, 9])).entries
    ((2,), (3,))
    >>> solve_integral(a, IntMatrix.column([1, 1])) is None
    True
    """
    if a.rows != b.rows:
        raise ValueError("solve_integral requires matching row counts")
    dec = _snf_core(a)
    c = dec.u @ b
    y = [[0] * b.cols for _ in range(a.cols)]
    k = len(dec.factors)
    for i in range(a.rows):
        d = dec.factors[i] if i < k else 0
        for j in range(b.cols):
            rhs = c.entries[i][j]
            if d == 0:
                if rhs != 0:
                    return None
            else:
                if rhs % d:
                    return None
                y[i][j] = rhs // d
    return dec.v @ IntMatrix.from_rows(y, cols=b.cols)


def lattice_contains(gens: IntMatrix, vectors: IntMatrix) -> bool:
    """Whether every column of ``vectors`` lies in the column lattice of ``gens``."""
    return solve_integral(gens, vectors) is not None


def lattice_equal(gens_a: IntMatrix, gens_b: IntMatrix) -> bool:
    """Whether two column-generated lattices coincide (mutual containment)."""
    if gens_a.rows != gens_b.rows:
        raise ValueError("lattices live in different ambient ranks")
    return lattice_contains(gens_a, gens_b) and lattice_contains(gens_b, gens_a)


def integer_kernel(a: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel {x : a @ x = 0}, returned as columns."""
    dec = _snf_core(a)
    rank = sum(1 for d in dec.factors if d)
    idx = list(range(rank, a.cols))
    return dec.v.submatrix(list(range(a.cols)), idx)


def lattice_basis(gens: IntMatrix) -> IntMatrix:
    """A basis (columns, full column rank) of the lattice spanned by ``gens``.

    With u @ gens @ v = s, the lattice equals the span of u_inv @ s, whose
    nonzero columns are d_i * (column i of u_inv).
    """
    dec = _snf_core(gens)
    rank = sum(1 for d in dec.factors if d)
    cols = []
    for i in range(rank):
        cols.append(tuple(dec.factors[i] * dec.u_inv.entries[r][i] for r in range(gens.rows)))
    return IntMatrix(gens.rows, rank, tuple(zip(*cols)) if cols else tuple(() for _ in range(gens.rows)))


# --- JSON transport -------------------------------------------------------
#
# Entries travel as decimal strings so arbitrary precision survives
# consumers whose JSON numbers are doubles.  Parsing accepts plain
# integers too.


def _parse_int(x) -> int:
    if isinstance(x, bool):
        raise ValueError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x, 10)
    raise ValueError(f"expected integer or decimal string, got {type(x).__name__}")


def matrix_to_json(a: IntMatrix) -> dict:
    return {
        "rows": a.rows,
        "cols": a.cols,
        "entries": [[str(x) for x in row] for row in a.entries],
    }


def matrix_from_json(obj) -> IntMatrix:
    if not isinstance(obj, dict):
        raise ValueError("matrix JSON must be an object")
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        entries = obj["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix JSON: {exc}") from exc
    if not isinstance(entries, list) or len(entries) != rows:
        raise ValueError("matrix JSON entries must list one row per declared row")
    data = []
    for row in entries:
        if not isinstance(row, list) or len(row) != cols:
            raise ValueError("matrix JSON row width disagrees with declared cols")
        data.append(tuple(_parse_int(x) for x in row))
    return IntMatrix(rows, cols, tuple(data))
