"""Exact integer and rational linear algebra.

Matrices are immutable tuples of row tuples holding Python ints, so there
is no overflow and every operation is pure.  Rational vectors are tuples
of ``fractions.Fraction``.  Nothing in this module (or anywhere in the
package core) touches floating point: ranks, lattice memberships and
normal forms are all decided exactly.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


def matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    """Build an immutable integer matrix, validating rectangular shape."""
    out = tuple(tuple(int(x) for x in row) for row in rows)
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged rows")
    return out


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_matrix(rows: int, cols: int) -> IntMatrix:
    return tuple((0,) * cols for _ in range(rows))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    bt = tuple(zip(*b)) if b else ()
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: IntMatrix, v: Sequence[int]) -> IntVector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a)) if a else ()


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def det(a: IntMatrix) -> int:
    """Determinant by cofactor expansion.  Exponential; test oracle only."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("not square")
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    total = 0
    sign = 1
    for j in range(n):
        if a[0][j] != 0:
            minor = tuple(row[:j] + row[j + 1 :] for row in a[1:])
            total += sign * a[0][j] * det(minor)
        sign = -sign
    return total


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
        if g == 1:
            return 1
    return g


def primitive(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by its content (zero stays zero)."""
    g = content(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def integerize(v: Sequence[Fraction | int]) -> IntVector:
    """Scale a rational vector by the lcm of denominators."""
    mult = 1
    for x in v:
        d = x.denominator if isinstance(x, Fraction) else 1
        mult = mult * d // gcd(mult, d)
    return tuple(int(x * mult) for x in v)


def hermite_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular, ``U @ a == H``, ``H`` in row
    echelon form with positive pivots and entries above each pivot reduced
    into ``[0, pivot)``.  Pivots are chosen with minimal absolute value to
    limit coefficient growth.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    h = [list(row) for row in a]
    u = [list(row) for row in identity(m)]
    row = 0
    for col in range(n):
        if row == m:
            break
        # Euclid on the column below `row` until a single nonzero remains.
        while True:
            nonzero = [i for i in range(row, m) if h[i][col] != 0]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: (abs(h[i][col]), i))
            if piv != row:
                h[row], h[piv] = h[piv], h[row]
                u[row], u[piv] = u[piv], u[row]
            p = h[row][col]
            done = True
            for i in range(row + 1, m):
                if h[i][col] != 0:
                    q = h[i][col] // p
                    h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[row])]
                    if h[i][col] != 0:
                        done = False
            if done:
                break
        if h[row][col] == 0:
            continue
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        p = h[row][col]
        for i in range(row):
            q = h[i][col] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[row])]
                u[i] = [x - q * y for x, y in zip(u[i], u[row])]
        row += 1
    return tuple(tuple(r) for r in h), tuple(tuple(r) for r in u)


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(D, U, V)`` with ``U @ a @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with
    ``d1 | d2 | ...`` and all ``di >= 0``.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u = [list(row) for row in identity(m)]
    v = [list(row) for row in identity(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for k in range(min(m, n)):
        while True:
            entries = [
                (abs(d[i][j]), i, j)
                for i in range(k, m)
                for j in range(k, n)
                if d[i][j] != 0
            ]
            if not entries:
                break
            _, pi, pj = min(entries)
            if pi != k:
                swap_rows(k, pi)
            if pj != k:
                swap_cols(k, pj)
            p = d[k][k]
            clean = True
            for i in range(k + 1, m):
                if d[i][k] != 0:
                    add_row(i, k, -(d[i][k] // p))
                    if d[i][k] != 0:
                        clean = False
            for j in range(k + 1, n):
                if d[k][j] != 0:
                    add_col(j, k, -(d[k][j] // p))
                    if d[k][j] != 0:
                        clean = False
            if not clean:
                continue
            # Enforce divisibility of the remaining block by the pivot.
            p = d[k][k]
            culprit = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if d[i][j] % p != 0:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            add_row(k, culprit, 1)
        if k < m and k < n and d[k][k] < 0:
            d[k] = [-x for x in d[k]]
            u[k] = [-x for x in u[k]]
    return tuple(tuple(r) for r in d), tuple(tuple(r) for r in u), tuple(tuple(r) for r in v)


def integer_row_basis(rows: Iterable[Sequence[int]]) -> list[IntVector]:
    """Echelonized basis of the rational row span, kept over the integers.

    Fraction-free: each reduction step cross-multiplies and strips the
    content, so entries stay moderate.  The span (over Q) is preserved;
    the basis is in echelon form by leftmost nonzero position.
    """
    basis: list[list[int]] = []  # sorted by pivot position
    pivots: list[int] = []
    for row in rows:
        work = list(row)
        for b, p in zip(basis, pivots):
            if work[p] != 0:
                lead = b[p]
                coef = work[p]
                g = gcd(lead, coef)
                work = [
                    (lead // g) * x - (coef // g) * y for x, y in zip(work, b)
                ]
        piv = next((i for i, x in enumerate(work) if x != 0), None)
        if piv is None:
            continue
        work = list(primitive(work))
        at = next((i for i, p in enumerate(pivots) if p > piv), len(pivots))
        basis.insert(at, work)
        pivots.insert(at, piv)
    return [tuple(b) for b in basis]


def rational_rank(vectors: Iterable[Sequence[Fraction | int]]) -> int:
    """Rank of the spanned subspace over the rationals, exactly."""
    vecs = [integerize(v) for v in vectors]
    if vecs and any(len(v) != len(vecs[0]) for v in vecs):
        raise ValueError("vectors of mixed length")
    return len(integer_row_basis(vecs))


def solve_rational(a: IntMatrix, b: Sequence[int]) -> RationalVector | None:
    """One rational solution of ``a @ x == b``, or None if inconsistent."""
    m = len(a)
    n = len(a[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        aug[r] = [x / aug[r][c] for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for r, c in pivots:
        x[c] = aug[r][n]
    return tuple(x)


def solve_integer_affine(
    a: IntMatrix, b: Sequence[int]
) -> tuple[IntVector, tuple[IntVector, ...]] | None:
    """Integer solutions of ``a @ x == b``.

    Returns ``(x0, kernel_basis)`` where ``x0`` is one integer solution and
    ``kernel_basis`` is a lattice basis of ``ker a``; returns None when no
    integer solution exists.  Absence is certified through the Smith form:
    ``b`` is then outside the image lattice.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if len(b) != m:
        raise ValueError("dimension mismatch")
    d, u, v = smith_normal_form(a)
    c = mat_vec(u, b)
    y = [0] * n
    for k in range(min(m, n)):
        dk = d[k][k]
        if dk != 0:
            if c[k] % dk != 0:
                return None
            y[k] = c[k] // dk
        elif c[k] != 0:
            return None
    for k in range(min(m, n), m):
        if c[k] != 0:
            return None
    x0 = tuple(sum(v[i][k] * y[k] for k in range(n)) for i in range(n))
    kernel = tuple(
        tuple(v[i][k] for i in range(n))
        for k in range(n)
        if k >= min(m, n) or d[k][k] == 0
    )
    return x0, kernel
