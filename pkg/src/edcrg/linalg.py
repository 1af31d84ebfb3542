"""Exact linear algebra over the rationals (Gauss-Jordan on Fractions)."""

from __future__ import annotations

from fractions import Fraction


def solve_affine(A, b):
    """Solve ``A x = b`` exactly.

    Returns ``(x0, basis)`` where every solution is ``x0 + sum c_i basis[i]``,
    or ``None`` when the system is inconsistent. Entries may be ints or
    Fractions; results are Fractions.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    M = [[Fraction(v) for v in A[r]] + [Fraction(b[r])] for r in range(rows)]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                Mi, Mr = M[i], M[r]
                M[i] = [Mi[j] - f * Mr[j] for j in range(cols + 1)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if M[i][cols] != 0:
            return None
    x0 = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x0[c] = M[i][cols]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -M[i][fc]
        basis.append(v)
    return x0, basis


def matvec(M, x):
    return [sum(M[i][j] * x[j] for j in range(len(x))) for i in range(len(M))]
