"""Reference computations on plain nested lists of Fractions.

Deliberately independent of flatlie.linalg: no Matrix class, no shared
helpers.  Tests compare library results against these.
"""

from __future__ import annotations

from fractions import Fraction

F = Fraction


def mat(rows):
    return [[F(x) for x in r] for r in rows]


def zeros(n, m=None):
    return [[F(0)] * (n if m is None else m) for _ in range(n)]


def eye(n):
    return [[F(int(i == j)) for j in range(n)] for i in range(n)]


def mm(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), F(0)) for j in range(len(b[0]))]
            for i in range(len(a))]


def add(a, b):
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def sub(a, b):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def scal(c, a):
    return [[F(c) * x for x in r] for r in a]


def comm(a, b):
    return sub(mm(a, b), mm(b, a))


def trace(a):
    return sum((a[i][i] for i in range(len(a))), F(0))


def apply(a, v):
    return [sum((a[i][k] * v[k] for k in range(len(v))), F(0)) for i in range(len(a))]


def tensor(dim, quads):
    """c[i][j][k] from 0-based quads with antisymmetric fill."""
    c = [[[F(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for i, j, k, v in quads:
        c[i][j][k] += F(v)
        c[j][i][k] -= F(v)
    return c


def br(c, x, y):
    n = len(c)
    return [sum((x[i] * y[j] * c[i][j][k] for i in range(n) for j in range(n)), F(0)) for k in range(n)]


def ad(c, i):
    """Matrix of ad(X_i): column j holds [X_i, X_j]."""
    n = len(c)
    return [[c[i][j][k] for j in range(n)] for k in range(n)]


def jacobi_violations(c):
    n = len(c)
    bad = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r = [sum((c[j][k][m] * c[i][m][t] + c[k][i][m] * c[j][m][t] + c[i][j][m] * c[k][m][t])
                         for m in range(n)) for t in range(n)]
                if any(r):
                    bad.append((i, j, k))
    return bad


def star_residuals(c, g):
    """All (i, j) with g(X_i)X_j - g(X_j)X_i != [X_i, X_j]."""
    n = len(c)
    out = []
    for i in range(n):
        for j in range(n):
            lhs = [g[i][t][j] - g[j][t][i] for t in range(n)]
            if lhs != [c[i][j][t] for t in range(n)]:
                out.append((i, j))
    return out


def hom_residuals(c, g):
    """All (i, j) with g([X_i, X_j]) != [g(X_i), g(X_j)]."""
    n = len(c)
    m = len(g[0])
    out = []
    for i in range(n):
        for j in range(n):
            lhs = zeros(m)
            for k in range(n):
                lhs = add(lhs, scal(c[i][j][k], g[k]))
            if lhs != comm(g[i], g[j]):
                out.append((i, j))
    return out


def half_ad(c):
    return [scal(F(1, 2), ad(c, i)) for i in range(len(c))]


def unipotent_shift(m, xi):
    """P m P^-1 with P = I + (last row xi), P^-1 = I - (last row xi)."""
    n1 = len(m)
    eta = zeros(n1)
    for j, x in enumerate(xi):
        eta[n1 - 1][j] = F(x)
    return mm(mm(add(eye(n1), eta), m), sub(eye(n1), eta))


SL2 = [(0, 1, 1, 1), (0, 2, 2, -1), (1, 2, 0, 1)]
O3 = [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]

# Projective witnesses as printed for sl(2,R) and o(3), 4x4 per basis vector.
SL2_N = [
    mat([[0, 0, 0, 1], [0, F(1, 2), 0, 0], [0, 0, F(-1, 2), 0], [F(1, 4), 0, 0, 0]]),
    mat([[0, 0, F(1, 2), 0], [F(-1, 2), 0, 0, 1], [0, 0, 0, 0], [0, 0, F(1, 4), 0]]),
    mat([[0, F(-1, 2), 0, 0], [0, 0, 0, 0], [F(1, 2), 0, 0, 1], [0, F(1, 4), 0, 0]]),
]
O3_N = [
    mat([[0, 0, 0, 1], [0, 0, F(-1, 2), 0], [0, F(1, 2), 0, 0], [F(-1, 4), 0, 0, 0]]),
    mat([[0, 0, F(1, 2), 0], [0, 0, 0, 1], [F(-1, 2), 0, 0, 0], [0, F(-1, 4), 0, 0]]),
    mat([[0, F(-1, 2), 0, 0], [F(1, 2), 0, 0, 0], [0, 0, 0, 1], [0, 0, F(-1, 4), 0]]),
]


def sl2_block_connection():
    """{(i, j): coords of -yx + tr(yx)/2 I} for x = b_i, y = b_j in the basis E21, H, E12.

    A traceless [[a, b], [c, -a]] has coordinates (c, a, b) in that basis.
    """
    basis = [mat([[0, 0], [1, 0]]), mat([[1, 0], [0, -1]]), mat([[0, 1], [0, 0]])]
    out = {}
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            yx = mm(y, x)
            m = add(scal(-1, yx), scal(trace(yx) / 2, eye(2)))
            assert m[0][0] == -m[1][1]
            out[(i, j)] = (m[1][0], m[0][0], m[0][1])
    return out
