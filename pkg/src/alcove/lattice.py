"""Smith normal form over the integers and lattice-quotient labels."""

from __future__ import annotations

from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def smith_normal_form(a: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ a @ V == D`` diagonal and U, V unimodular.

    The diagonal entries are nonnegative and each divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility of the remaining block by the pivot
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]]
            if bad:
                add_row(bad[0][0], t, 1)
                continue
            break
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


class LatticeQuotient:
    """Labels for ``Z^n / rowspan(a)`` when ``a`` is square and nonsingular."""

    def __init__(self, a: Sequence[Sequence[int]]):
        _, dmat, self._v = smith_normal_form(a)
        self.invariants = tuple(dmat[i][i] for i in range(len(dmat)))
        if 0 in self.invariants:
            raise ValueError("lattice has infinite index")
        self.order = 1
        for x in self.invariants:
            self.order *= x

    def label(self, vec: Sequence[int]) -> Tuple[int, ...]:
        """Canonical coset label of the row vector ``vec``."""
        n = len(self._v)
        coords = [sum(vec[i] * self._v[i][j] for i in range(n)) for j in range(n)]
        return tuple(c % d for c, d in zip(coords, self.invariants) if d > 1)

    def contains(self, vec: Sequence[int]) -> bool:
        return not any(self.label(vec))
