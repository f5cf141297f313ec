"""Brute-force reference computations on raw Cayley tables.

Nothing here calls the library's closure or lattice code: subgroups are
Python frozensets grown by repeated multiplication.
"""

from itertools import product

import numpy as np


class TableOracle:
    def __init__(self, table, identity):
        self.t = [list(map(int, row)) for row in np.asarray(table)]
        self.e = int(identity)
        n = len(self.t)
        self.inv = [next(y for y in range(n) if self.t[x][y] == self.e) for x in range(n)]
        self.n = n

    def mul(self, a, b):
        return self.t[a][b]

    def comm(self, a, b):
        # [a, b] = a b a^-1 b^-1
        return self.mul(self.mul(self.mul(a, b), self.inv[a]), self.inv[b])

    def conj(self, g, x):
        return self.mul(self.mul(g, x), self.inv[g])

    def closure(self, seeds) -> frozenset:
        S = {self.e} | set(seeds)
        frontier = list(S)
        while frontier:
            new = []
            for a in frontier:
                for b in list(S):
                    for c in (self.mul(a, b), self.mul(b, a)):
                        if c not in S:
                            S.add(c)
                            new.append(c)
            frontier = new
        return frozenset(S)

    def normal_closure(self, seeds, within=None) -> frozenset:
        amb = range(self.n) if within is None else within
        S = set(seeds)
        while True:
            T = self.closure(S)
            conj = {self.conj(g, x) for g in amb for x in T}
            if conj <= T:
                return T
            S = T | conj

    def commutator(self, A, B, within=None) -> frozenset:
        return self.normal_closure({self.comm(a, b) for a in A for b in B}, within)

    def is_normal(self, N, within=None) -> bool:
        amb = range(self.n) if within is None else within
        return all(self.conj(g, x) in N for g in amb for x in N)


def kernel_set(images, identity) -> frozenset:
    return frozenset(int(x) for x, y in enumerate(images) if int(y) == identity)


def witt_dimension(d: int, k: int) -> int:
    """Dimension of the degree-k part of the free Lie algebra on d generators (Witt's formula)."""

    def mobius(n):
        res, m, p = 1, n, 2
        while p * p <= m:
            if m % p == 0:
                m //= p
                if m % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if m > 1 else res

    return sum(mobius(k // t) * d**t for t in range(1, k + 1) if k % t == 0) // k


def all_pairs(xs):
    return list(product(xs, repeat=2))
