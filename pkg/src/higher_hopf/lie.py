"""Finite-dimensional nilpotent Lie algebras over F_p.

Vectors are integer rows mod p.  A :class:`LieAlgebra` is an ambient with a
structure-constant tensor ``c[i, j] = [e_i, e_j]``; every carrier used by the
cube machinery is a :class:`LieSub` (a subspace of some ambient, stored as a
reduced row-echelon basis).  Kernel pairs and fiber products live in cached
direct-sum ambients, mirroring pair-encoding in :mod:`higher_hopf.groups`.

A :class:`LieMorphism` carries a ``dim(codomain ambient) x dim(domain ambient)``
matrix acting on column vectors; only its restriction to the domain subspace
is meaningful.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np

from .errors import (
    JacobiViolation,
    MismatchedParent,
    NotAHomomorphism,
    NotAnIdeal,
    NotAntisymmetric,
    NotNilpotent,
    ParseError,
    UnsupportedClass,
)

INT = np.int64


# ---------------------------------------------------------------------------
# linear algebra mod p


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form mod ``p`` with zero rows dropped."""
    A = np.array(A, dtype=INT, ndmin=2) % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, col])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        A[r] = (A[r] * pow(int(A[r, col]), -1, p)) % p
        others = np.nonzero(A[:, col])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, col], A[r])) % p
        pivots.append(col)
        r += 1
    return A[:r], pivots


def rank(A, p: int) -> int:
    return len(rref(A, p)[1])


def left_nullspace(A, p: int) -> np.ndarray:
    """Basis (rows) of ``{u : u A = 0}``."""
    A = np.array(A, dtype=INT, ndmin=2) % p
    m = A.shape[0]
    if m == 0:
        return np.zeros((0, 0), dtype=INT)
    aug = np.concatenate([A, np.eye(m, dtype=INT)], axis=1)
    R, piv = rref(aug, p)
    ncol = A.shape[1]
    zero_rows = [i for i, c in enumerate(piv) if c >= ncol]
    # rows of R whose A-part vanished
    out = R[zero_rows, ncol:] if zero_rows else np.zeros((0, m), dtype=INT)
    return rref(out, p)[0] if out.shape[0] else out


def solve_rows(B, V, p: int) -> np.ndarray:
    """Coordinates ``X`` with ``X B = V`` (rows of ``B`` independent, ``V`` in their span)."""
    B = np.array(B, dtype=INT, ndmin=2) % p
    V = np.array(V, dtype=INT, ndmin=2) % p
    k = B.shape[0]
    if k == 0:
        return np.zeros((V.shape[0], 0), dtype=INT)
    aug = np.concatenate([B.T, V.T], axis=1)
    R, piv = rref(aug, p)
    if any(c >= k for c in piv):
        raise ValueError("vector outside the span")
    return R[:k, k:].T.copy()


def _zeros(d: int) -> np.ndarray:
    return np.zeros((0, d), dtype=INT)


# ---------------------------------------------------------------------------
# algebras


class LieAlgebra:
    """Structure constants ``c[i, j, :] = [e_i, e_j]`` over ``F_p``."""

    def __init__(self, p: int, c, name: str = ""):
        self.p = int(p)
        self.c = np.asarray(c, dtype=INT) % self.p
        self.dim = int(self.c.shape[0]) if self.c.ndim == 3 else 0
        if self.c.ndim != 3:
            self.c = np.zeros((0, 0, 0), dtype=INT)
        self.name = name

    @cached_property
    def _cf(self) -> np.ndarray:
        # float copy for BLAS; every partial sum stays far below 2**53
        d = self.dim
        return self.c.reshape(d, d * d).astype(np.float64)

    def bracket(self, x, y) -> np.ndarray:
        """Bracket of row vectors (broadcast over leading axes)."""
        x = np.asarray(x, dtype=INT) % self.p
        y = np.asarray(y, dtype=INT) % self.p
        d = self.dim
        if d == 0:
            return np.zeros(np.broadcast_shapes(x.shape, y.shape), dtype=INT)
        xc = np.rint(x.astype(np.float64) @ self._cf).astype(INT) % self.p
        xc = xc.reshape(*x.shape[:-1], d, d)
        return np.squeeze(y[..., None, :] @ xc, axis=-2) % self.p

    def bracket_all(self, X, Y) -> np.ndarray:
        """All brackets ``[x, y]`` for rows x of X and y of Y, as a stacked matrix."""
        X = np.array(X, dtype=INT, ndmin=2)
        Y = np.array(Y, dtype=INT, ndmin=2)
        if X.shape[0] == 0 or Y.shape[0] == 0 or self.dim == 0:
            return np.zeros((X.shape[0] * Y.shape[0], self.dim), dtype=INT)
        d, p = self.dim, self.p
        xc = np.rint((X % p).astype(np.float64) @ self._cf) % p  # (a, d*d)
        out = (Y % p).astype(np.float64) @ xc.reshape(-1, d, d)  # (a, b, d)
        return (np.rint(out).astype(INT) % p).reshape(-1, d)

    @property
    def order(self) -> int:
        return self.p**self.dim

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<LieAlgebra{label} p={self.p} dim={self.dim}>"


class LieSub:
    """Subspace of an ambient algebra with a reduced row-echelon basis."""

    def __init__(self, ambient: LieAlgebra, basis=None, parent: "LieSub | None" = None):
        self.ambient = ambient
        d = ambient.dim
        if basis is None:
            basis = np.eye(d, dtype=INT)
        B = np.array(basis, dtype=INT, ndmin=2)
        B = B.reshape(-1, d) if d else np.zeros((0, 0), dtype=INT)
        self.basis, self.pivots = rref(B, ambient.p) if B.shape[0] else (_zeros(d), [])
        self.parent = parent

    @property
    def p(self) -> int:
        return self.ambient.p

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def order(self) -> int:
        return self.p**self.dim

    @property
    def gens(self) -> np.ndarray:
        return self.basis

    def contains(self, V) -> bool:
        V = np.array(V, dtype=INT, ndmin=2) % self.p
        if V.shape[0] == 0:
            return True
        return rank(np.concatenate([self.basis, V]), self.p) == self.dim

    def is_subalgebra(self) -> bool:
        return self.contains(self.ambient.bracket_all(self.basis, self.basis))

    def is_ideal_in(self, P: "LieSub") -> bool:
        return self.contains(self.ambient.bracket_all(self.basis, P.basis))

    def equals(self, other: "LieSub") -> bool:
        return (
            self.ambient is other.ambient
            and self.dim == other.dim
            and np.array_equal(self.basis, other.basis)
        )

    def __repr__(self):
        return f"<LieSub dim={self.dim} of {self.ambient!r}>"


def whole(L: LieAlgebra | LieSub) -> LieSub:
    return L if isinstance(L, LieSub) else LieSub(L)


def zero_sub(L: LieAlgebra | LieSub) -> LieSub:
    amb = L.ambient if isinstance(L, LieSub) else L
    return LieSub(amb, _zeros(amb.dim), parent=L if isinstance(L, LieSub) else None)


def _same(*subs: LieSub):
    amb = subs[0].ambient
    for s in subs[1:]:
        if s.ambient is not amb:
            raise MismatchedParent("subspaces of different ambients")


def span(P: LieSub, V) -> LieSub:
    return LieSub(P.ambient, V, parent=P)


def sum_(S: LieSub, T: LieSub) -> LieSub:
    _same(S, T)
    return LieSub(S.ambient, np.concatenate([S.basis, T.basis]), parent=S.parent)


def intersect(S: LieSub, T: LieSub) -> LieSub:
    _same(S, T)
    p = S.p
    if S.dim == 0 or T.dim == 0:
        return LieSub(S.ambient, _zeros(S.ambient.dim), parent=S.parent)
    N = left_nullspace(np.concatenate([S.basis, (-T.basis) % p]), p)
    if N.shape[0] == 0:
        return LieSub(S.ambient, _zeros(S.ambient.dim), parent=S.parent)
    return LieSub(S.ambient, (N[:, : S.dim] @ S.basis) % p, parent=S.parent)


def ideal_closure(P: LieSub, V) -> LieSub:
    """Smallest ideal of ``P`` containing the rows ``V``."""
    amb = P.ambient
    cur = LieSub(amb, V, parent=P)
    while True:
        new = amb.bracket_all(cur.basis, P.basis)
        if cur.contains(new):
            return cur
        cur = LieSub(amb, np.concatenate([cur.basis, new]), parent=P)


def subalgebra_closure(P: LieSub, V) -> LieSub:
    amb = P.ambient
    cur = LieSub(amb, V, parent=P)
    while True:
        new = amb.bracket_all(cur.basis, cur.basis)
        if cur.contains(new):
            return cur
        cur = LieSub(amb, np.concatenate([cur.basis, new]), parent=P)


def bracket_ideal(P: LieSub, S: LieSub, T: LieSub) -> LieSub:
    """Ideal of ``P`` generated by all ``[s, t]``."""
    _same(P, S, T)
    if not (P.contains(S.basis) and P.contains(T.basis)):
        raise MismatchedParent("arguments are not contained in the carrier")
    return ideal_closure(P, P.ambient.bracket_all(S.basis, T.basis))


def lie_series(L: LieSub | LieAlgebra, kind: str, k: int) -> LieSub:
    """``Z_k`` (``descending_central``) or ``D_k`` (``derived``) as ideals."""
    P = whole(L)
    if k < 1:
        raise ValueError("series index must be >= 1")
    cur = bracket_ideal(P, P, P)
    for _ in range(k - 1):
        if kind == "descending_central":
            cur = bracket_ideal(P, cur, P)
        elif kind == "derived":
            cur = bracket_ideal(P, cur, cur)
        else:
            raise ValueError(f"unknown series {kind!r}")
    return cur


def iterated_derived(P: LieSub, *xs: LieSub) -> LieSub:
    level = list(xs)
    if len(level) < 2 or len(level) & (len(level) - 1):
        raise ValueError("iterated_derived needs 2^k arguments")
    while len(level) > 1:
        level = [bracket_ideal(P, level[i], level[i + 1]) for i in range(0, len(level), 2)]
    return level[0]


def left_normed(P: LieSub, *xs: LieSub) -> LieSub:
    acc = bracket_ideal(P, xs[0], xs[1])
    for X in xs[2:]:
        acc = bracket_ideal(P, acc, X)
    return acc


def nilpotency_class(L: LieSub | LieAlgebra) -> int:
    P = whole(L)
    if P.dim == 0:
        return 0
    cur, k = bracket_ideal(P, P, P), 1
    while cur.dim:
        nxt = bracket_ideal(P, cur, P)
        if nxt.dim == cur.dim:
            raise NotNilpotent("lower central series stabilises above zero", dim=cur.dim)
        cur, k = nxt, k + 1
    return k


@dataclass(frozen=True)
class LieReport:
    dim: int
    p: int
    nilpotency_class: int


def validate_lie(L: LieAlgebra) -> LieReport:
    """Check antisymmetry, Jacobi and nilpotency; returns the class."""
    c, p, d = L.c, L.p, L.dim
    if c.shape != (d, d, d):
        raise ParseError("structure tensor has the wrong shape")
    if d:
        diag = np.nonzero(c[np.arange(d), np.arange(d)].any(axis=1))[0]
        if diag.size:
            i = int(diag[0])
            raise NotAntisymmetric(f"[e{i}, e{i}] != 0", pair=[i, i])
        bad = np.argwhere(((c + c.transpose(1, 0, 2)) % p).any(axis=2))
        if bad.size:
            i, j = bad[0].tolist()
            raise NotAntisymmetric(f"[e{i}, e{j}] != -[e{j}, e{i}]", pair=[i, j])
        # t[i,j,k] = [[e_i, e_j], e_k]
        t = np.einsum("ijl,lkm->ijkm", c, c) % p
        jac = (t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)) % p
        bad = np.argwhere(jac.any(axis=3))
        if bad.size:
            i, j, k = bad[0].tolist()
            raise JacobiViolation(f"Jacobi fails on (e{i}, e{j}, e{k})", triple=[i, j, k])
    return LieReport(d, p, nilpotency_class(L))


def make_lie(p: int, dim: int, brackets: dict | None = None, name: str = "") -> LieAlgebra:
    """Build from ``{(i, j): vector}`` (antisymmetry filled in) and validate."""
    c = np.zeros((dim, dim, dim), dtype=INT)
    for (i, j), v in (brackets or {}).items():
        v = np.asarray(v, dtype=INT) % p
        c[i, j] = v
        c[j, i] = (-v) % p
    L = LieAlgebra(p, c, name=name)
    validate_lie(L)
    return L


def abelian_lie(p: int, dim: int) -> LieAlgebra:
    return LieAlgebra(p, np.zeros((dim, dim, dim), dtype=INT), name=f"ab{dim}")


def heisenberg_lie(p: int) -> LieAlgebra:
    return make_lie(p, 3, {(0, 1): [0, 0, 1]}, name="heis3")


# ---------------------------------------------------------------------------
# free nilpotent algebras


def hall_basis(d: int, c: int) -> list[tuple]:
    """Hall monomials of degree <= c (c <= 3), degree-lexicographic, left factor smaller.

    Degree 1: ``i``; degree 2: ``(i, j)`` with ``i < j``; degree 3:
    ``((i, j), k)`` with ``i < j`` and ``k >= i``.
    """
    if c > 3:
        raise UnsupportedClass(f"class {c} is not supported (max 3)", c=c)
    out: list[tuple] = [(i,) for i in range(d)]
    if c >= 2:
        out += [(i, j) for i, j in combinations(range(d), 2)]
    if c >= 3:
        out += [((i, j), k) for i, j in combinations(range(d), 2) for k in range(i, d)]
    return out


def _as_poly(mono, p: int) -> dict:
    """Image of a Hall monomial in the free associative algebra (word -> coeff)."""
    if len(mono) == 1 and isinstance(mono[0], int):
        return {(mono[0],): 1}
    left, right = mono
    a = _as_poly(left if isinstance(left, tuple) else (left,), p)
    b = _as_poly((right,) if isinstance(right, int) else right, p)
    return _poly_bracket(a, b, p, 99)


def _poly_bracket(a: dict, b: dict, p: int, maxdeg: int) -> dict:
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            if len(wa) + len(wb) > maxdeg:
                continue
            for w, s in ((wa + wb, 1), (wb + wa, -1)):
                out[w] = (out.get(w, 0) + s * ca * cb) % p
    return {w: v for w, v in out.items() if v}


def free_nilpotent(d: int, c: int, p: int) -> tuple[LieAlgebra, list[int]]:
    """Free nilpotent Lie algebra of class <= c on ``d`` generators (generators = first d basis vectors)."""
    if d < 1:
        raise ValueError("need at least one generator")
    if c < 1:
        raise UnsupportedClass("class must be >= 1", c=c)
    basis = hall_basis(d, c)
    polys = [_as_poly(m, p) for m in basis]
    words = sorted({w for poly in polys for w in poly}, key=lambda w: (len(w), w))
    widx = {w: k for k, w in enumerate(words)}
    M = np.zeros((len(basis), len(words)), dtype=INT)
    for r, poly in enumerate(polys):
        for w, v in poly.items():
            M[r, widx[w]] = v
    if rank(M, p) != len(basis):
        raise ArithmeticError("Hall monomials are dependent in the tensor algebra")
    n = len(basis)
    cst = np.zeros((n, n, n), dtype=INT)
    for a in range(n):
        for b in range(a + 1, n):
            br = _poly_bracket(polys[a], polys[b], p, c)
            if not br:
                continue
            v = np.zeros(len(words), dtype=INT)
            for w, coef in br.items():
                v[widx[w]] = coef
            coords = solve_rows(M, v, p)[0]
            cst[a, b] = coords
            cst[b, a] = (-coords) % p
    return LieAlgebra(p, cst, name=f"free_nil(d={d},c={c})"), list(range(d))


# ---------------------------------------------------------------------------
# morphisms


class LieMorphism:
    """Linear map ``x -> M x`` between subspaces of two ambients."""

    def __init__(self, domain: LieSub, codomain: LieSub, matrix):
        self.domain = whole(domain)
        self.codomain = whole(codomain)
        self.matrix = np.array(matrix, dtype=INT).reshape(
            self.codomain.ambient.dim, self.domain.ambient.dim
        ) % self.domain.p

    def apply(self, V) -> np.ndarray:
        V = np.array(V, dtype=INT, ndmin=2)
        return (V @ self.matrix.T) % self.domain.p

    __call__ = apply

    def check(self):
        dom, cod = self.domain, self.codomain
        amb = dom.ambient
        imgs = self.apply(dom.basis)
        if not cod.contains(imgs):
            raise NotAHomomorphism("image leaves the codomain")
        lhs = self.apply(amb.bracket_all(dom.basis, dom.basis))
        rhs = cod.ambient.bracket_all(imgs, imgs)
        if not np.array_equal(lhs % dom.p, rhs % dom.p):
            raise NotAHomomorphism("bracket is not preserved")
        return self

    def compose_after(self, other: "LieMorphism") -> "LieMorphism":
        return LieMorphism(other.domain, self.codomain, (self.matrix @ other.matrix) % self.domain.p)

    def restrict(self, domain: LieSub, codomain: LieSub | None = None) -> "LieMorphism":
        return LieMorphism(domain, codomain or self.codomain, self.matrix)

    def equals(self, other: "LieMorphism") -> bool:
        return np.array_equal(self.apply(self.domain.basis), other.apply(self.domain.basis))

    def __repr__(self):
        return f"<LieMorphism dim {self.domain.dim} -> {self.codomain.dim}>"


def kernel(f: LieMorphism) -> LieSub:
    S = f.domain
    p = S.p
    if S.dim == 0:
        return zero_sub(S)
    N = left_nullspace(f.apply(S.basis), p)
    if N.shape[0] == 0:
        return LieSub(S.ambient, _zeros(S.ambient.dim), parent=S)
    return LieSub(S.ambient, (N @ S.basis) % p, parent=S)


def image(f: LieMorphism, S: LieSub | None = None) -> LieSub:
    src = f.domain if S is None else S
    return LieSub(f.codomain.ambient, f.apply(src.basis), parent=f.codomain)


def preimage(f: LieMorphism, T: LieSub) -> LieSub:
    S = f.domain
    p = S.p
    if T.dim == T.ambient.dim:
        return S
    # u S with (u S M^T) in T: project onto a complement of T
    comp = _complement_functionals(T)
    N = left_nullspace((f.apply(S.basis) @ comp.T) % p, p)
    if N.shape[0] == 0:
        return zero_sub(S)
    return LieSub(S.ambient, (N @ S.basis) % p, parent=S)


def _complement_functionals(T: LieSub) -> np.ndarray:
    """Rows ``phi`` with ``phi . t = 0`` exactly for ``t`` in T."""
    d = T.ambient.dim
    if T.dim == 0:
        return np.eye(d, dtype=INT)
    return left_nullspace(T.basis.T, T.p)


def is_surjective(f: LieMorphism) -> bool:
    return image(f).dim == f.codomain.dim


def identity_morphism(S: LieSub) -> LieMorphism:
    return LieMorphism(S, S, np.eye(S.ambient.dim, dtype=INT))


def _full_basis(rows: np.ndarray, d: int, p: int) -> np.ndarray:
    """Extend independent rows to a basis of ``F_p^d``."""
    cur = rows.copy()
    for i in range(d):
        if cur.shape[0] == d:
            break
        e = np.zeros((1, d), dtype=INT)
        e[0, i] = 1
        cand = np.concatenate([cur, e])
        if rank(cand, p) == cand.shape[0]:
            cur = cand
    return cur


def _inverse(E: np.ndarray, p: int) -> np.ndarray:
    d = E.shape[0]
    R, piv = rref(np.concatenate([E, np.eye(d, dtype=INT)], axis=1), p)
    if piv[:d] != list(range(d)):
        raise ArithmeticError("singular matrix")
    return R[:, d:]


def quotient(S: LieSub, I: LieSub, check: bool = True) -> tuple[LieSub, LieMorphism]:
    """``S / I`` as a fresh ambient with its projection."""
    _same(S, I)
    p = S.p
    if check and not I.is_ideal_in(S):
        raise NotAnIdeal("quotient by a subspace that is not an ideal")
    d = S.ambient.dim
    # basis of S = I-basis followed by complement W
    W = _zeros(d)
    cur = I.basis
    for row in S.basis:
        cand = np.concatenate([cur, row[None]])
        if rank(cand, p) == cand.shape[0]:
            cur = cand
            W = np.concatenate([W, row[None]])
    q = W.shape[0]
    E = _full_basis(cur, d, p)
    Einv = _inverse(E, p)  # x coords = x @ Einv
    ni = I.dim
    proj_rows = Einv[:, ni : ni + q]  # d x q
    cst = np.zeros((q, q, q), dtype=INT)
    if q:
        br = S.ambient.bracket_all(W, W)  # (q*q, d)
        cst = ((br @ proj_rows) % p).reshape(q, q, q)
    Q = LieAlgebra(p, cst)
    proj = LieMorphism(S, whole(Q), proj_rows.T)
    return whole(Q), proj


def factor_through(proj: LieMorphism, f: LieMorphism) -> LieMorphism:
    """The map ``Q -> A`` induced by ``f`` along a quotient ``proj: S -> Q``."""
    S, Q = proj.domain, proj.codomain
    p = S.p
    # lift each basis vector of Q to S
    imgs = proj.apply(S.basis)
    coords = solve_rows(imgs, np.eye(Q.ambient.dim, dtype=INT), p)
    lifts = (coords @ S.basis) % p
    return LieMorphism(Q, f.codomain, f.apply(lifts).T)


def as_ambient(S: LieSub) -> tuple[LieSub, LieMorphism]:
    """Relabel ``S`` as a fresh ambient (dimension ``S.dim``) with the iso ``S -> new``."""
    return quotient(S, zero_sub(S))


_SUMS: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    key = (id(L1), id(L2))
    D = _SUMS.get(key)
    if D is None:
        if L1.p != L2.p:
            raise MismatchedParent("different characteristics")
        a, b = L1.dim, L2.dim
        c = np.zeros((a + b, a + b, a + b), dtype=INT)
        c[:a, :a, :a] = L1.c
        c[a:, a:, a:] = L2.c
        D = LieAlgebra(L1.p, c)
        D._summands = (L1, L2)  # keep summands alive for the cache key
        _SUMS[key] = D
    return D


def sum_projections(P: LieSub, left: LieSub, right: LieSub):
    a, b = left.ambient.dim, right.ambient.dim
    m1 = np.concatenate([np.eye(a, dtype=INT), np.zeros((a, b), dtype=INT)], axis=1)
    m2 = np.concatenate([np.zeros((b, a), dtype=INT), np.eye(b, dtype=INT)], axis=1)
    return LieMorphism(P, left, m1), LieMorphism(P, right, m2)


def fiber_product(f: LieMorphism, g: LieMorphism):
    """Pullback of ``f: B -> A`` and ``g: C -> A`` inside ``B (+) C``."""
    B, C = f.domain, g.domain
    p = B.p
    D = direct_sum(B.ambient, C.ambient)
    a, b = B.ambient.dim, C.ambient.dim
    stack = np.concatenate([f.apply(B.basis), (-g.apply(C.basis)) % p]) if (B.dim + C.dim) else _zeros(1)
    N = left_nullspace(stack, p) if stack.shape[0] else np.zeros((0, 0), dtype=INT)
    rows = []
    for u in N:
        x = (u[: B.dim] @ B.basis) % p if B.dim else np.zeros(a, dtype=INT)
        y = (u[B.dim :] @ C.basis) % p if C.dim else np.zeros(b, dtype=INT)
        rows.append(np.concatenate([x, y]))
    P = LieSub(D, np.array(rows, dtype=INT).reshape(-1, a + b))
    p1, p2 = sum_projections(P, B, C)
    return P, p1, p2


def kernel_pair(f: LieMorphism, cap: int | None = None):
    return fiber_product(f, f)


def pair_into(P: LieSub, u: LieMorphism, v: LieMorphism, right: LieSub) -> LieMorphism:
    return LieMorphism(u.domain, P, np.concatenate([u.matrix, v.matrix], axis=0))


def direct_product(S: LieSub, T: LieSub) -> LieSub:
    D = direct_sum(S.ambient, T.ambient)
    a, b = S.ambient.dim, T.ambient.dim
    rows = [np.concatenate([r, np.zeros(b, dtype=INT)]) for r in S.basis]
    rows += [np.concatenate([np.zeros(a, dtype=INT), r]) for r in T.basis]
    return LieSub(D, np.array(rows, dtype=INT).reshape(-1, a + b))


def diagonal(S: LieSub) -> LieMorphism:
    SS = direct_product(S, S)
    d = S.ambient.dim
    return LieMorphism(S, SS, np.concatenate([np.eye(d, dtype=INT)] * 2, axis=0))


def extend_lie_morphism(domain: LieSub, gen_images, codomain: LieSub, gens=None) -> LieMorphism:
    """Morphism determined by images of generating vectors; checked."""
    p = domain.p
    gens = np.array(domain.basis if gens is None else gens, dtype=INT, ndmin=2)
    imgs = np.array(gen_images, dtype=INT, ndmin=2)
    amb, camb = domain.ambient, codomain.ambient
    d, e = amb.dim, camb.dim
    # row-reduce [x | f(x)] while closing under brackets with the generators;
    # a row whose x-part vanishes but whose image does not is a broken relation
    W = np.zeros((0, d + e), dtype=INT)
    front = np.concatenate([gens % p, imgs % p], axis=1)
    while front.shape[0]:
        R, piv = rref(np.concatenate([W, front]), p)
        if any(c >= d for c in piv):
            raise NotAHomomorphism("assignment is not well defined")
        if R.shape[0] == W.shape[0]:
            break
        W = R
        front = np.concatenate(
            [amb.bracket_all(gens, W[:, :d]), camb.bracket_all(imgs, W[:, d:])], axis=1
        )
    if W.shape[0] != domain.dim:
        raise NotAHomomorphism("generators do not span the domain")
    E = _full_basis(W[:, :d], d, p)
    Einv = _inverse(E, p)
    target = np.zeros((d, e), dtype=INT)
    target[: W.shape[0]] = W[:, d:]
    M = (Einv @ target) % p  # x -> x Einv target
    return LieMorphism(domain, codomain, M.T).check()


# ---------------------------------------------------------------------------
# JSON


def lie_to_json(L: LieAlgebra | LieSub) -> dict:
    if isinstance(L, LieSub):
        if L.dim != L.ambient.dim:
            L = as_ambient(L)[0]
        L = L.ambient
    out = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            if L.c[i, j].any():
                out.append({"i": i, "j": j, "value": L.c[i, j].tolist()})
    return {"p": L.p, "dim": L.dim, "brackets": out}


def lie_from_json(obj: dict) -> LieAlgebra:
    try:
        p, d = int(obj["p"]), int(obj["dim"])
        c = np.zeros((d, d, d), dtype=INT)
        for br in obj.get("brackets", []):
            i, j, v = int(br["i"]), int(br["j"]), np.asarray(br["value"], dtype=INT)
            if v.shape != (d,):
                raise ParseError("bracket value has the wrong length")
            c[i, j] = v % p
            if i != j:
                c[j, i] = (-v) % p
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ParseError(f"malformed Lie JSON: {exc}") from exc
    L = LieAlgebra(p, c)
    validate_lie(L)
    return L
