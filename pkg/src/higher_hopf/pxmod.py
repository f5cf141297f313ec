"""Finite precrossed modules ``(C, G, d)`` and their Peiffer calculus.

A :class:`PrecrossedModule` holds two root groups with a vectorized left
action ``act(g, c)`` and boundary ``d(c)``.  Table-based modules come from
:func:`make_pxmod`; products of modules reuse the pair encoding of
:mod:`higher_hopf.groups`, so that kernel pairs and fiber products are computed
degreewise without relabelling.  Subobjects are :class:`PXSub` pairs ``(M, S)``.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import groups as gp
from .errors import (
    IndexOutOfRange,
    MismatchedParent,
    NotAHomomorphism,
    NotAnAction,
    NotASubmodule,
    NotEquivariant,
    NotNormal,
    ParseError,
)

INT = np.int64


class PrecrossedModule:
    """Root precrossed module."""

    C: gp.RootGroup
    G: gp.RootGroup

    def act(self, g, c):
        raise NotImplementedError

    def boundary(self, c):
        raise NotImplementedError

    @property
    def order(self) -> tuple[int, int]:
        return (self.C.size, self.G.size)


class TablePXMod(PrecrossedModule):
    def __init__(self, C: gp.FiniteGroup, G: gp.FiniteGroup, action, boundary, name=""):
        self.C, self.G = C, G
        self.action = np.asarray(action, dtype=INT)
        self.bd = np.asarray(boundary, dtype=INT)
        self.name = name

    def act(self, g, c):
        return self.action[np.asarray(g, dtype=INT), np.asarray(c, dtype=INT)]

    def boundary(self, c):
        return self.bd[np.asarray(c, dtype=INT)]

    def __repr__(self):
        return f"<PXMod |C|={self.C.size} |G|={self.G.size}{' ' + self.name if self.name else ''}>"


class ProductPXMod(PrecrossedModule):
    """``P1 x P2`` with componentwise action, pair-encoded in both degrees."""

    def __init__(self, P1: PrecrossedModule, P2: PrecrossedModule):
        self.P1, self.P2 = P1, P2
        self.C = gp.product_root(P1.C, P2.C)
        self.G = gp.product_root(P1.G, P2.G)
        self._mc, self._mg = P2.C.size, P2.G.size

    def act(self, g, c):
        g, c = np.asarray(g, dtype=INT), np.asarray(c, dtype=INT)
        left = self.P1.act(g // self._mg, c // self._mc)
        right = self.P2.act(g % self._mg, c % self._mc)
        return left * self._mc + right

    def boundary(self, c):
        c = np.asarray(c, dtype=INT)
        return self.P1.boundary(c // self._mc) * self._mg + self.P2.boundary(c % self._mc)

    def __repr__(self):
        return f"<ProductPXMod {self.P1!r} x {self.P2!r}>"


_PRODUCTS: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()


def product_module(P1: PrecrossedModule, P2: PrecrossedModule) -> ProductPXMod:
    key = (id(P1), id(P2))
    P = _PRODUCTS.get(key)
    if P is None:
        P = ProductPXMod(P1, P2)
        _PRODUCTS[key] = P
    return P


# ---------------------------------------------------------------------------
# construction and validation


def make_pxmod(C, G, action, boundary, name: str = "") -> TablePXMod:
    """Validate the precrossed-module axioms on tabulated data.

    Raises :class:`NotAnAction` or :class:`NotEquivariant` naming a violating pair.
    """
    if not isinstance(C, gp.FiniteGroup):
        C = gp.make_group(C)
    if not isinstance(G, gp.FiniteGroup):
        G = gp.make_group(G)
    action = np.asarray(action, dtype=INT)
    boundary = np.asarray(boundary, dtype=INT)
    if action.shape != (G.size, C.size) or boundary.shape != (C.size,):
        raise ParseError("action/boundary shapes do not match the groups")
    if action.min(initial=0) < 0 or action.max(initial=0) >= C.size:
        raise IndexOutOfRange("action entry out of range")
    if boundary.min(initial=0) < 0 or boundary.max(initial=0) >= G.size:
        raise IndexOutOfRange("boundary entry out of range")
    ce, ge = C.elements, G.elements
    if not np.array_equal(action[G.identity], ce):
        c = int(np.argmax(action[G.identity] != ce))
        raise NotAnAction(f"identity moves {c}", pair=[G.identity, c])
    for g in ge.tolist():
        row = action[g]
        # automorphism: act(g, c c') = act(g, c) act(g, c')
        lhs = row[C.table]
        rhs = C.table[row[:, None], row[None, :]]
        if not np.array_equal(lhs, rhs):
            c1, c2 = np.argwhere(lhs != rhs)[0].tolist()
            raise NotAnAction(f"g={g} does not preserve the product of {c1}, {c2}", pair=[g, c1])
        if np.unique(row).size != C.size:
            raise NotAnAction(f"g={g} does not act bijectively", pair=[g, int(row[0])])
        # compatibility: act(g h, c) = act(g, act(h, c))
        for h in ge.tolist():
            if not np.array_equal(action[G.table[g, h]], row[action[h]]):
                c = int(np.argmax(action[G.table[g, h]] != row[action[h]]))
                raise NotAnAction(f"(g h).c != g.(h.c) at g={g}, h={h}, c={c}", pair=[g, h])
    if not np.array_equal(boundary[C.table], G.table[boundary[:, None], boundary[None, :]]):
        c1, c2 = np.argwhere(boundary[C.table] != G.table[boundary[:, None], boundary[None, :]])[0]
        raise NotAHomomorphism("boundary is not a homomorphism", pair=[int(c1), int(c2)])
    # equivariance: d(g.c) = g d(c) g^-1
    lhs = boundary[action]
    rhs = G.table[G.table[ge[:, None], boundary[None, :]], G.inverses[ge][:, None]]
    if not np.array_equal(lhs, rhs):
        g, c = np.argwhere(lhs != rhs)[0].tolist()
        raise NotEquivariant(f"d(g.c) != g d(c) g^-1 at g={g}, c={c}", pair=[g, c])
    return TablePXMod(C, G, action, boundary, name=name)


@dataclass(frozen=True)
class PXReport:
    order_C: int
    order_G: int
    is_crossed: bool


def validate_pxmod(P: TablePXMod) -> PXReport:
    make_pxmod(P.C, P.G, P.action, P.bd)
    return PXReport(P.C.size, P.G.size, is_crossed(P))


# ---------------------------------------------------------------------------
# subobjects and morphisms


class PXSub:
    """Precrossed submodule ``(M, S)`` of a root module."""

    def __init__(self, module: PrecrossedModule, M: gp.Group, S: gp.Group):
        self.module = module
        self.M = M
        self.S = S

    @property
    def ambient(self):
        return self.module

    @property
    def order(self) -> int:
        return self.M.order * self.S.order

    @property
    def orders(self) -> tuple[int, int]:
        return (self.M.order, self.S.order)

    def check(self) -> "PXSub":
        P = self.module
        if not self.S.contains_all(P.boundary(self.M.elements)):
            raise NotASubmodule("boundary of M leaves S")
        acts = P.act(np.repeat(self.S.gens, len(self.M.gens)), np.tile(self.M.gens, len(self.S.gens)))
        if not self.M.contains_all(np.asarray(acts, dtype=INT)):
            raise NotASubmodule("S does not act on M")
        return self

    def is_normal_in(self, X: "PXSub") -> bool:
        P = self.module
        if not (gp.is_normal_in(self.M, X.M) and gp.is_normal_in(self.S, X.S)):
            return False
        xg, mg = np.asarray(X.S.gens, dtype=INT), np.asarray(self.M.gens, dtype=INT)
        if xg.size and mg.size and not self.M.contains_all(P.act(np.repeat(xg, mg.size), np.tile(mg, xg.size))):
            return False
        # s.c c^-1 in M for s in S, c in X.M
        se, ce = self.S.elements, X.M.elements
        moved = P.act(np.repeat(se, ce.size), np.tile(ce, se.size))
        return self.M.contains_all(P.C.mul(moved, P.C.inv(np.tile(ce, se.size))))

    def equals(self, other: "PXSub") -> bool:
        return gp.subgroups_equal(self.M, other.M) and gp.subgroups_equal(self.S, other.S)

    def __repr__(self):
        return f"<PXSub |M|={self.M.order} |S|={self.S.order}>"


def whole(P: PrecrossedModule | PXSub) -> PXSub:
    if isinstance(P, PXSub):
        return P
    return PXSub(P, gp.whole(P.C), gp.whole(P.G))


def trivial_sub(X: PXSub) -> PXSub:
    return PXSub(X.module, gp.trivial_subgroup(X.M), gp.trivial_subgroup(X.S))


class PXMorphism:
    """Pair of group maps ``(f1 on C, f0 on G)`` preserving action and boundary."""

    def __init__(self, domain: PXSub, codomain: PXSub, f1: gp.GroupMorphism, f0: gp.GroupMorphism):
        self.domain, self.codomain = domain, codomain
        self.f1, self.f0 = f1, f0

    def check(self) -> "PXMorphism":
        self.f1.check()
        self.f0.check()
        D, E = self.domain, self.codomain
        ce = D.M.elements
        if not np.array_equal(self.f0(D.module.boundary(ce)), E.module.boundary(self.f1(ce))):
            raise NotAHomomorphism("boundary square does not commute")
        ge = np.asarray(D.S.gens, dtype=INT)
        for g in ge.tolist():
            lhs = self.f1(D.module.act(np.full(ce.size, g, dtype=INT), ce))
            rhs = E.module.act(np.full(ce.size, int(self.f0(g)), dtype=INT), self.f1(ce))
            if not np.array_equal(lhs, rhs):
                raise NotAHomomorphism("action is not preserved", g=g)
        return self

    def compose_after(self, other: "PXMorphism") -> "PXMorphism":
        return PXMorphism(
            other.domain, self.codomain, self.f1.compose_after(other.f1), self.f0.compose_after(other.f0)
        )

    def restrict(self, domain: PXSub, codomain: PXSub | None = None) -> "PXMorphism":
        cod = codomain or self.codomain
        return PXMorphism(domain, cod, self.f1.restrict(domain.M, cod.M), self.f0.restrict(domain.S, cod.S))

    def equals(self, other: "PXMorphism") -> bool:
        return self.f1.equals(other.f1) and self.f0.equals(other.f0)

    def __repr__(self):
        return f"<PXMorphism {self.domain.orders} -> {self.codomain.orders}>"


def identity_morphism(X: PXSub) -> PXMorphism:
    return PXMorphism(X, X, gp.identity_morphism(X.M), gp.identity_morphism(X.S))


def _check_same(*xs: PXSub):
    for x in xs[1:]:
        if x.module is not xs[0].module:
            raise MismatchedParent("submodules of different precrossed modules")


def px_kernel(f: PXMorphism) -> PXSub:
    return PXSub(f.domain.module, gp.kernel(f.f1), gp.kernel(f.f0))


def px_image(f: PXMorphism, X: PXSub | None = None) -> PXSub:
    X = f.domain if X is None else X
    return PXSub(f.codomain.module, gp.image(f.f1, X.M), gp.image(f.f0, X.S))


def px_preimage(f: PXMorphism, Y: PXSub) -> PXSub:
    return PXSub(f.domain.module, gp.preimage(f.f1, Y.M), gp.preimage(f.f0, Y.S))


def px_intersect(X: PXSub, Y: PXSub) -> PXSub:
    _check_same(X, Y)
    return PXSub(X.module, gp.intersect(X.M, Y.M), gp.intersect(X.S, Y.S))


def px_join(X: PXSub, Y: PXSub) -> PXSub:
    _check_same(X, Y)
    return PXSub(X.module, gp.join(X.M, Y.M), gp.join(X.S, Y.S))


def px_is_surjective(f: PXMorphism) -> bool:
    return gp.is_surjective(f.f1) and gp.is_surjective(f.f0)


def is_sub(X: PXSub, Y: PXSub) -> bool:
    return gp.is_subgroup_of(X.M, Y.M) and gp.is_subgroup_of(X.S, Y.S)


def normal_submodules(X: PXSub | PrecrossedModule, one_per_M: bool = False) -> list[PXSub]:
    """Every normal precrossed submodule of a small module.

    ``(M, S)`` is normal exactly when M is a G-stable normal subgroup of C,
    S is normal in G, and ``d(M) <= S <= ker(G -> Aut(C/M))``.  With
    ``one_per_M`` only the smallest S is kept for each admissible M.
    """
    X = whole(X)
    P = X.module
    Ss = gp.all_normal_subgroups(X.S)
    ce, ge = X.M.elements, X.S.elements
    # membership of each element of X.S in each candidate S
    smask = np.stack([S.contains(ge) for S in Ss])
    out = []
    for M in gp.all_normal_subgroups(X.M):
        mg = np.asarray(M.gens, dtype=INT)
        if mg.size and not M.contains_all(P.act(np.repeat(ge, mg.size), np.tile(mg, ge.size))):
            continue
        moved = P.act(np.repeat(ge, ce.size), np.tile(ce, ge.size))
        fixes = M.contains(P.C.mul(moved, P.C.inv(np.tile(ce, ge.size)))).reshape(ge.size, ce.size).all(axis=1)
        low = np.isin(ge, P.boundary(M.elements))
        ok = ~(smask & ~fixes).any(axis=1) & ~(low & ~smask).any(axis=1)
        idx = np.flatnonzero(ok)
        for i in idx[:1] if one_per_M else idx:
            out.append(PXSub(P, M, Ss[i]))
    return out


# ---------------------------------------------------------------------------
# Peiffer calculus


def peiffer_element(P: PrecrossedModule, m, n):
    """``<m, n> = m n m^-1 (d(m) . n)^-1`` (vectorized)."""
    C = P.C
    m, n = np.asarray(m, dtype=INT), np.asarray(n, dtype=INT)
    left = C._mul(C._mul(m, n), C._inv(m))
    return C._mul(left, C._inv(P.act(P.boundary(m), n)))


def is_crossed(P: PrecrossedModule | PXSub) -> bool:
    """Peiffer condition ``d(c).c' = c c' c^-1`` for all c, c' (of the submodule when given one)."""
    X = whole(P)
    e = X.M.elements
    pe = peiffer_element(X.module, np.repeat(e, e.size), np.tile(e, e.size))
    return bool(np.all(pe == X.module.C.identity))


def peiffer_commutator(X: PXSub | PrecrossedModule, A: PXSub, B: PXSub) -> PXSub:
    """``(<A, B>, 1)``: normal subgroup of ``A.M B.M`` generated by Peiffer elements both ways."""
    X = whole(X)
    _check_same(X, A, B)
    if not (is_sub(A, X) and is_sub(B, X)):
        raise NotASubmodule("arguments are not submodules of the carrier")
    P = X.module
    a, b = A.M.elements, B.M.elements
    seeds = np.concatenate(
        [
            peiffer_element(P, np.repeat(a, b.size), np.tile(b, a.size)),
            peiffer_element(P, np.repeat(b, a.size), np.tile(a, b.size)),
        ]
    )
    seeds = np.unique(seeds)
    seeds = seeds[seeds != P.C.identity]
    MN = gp.join(A.M, B.M)
    elems, used = gp._normal_closure(P.C, MN.gens, seeds)
    return PXSub(P, gp.Subgroup(X.M, elements=elems, gens=used), gp.trivial_subgroup(X.S))


def _representatives(proj: gp.GroupMorphism) -> np.ndarray:
    """Lowest-code representative of each label of a coset projection."""
    labels = proj.image_array
    reps = np.zeros(proj.codomain.order, dtype=INT)
    reps[labels[::-1]] = proj.domain.elements[::-1]
    return reps


def px_quotient(X: PXSub, N: PXSub, check: bool = True) -> tuple[PXSub, PXMorphism]:
    """Degreewise quotient ``X / N`` as a fresh table module with its projection."""
    _check_same(X, N)
    if check and not N.is_normal_in(X):
        raise NotNormal("quotient by a non-normal precrossed submodule")
    P = X.module
    QC, qc = gp.quotient(X.M, N.M, check=False)
    QG, qg = gp.quotient(X.S, N.S, check=False)
    rc, rg = _representatives(qc), _representatives(qg)
    action = qc(P.act(rg[:, None], rc[None, :]))
    boundary = qg(P.boundary(rc))
    Q = TablePXMod(QC, QG, action, boundary)
    Qw = whole(Q)
    return Qw, PXMorphism(X, Qw, qc.restrict(X.M, Qw.M), qg.restrict(X.S, Qw.S))


def px_factor_through(proj: PXMorphism, f: PXMorphism) -> PXMorphism:
    return PXMorphism(
        proj.codomain,
        f.codomain,
        gp.factor_through(proj.f1, f.f1),
        gp.factor_through(proj.f0, f.f0),
    )


def materialize(X: PXSub) -> tuple[PXSub, PXMorphism]:
    """Relabel a submodule as a table module; returns it with the iso."""
    return px_quotient(X, trivial_sub(X), check=False)


def xmod_reflect(P: PrecrossedModule | PXSub) -> tuple[PXSub, PXMorphism]:
    """Quotient by ``<C, C>``: the crossed-module reflection with its projection."""
    X = whole(P)
    return px_quotient(X, peiffer_commutator(X, X, X), check=False)


# ---------------------------------------------------------------------------
# limits


def _pair_projections(R: PXSub, left: PXSub, right: PXSub):
    c1, c2 = gp.projections(R.M, left.M, right.M)
    g1, g2 = gp.projections(R.S, left.S, right.S)
    return PXMorphism(R, left, c1, g1), PXMorphism(R, right, c2, g2)


def fiber_product(f: PXMorphism, g: PXMorphism):
    """Degreewise pullback of ``f: B -> A`` and ``g: D -> A``."""
    RM, _, _ = gp.fiber_product(f.f1, g.f1)
    RS, _, _ = gp.fiber_product(f.f0, g.f0)
    mod = product_module(f.domain.module, g.domain.module)
    R = PXSub(mod, _reparent(RM, mod.C), _reparent(RS, mod.G))
    p1, p2 = _pair_projections(R, f.domain, g.domain)
    return R, p1, p2


def kernel_pair(f: PXMorphism, cap: int | None = None):
    RM, _, _ = gp.kernel_pair(f.f1, cap=cap)
    RS, _, _ = gp.kernel_pair(f.f0, cap=cap)
    mod = product_module(f.domain.module, f.domain.module)
    R = PXSub(mod, _reparent(RM, mod.C), _reparent(RS, mod.G))
    p1, p2 = _pair_projections(R, f.domain, f.domain)
    return R, p1, p2


def _reparent(S: gp.Subgroup, root) -> gp.Subgroup:
    if S.ambient is not root:
        raise MismatchedParent("unexpected product ambient")
    return S


def direct_product(X: PXSub, Y: PXSub) -> PXSub:
    mod = product_module(X.module, Y.module)
    return PXSub(mod, gp.direct_product(X.M, Y.M), gp.direct_product(X.S, Y.S))


def diagonal(X: PXSub) -> PXMorphism:
    XX = direct_product(X, X)
    return PXMorphism(X, XX, gp.diagonal(X.M), gp.diagonal(X.S))


def pair_into(R: PXSub, u: PXMorphism, v: PXMorphism, right: PXSub) -> PXMorphism:
    return PXMorphism(
        u.domain, R, gp.pair_into(R.M, u.f1, v.f1, right.M), gp.pair_into(R.S, u.f0, v.f0, right.S)
    )


def diagonal_sub(XX: PXSub, K: PXSub) -> PXSub:
    """``Delta_K`` inside the product module ``XX``."""
    m = K.module.C.size
    mg = K.module.G.size
    M = gp.Subgroup(XX.M, gens=[int(c) * m + int(c) for c in K.M.gens] or [XX.module.C.identity])
    S = gp.Subgroup(XX.S, gens=[int(g) * mg + int(g) for g in K.S.gens] or [XX.module.G.identity])
    return PXSub(XX.module, M, S)


# ---------------------------------------------------------------------------
# JSON and builders


def pxmod_to_json(P: PrecrossedModule | PXSub) -> dict:
    if isinstance(P, PXSub) or not isinstance(P, TablePXMod):
        P = materialize(whole(P))[0].module
    return {
        "C": gp.group_to_json(P.C),
        "G": gp.group_to_json(P.G),
        "action": P.action.tolist(),
        "boundary": P.bd.tolist(),
    }


def pxmod_from_json(obj: dict) -> TablePXMod:
    try:
        C = gp.group_from_json(obj["C"])
        G = gp.group_from_json(obj["G"])
        return make_pxmod(C, G, obj["action"], obj["boundary"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed precrossed module JSON: {exc}") from exc


def conjugation_module(C: gp.FiniteGroup) -> TablePXMod:
    """``(C, C, id)`` with conjugation action; always crossed."""
    e = C.elements
    action = C.table[C.table[e[:, None], e[None, :]], C.inverses[e][:, None]]
    return make_pxmod(C, C, action, e, name=f"conj({C.name})")


def trivial_action_module(C: gp.FiniteGroup, G: gp.FiniteGroup | None = None) -> TablePXMod:
    """``(C, G, 1)`` with trivial action and boundary."""
    G = G or gp.cyclic(1)
    action = np.tile(C.elements, (G.size, 1))
    return make_pxmod(C, G, action, np.full(C.size, G.identity), name=f"triv({C.name})")
