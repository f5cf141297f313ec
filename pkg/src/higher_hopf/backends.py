"""Uniform adaptor over the group, Lie and precrossed-module carriers.

Cubes and the Hopf engine only speak this interface: carriers are subobjects
of some ambient (``Group``, ``LieSub`` or ``PXSub``), arrows are the matching
morphism classes, and every lattice operation is delegated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import groups as gp
from . import lie
from . import pxmod as px
from .errors import UnsupportedReflectorBackend


class Backend:
    name: str

    # lattice
    def whole(self, X): ...
    def trivial(self, X): ...
    def size(self, X) -> int: ...
    def intersect(self, X, Y): ...
    def join(self, X, Y): ...
    def commutator(self, P, X, Y): ...
    def equal(self, X, Y) -> bool: ...
    def is_sub(self, X, Y) -> bool: ...
    def is_trivial(self, X) -> bool:
        return self.size(X) == 1

    # morphisms
    def identity(self, X): ...
    def compose(self, g, f):
        """``g ∘ f``."""
        return g.compose_after(f)

    def restrict(self, f, X, Y=None):
        return f.restrict(X, Y)

    def morphisms_equal(self, f, g) -> bool:
        return f.equals(g)

    def is_surjective(self, f) -> bool: ...
    def kernel(self, f): ...
    def image(self, f, X=None): ...
    def preimage(self, f, Y): ...

    # limits and quotients
    def kernel_pair(self, f, cap=None): ...
    def fiber_product(self, f, g): ...
    def pair_into(self, P, u, v, right): ...
    def quotient(self, X, N, check=True): ...
    def factor_through(self, proj, f): ...
    def direct_product(self, X, Y): ...
    def diagonal(self, X): ...

    def invariants(self, N, L) -> dict: ...

    def check_morphism(self, f):
        return f.check()


class GroupBackend(Backend):
    name = "group"

    def whole(self, X):
        return gp.whole(X)

    def trivial(self, X):
        return gp.trivial_subgroup(X)

    def size(self, X):
        return X.order

    def intersect(self, X, Y):
        return gp.intersect(X, Y)

    def join(self, X, Y):
        return gp.join(X, Y)

    def commutator(self, P, X, Y):
        return gp.commutator_subgroup(P, X, Y)

    def equal(self, X, Y):
        return gp.subgroups_equal(X, Y)

    def is_sub(self, X, Y):
        return gp.is_subgroup_of(X, Y)

    def is_trivial(self, X):
        return gp.is_trivial(X)

    def identity(self, X):
        return gp.identity_morphism(X)

    def is_surjective(self, f):
        return gp.is_surjective(f)

    def kernel(self, f):
        return gp.kernel(f)

    def image(self, f, X=None):
        return gp.image(f, X)

    def preimage(self, f, Y):
        return gp.preimage(f, Y)

    def kernel_pair(self, f, cap=None):
        return gp.kernel_pair(f, cap=cap)

    def fiber_product(self, f, g):
        return gp.fiber_product(f, g)

    def pair_into(self, P, u, v, right):
        return gp.pair_into(P, u, v, right)

    def quotient(self, X, N, check=True):
        return gp.quotient(X, N, check=check)

    def factor_through(self, proj, f):
        return gp.factor_through(proj, f)

    def direct_product(self, X, Y):
        return gp.direct_product(X, Y)

    def diagonal(self, X):
        return gp.diagonal(X)

    def invariants(self, N, L):
        return gp.quotient_invariants(N, L).to_json()


class LieBackend(Backend):
    name = "lie"

    def whole(self, X):
        return lie.whole(X)

    def trivial(self, X):
        return lie.zero_sub(X)

    def size(self, X):
        return X.order

    def intersect(self, X, Y):
        return lie.intersect(X, Y)

    def join(self, X, Y):
        return lie.sum_(X, Y)

    def commutator(self, P, X, Y):
        return lie.bracket_ideal(P, X, Y)

    def equal(self, X, Y):
        return X.equals(Y)

    def is_sub(self, X, Y):
        return X.ambient is Y.ambient and Y.contains(X.basis)

    def is_trivial(self, X):
        return X.dim == 0

    def identity(self, X):
        return lie.identity_morphism(X)

    def is_surjective(self, f):
        return lie.is_surjective(f)

    def kernel(self, f):
        return lie.kernel(f)

    def image(self, f, X=None):
        return lie.image(f, X)

    def preimage(self, f, Y):
        return lie.preimage(f, Y)

    def kernel_pair(self, f, cap=None):
        return lie.kernel_pair(f)

    def fiber_product(self, f, g):
        return lie.fiber_product(f, g)

    def pair_into(self, P, u, v, right):
        return lie.pair_into(P, u, v, right)

    def quotient(self, X, N, check=True):
        return lie.quotient(X, N, check=check)

    def factor_through(self, proj, f):
        return lie.factor_through(proj, f)

    def direct_product(self, X, Y):
        return lie.direct_product(X, Y)

    def diagonal(self, X):
        return lie.diagonal(X)

    def invariants(self, N, L):
        Q, _ = lie.quotient(N, L)
        return lie_dimension_report(Q)


def lie_dimension_report(Q: lie.LieSub) -> dict:
    cls = lie.nilpotency_class(Q)
    return {
        "dim": Q.dim,
        "p": Q.p,
        "order": Q.order,
        "is_abelian": cls <= 1,
        "nilpotency_class": cls,
    }


class PXBackend(Backend):
    name = "pxmod"

    def whole(self, X):
        return px.whole(X)

    def trivial(self, X):
        return px.trivial_sub(X)

    def size(self, X):
        return X.order

    def intersect(self, X, Y):
        return px.px_intersect(X, Y)

    def join(self, X, Y):
        return px.px_join(X, Y)

    def commutator(self, P, X, Y):
        return px.peiffer_commutator(P, X, Y)

    def equal(self, X, Y):
        return X.equals(Y)

    def is_sub(self, X, Y):
        return px.is_sub(X, Y)

    def identity(self, X):
        return px.identity_morphism(X)

    def is_surjective(self, f):
        return px.px_is_surjective(f)

    def kernel(self, f):
        return px.px_kernel(f)

    def image(self, f, X=None):
        return px.px_image(f, X)

    def preimage(self, f, Y):
        return px.px_preimage(f, Y)

    def kernel_pair(self, f, cap=None):
        return px.kernel_pair(f, cap=cap)

    def fiber_product(self, f, g):
        return px.fiber_product(f, g)

    def pair_into(self, P, u, v, right):
        return px.pair_into(P, u, v, right)

    def quotient(self, X, N, check=True):
        return px.px_quotient(X, N, check=check)

    def factor_through(self, proj, f):
        return px.px_factor_through(proj, f)

    def direct_product(self, X, Y):
        return px.direct_product(X, Y)

    def diagonal(self, X):
        return px.diagonal(X)

    def invariants(self, N, L):
        return {
            "order_C": N.M.order // L.M.order,
            "order_G": N.S.order // L.S.order,
            "C": gp.quotient_invariants(N.M, L.M).to_json(),
            "G": gp.quotient_invariants(N.S, L.S).to_json(),
        }


BACKENDS: dict[str, Backend] = {b.name: b for b in (GroupBackend(), LieBackend(), PXBackend())}


def get_backend(name: str) -> Backend:
    try:
        return BACKENDS[name]
    except KeyError:
        raise UnsupportedReflectorBackend(f"unknown backend {name!r}", backend=name) from None


def backend_of(X) -> Backend:
    """Infer the backend from a carrier or morphism."""
    if isinstance(X, (gp.Group, gp.GroupMorphism)):
        return BACKENDS["group"]
    if isinstance(X, (lie.LieSub, lie.LieAlgebra, lie.LieMorphism)):
        return BACKENDS["lie"]
    if isinstance(X, (px.PXSub, px.PrecrossedModule, px.PXMorphism)):
        return BACKENDS["pxmod"]
    raise TypeError(f"no backend for {type(X).__name__}")


@dataclass(frozen=True)
class Square:
    """Commuting square of surjections ``f0: B0 -> A0``, ``f: B -> A``, ``b: B0 -> B``, ``a: A0 -> A``."""

    f0: object
    f: object
    b: object
    a: object
