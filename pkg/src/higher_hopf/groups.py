"""Enumerated finite groups and their subgroup lattice.

Every group element is an integer *code* inside a root ambient group.  Root
groups are Cayley-table groups (:class:`FiniteGroup`), arithmetic normal-form
groups (see :mod:`higher_hopf.presentations`) and direct products of roots
(:class:`DirectProduct`), whose elements are pair-encoded as ``i*|B| + j``.
A :class:`Subgroup` keeps the codes of its ambient, so kernel pairs, fiber
products and iterated kernel pairs are all subgroups of some direct power of
a root and can be handled without relabelling.

Subgroups are stored as sorted code arrays (enumerated lazily from
generators).  Ties in generator and coset representative choices are broken
by the lowest code, so all outputs are deterministic.

Commutators follow ``[a, b] = a b a^-1 b^-1``; the commutator of two
subgroups is the *normal* subgroup of the ambient carrier generated by all
such elements.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .config import LIMITS
from .errors import (
    BadArity,
    IndexOutOfRange,
    MismatchedParent,
    MissingInverse,
    NoIdentity,
    NonAssociative,
    NotAHomomorphism,
    NotASubgroup,
    NotNormal,
    NotNormalIn,
    ParseError,
    SizeLimitExceeded,
)

INT = np.int64


def _codes(x) -> np.ndarray:
    return np.asarray(x, dtype=INT)


def isin_sorted(sorted_arr: np.ndarray, x) -> np.ndarray:
    """Vectorized membership of ``x`` in a sorted array."""
    x = _codes(x)
    if sorted_arr.size == 0:
        return np.zeros(x.shape, dtype=bool)
    idx = np.searchsorted(sorted_arr, x)
    idx = np.minimum(idx, sorted_arr.size - 1)
    return sorted_arr[idx] == x


def prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# groups


class Group:
    """Common interface of roots and subgroups.

    Subclasses provide ``ambient``, ``identity`` and either an element array
    or a generating set.
    """

    ambient: "Group"

    def mul(self, a, b):
        return self.ambient._mul(_codes(a), _codes(b))

    def inv(self, a):
        return self.ambient._inv(_codes(a))

    def conj(self, g, x):
        """``g x g^-1`` (vectorized)."""
        return self.mul(self.mul(g, x), self.inv(g))

    def comm(self, a, b):
        """``[a, b] = a b a^-1 b^-1`` (vectorized)."""
        a, b = _codes(a), _codes(b)
        return self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))

    def power(self, a, e: int):
        a = _codes(a)
        result = np.full(a.shape, self.identity, dtype=INT)
        base = a
        while e > 0:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    @property
    def identity(self) -> int:
        return self.ambient.identity

    @property
    def order(self) -> int:
        return int(self.elements.size)

    def contains(self, x) -> np.ndarray:
        return isin_sorted(self.elements, x)

    def contains_all(self, x) -> bool:
        return bool(np.all(self.contains(x)))

    @property
    def is_root(self) -> bool:
        return self.ambient is self

    def __len__(self):
        return self.order


class RootGroup(Group):
    """A group whose element codes are ``0 .. size-1``."""

    size: int

    @property
    def ambient(self):
        return self

    @cached_property
    def elements(self) -> np.ndarray:
        if self.size > LIMITS.element_budget:
            raise SizeLimitExceeded(
                f"refusing to enumerate a root group of order {self.size}",
                order=self.size,
            )
        return np.arange(self.size, dtype=INT)

    @property
    def order(self) -> int:
        return int(self.size)

    def contains(self, x):
        x = _codes(x)
        return (x >= 0) & (x < self.size)

    @cached_property
    def gens(self) -> tuple[int, ...]:
        return greedy_generators(self, self.elements)

    def flat_factors(self):
        return [(self, 1)]


class FiniteGroup(RootGroup):
    """A group given by its Cayley table (validated by :func:`make_group`)."""

    def __init__(self, table, identity: int, inverses=None, name: str = ""):
        self.table = np.ascontiguousarray(table, dtype=INT)
        self.size = int(self.table.shape[0])
        self._identity = int(identity)
        if inverses is None:
            rows, cols = np.nonzero(self.table == self._identity)
            inverses = np.empty(self.size, dtype=INT)
            inverses[rows] = cols
        self.inverses = np.asarray(inverses, dtype=INT)
        self.name = name

    @property
    def identity(self):
        return self._identity

    def _mul(self, a, b):
        return self.table[a, b]

    def _inv(self, a):
        return self.inverses[a]

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} order={self.size}>"


def make_group(table, identity: int | None = None, name: str = "") -> FiniteGroup:
    """Validate a Cayley table and return the carrier.

    Raises :class:`NoIdentity`, :class:`MissingInverse` or
    :class:`NonAssociative` naming the offending element(s).
    """
    t = np.asarray(table)
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise ParseError("group table must be a non-empty square array")
    n = t.shape[0]
    t = t.astype(INT)
    if t.min() < 0 or t.max() >= n:
        bad = np.argwhere((t < 0) | (t >= n))[0]
        raise IndexOutOfRange(
            f"table entry at {tuple(bad.tolist())} is out of range", position=bad.tolist()
        )
    ar = np.arange(n)
    if identity is None:
        cand = np.nonzero(np.all(t == ar[None, :], axis=1) & np.all(t == ar[:, None], axis=0))[0]
        if cand.size == 0:
            raise NoIdentity("no two-sided identity element in table")
        identity = int(cand[0])
    else:
        if not (0 <= identity < n):
            raise IndexOutOfRange(f"identity index {identity} out of range")
        row_bad = np.nonzero(t[identity] != ar)[0]
        col_bad = np.nonzero(t[:, identity] != ar)[0]
        if row_bad.size or col_bad.size:
            x = int(row_bad[0]) if row_bad.size else int(col_bad[0])
            raise NoIdentity(
                f"claimed identity {identity} fails on element {x}", identity=identity, element=x
            )
    has_right = t == identity
    inverses = np.full(n, -1, dtype=INT)
    for a in range(n):
        cols = np.nonzero(has_right[a])[0]
        cols = [c for c in cols if t[c, a] == identity]
        if not cols:
            raise MissingInverse(f"element {a} has no two-sided inverse", element=a)
        inverses[a] = cols[0]
    # associativity, one slab per left factor
    for a in range(n):
        left = t[t[a]]  # (a*b)*c, rows b, cols c
        right = t[a][t]  # a*(b*c)
        if not np.array_equal(left, right):
            b, c = np.argwhere(left != right)[0]
            raise NonAssociative(
                f"({a}*{b})*{c} != {a}*({b}*{c})", triple=[a, int(b), int(c)]
            )
    return FiniteGroup(t, identity, inverses, name=name)


class DirectProduct(RootGroup):
    """Direct product of roots, flattened; pair codes are ``i*|B| + j``."""

    def __init__(self, factors: Sequence[RootGroup]):
        flat: list[RootGroup] = []
        for f in factors:
            if isinstance(f, DirectProduct):
                flat.extend(f.factors)
            else:
                flat.append(f)
        self.factors = flat
        sizes = [f.size for f in flat]
        total = 1
        for s in sizes:
            total *= s
        if total > 2**62:
            raise SizeLimitExceeded("direct product too large to pair-encode", order=total)
        self.size = total
        weights, w = [], 1
        for s in reversed(sizes):
            weights.append(w)
            w *= s
        self.weights = list(reversed(weights))
        self._identity = sum(f.identity * w for f, w in zip(flat, self.weights))

    @property
    def identity(self):
        return self._identity

    def digits(self, a):
        a = _codes(a)
        return [(a // w) % f.size for f, w in zip(self.factors, self.weights)]

    def encode(self, digits):
        out = 0
        for d, w in zip(digits, self.weights):
            out = out + _codes(d) * w
        return out

    def _mul(self, a, b):
        out = None
        for f, w in zip(self.factors, self.weights):
            d = f._mul((a // w) % f.size, (b // w) % f.size) * w
            out = d if out is None else out + d
        return out

    def _inv(self, a):
        out = None
        for f, w in zip(self.factors, self.weights):
            d = f._inv((a // w) % f.size) * w
            out = d if out is None else out + d
        return out

    @cached_property
    def gens(self):
        out = []
        for i, (f, w) in enumerate(zip(self.factors, self.weights)):
            base = self._identity - f.identity * w
            out.extend(base + g * w for g in f.gens)
        return tuple(int(g) for g in out)

    def __repr__(self):
        return f"<DirectProduct {' x '.join(str(f.size) for f in self.factors)}>"


_PRODUCTS: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()


def product_root(*roots: RootGroup) -> DirectProduct:
    """The (cached) pair-encoding product of root groups."""
    key = tuple(id(r) for r in roots)
    prod = _PRODUCTS.get(key)
    if prod is None:
        prod = DirectProduct(roots)
        _PRODUCTS[key] = prod
    return prod


def pair_code(left_root: RootGroup, right_root: RootGroup, x, y):
    return _codes(x) * right_root.size + _codes(y)


class Subgroup(Group):
    """A subgroup of ``parent``, given by elements and/or generators.

    ``membership`` optionally supplies a structural membership test so that
    very large carriers (iterated kernel pairs) never need enumerating.
    """

    def __init__(
        self,
        parent: Group,
        elements=None,
        gens=None,
        *,
        order: int | None = None,
        membership: Callable | None = None,
        name: str = "",
    ):
        self.parent = parent
        self.ambient = parent.ambient
        if elements is not None:
            self.__dict__["elements"] = np.unique(_codes(elements))
        if gens is not None:
            self.__dict__["gens"] = tuple(int(g) for g in np.atleast_1d(_codes(gens)))
        if elements is None and gens is None:
            self.__dict__["elements"] = np.array([self.ambient.identity], dtype=INT)
        self._order = order
        self._membership = membership
        self.name = name

    @cached_property
    def elements(self) -> np.ndarray:
        if self._order is not None and self._order > LIMITS.element_budget:
            raise SizeLimitExceeded(
                f"subgroup of order {self._order} exceeds the element budget",
                order=self._order,
            )
        elems, _ = generate(self.ambient, self.gens)
        return elems

    @cached_property
    def gens(self) -> tuple[int, ...]:
        return greedy_generators(self.ambient, self.elements)

    @property
    def order(self) -> int:
        if "elements" in self.__dict__:
            return int(self.elements.size)
        if self._order is not None:
            return self._order
        return int(self.elements.size)

    def contains(self, x):
        if "elements" not in self.__dict__ and self._membership is not None:
            return self._membership(_codes(x))
        return isin_sorted(self.elements, x)

    @cached_property
    def normal_flag(self) -> bool:
        return is_normal_in(self, self.parent)

    @property
    def is_enumerated(self) -> bool:
        return "elements" in self.__dict__

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Subgroup{label} order={self.order}>"


# ---------------------------------------------------------------------------
# closure machinery


def _extend(amb: Group, elems: np.ndarray, gens: list, x: int) -> np.ndarray:
    """Elements of ``<elems, x>`` given that ``elems`` is closed under ``gens``."""
    frontier = amb._mul(elems, INT(x))
    frontier = np.unique(frontier[~isin_sorted(elems, frontier)])
    elems = np.union1d(elems, frontier)
    all_gens = _codes(list(gens) + [x])
    budget = LIMITS.element_budget
    while frontier.size:
        if elems.size > budget:
            raise SizeLimitExceeded(
                f"subgroup enumeration exceeded {budget} elements", budget=budget
            )
        cand = amb._mul(np.repeat(frontier, all_gens.size), np.tile(all_gens, frontier.size))
        cand = np.unique(cand)
        new = cand[~isin_sorted(elems, cand)]
        if new.size:
            elems = np.union1d(elems, new)
        frontier = new
    return elems


def generate(amb: Group, gens) -> tuple[np.ndarray, tuple[int, ...]]:
    """Enumerate ``<gens>``; returns the sorted elements and the non-redundant gens used."""
    elems = np.array([amb.identity], dtype=INT)
    used: list[int] = []
    for g in np.atleast_1d(_codes(gens)).tolist():
        if isin_sorted(elems, g):
            continue
        elems = _extend(amb, elems, used, g)
        used.append(int(g))
    return elems, tuple(used)


def greedy_generators(amb: Group, elements: np.ndarray) -> tuple[int, ...]:
    """Lowest-code-first generating set of the subgroup with these elements."""
    elements = np.unique(_codes(elements))
    cur = np.array([amb.identity], dtype=INT)
    used: list[int] = []
    while cur.size < elements.size:
        missing = ~isin_sorted(cur, elements)
        g = int(elements[int(np.argmax(missing))])
        cur = _extend(amb, cur, used, g)
        used.append(g)
    return tuple(used)


def _normal_closure(amb: Group, conj_gens, seeds) -> tuple[np.ndarray, tuple[int, ...]]:
    conj_gens = _codes(list(conj_gens))
    conj_inv = amb._inv(conj_gens) if conj_gens.size else conj_gens
    elems = np.array([amb.identity], dtype=INT)
    used: list[int] = []
    queue = list(np.atleast_1d(_codes(seeds)).tolist())
    while queue:
        batch = np.unique(_codes(queue))
        queue = []
        fresh = batch[~isin_sorted(elems, batch)]
        for s in fresh.tolist():
            if isin_sorted(elems, s):
                continue
            elems = _extend(amb, elems, used, s)
            used.append(int(s))
            if conj_gens.size:
                conjs = amb._mul(amb._mul(conj_gens, INT(s)), conj_inv)
                queue.extend(conjs[~isin_sorted(elems, conjs)].tolist())
    return elems, tuple(used)


# ---------------------------------------------------------------------------
# lattice operations


def _check_same_ambient(*groups: Group):
    amb = groups[0].ambient
    for g in groups[1:]:
        if g.ambient is not amb:
            raise MismatchedParent("subgroups live in different carriers")


def _check_within(G: Group, S: Group):
    _check_same_ambient(G, S)
    if G.is_root:
        return
    if not G.contains_all(_codes(S.gens)):
        raise MismatchedParent("subgroup is not contained in the given carrier")


def whole(G: Group) -> Subgroup:
    """``G`` as a subgroup of itself."""
    if isinstance(G, Subgroup):
        return G
    return Subgroup(G, elements=G.elements, gens=G.gens)


def trivial_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, elements=[G.identity], gens=[])


def subgroup_generated(G: Group, gens) -> Subgroup:
    """Smallest subgroup of ``G`` containing ``gens``."""
    gens = np.atleast_1d(_codes(gens if gens is not None else []))
    if gens.size and not G.contains_all(gens):
        raise IndexOutOfRange("generators are not elements of the carrier")
    elems, used = generate(G.ambient, gens)
    return Subgroup(G, elements=elems, gens=used)


def normal_closure(G: Group, S) -> Subgroup:
    """Smallest normal subgroup of ``G`` containing ``S`` (a subgroup or element list)."""
    seeds = _codes(S.gens) if isinstance(S, Group) else np.atleast_1d(_codes(S))
    if seeds.size and not G.contains_all(seeds):
        raise IndexOutOfRange("elements are not in the carrier")
    elems, used = _normal_closure(G.ambient, G.gens, seeds)
    return Subgroup(G, elements=elems, gens=used)


def is_normal_in(S: Group, G: Group) -> bool:
    """Is ``S`` normalized by every element of ``G``?"""
    _check_same_ambient(S, G)
    sg, gg = _codes(S.gens), _codes(G.gens)
    if sg.size == 0 or gg.size == 0:
        return True
    conj = G.conj(np.repeat(gg, sg.size), np.tile(sg, gg.size))
    return S.contains_all(conj)


def commutator_subgroup(G: Group, S: Group, T: Group) -> Subgroup:
    """Normal subgroup of ``G`` generated by all ``[s, t]``."""
    _check_within(G, S)
    _check_within(G, T)
    sg, tg = _codes(S.gens), _codes(T.gens)
    if sg.size == 0 or tg.size == 0:
        return trivial_subgroup(G)
    seeds = G.comm(np.repeat(sg, tg.size), np.tile(tg, sg.size))
    seeds = seeds[seeds != G.identity]
    elems, used = _normal_closure(G.ambient, G.gens, seeds)
    return Subgroup(G, elements=elems, gens=used)


def intersect(S: Group, T: Group) -> Subgroup:
    _check_same_ambient(S, T)
    parent = S.parent if isinstance(S, Subgroup) else S
    if "elements" not in getattr(S, "__dict__", {}) and getattr(S, "_membership", None):
        elems = T.elements[S.contains(T.elements)]
    elif "elements" not in getattr(T, "__dict__", {}) and getattr(T, "_membership", None):
        elems = S.elements[T.contains(S.elements)]
    else:
        elems = np.intersect1d(S.elements, T.elements, assume_unique=True)
    return Subgroup(parent, elements=elems)


def product_subgroups(M: Group, N: Group) -> Subgroup:
    """Setwise product ``M N``; raises :class:`NotASubgroup` when it is not one."""
    _check_same_ambient(M, N)
    parent = M.parent if isinstance(M, Subgroup) else M
    gens = list(M.gens) + list(N.gens)
    elems, used = generate(M.ambient, gens)
    meet = np.intersect1d(M.elements, N.elements, assume_unique=True).size
    if elems.size * meet != M.order * N.order:
        raise NotASubgroup("setwise product of the two subgroups is not a subgroup")
    return Subgroup(parent, elements=elems, gens=used)


def join(M: Group, N: Group) -> Subgroup:
    """Subgroup generated by ``M`` and ``N`` (their product when one is normal)."""
    _check_same_ambient(M, N)
    parent = M.parent if isinstance(M, Subgroup) else M
    elems, used = generate(M.ambient, list(M.gens) + list(N.gens))
    return Subgroup(parent, elements=elems, gens=used)


def subgroups_equal(S: Group, T: Group) -> bool:
    return S.ambient is T.ambient and S.order == T.order and T.contains_all(_codes(S.gens))


def is_subgroup_of(S: Group, T: Group) -> bool:
    return S.ambient is T.ambient and T.contains_all(_codes(S.gens))


def is_trivial(S: Group) -> bool:
    return all(g == S.identity for g in S.gens)


# ---------------------------------------------------------------------------
# morphisms


class GroupMorphism:
    """A homomorphism between carriers, acting on element codes.

    Built either from an ``images`` array aligned with ``domain.elements`` or
    from a vectorized callable (used for projections and induced maps).
    """

    def __init__(self, domain: Group, codomain: Group, fn=None, images=None, name: str = ""):
        self.domain = domain
        self.codomain = codomain
        self.name = name
        if images is not None:
            images = _codes(images)
            if images.shape != domain.elements.shape:
                raise IndexOutOfRange("images must have one entry per domain element")
            self.images = images
            self._fn = None
        else:
            self._fn = fn
            self.images = None

    @classmethod
    def from_images(cls, domain, codomain, images, check=True, name=""):
        f = cls(domain, codomain, images=images, name=name)
        if check:
            f.check()
        return f

    def __call__(self, x):
        x = _codes(x)
        if self._fn is not None:
            return _codes(self._fn(x))
        idx = np.searchsorted(self.domain.elements, x)
        return self.images[idx]

    @cached_property
    def image_array(self) -> np.ndarray:
        """Images of ``domain.elements``, in order."""
        if self.images is not None:
            return self.images
        return self(self.domain.elements)

    def check(self):
        """Verify the homomorphism law ``f(xg) = f(x) f(g)`` on all x, generators g."""
        cod = self.codomain
        if self(self.domain.identity) != cod.identity:
            raise NotAHomomorphism("identity is not sent to identity")
        elems = self.domain.elements
        fx = self(elems)
        if not cod.contains_all(fx):
            raise NotAHomomorphism("some image lies outside the codomain")
        for g in self.domain.gens:
            lhs = self(self.domain.mul(elems, INT(g)))
            rhs = cod.mul(fx, self(INT(g)))
            if not np.array_equal(lhs, rhs):
                bad = int(elems[np.argmax(lhs != rhs)])
                raise NotAHomomorphism(
                    f"f({bad}*{g}) != f({bad})*f({g})", pair=[bad, int(g)]
                )
        return self

    def compose_after(self, other: "GroupMorphism") -> "GroupMorphism":
        """``self ∘ other``."""
        return GroupMorphism(other.domain, self.codomain, fn=lambda x: self(other(x)))

    def restrict(self, domain: Group, codomain: Group | None = None) -> "GroupMorphism":
        return GroupMorphism(domain, codomain or self.codomain, fn=self.__call__)

    def equals(self, other: "GroupMorphism") -> bool:
        g = _codes(self.domain.gens)
        return bool(np.array_equal(self(g), other(g)))

    def __repr__(self):
        return f"<GroupMorphism {self.domain.order} -> {self.codomain.order}>"


def identity_morphism(G: Group) -> GroupMorphism:
    return GroupMorphism(G, G, fn=lambda x: x)


def kernel(f: GroupMorphism) -> Subgroup:
    elems = f.domain.elements
    return Subgroup(f.domain, elements=elems[f.image_array == f.codomain.identity])


def image(f: GroupMorphism, S: Group | None = None) -> Subgroup:
    """Image of ``f`` (or of the subgroup ``S`` of its domain)."""
    src = f.domain if S is None else S
    gens = f(_codes(src.gens))
    elems, used = generate(f.codomain.ambient, gens)
    return Subgroup(f.codomain, elements=elems, gens=used)


def preimage(f: GroupMorphism, T: Group) -> Subgroup:
    elems = f.domain.elements
    return Subgroup(f.domain, elements=elems[T.contains(f.image_array)])


def is_surjective(f: GroupMorphism) -> bool:
    return image(f).order == f.codomain.order


def is_injective(f: GroupMorphism) -> bool:
    return kernel(f).order == 1


def extend_homomorphism(domain: Group, gen_images, codomain: Group, gens=None) -> GroupMorphism:
    """The homomorphism sending ``gens`` (default ``domain.gens``) to ``gen_images``.

    Images are propagated along the right Cayley graph; the result is checked
    to be a well-defined homomorphism.
    """
    gens = _codes(domain.gens if gens is None else gens)
    gimg = _codes(gen_images)
    elems = domain.elements
    img = np.full(elems.size, -1, dtype=INT)
    pos = lambda x: np.searchsorted(elems, x)
    img[pos(domain.identity)] = codomain.identity
    frontier = _codes([domain.identity])
    while frontier.size:
        fi = img[pos(frontier)]
        nxt = []
        for g, gi in zip(gens.tolist(), gimg.tolist()):
            tgt = domain.mul(frontier, INT(g))
            p = pos(tgt)
            fresh = img[p] == -1
            if fresh.any():
                p_new, order = np.unique(p[fresh], return_index=True)
                img[p_new] = codomain.mul(fi[fresh][order], INT(gi))
                nxt.append(elems[p_new])
        frontier = np.unique(np.concatenate(nxt)) if nxt else _codes([])
    if (img == -1).any():
        raise NotAHomomorphism("generators do not generate the domain")
    f = GroupMorphism(domain, codomain, images=img)
    f.check()
    return f


# ---------------------------------------------------------------------------
# products, kernel pairs, quotients


def direct_product(G: Group, H: Group) -> Subgroup:
    """``G x H`` as a subgroup of the product of their ambients."""
    amb = product_root(G.ambient, H.ambient)
    m = H.ambient.size
    gens = [int(g) * m + H.identity for g in G.gens] + [G.identity * m + int(h) for h in H.gens]
    return Subgroup(
        amb,
        gens=gens,
        order=G.order * H.order,
        membership=lambda c: G.contains(c // m) & H.contains(c % m),
    )


def projections(P: Group, left: Group, right: Group):
    m = right.ambient.size
    p1 = GroupMorphism(P, left, fn=lambda c: c // m)
    p2 = GroupMorphism(P, right, fn=lambda c: c % m)
    return p1, p2


def fiber_product(f: GroupMorphism, g: GroupMorphism):
    """Pullback of ``f: B -> A`` and ``g: C -> A`` with its two projections."""
    B, C = f.domain, g.domain
    amb = product_root(B.ambient, C.ambient)
    m = C.ambient.size
    if is_surjective(g):
        imgs = g.image_array
        celems = C.elements
        fb = f(_codes(B.gens))
        lifts = []
        for t in fb.tolist():
            lifts.append(int(celems[int(np.argmax(imgs == t))]))
        kg = kernel(g)
        gens = [int(b) * m + c for b, c in zip(B.gens, lifts)]
        gens += [B.identity * m + int(k) for k in kg.gens]
        order = B.order * kg.order
        P = Subgroup(
            amb,
            gens=gens,
            order=order,
            membership=lambda c: B.contains(c // m) & C.contains(c % m) & (f(c // m) == g(c % m)),
        )
    else:
        fb = f.image_array
        gc = g.image_array
        elems = []
        for t in np.unique(fb).tolist():
            bs = B.elements[fb == t]
            cs = C.elements[gc == t]
            if cs.size:
                elems.append((bs[:, None] * m + cs[None, :]).ravel())
        P = Subgroup(amb, elements=np.concatenate(elems))
    p1, p2 = projections(P, B, C)
    return P, p1, p2


def kernel_pair(f: GroupMorphism, cap: int | None = None):
    """``R = {(x, y) : f(x) = f(y)}`` with its coordinate projections."""
    B = f.domain
    K = kernel(f)
    order = B.order * K.order
    cap = LIMITS.carrier_cap if cap is None else cap
    if order > cap:
        raise SizeLimitExceeded(f"kernel pair of order {order} exceeds cap {cap}", order=order)
    amb = product_root(B.ambient, B.ambient)
    m = B.ambient.size
    gens = [int(x) * m + int(x) for x in B.gens] + [B.identity * m + int(k) for k in K.gens]
    R = Subgroup(
        amb,
        gens=gens,
        order=order,
        membership=lambda c: B.contains(c // m) & B.contains(c % m) & (f(c // m) == f(c % m)),
    )
    p1, p2 = projections(R, B, B)
    return R, p1, p2


def diagonal(G: Group) -> GroupMorphism:
    """``(1_G, 1_G): G -> G x G``."""
    GG = direct_product(G, G)
    m = G.ambient.size
    return GroupMorphism(G, GG, fn=lambda x: x * m + x)


def pair_into(P: Group, u: GroupMorphism, v: GroupMorphism, right: Group) -> GroupMorphism:
    """``(u, v): X -> P`` into a pair-encoded product (``right`` is v's codomain)."""
    m = right.ambient.size
    return GroupMorphism(u.domain, P, fn=lambda x: u(x) * m + v(x))


def coset_labels(G: Group, N: Group) -> tuple[np.ndarray, np.ndarray]:
    """Coset label of every element of ``G`` (in element order) and the representatives.

    Representatives are the lowest codes of their cosets.
    """
    elems = G.elements
    nel = N.elements
    rep = np.full(elems.size, np.iinfo(INT).max, dtype=INT)
    chunk = max(1, 4_000_000 // max(1, nel.size))
    for start in range(0, elems.size, chunk):
        block = elems[start : start + chunk]
        prods = G.mul(block[:, None], nel[None, :])
        rep[start : start + chunk] = prods.min(axis=1)
    reps, labels = np.unique(rep, return_inverse=True)
    return labels.astype(INT), reps


def quotient(G: Group, N: Group, check: bool = True):
    """Coset-indexed quotient ``G/N`` with its projection."""
    _check_same_ambient(G, N)
    if check and not is_normal_in(N, G):
        raise NotNormal("quotient by a non-normal subgroup")
    q = G.order // N.order
    if q > LIMITS.table_cap:
        raise SizeLimitExceeded(f"quotient of order {q} is too large to tabulate", order=q)
    labels, reps = coset_labels(G, N)
    pos = lambda x: labels[np.searchsorted(G.elements, x)]
    table = pos(G.mul(reps[:, None], reps[None, :]))
    Q = FiniteGroup(table, identity=int(pos(G.identity)))
    proj = GroupMorphism(G, Q, images=labels)
    return Q, proj


def factor_through(proj: GroupMorphism, f: GroupMorphism) -> GroupMorphism:
    """Given a quotient map ``proj: G -> Q`` and ``f: G -> A`` killing its kernel,
    return the induced ``Q -> A``."""
    Q = proj.codomain
    labels = proj.image_array
    first = np.zeros(Q.order, dtype=INT)
    first[labels[::-1]] = proj.domain.elements[::-1]
    images = f(first)
    return GroupMorphism(Q, f.codomain, images=images)


def to_table_group(G: Group) -> tuple[FiniteGroup, GroupMorphism]:
    """Relabel ``G`` as a Cayley-table group; returns it with the iso ``G -> table``."""
    n = G.order
    if n > LIMITS.table_cap:
        raise SizeLimitExceeded(f"order {n} is too large to tabulate", order=n)
    elems = G.elements
    table = np.searchsorted(elems, G.mul(elems[:, None], elems[None, :]))
    T = FiniteGroup(table, identity=int(np.searchsorted(elems, G.identity)))
    iso = GroupMorphism(G, T, images=np.arange(n, dtype=INT))
    return T, iso


# ---------------------------------------------------------------------------
# series


def descending_central(G: Group, k: int) -> Subgroup:
    """``Z_1 G = [G, G]``, ``Z_k G = [Z_{k-1} G, G]``."""
    if k < 1:
        raise BadArity("series index must be >= 1")
    Z = commutator_subgroup(G, G, G)
    for _ in range(k - 1):
        Z = commutator_subgroup(G, Z, G)
    return Z


def derived(G: Group, k: int) -> Subgroup:
    """``D_1 G = [G, G]``, ``D_k G = [D_{k-1} G, D_{k-1} G]``."""
    if k < 1:
        raise BadArity("series index must be >= 1")
    D = commutator_subgroup(G, G, G)
    for _ in range(k - 1):
        D = commutator_subgroup(G, D, D)
    return D


def iterated_derived(G: Group, *xs: Group) -> Subgroup:
    """``D_k(X_1, ..., X_{2^k})`` built by pairwise commutators."""
    n = len(xs)
    if n < 2 or n & (n - 1):
        raise BadArity(f"iterated_derived needs 2^k arguments, got {n}")
    level = list(xs)
    while len(level) > 1:
        level = [commutator_subgroup(G, level[i], level[i + 1]) for i in range(0, len(level), 2)]
    return level[0]


def left_normed(G: Group, *xs: Group) -> Subgroup:
    """``[[...[[X_1, X_2], X_3]...], X_m]``."""
    if len(xs) < 2:
        raise BadArity("left_normed needs at least two arguments")
    acc = commutator_subgroup(G, xs[0], xs[1])
    for X in xs[2:]:
        acc = commutator_subgroup(G, acc, X)
    return acc


def nilpotency_class(G: Group) -> int | str:
    """Smallest ``k`` with ``Z_k G`` trivial (0 for the trivial group)."""
    if is_trivial(G):
        return 0
    Z = commutator_subgroup(G, G, G)
    k = 1
    while not is_trivial(Z):
        nxt = commutator_subgroup(G, Z, G)
        if nxt.order == Z.order:
            return "not nilpotent"
        Z, k = nxt, k + 1
    return k


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class GroupInvariants:
    order: int
    is_abelian: bool
    abelian_invariants: tuple[int, ...] = field(default_factory=tuple)
    exponent: int = 1
    nilpotency_class: int | str = 0

    def to_json(self):
        return {
            "order": self.order,
            "is_abelian": self.is_abelian,
            "abelian_invariants": list(self.abelian_invariants),
            "exponent": self.exponent,
            "nilpotency_class": self.nilpotency_class,
        }


def quotient_invariants(N: Group, L: Group) -> GroupInvariants:
    """Invariants of ``N/L`` computed inside the common parent (no table needed).

    Abelian invariants are reported in primary (prime-power) form, ascending.
    """
    _check_same_ambient(N, L)
    if not is_subgroup_of(L, N) or not is_normal_in(L, N):
        raise NotNormalIn("denominator is not a normal subgroup of the numerator")
    q = N.order // L.order
    if q == 1:
        return GroupInvariants(1, True, (), 1, 0)
    ng = _codes(N.gens)
    comms = N.comm(np.repeat(ng, ng.size), np.tile(ng, ng.size))
    abelian = L.contains_all(comms)
    elems = N.elements
    exponent = 1
    primary: list[int] = []
    for p in prime_factors(q):
        qp = 1
        while q % (qp * p) == 0:
            qp *= p
        # p-part of the exponent: kill the p'-part first
        y = N.power(elems, q // qp)
        e = 1
        while not L.contains_all(y):
            y = N.power(y, p)
            e *= p
        exponent *= e
        if abelian:
            # |{x : x^(p^j) in L}| / |L| = p^(sum_i min(e_i, j))
            ranks = []
            prev, j = 1, 0
            while prev < qp:
                j += 1
                hits = int(np.count_nonzero(L.contains(N.power(elems, p**j)))) // L.order
                r, c = 0, hits // prev
                while c > 1:
                    c //= p
                    r += 1
                ranks.append(r)
                prev = hits
            ranks.append(0)
            for j in range(len(ranks) - 1):
                primary.extend([p ** (j + 1)] * (ranks[j] - ranks[j + 1]))
    if abelian:
        cls: int | str = 1
    else:
        cls = "not nilpotent"
        Z, k = commutator_subgroup(N, N, N), 1
        while True:
            if is_subgroup_of(Z, L):
                cls = k
                break
            nxt = commutator_subgroup(N, Z, N)
            if join(nxt, L).order == join(Z, L).order:
                break
            Z, k = nxt, k + 1
    return GroupInvariants(q, abelian, tuple(sorted(primary)), exponent, cls)


def group_invariants(G: Group) -> GroupInvariants:
    return quotient_invariants(whole(G), trivial_subgroup(G))


# ---------------------------------------------------------------------------
# constructors and JSON


def cyclic(n: int) -> FiniteGroup:
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, 0, name=f"C{n}")


def table_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    m = H.size
    a = np.arange(G.size * m)
    gi, hi = a // m, a % m
    table = G.table[gi[:, None], gi[None, :]] * m + H.table[hi[:, None], hi[None, :]]
    return FiniteGroup(table, G.identity * m + H.identity, name=f"{G.name}x{H.name}")


def permutation_group(gens: Sequence[Sequence[int]], name: str = "") -> FiniteGroup:
    """Cayley table of the permutation group generated by ``gens`` (images lists)."""
    deg = len(gens[0])
    ident = tuple(range(deg))
    elems = [ident]
    seen = {ident: 0}
    i = 0
    gens = [tuple(g) for g in gens]
    while i < len(elems):
        e = elems[i]
        for g in gens:
            h = tuple(g[e[k]] for k in range(deg))
            if h not in seen:
                seen[h] = len(elems)
                elems.append(h)
        i += 1
    elems.sort()
    seen = {e: k for k, e in enumerate(elems)}
    n = len(elems)
    arr = np.array(elems)
    table = np.empty((n, n), dtype=INT)
    for a in range(n):
        # (a*b)(k) = a(b(k)): apply b first
        comp = arr[a][arr]  # rows b
        table[a] = [seen[tuple(r)] for r in comp]
    return FiniteGroup(table, seen[ident], name=name)


def symmetric_group(k: int) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, k)))]
    if k > 2:
        gens.append(tuple(list(range(1, k)) + [0]))
    return permutation_group(gens, name=f"S{k}")


def group_to_json(G: Group) -> dict:
    T = G if isinstance(G, FiniteGroup) else to_table_group(G)[0]
    return {"order": T.size, "identity": T.identity, "table": T.table.tolist()}


def group_from_json(obj: dict) -> FiniteGroup:
    try:
        table = obj["table"]
        identity = obj.get("identity")
        order = obj.get("order", len(table))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed group JSON: {exc}") from exc
    if order != len(table):
        raise ParseError("declared order does not match table size")
    return make_group(table, identity)


def relabel(G: FiniteGroup, perm) -> FiniteGroup:
    """Isomorphic copy of ``G`` with element ``x`` renamed ``perm[x]``."""
    perm = _codes(perm)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(perm.size)
    table = perm[G.table[inv[:, None], inv[None, :]]]
    return FiniteGroup(table, int(perm[G.identity]))


def all_normal_subgroups(G: Group) -> list[Subgroup]:
    """Every normal subgroup of a small group, sorted by (order, elements)."""
    amb = G.ambient
    closures = {}
    for x in G.elements.tolist():
        N = normal_closure(G, [x])
        closures[N.elements.tobytes()] = N
    found = dict(closures)
    frontier = list(found.values())
    while frontier:
        nxt = []
        for A in frontier:
            for B in list(closures.values()):
                if A.contains_all(_codes(B.gens)):
                    continue
                # both normal: the join is the setwise product
                elems = np.unique(amb._mul(np.repeat(A.elements, B.order), np.tile(B.elements, A.order)))
                key = elems.tobytes()
                if key not in found:
                    J = Subgroup(G, elements=elems, gens=tuple(A.gens) + tuple(B.gens))
                    found[key] = J
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.order, S.elements.tolist()))


def all_subgroups(G: Group) -> list[Subgroup]:
    """Every subgroup of a small group (joins of cyclic subgroups)."""
    cyc = {}
    for x in G.elements.tolist():
        S = subgroup_generated(G, [x])
        cyc[S.elements.tobytes()] = S
    found = dict(cyc)
    frontier = list(found.values())
    while frontier:
        nxt = []
        for A in frontier:
            for B in list(cyc.values()):
                if A.contains_all(_codes(B.gens)):
                    continue
                J = join(A, B)
                key = J.elements.tobytes()
                if key not in found:
                    found[key] = J
                    nxt.append(J)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.order, S.elements.tolist()))

