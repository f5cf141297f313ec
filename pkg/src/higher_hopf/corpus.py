"""Generated test objects: a small-group library, surjections, squares,
double presentations and precrossed modules.

Everything here is deterministic given the seed arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from . import groups as gp
from . import lie
from . import pxmod as px
from .cubes import Cube, square
from .presentations import n_presentation

INT = np.int64


# ---------------------------------------------------------------------------
# small groups


def closure_group(gens, mul, identity, name: str = "") -> gp.FiniteGroup:
    """Cayley table of the group generated by hashable ``gens`` under ``mul``."""
    elems = [identity]
    seen = {identity: 0}
    i = 0
    while i < len(elems):
        for g in gens:
            h = mul(elems[i], g)
            if h not in seen:
                seen[h] = len(elems)
                elems.append(h)
        i += 1
    n = len(elems)
    table = np.array([[seen[mul(a, b)] for b in elems] for a in elems], dtype=INT)
    return gp.make_group(table, 0, name=name)


def matrix_group(gens, p: int, name: str = "") -> gp.FiniteGroup:
    k = len(gens[0])
    mats = [tuple(tuple(int(v) % p for v in row) for row in g) for g in gens]

    def mul(a, b):
        return tuple(
            tuple(sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(k)) for i in range(k)
        )

    ident = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    return closure_group(mats, mul, ident, name)


def semidirect_cyclic(m: int, n: int, r: int, name: str = "") -> gp.FiniteGroup:
    """``C_m ⋊ C_n`` with ``b a b^-1 = a^r`` (``r^n = 1 mod m``)."""
    assert pow(r, n, m) == 1 % m

    def mul(x, y):
        return ((x[0] + pow(r, x[1], m) * y[0]) % m, (x[1] + y[1]) % n)

    return closure_group([(1, 0), (0, 1)], mul, (0, 0), name)


def dicyclic(m: int, name: str = "") -> gp.FiniteGroup:
    """``<a, b | a^{2m}, b^2 = a^m, b a b^-1 = a^-1>``, order 4m."""
    N = 2 * m

    def mul(x, y):
        (i1, j1), (i2, j2) = x, y
        if j1 == 0:
            return ((i1 + i2) % N, j2)
        if j2 == 0:
            return ((i1 - i2) % N, 1)
        return ((i1 - i2 + m) % N, 0)

    return closure_group([(1, 0), (0, 1)], mul, (0, 0), name)


def dihedral(m: int) -> gp.FiniteGroup:
    """Symmetries of the m-gon, order 2m."""
    rot = [(k + 1) % m for k in range(m)]
    ref = [(-k) % m for k in range(m)]
    return gp.permutation_group([rot, ref], name=f"D{2 * m}")


def _abelian(*ns: int) -> gp.FiniteGroup:
    G = gp.cyclic(ns[0])
    for n in ns[1:]:
        G = gp.table_product(G, gp.cyclic(n))
    G.name = "x".join(f"C{n}" for n in ns)
    return G


def heisenberg_group(p: int = 3) -> gp.FiniteGroup:
    return matrix_group([[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 1], [0, 0, 1]]], p, f"H{p**3}")


def small_groups(max_order: int = 27) -> list[gp.FiniteGroup]:
    """A fixed library of groups of order at most ``max_order`` (not a classification)."""
    out = [gp.cyclic(n) for n in range(1, max_order + 1)]
    makers = [
        lambda: _abelian(2, 2),
        lambda: _abelian(2, 4),
        lambda: _abelian(2, 2, 2),
        lambda: _abelian(3, 3),
        lambda: _abelian(2, 6),
        lambda: _abelian(4, 4),
        lambda: _abelian(2, 8),
        lambda: _abelian(2, 2, 4),
        lambda: _abelian(3, 6),
        lambda: _abelian(2, 10),
        lambda: _abelian(2, 2, 6),
        lambda: _abelian(3, 9),
        lambda: _abelian(3, 3, 3),
        lambda: dihedral(3),
        lambda: dihedral(4),
        lambda: matrix_group([[[0, 2], [1, 0]], [[1, 1], [1, 2]]], 3, "Q8"),
        lambda: dihedral(5),
        lambda: gp.permutation_group([[1, 2, 0, 3], [1, 0, 3, 2]], name="A4"),
        lambda: dihedral(6),
        lambda: dicyclic(3, "Dic3"),
        lambda: dihedral(7),
        lambda: dihedral(8),
        lambda: dicyclic(4, "Q16"),
        lambda: dihedral(9),
        lambda: gp.table_product(dihedral(3), gp.cyclic(3)),
        lambda: dihedral(10),
        lambda: semidirect_cyclic(5, 4, 2, "F20"),
        lambda: semidirect_cyclic(7, 3, 2, "F21"),
        lambda: dihedral(11),
        lambda: gp.symmetric_group(4),
        lambda: matrix_group([[[1, 1], [0, 1]], [[1, 0], [1, 1]]], 3, "SL(2,3)"),
        lambda: dihedral(12),
        lambda: dicyclic(6, "Dic6"),
        lambda: gp.table_product(dihedral(4), gp.cyclic(3)),
        lambda: dihedral(13),
        lambda: heisenberg_group(3),
        lambda: semidirect_cyclic(9, 3, 4, "C9:C3"),
    ]
    for make in makers:
        G = make()
        if G.size <= max_order:
            out.append(G)
    return out


def group_by_name(name: str) -> gp.FiniteGroup:
    for G in small_groups(27):
        if G.name == name:
            return G
    raise KeyError(name)


# ---------------------------------------------------------------------------
# surjections and squares


@dataclass
class SurjectionCase:
    name: str
    f: gp.GroupMorphism


def quotient_maps(G: gp.Group) -> list[gp.GroupMorphism]:
    return [gp.quotient(G, N)[1] for N in gp.all_normal_subgroups(G)]


def relabelled(f: gp.GroupMorphism, rng) -> gp.GroupMorphism:
    """``f`` precomposed with a random relabelling of its (table) domain."""
    G = f.domain
    perm = rng.permutation(G.size)
    H = gp.relabel(G, perm)
    images = np.empty(G.size, dtype=INT)
    images[perm] = f(G.elements)
    return gp.GroupMorphism(H, f.codomain, images=images)


def surjection_corpus(max_order: int = 27, min_count: int = 200, seed: int = 0) -> list[SurjectionCase]:
    """Every quotient map of every library group, topped up with relabelled copies."""
    rng = np.random.default_rng(seed)
    cases = []
    for G in small_groups(max_order):
        for f in quotient_maps(G):
            cases.append(SurjectionCase(f"{G.name}->{f.codomain.order}", f))
    base = list(cases)
    k = 0
    while len(cases) < min_count:
        c = base[k % len(base)]
        cases.append(SurjectionCase(c.name + "'", relabelled(c.f, rng)))
        k += 1
    return cases


def quotient_square(G: gp.Group, N1, N2, N) -> Cube:
    """Square ``G -> G/N1, G -> G/N2`` over ``G/N``; a regular pushout iff ``N = N1 N2``."""
    Q1, q1 = gp.quotient(G, N1)
    Q2, q2 = gp.quotient(G, N2)
    Q, q = gp.quotient(G, N)
    a1 = gp.factor_through(q1, q)
    a2 = gp.factor_through(q2, q)
    # direction 1 = b: G -> G/N1, direction 2 = f0: G -> G/N2
    return square(q2, a1, q1, a2)


def square_corpus(max_order: int = 27, count: int = 500, seed: int = 0) -> list[tuple[str, Cube, bool]]:
    """Commuting squares of quotient maps with the expected regularity verdict."""
    rng = np.random.default_rng(seed)
    out = []
    for G in small_groups(max_order):
        normals = gp.all_normal_subgroups(G)
        for N1, N2 in iproduct(normals, repeat=2):
            J = gp.join(N1, N2)
            for N in normals:
                if gp.is_subgroup_of(J, N):
                    regular = N.order == J.order
                    out.append((f"{G.name}[{N1.order},{N2.order},{N.order}]", (G, N1, N2, N), regular))
    # balanced sample: half engineered failures, half regular pushouts
    bad = [i for i, c in enumerate(out) if not c[2]]
    good = [i for i, c in enumerate(out) if c[2]]
    half = (count + 1) // 2
    pick = list(rng.permutation(bad)[:half]) + list(rng.permutation(good)[: count - min(half, len(bad))])
    keep = sorted(int(i) for i in pick)
    return [(out[i][0], quotient_square(*out[i][1]), out[i][2]) for i in keep]


def double_extensions(max_order: int = 27, limit: int | None = None) -> list[tuple[str, Cube]]:
    """Pullback-shaped double extensions ``G -> G/N1, G/N2 -> G/N1N2``."""
    out = []
    for G in small_groups(max_order):
        normals = gp.all_normal_subgroups(G)
        for i, N1 in enumerate(normals):
            for N2 in normals[i:]:
                out.append((f"{G.name}[{N1.order},{N2.order}]", quotient_square(G, N1, N2, gp.join(N1, N2))))
                if limit is not None and len(out) >= limit:
                    return out
    return out


def double_presentations(count: int = 20, variety: str = "group:c2:p3") -> list[tuple[str, Cube]]:
    """Seeded double presentations of C3xC3 (initial vertex order 729) plus small extras."""
    C3 = gp.cyclic(3)
    A = _abelian(3, 3)
    out = [("C1", n_presentation(gp.cyclic(1), variety, 2)), ("C3", n_presentation(C3, variety, 2))]
    seed = 0
    while len(out) < count:
        out.append((f"C3xC3#{seed}", n_presentation(A, variety, 2, seed=seed if seed else None)))
        seed += 1
    return out


# ---------------------------------------------------------------------------
# Lie algebras


def small_lie_algebras(p: int = 3) -> list[lie.LieAlgebra]:
    """Nilpotent algebras of dimension at most 4 over F_p."""
    return [
        lie.abelian_lie(p, 1),
        lie.abelian_lie(p, 2),
        lie.abelian_lie(p, 3),
        lie.heisenberg_lie(p),
        lie.make_lie(p, 4, {(0, 1): [0, 0, 1, 0]}, name="heis+ab1"),
        lie.make_lie(p, 4, {(0, 1): [0, 0, 1, 0], (0, 2): [0, 0, 0, 1]}, name="filiform4"),
    ]


# ---------------------------------------------------------------------------
# precrossed modules


def action_module(C: gp.FiniteGroup, G: gp.FiniteGroup, act, boundary, name: str = "") -> px.TablePXMod:
    """Module from an action given as a function ``(g, m) -> m'`` on element codes."""
    action = np.array([[act(g, m) for m in range(C.size)] for g in range(G.size)], dtype=INT)
    return px.make_pxmod(C, G, action, np.asarray(boundary, dtype=INT), name=name)


def swap_module() -> px.TablePXMod:
    """``C2 x C2`` with ``C2`` swapping the factors and boundary ``(a, b) -> a + b``; not crossed."""
    V = _abelian(2, 2)
    G = gp.cyclic(2)
    swap = lambda g, m: m if g == 0 else (m % 2) * 2 + m // 2
    return action_module(V, G, swap, [0, 1, 1, 0], name="swap")


def pxmod_corpus(max_size: int = 8) -> list[px.TablePXMod]:
    """Precrossed modules with ``|C|, |G| <= max_size``, crossed and not."""
    small = [G for G in small_groups(max_size)]
    out = [px.conjugation_module(C) for C in small]
    for C in small:
        for G in (gp.cyclic(1), gp.cyclic(2), gp.cyclic(3)):
            out.append(px.trivial_action_module(C, G))
    out.append(swap_module())
    V = _abelian(2, 2)
    swap = lambda g, m: m if g == 0 else (m % 2) * 2 + m // 2
    out.append(action_module(V, gp.cyclic(2), swap, [0, 0, 0, 0], name="swap0"))
    out.append(action_module(gp.cyclic(3), gp.cyclic(2), lambda g, m: m if g == 0 else (-m) % 3, [0, 0, 0], name="inv3"))
    out.append(action_module(gp.cyclic(4), gp.cyclic(2), lambda g, m: m if g == 0 else (-m) % 4, [0, 1, 0, 1], name="inv4"))
    S3 = dihedral(3)
    sign = [_perm_sign(S3, x) for x in range(S3.size)]
    out.append(px.trivial_action_module(S3, gp.cyclic(2)))
    out.append(action_module(S3, gp.cyclic(2), lambda g, m: m, sign, name="S3-sign"))
    # C2 x C2 under S3 = GL(2,2), trivial boundary
    out.append(_gl22_module())
    # C4 acting through its C2 quotient
    out.append(action_module(V, gp.cyclic(4), lambda g, m: m if g % 2 == 0 else (m % 2) * 2 + m // 2,
                             [0, 0, 0, 0], name="swap-C4"))
    return [P for P in out if P.C.size <= max_size and P.G.size <= max_size]


def _perm_sign(G: gp.FiniteGroup, x: int) -> int:
    """0 on the derived subgroup, 1 off it (the sign character when the index is 2)."""
    D = gp.derived(gp.whole(G), 1)
    return 0 if D.contains(x) else 1


def _gl22_module() -> px.TablePXMod:
    V = _abelian(2, 2)
    # GL(2,2) acting on vectors coded 2a+b
    mats = [((1, 0), (0, 1)), ((0, 1), (1, 0)), ((1, 1), (0, 1)), ((1, 0), (1, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 0))]

    def mul(a, b):
        return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(2)) % 2 for j in range(2)) for i in range(2))

    G = closure_group([mats[1], mats[2]], mul, mats[0], "GL(2,2)")
    # recover the matrices in G's element order
    elems = [mats[0]]
    seen = {mats[0]: 0}
    i = 0
    while i < len(elems):
        for g in (mats[1], mats[2]):
            h = mul(elems[i], g)
            if h not in seen:
                seen[h] = len(elems)
                elems.append(h)
        i += 1

    def act(g, m):
        M = elems[g]
        a, b = m // 2, m % 2
        return ((M[0][0] * a + M[0][1] * b) % 2) * 2 + (M[1][0] * a + M[1][1] * b) % 2

    return action_module(V, G, act, [0, 0, 0, 0], name="GL22")


# ---------------------------------------------------------------------------
# precrossed-module extensions


def pxmod_quotient_square(X: px.PXSub, N1: px.PXSub, N2: px.PXSub):
    """``X -> X/N1, X -> X/N2`` over ``X/(N1 N2)``; always a double extension."""
    _, q1 = px.px_quotient(X, N1)
    _, q2 = px.px_quotient(X, N2)
    _, q = px.px_quotient(X, px.px_join(N1, N2))
    return square(q2, px.px_factor_through(q1, q), q1, px.px_factor_through(q2, q))


def pxmod_extensions(max_size: int = 4, n: int = 1, limit: int | None = None) -> list[tuple[str, Cube]]:
    """Quotient arrows (n=1) or quotient squares (n=2) of corpus modules."""
    from .cubes import arrow_cube

    out = []
    for P in pxmod_corpus(max_size):
        X = px.whole(P)
        normals = px.normal_submodules(X)
        if n == 1:
            for N in normals:
                out.append((f"{P.name}/{N.M.order},{N.S.order}", arrow_cube(px.px_quotient(X, N)[1])))
        else:
            for i, N1 in enumerate(normals):
                for N2 in normals[i:]:
                    out.append((f"{P.name}[{N1.M.order},{N2.M.order}]", pxmod_quotient_square(X, N1, N2)))
        if limit is not None and len(out) >= limit:
            return out[:limit]
    return out
