"""Exhaustive identity checks shared by the unit and acceptance suites."""

import numpy as np

from higher_hopf import groups as gp
from higher_hopf import pxmod as px


def pwh_failures(P) -> int:
    """Count violations of the two Peiffer-Witt-Hall identities over all triples of C."""
    C = P.C
    e = C.elements
    a, b1, b2 = (x.ravel() for x in np.meshgrid(e, e, e, indexing="ij"))
    mul, inv, pe = C._mul, C._inv, px.peiffer_element
    t = P.act(P.boundary(a), b1)
    lhs1 = pe(P, a, mul(b1, b2))
    rhs1 = mul(mul(pe(P, a, b1), t), mul(pe(P, a, b2), inv(t)))
    a1, a2, b = a, b1, b2
    lhs2 = pe(P, mul(a1, a2), b)
    rhs2 = mul(mul(mul(a1, pe(P, a2, b)), inv(a1)), pe(P, a1, P.act(P.boundary(a2), b)))
    return int(np.count_nonzero(lhs1 != rhs1) + np.count_nonzero(lhs2 != rhs2))


def crossed_iff_peiffer_trivial(P) -> bool:
    e = P.C.elements
    all_trivial = bool(np.all(px.peiffer_element(P, np.repeat(e, e.size), np.tile(e, e.size)) == P.C.identity))
    gen_trivial = px.peiffer_commutator(P, px.whole(P), px.whole(P)).M.order == 1
    return px.is_crossed(P) == all_trivial == gen_trivial


def peiffer_reduces_to_commutator(C) -> bool:
    """Under trivial action and boundary the Peiffer commutator is the group commutator."""
    P = px.trivial_action_module(C)
    X = px.whole(P)
    for M in gp.all_normal_subgroups(C):
        for N in gp.all_normal_subgroups(C):
            A = px.PXSub(P, M, gp.whole(P.G))
            B = px.PXSub(P, N, gp.whole(P.G))
            if not gp.subgroups_equal(px.peiffer_commutator(X, A, B).M, gp.commutator_subgroup(C, M, N)):
                return False
    return True


# --- join lemma, group version ---------------------------------------------


def _pair_fiber(M, D):
    """``M x_{M/D} M`` as pairs ``(m1, m2)`` with ``m1^-1 m2`` in ``D``."""
    m = M.elements
    left, right = np.repeat(m, m.size), np.tile(m, m.size)
    keep = D.contains(M.mul(M.inv(left), right))
    return left[keep], right[keep]


def _cyclic_canon(root):
    """Smallest generator of ``<x>`` for every ``x`` of ``root``."""
    out = np.empty(root.size, dtype=np.int64)
    for x in root.elements:
        pows = [int(x)]
        while pows[-1] != root.identity:
            pows.append(int(root.mul(pows[-1], x)))
        k = len(pows)
        out[x] = min(pows[j - 1] for j in range(1, k + 1) if np.gcd(j, k) == 1)
    return out


def cyclic_representatives(root, conjugators):
    """One generator per cyclic subgroup of ``root`` up to conjugation by ``conjugators``."""
    canon = _cyclic_canon(root)
    e = root.elements
    rep = canon[e]
    for g in conjugators:
        rep = np.minimum(rep, canon[root.conj(np.full(e.size, g), e)])
    return np.unique(rep)


def join_lemma_group_cases(G, exhaustive_B: bool = False):
    """Yield (lhs, rhs) for ``[M x_{M/M∩N} M, B] = [0 x (M∩N), B] . [Δ_M, B]``.

    Both sides send a join of B's to the join of the values, so cyclic B
    (up to diagonal conjugation, which fixes every term) cover all subgroups.
    ``exhaustive_B`` walks the whole subgroup lattice of ``G x G`` instead.
    """
    GG = gp.direct_product(G, G)
    root = GG.ambient
    code = lambda x, y: gp.pair_code(G, G, x, y)
    normals = gp.all_normal_subgroups(G)
    if exhaustive_B:
        Bs = gp.all_subgroups(root)
    else:
        reps = cyclic_representatives(root, code(G.elements, G.elements))
        Bs = [gp.Subgroup(root, gens=[int(b)]) for b in reps]
    seen = set()
    for M in normals:
        for N in normals:
            D = gp.intersect(M, N)
            key = (M.elements.tobytes(), D.elements.tobytes())
            if key in seen:
                continue
            seen.add(key)
            l, r = _pair_fiber(M, D)
            fib = gp.Subgroup(root, gens=gp.greedy_generators(root, np.unique(code(l, r))))
            zeroD = gp.Subgroup(root, gens=[code(G.identity, d) for d in D.gens] or [root.identity])
            diagM = gp.Subgroup(root, gens=[code(m, m) for m in M.gens] or [root.identity])
            for B in Bs:
                lhs = gp.commutator_subgroup(root, fib, B)
                rhs = gp.join(gp.commutator_subgroup(root, zeroD, B), gp.commutator_subgroup(root, diagM, B))
                yield lhs, rhs


def witt_hall_subgroup_cases(G):
    """``[A, B1 B2] = [A, B1][A, B2]`` and ``[A1 A2, B] = [A1, B][A2, B]`` over normal B's / A's."""
    subs = gp.all_subgroups(G)
    normals = gp.all_normal_subgroups(G)
    for A in subs:
        for B1 in normals:
            for B2 in normals:
                lhs = gp.commutator_subgroup(G, A, gp.join(B1, B2))
                rhs = gp.join(gp.commutator_subgroup(G, A, B1), gp.commutator_subgroup(G, A, B2))
                yield lhs, rhs
                lhs = gp.commutator_subgroup(G, gp.join(B1, B2), A)
                rhs = gp.join(gp.commutator_subgroup(G, B1, A), gp.commutator_subgroup(G, B2, A))
                yield lhs, rhs


# --- join lemma, module version --------------------------------------------


def _distinct_by(items, key):
    out = {}
    for x in items:
        out.setdefault(key(x), x)
    return list(out.values())


def join_lemma_module_cases(P):
    """Yield (lhs, rhs) C-components of the join lemma for precrossed modules.

    Peiffer commutators only see C-components, so configurations are
    deduplicated on those.  When ``C x C`` is crossed every Peiffer
    commutator inside it is trivial, and the single pair
    ``(<CxC, CxC>, 1)`` settles all configurations at once.
    """
    X = px.whole(P)
    XX = px.direct_product(X, X)
    top = px.peiffer_commutator(XX, XX, XX)
    if top.M.order == 1:
        yield top.M, gp.trivial_subgroup(top.M.parent)
        return
    mod = XX.module
    cC, cG = P.C.size, P.G.size
    normals = px.normal_submodules(X)
    Bs = px.normal_submodules(XX, one_per_M=True) + [px.diagonal_sub(XX, K) for K in normals]
    Bs = _distinct_by(Bs, lambda B: B.M.elements.tobytes())

    def sub(Mpairs, Spairs):
        M = gp.Subgroup(XX.M, gens=gp.greedy_generators(mod.C, np.unique(Mpairs[0] * cC + Mpairs[1])))
        S = gp.Subgroup(XX.S, gens=gp.greedy_generators(mod.G, np.unique(Spairs[0] * cG + Spairs[1])))
        return px.PXSub(mod, M, S)

    seen = set()
    for Y in normals:
        for Z in normals:
            D = px.px_intersect(Y, Z)
            key = (Y.M.elements.tobytes(), D.M.elements.tobytes())
            if key in seen:
                continue
            seen.add(key)
            fib = sub(_pair_fiber(Y.M, D.M), _pair_fiber(Y.S, D.S))
            one_c, one_g = np.array([P.C.identity]), np.array([P.G.identity])
            zeroD = sub(
                (np.repeat(one_c, D.M.order), D.M.elements),
                (np.repeat(one_g, D.S.order), D.S.elements),
            )
            diag = px.diagonal_sub(XX, Y)
            for B in Bs:
                lhs = px.peiffer_commutator(XX, fib, B)
                rhs = px.px_join(px.peiffer_commutator(XX, zeroD, B), px.peiffer_commutator(XX, diag, B))
                yield lhs.M, rhs.M
