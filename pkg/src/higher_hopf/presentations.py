"""Relatively free objects and (higher) presentations.

Supported varieties:

* ``group:c2:pP`` groups of exponent P (odd) and class <= 2,
* ``group:abelian:pP`` (also ``group:c1:pP``) elementary abelian P-groups,
* ``lie:cC:pP`` nilpotent Lie algebras of class <= C (C <= 3) over F_P.

Free class-2 exponent-p groups use the normal form ``(u, v)`` with
``u in F_p^d`` and ``v in F_p^{C(d,2)}``; the product is
``(u, v)(u', v') = (u + u', v + v' + beta(u, u'))`` where
``beta(u, u')_{ij} = u_j u'_i`` for ``i < j``.

Higher presentations come from the split-relator doubling in
:func:`extend_presentation`; every result is run through the recursive
extension validator before it is returned.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from . import groups as gp
from . import lie
from .config import LIMITS
from .cubes import Cube, bit, validate_extension
from .errors import (
    NotAPresentation,
    NotInVariety,
    SizeLimitExceeded,
    UnsupportedClass,
    UnsupportedVariety,
    ValidationFailed,
)

INT = np.int64


# ---------------------------------------------------------------------------
# varieties


@dataclass(frozen=True)
class VarietySpec:
    backend: str
    c: int
    p: int

    def __str__(self):
        if self.backend == "group" and self.c == 1:
            return f"group:abelian:p{self.p}"
        return f"{self.backend}:c{self.c}:p{self.p}"


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % q for q in range(2, int(n**0.5) + 1))


def parse_variety(text) -> VarietySpec:
    if isinstance(text, VarietySpec):
        return text
    m = re.fullmatch(r"(group|lie):(abelian|c(\d+)):p(\d+)", str(text).strip())
    if not m:
        raise UnsupportedVariety(f"cannot parse variety {text!r}", variety=str(text))
    backend, cls, c, p = m.group(1), m.group(2), m.group(3), int(m.group(4))
    c = 1 if cls == "abelian" else int(c)
    if not _is_prime(p):
        raise UnsupportedVariety(f"{p} is not prime", variety=str(text))
    if backend == "group":
        if c not in (1, 2):
            raise UnsupportedVariety("group varieties support class 1 or 2 only", variety=str(text))
        if c == 2 and p == 2:
            raise UnsupportedVariety("class-2 exponent-2 groups are abelian; use group:abelian:p2")
    else:
        if not 1 <= c <= 3:
            raise UnsupportedClass(f"Lie class {c} is not supported (max 3)", c=c)
    return VarietySpec(backend, c, p)


# ---------------------------------------------------------------------------
# free class-2 exponent-p groups


class FreeNilpotentGroup(gp.RootGroup):
    """Free group of exponent ``p`` and class <= ``c`` (c in {1, 2}) on ``d`` generators."""

    def __init__(self, d: int, p: int, c: int = 2):
        self.d, self.p, self.c = d, p, c
        self.pairs = list(combinations(range(d), 2)) if c >= 2 else []
        self.m = len(self.pairs)
        self.size = p ** (d + self.m)
        self._identity = 0
        self.weights = p ** np.arange(d + self.m, dtype=INT)
        self._pi = np.array([i for i, _ in self.pairs], dtype=INT)
        self._pj = np.array([j for _, j in self.pairs], dtype=INT)
        self.free_basis = tuple(int(p**i) for i in range(d))
        self.name = f"F(d={d},c={c},p={p})"

    @property
    def identity(self):
        return self._identity

    def _digits(self, a):
        a = np.asarray(a, dtype=INT)
        return (a[..., None] // self.weights) % self.p

    def _encode(self, digits):
        return (digits % self.p) @ self.weights

    def _mul(self, a, b):
        da, db = self._digits(a), self._digits(b)
        out = da + db
        if self.m:
            u, u2 = da[..., : self.d], db[..., : self.d]
            out[..., self.d :] += u[..., self._pj] * u2[..., self._pi]
        return self._encode(out)

    def _inv(self, a):
        da = self._digits(a)
        out = -da
        if self.m:
            u = da[..., : self.d]
            out[..., self.d :] += u[..., self._pj] * u[..., self._pi]
        return self._encode(out)

    @property
    def gens(self):
        return self.free_basis

    def generator(self, i: int) -> int:
        return self.free_basis[i]

    def __repr__(self):
        return f"<FreeNilpotentGroup d={self.d} c={self.c} p={self.p} order={self.size}>"


def free_order(variety: VarietySpec, d: int) -> int:
    if variety.backend == "group":
        return variety.p ** (d + (comb(d, 2) if variety.c == 2 else 0))
    return variety.p ** free_lie_dim(d, variety.c)


def free_lie_dim(d: int, c: int) -> int:
    dim = d
    if c >= 2:
        dim += comb(d, 2)
    if c >= 3:
        dim += (d**3 - d) // 3
    return dim


def free_object(variety, d: int):
    """Relatively free object on ``d`` generators; returns ``(carrier, generators)``.

    Group generators are element codes, Lie generators are basis row vectors.
    """
    v = parse_variety(variety)
    if d < 0:
        raise ValueError("number of generators must be nonnegative")
    if v.backend == "group":
        order = free_order(v, d)
        if order > LIMITS.carrier_cap:
            raise SizeLimitExceeded(
                f"free object of order {order} exceeds the carrier cap", order=order
            )
        F = FreeNilpotentGroup(d, v.p, v.c)
        return F, list(F.free_basis)
    dim = free_lie_dim(d, v.c)
    if dim > LIMITS.lie_dim_cap:
        raise SizeLimitExceeded(f"free Lie algebra of dimension {dim} exceeds the cap", dim=dim)
    if d == 0:
        L = lie.LieAlgebra(v.p, np.zeros((0, 0, 0), dtype=INT))
    else:
        L, _ = lie.free_nilpotent(d, v.c, v.p)
    X = lie.whole(L)
    X.free_basis = np.eye(L.dim, dtype=INT)[:d]
    return X, X.free_basis


def free_generators(X):
    basis = getattr(X, "free_basis", None)
    if basis is None:
        raise NotAPresentation("initial vertex is not a marked free object")
    return basis


# ---------------------------------------------------------------------------
# variety membership and freeness


def in_variety(X, variety) -> bool:
    v = parse_variety(variety)
    if v.backend == "group":
        if not isinstance(X, gp.Group):
            return False
        elems = X.elements
        if not np.all(X.power(elems, v.p) == X.identity):
            return False
        cls = gp.nilpotency_class(X)
        return isinstance(cls, int) and cls <= v.c
    if not isinstance(X, (lie.LieSub, lie.LieAlgebra)):
        return False
    X = lie.whole(X)
    if X.p != v.p:
        return False
    try:
        return lie.nilpotency_class(X) <= v.c
    except Exception:
        return False


def _frattini_rank(X, v: VarietySpec) -> int:
    if v.backend == "group":
        D = gp.commutator_subgroup(X, X, X)
        q = X.order // D.order
        r = 0
        while q > 1:
            q //= v.p
            r += 1
        return r
    X = lie.whole(X)
    return X.dim - lie.bracket_ideal(X, X, X).dim


def is_free(X, variety) -> bool:
    """Is ``X`` relatively free in the variety (on ``rank(X/[X,X])`` generators)?"""
    v = parse_variety(variety)
    if v.backend == "group" and not isinstance(X, gp.Group):
        return False
    if v.backend == "lie" and not isinstance(X, (lie.LieSub, lie.LieAlgebra)):
        return False
    if not in_variety(X, v):
        return False
    d = _frattini_rank(X, v)
    size = X.order if v.backend == "group" else lie.whole(X).order
    return size == free_order(v, d)


# ---------------------------------------------------------------------------
# presentations


@dataclass
class PresentationRecord:
    free: object
    generators: list
    onto: object
    relator_generators: list
    words: list = field(default_factory=list)
    variety: VarietySpec | None = None

    def cube(self) -> Cube:
        c = Cube(1, {0: self.onto.domain, 1: self.onto.codomain}, {(0, 1): self.onto}, variety=self.variety)
        return c


def _rng(seed):
    return None if seed is None else np.random.default_rng(seed)


def _order_candidates(candidates: np.ndarray, rng) -> np.ndarray:
    if rng is None:
        return candidates
    return candidates[rng.permutation(candidates.size)]


def shortest_word(G: gp.Group, gens, target: int, max_len: int = 12) -> list[tuple[int, int]]:
    """Shortest word ``[(generator index, ±1), ...]`` evaluating to ``target``.

    Breadth-first over the Cayley graph; letters are tried in the order
    ``x0, x0^-1, x1, x1^-1, ...`` so ties resolve lexicographically.
    """
    gens = [int(g) for g in gens]
    letters = []
    for k, g in enumerate(gens):
        letters.append(((k, 1), g))
        letters.append(((k, -1), int(G.inv(g))))
    start = G.identity
    if target == start:
        return []
    parent = {start: None}
    frontier = [start]
    for _ in range(max_len):
        nxt = []
        for x in frontier:
            for letter, g in letters:
                y = int(G.mul(x, g))
                if y not in parent:
                    parent[y] = (x, letter)
                    if y == target:
                        word = []
                        while parent[y] is not None:
                            y, l = parent[y]
                            word.append(l)
                        return word[::-1]
                    nxt.append(y)
        frontier = nxt
    raise ValueError("no word found within the length bound")


def _normal_generators(F, K, rng) -> list[int]:
    """Deterministic (or seeded) normal generating set of ``K`` in ``F``."""
    cand = _order_candidates(K.elements[K.elements != F.identity], rng)
    chosen: list[int] = []
    cur = gp.trivial_subgroup(F)
    for x in cand.tolist():
        if cur.order == K.order:
            break
        if cur.contains(x):
            continue
        chosen.append(int(x))
        cur = gp.normal_closure(F, chosen)
    return chosen


def _lie_ideal_generators(F: lie.LieSub, K: lie.LieSub, rng) -> np.ndarray:
    rows = K.basis
    if rng is not None and rows.shape[0]:
        # random invertible recombination of the kernel basis
        while True:
            M = rng.integers(0, K.p, size=(rows.shape[0], rows.shape[0]))
            if lie.rank(M, K.p) == rows.shape[0]:
                break
        rows = (M @ rows) % K.p
    chosen = []
    cur = lie.zero_sub(F)
    for r in rows:
        if cur.dim == K.dim:
            break
        if cur.contains(r[None]):
            continue
        chosen.append(r)
        cur = lie.ideal_closure(F, np.array(chosen))
    return np.array(chosen, dtype=INT).reshape(-1, F.ambient.dim)


def present(A, variety, seed=None, generators=None) -> PresentationRecord:
    """A 1-presentation ``F -> A`` on a minimal generating family of ``A``.

    Without a seed the generators are the lowest-index elements independent
    modulo the Frattini subobject; a seed permutes the candidates (and the
    relator choice) to give a different presentation of the same object.
    """
    v = parse_variety(variety)
    if not in_variety(A, v):
        raise NotInVariety(f"object does not lie in {v}", variety=str(v))
    rng = _rng(seed)
    if v.backend == "group":
        return _present_group(A, v, rng, generators)
    return _present_lie(lie.whole(A), v, rng, generators)


def _present_group(A, v, rng, generators):
    Phi = gp.commutator_subgroup(A, A, A)
    if generators is None:
        gens: list[int] = []
        cur = Phi
        for x in _order_candidates(A.elements, rng).tolist():
            if cur.order == A.order:
                break
            if cur.contains(x):
                continue
            gens.append(int(x))
            cur = gp.join(Phi, gp.subgroup_generated(A, gens))
    else:
        gens = [int(g) for g in generators]
    F, xs = free_object(v, len(gens))
    onto = gp.extend_homomorphism(F, gens, A, gens=xs)
    if not gp.is_surjective(onto):
        raise NotInVariety("chosen elements do not generate the object")
    K = gp.kernel(onto)
    rels = _normal_generators(F, K, rng)
    words = [shortest_word(F, xs, r) for r in rels]
    return PresentationRecord(F, xs, onto, rels, words, v)


def _present_lie(A: lie.LieSub, v, rng, generators):
    p = A.p
    D = lie.bracket_ideal(A, A, A)
    if generators is None:
        cand = A.basis
        if rng is not None and cand.shape[0]:
            while True:
                M = rng.integers(0, p, size=(cand.shape[0], cand.shape[0]))
                if lie.rank(M, p) == cand.shape[0]:
                    break
            cand = (M @ cand) % p
        gens = []
        cur = D
        for r in cand:
            if cur.dim == A.dim:
                break
            if cur.contains(r[None]):
                continue
            gens.append(r)
            cur = lie.sum_(D, lie.LieSub(A.ambient, np.array(gens)))
        gens = np.array(gens, dtype=INT).reshape(-1, A.ambient.dim)
    else:
        gens = np.array(generators, dtype=INT).reshape(-1, A.ambient.dim)
    F, xs = free_object(v, gens.shape[0])
    if gens.shape[0] == 0:
        onto = lie.LieMorphism(F, A, np.zeros((A.ambient.dim, F.ambient.dim), dtype=INT))
    else:
        onto = lie.extend_lie_morphism(F, gens, A, gens=xs)
    if not lie.is_surjective(onto):
        raise NotInVariety("chosen vectors do not generate the algebra")
    K = lie.kernel(onto)
    rels = _lie_ideal_generators(F, K, rng)
    return PresentationRecord(F, xs, onto, list(rels), [r.tolist() for r in rels], v)


def canonical_presentation(A, variety) -> PresentationRecord:
    """Free object on every element of ``A`` with the evaluation map."""
    v = parse_variety(variety)
    if not in_variety(A, v):
        raise NotInVariety(f"object does not lie in {v}")
    if v.backend == "group":
        n = A.order
        order = free_order(v, n)
        if order > LIMITS.carrier_cap:
            exponent = n + (comb(n, 2) if v.c == 2 else 0)
            raise SizeLimitExceeded(
                f"canonical presentation needs a free object of order {v.p}^{exponent}",
                order_exponent=exponent,
            )
        F, xs = free_object(v, n)
        onto = gp.extend_homomorphism(F, A.elements, A, gens=xs)
        K = gp.kernel(onto)
        return PresentationRecord(F, xs, onto, _normal_generators(F, K, None), [], v)
    A = lie.whole(A)
    n = A.order
    dim = free_lie_dim(n, v.c)
    if dim > LIMITS.lie_dim_cap:
        raise SizeLimitExceeded(f"canonical presentation needs dimension {dim}", dim=dim)
    F, xs = free_object(v, n)
    # every vector of A, in lexicographic coordinate order
    coords = np.array(np.unravel_index(np.arange(n), (A.p,) * A.dim)).T.reshape(n, A.dim)
    vecs = (coords @ A.basis) % A.p if A.dim else np.zeros((n, A.ambient.dim), dtype=INT)
    onto = lie.extend_lie_morphism(F, vecs, A, gens=xs)
    K = lie.kernel(onto)
    return PresentationRecord(F, xs, onto, list(_lie_ideal_generators(F, K, None)), [], v)


# ---------------------------------------------------------------------------
# split-relator doubling


def _kernel(be_name, f):
    return gp.kernel(f) if be_name == "group" else lie.kernel(f)


def extend_presentation(cube: Cube, variety=None, seed=None) -> Cube:
    """Turn a k-presentation into a (k+1)-presentation.

    The input becomes the face containing the new direction ``k+1``.  For
    each ``T ⊊ ⟨k⟩`` a family ``Y_T`` of normal generators of
    ``⋂_{i∉T} K[f_i]`` is chosen; the new vertex ``B_S`` is free on the
    basis ``x`` of ``f_∅`` together with every ``y ∈ Y_T`` with ``S ⊆ T``.
    Direction ``k+1`` kills the ``y``'s and maps ``x`` to its image in
    ``f_S``; direction ``i ≤ k`` keeps ``y ∈ Y_T`` when ``i ∈ T`` and
    otherwise sends it to its relator, written in ``x``.
    """
    v = parse_variety(variety or cube.variety)
    k = cube.n
    be = cube.backend.name
    if be not in ("group", "lie"):
        raise NotAPresentation("presentations are only built for the group and Lie backends")
    F1 = cube.initial
    xs = free_generators(F1)
    rng = _rng(seed)
    full = cube.full
    kernels = {i: _kernel(be, cube.arrows[(0, i)]) for i in range(1, k + 1)}
    # relator families
    Y: dict[int, list] = {}
    for T in range(full):  # proper subsets of <k>
        outside = [i for i in range(1, k + 1) if not T & bit(i)]
        K = kernels[outside[0]]
        for i in outside[1:]:
            K = gp.intersect(K, kernels[i]) if be == "group" else lie.intersect(K, kernels[i])
        if be == "group":
            Y[T] = _normal_generators(F1, K, rng)
        else:
            Y[T] = list(_lie_ideal_generators(F1, K, rng))
    # generator layout of each new vertex: x's first, then y's by (T, index)
    layout: dict[int, list[tuple[int, int]]] = {}
    for S in range(full + 1):
        layout[S] = [(T, j) for T in range(full) if (S & ~T) == 0 for j in range(len(Y[T]))]
    nx = len(xs) if be == "group" else np.asarray(xs).shape[0]
    B: dict[int, object] = {}
    Bgens: dict[int, object] = {}
    for S in range(full + 1):
        B[S], Bgens[S] = free_object(v, nx + len(layout[S]))
    top = bit(k + 1)
    verts: dict[int, object] = {}
    arrows: dict[tuple[int, int], object] = {}
    for S in range(full + 1):
        verts[S] = B[S]
        verts[S | top] = cube.vertices[S]
        for i in range(1, k + 1):
            if not S & bit(i):
                arrows[(S | top, i)] = cube.arrows[(S, i)]
    for S in range(full + 1):
        gens_S = Bgens[S]
        # direction k+1: B_S -> f_S
        fS = cube.arrow(0, S)
        tgt = cube.vertices[S]
        if be == "group":
            x_img = fS(np.asarray(xs, dtype=INT)).tolist()
            imgs = x_img + [tgt.identity] * len(layout[S])
            arrows[(S, k + 1)] = gp.extend_homomorphism(B[S], imgs, tgt, gens=gens_S)
        else:
            x_img = fS.apply(np.asarray(xs))
            imgs = np.concatenate([x_img, np.zeros((len(layout[S]), tgt.ambient.dim), dtype=INT)])
            arrows[(S, k + 1)] = lie.extend_lie_morphism(B[S], imgs, tgt, gens=np.asarray(gens_S))
        # directions i <= k inside the new face
        for i in range(1, k + 1):
            if S & bit(i):
                continue
            S2 = S | bit(i)
            gens_2 = Bgens[S2]
            pos2 = {ty: idx for idx, ty in enumerate(layout[S2])}
            if be == "group":
                imgs = list(gens_2[:nx])
                section = None
                for T, j in layout[S]:
                    if T & bit(i):
                        imgs.append(gens_2[nx + pos2[(T, j)]])
                    else:
                        # the relator, rewritten in the x's of the target
                        if section is None:
                            section = gp.extend_homomorphism(F1, gens_2[:nx], B[S2], gens=xs)
                        imgs.append(int(section(Y[T][j])))
                arrows[(S, i)] = gp.extend_homomorphism(B[S], imgs, B[S2], gens=gens_S)
            else:
                rows = [np.asarray(gens_2[a]) for a in range(nx)]
                for T, j in layout[S]:
                    if T & bit(i):
                        rows.append(np.asarray(gens_2[nx + pos2[(T, j)]]))
                    else:
                        rows.append(_lie_transport(F1, xs, Y[T][j], B[S2], gens_2[:nx]))
                imgs = np.array(rows, dtype=INT).reshape(-1, B[S2].ambient.dim)
                arrows[(S, i)] = lie.extend_lie_morphism(B[S], imgs, B[S2], gens=np.asarray(gens_S))
    out = Cube(k + 1, verts, arrows, variety=v)
    report = validate_extension(out, v)
    if not (report.is_extension and report.is_presentation):
        raise ValidationFailed(
            "split-relator doubling produced an invalid presentation",
            failures=[f.to_json() for f in report.failures],
        )
    return out


def _lie_transport(F1, xs, r, target, target_xs) -> np.ndarray:
    phi = lie.extend_lie_morphism(F1, np.asarray(target_xs), target, gens=np.asarray(xs))
    return phi.apply(np.asarray(r)[None])[0]


def n_presentation(A, variety, n: int, seed=None) -> Cube:
    """An n-presentation of ``A``: present once, then double ``n - 1`` times."""
    if n < 1:
        raise ValueError("n must be >= 1")
    v = parse_variety(variety)
    rec = present(A, v, seed=seed)
    cube = rec.cube()
    report = validate_extension(cube, v)
    if not report.is_presentation:
        raise ValidationFailed("1-presentation failed validation")
    for step in range(n - 1):
        cube = extend_presentation(cube, v, seed=None if seed is None else seed * 7919 + step + 1)
    return cube
