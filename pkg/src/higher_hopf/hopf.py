"""J operators, the two evaluators of L_n and Hopf quotients.

``L_closed`` multiplies commutator terms over covers of ``⟨n⟩``:

* ``ab``:       ``[X_I, X_J]`` over pairs with ``I ∪ J = ⟨n⟩``,
* ``nil:k``:    left-normed ``[[X_{I_1}, X_{I_2}], ..., X_{I_{k+1}}]`` over (k+1)-covers,
* ``sol:k``:    ``D_k(X_{I_1}, ..., X_{I_{2^k}})`` over 2^k-covers,
* ``peiffer``:  Peiffer commutators ``<X_I, X_J>`` (precrossed modules only),

where ``X_I = ⋂_{i ∈ I} K[f_i]`` and ``X_∅`` is the initial vertex.
``L_categorical`` instead runs the kernel-pair recursion
``L_n[f] = π₂(L_{n-1}[R[f]] ∩ K[π₁])`` down to ``L_0 = J``.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from . import groups as gp
from . import lie
from . import pxmod as px
from .backends import Backend, backend_of
from .config import LIMITS
from .cubes import (
    Cube,
    kernel_pair_extension,
    require_validated,
    validate_extension,
)
from .errors import (
    CriterionMismatch,
    InvarianceViolation,
    NotAPresentation,
    NotValidated,
    SizeLimitExceeded,
    UnsupportedReflectorBackend,
)


@dataclass(frozen=True)
class Reflector:
    kind: str  # "ab" | "nil" | "sol" | "peiffer"
    k: int = 1

    @property
    def arity(self) -> int:
        if self.kind == "nil":
            return self.k + 1
        if self.kind == "sol":
            return 2**self.k
        return 2

    def __str__(self):
        return self.kind if self.kind in ("ab", "peiffer") else f"{self.kind}:{self.k}"

    def check_backend(self, be: Backend):
        if (self.kind == "peiffer") != (be.name == "pxmod"):
            raise UnsupportedReflectorBackend(
                f"reflector {self} is not available on the {be.name} backend",
                reflector=str(self),
                backend=be.name,
            )


def parse_reflector(text) -> Reflector:
    if isinstance(text, Reflector):
        return text
    s = str(text).strip().lower()
    if s in ("ab", "peiffer"):
        return Reflector(s)
    m = re.fullmatch(r"(nil|sol):(\d+)", s)
    if not m or int(m.group(2)) < 1:
        raise UnsupportedReflectorBackend(f"unknown reflector {text!r}", reflector=str(text))
    return Reflector(m.group(1), int(m.group(2)))


def _term(refl: Reflector, be: Backend, P, xs):
    """Commutator term of the reflector applied to the subobjects ``xs`` of ``P``."""
    if refl.kind in ("ab", "peiffer"):
        return be.commutator(P, xs[0], xs[1])
    if refl.kind == "nil":
        acc = be.commutator(P, xs[0], xs[1])
        for X in xs[2:]:
            acc = be.commutator(P, acc, X)
        return acc
    level = list(xs)
    while len(level) > 1:
        level = [be.commutator(P, level[i], level[i + 1]) for i in range(0, len(level), 2)]
    return level[0]


def J_operator(reflector, A):
    """Verbal subobject: ``[A,A]``, ``Z_k A``, ``D_k A`` or ``<A,A>``."""
    refl = parse_reflector(reflector)
    be = backend_of(A)
    refl.check_backend(be)
    P = be.whole(A)
    return _term(refl, be, P, [P] * refl.arity)


def intersection_lattice(cube: Cube) -> dict:
    """``X_I`` for every ``I ⊆ ⟨n⟩`` (bitmask), with ``X_∅`` the initial vertex."""
    be = cube.backend
    X = {0: be.whole(cube.initial)}
    kernels = {i: be.kernel(cube.arrows[(0, i)]) for i in range(1, cube.n + 1)}
    for I in range(1, cube.full + 1):
        low = I & -I
        i = low.bit_length()
        rest = I & ~low
        X[I] = kernels[i] if rest == 0 else be.intersect(X[rest], kernels[i])
    return X


def covers(n: int, m: int):
    """All m-tuples of subsets of ``⟨n⟩`` (bitmasks) whose union is ``⟨n⟩``."""
    full = (1 << n) - 1
    for t in iproduct(range(full + 1), repeat=m):
        u = 0
        for s in t:
            u |= s
        if u == full:
            yield t


def L_closed(reflector, cube: Cube):
    """Closed-form ``L_n[f]`` as a normal subobject of the initial vertex."""
    refl = parse_reflector(reflector)
    be = cube.backend
    refl.check_backend(be)
    require_validated(cube)
    P = be.whole(cube.initial)
    if cube.n == 0:
        return J_operator(refl, P)
    X = intersection_lattice(cube)
    # identify equal X_I so that equal terms are computed once
    canon: dict[int, int] = {}
    reps: list[int] = []
    for I in sorted(X, key=lambda I: (bin(I).count("1"), I)):
        for r in reps:
            if be.equal(X[I], X[r]):
                canon[I] = r
                break
        else:
            canon[I] = I
            reps.append(I)
    seen: set = set()
    total = None
    for t in covers(cube.n, refl.arity):
        key = tuple(canon[I] for I in t)
        if key in seen:
            continue
        seen.add(key)
        if any(be.is_trivial(X[I]) for I in key):
            continue
        term = _term(refl, be, P, [X[I] for I in key])
        total = term if total is None else be.join(total, term)
    return total if total is not None else be.trivial(P)


MAX_CATEGORICAL_DEPTH = {"group": 2, "pxmod": 2, "lie": 3}


def L_categorical(reflector, cube: Cube, _top: bool = True):
    """``L_n[f] = π₂(L_{n-1}[R[f]] ∩ K[π₁])`` with ``L_0 = J``."""
    refl = parse_reflector(reflector)
    be = cube.backend
    refl.check_backend(be)
    if _top:
        if cube.n > MAX_CATEGORICAL_DEPTH[be.name]:
            raise SizeLimitExceeded(
                f"kernel-pair recursion is limited to n <= {MAX_CATEGORICAL_DEPTH[be.name]} on {be.name}",
                n=cube.n,
            )
        require_validated(cube)
    if cube.n == 0:
        return J_operator(refl, cube.initial)
    cap = LIMITS.lazy_carrier_cap if be.name == "group" else None
    kp = kernel_pair_extension(cube, cap=cap, validated=True)
    inner = L_categorical(refl, kp.R, _top=False)
    p1, p2 = kp.pi1[0], kp.pi2[0]
    meet = _kernel_within(be, p1, inner)
    return be.image(p2, meet)


def _kernel_within(be: Backend, f, X):
    """``X ∩ K[f]`` computed by enumerating ``X`` only."""
    if be.name == "group":
        e = X.elements
        return gp.Subgroup(f.domain, elements=e[f(e) == f.codomain.identity])
    if be.name == "lie":
        return lie.intersect(X, lie.kernel(f))
    M = X.M.elements
    S = X.S.elements
    return px.PXSub(
        X.module,
        gp.Subgroup(f.domain.M, elements=M[f.f1(M) == f.codomain.module.C.identity]),
        gp.Subgroup(f.domain.S, elements=S[f.f0(S) == f.codomain.module.G.identity]),
    )


def hopf_numerator(reflector, cube: Cube):
    """``J f_∅ ∩ ⋂_i K[f_i]``."""
    refl = parse_reflector(reflector)
    be = cube.backend
    require_validated(cube)
    N = J_operator(refl, cube.initial)
    for i in range(1, cube.n + 1):
        N = be.intersect(N, be.kernel(cube.arrows[(0, i)]))
    return N


# ---------------------------------------------------------------------------
# results


def cube_fingerprint(cube: Cube) -> str:
    """sha256 over vertex contents and arrow images, in canonical order."""
    h = hashlib.sha256()
    be = cube.backend
    h.update(f"{be.name}:{cube.n}".encode())
    for A in range(cube.full + 1):
        h.update(b"|v")
        for arr in _carrier_arrays(be, cube.vertices[A]):
            h.update(np.ascontiguousarray(arr, dtype=np.int64).tobytes())
    for (A, i) in sorted(cube.arrows):
        f = cube.arrows[(A, i)]
        h.update(f"|a{A}:{i}".encode())
        for arr in _arrow_arrays(be, f):
            h.update(np.ascontiguousarray(arr, dtype=np.int64).tobytes())
    return h.hexdigest()


def _carrier_arrays(be, X):
    if be.name == "group":
        return [np.array([X.order]), X.elements]
    if be.name == "lie":
        return [np.array([X.ambient.dim]), X.basis, X.ambient.c]
    return [X.M.elements, X.S.elements]


def _arrow_arrays(be, f):
    if be.name == "group":
        return [f(f.domain.elements)]
    if be.name == "lie":
        return [f.apply(f.domain.basis)]
    return [f.f1(f.domain.M.elements), f.f0(f.domain.S.elements)]


@dataclass
class HopfResult:
    numerator: object
    denominator: object
    invariants: dict
    reflector: str
    n: int
    fingerprint: str
    trusted_projectivity: bool = False
    backend: str = "group"

    @property
    def numerator_order(self) -> int:
        return backend_of(self.numerator).size(self.numerator)

    @property
    def denominator_order(self) -> int:
        return backend_of(self.denominator).size(self.denominator)

    def to_json(self) -> dict:
        out = {
            "numerator_order": self.numerator_order,
            "denominator_order": self.denominator_order,
            "invariants": self.invariants,
            "reflector": self.reflector,
            "n": self.n,
            "fingerprint": self.fingerprint,
        }
        if self.trusted_projectivity:
            out["projectivity"] = "trusted"
        return out


def infer_variety(cube: Cube):
    """Smallest supported variety containing the initial vertex (group/Lie only)."""
    from .presentations import VarietySpec

    be = cube.backend
    X = cube.initial
    if be.name == "group":
        primes = gp.prime_factors(X.order)
        if len(primes) > 1:
            return None
        p = primes[0] if primes else 3
        cls = gp.nilpotency_class(X)
        c = 1 if cls in (0, 1) else 2
        if c == 2 and p == 2:
            return None
        return VarietySpec("group", c, p)
    if be.name == "lie":
        try:
            cls = lie.nilpotency_class(X)
        except Exception:
            return None
        return VarietySpec("lie", min(max(cls, 1), 3), X.p)
    return None


def hopf_evaluate(reflector, cube: Cube, variety=None, trust: bool = False) -> HopfResult:
    """``(J f_∅ ∩ ⋂ K[f_i]) / L_n[f]`` on a supplied n-presentation."""
    from .presentations import parse_variety

    refl = parse_reflector(reflector)
    be = cube.backend
    refl.check_backend(be)
    if cube.n < 1:
        raise NotAPresentation("Hopf formulae need n >= 1")
    trusted = False
    if be.name == "pxmod":
        report = validate_extension(cube)
        trusted = True
    else:
        v = parse_variety(variety) if variety is not None else (cube.variety or infer_variety(cube))
        report = validate_extension(cube, v)
        if report.is_extension and not report.is_presentation:
            if not trust:
                raise NotAPresentation(
                    "some non-terminal vertex is not free in the variety",
                    variety=str(v),
                )
            trusted = True
    if not report.is_extension:
        raise NotValidated("cube is not an n-extension", failures=[f.to_json() for f in report.failures])
    N = hopf_numerator(refl, cube)
    L = L_closed(refl, cube)
    if not be.is_sub(L, N):
        raise CriterionMismatch("denominator is not contained in the numerator")
    inv = be.invariants(N, L)
    if refl.kind == "ab":
        abelian = inv["C"]["is_abelian"] if be.name == "pxmod" else inv["is_abelian"]
        if not abelian:
            raise CriterionMismatch("homology object does not land in the abelian subvariety")
    return HopfResult(N, L, inv, str(refl), cube.n, cube_fingerprint(cube), trusted, be.name)


def hopf_homology(A, n: int, reflector, variety, seed=None) -> HopfResult:
    """``H_{n+1}(A)`` from an n-presentation built by the doubling construction."""
    from .presentations import n_presentation, parse_variety

    refl = parse_reflector(reflector)
    v = parse_variety(variety)
    if refl.kind == "peiffer":
        raise UnsupportedReflectorBackend(
            "no presentation builder for precrossed modules; use hopf_evaluate",
            reflector=str(refl),
        )
    cube = n_presentation(A, v, n, seed=seed)
    return hopf_evaluate(refl, cube, v)


@dataclass
class BaerReport:
    n: int
    reflector: str
    invariants: dict
    fingerprints: list = field(default_factory=list)

    def to_json(self):
        return {
            "n": self.n,
            "reflector": self.reflector,
            "invariants": self.invariants,
            "trials": len(self.fingerprints),
            "fingerprints": self.fingerprints,
            "agree": True,
        }


def baer_check(A, n: int, reflector, variety, trials: int = 2, seed: int = 0, max_attempts: int = 50) -> BaerReport:
    """Evaluate ``H_{n+1}`` on ``trials`` distinct presentations and demand equal invariants."""
    if trials < 2:
        raise ValueError("baer_check needs at least two trials")
    results: list[HopfResult] = []
    seen: set[str] = set()
    attempt = 0
    while len(results) < trials and attempt < max_attempts:
        s = None if attempt == 0 else seed + attempt
        attempt += 1
        res = hopf_homology(A, n, reflector, variety, seed=s)
        if res.fingerprint in seen:
            continue
        seen.add(res.fingerprint)
        results.append(res)
        if res.invariants != results[0].invariants:
            raise InvarianceViolation(
                "homology invariants differ between presentations",
                first=results[0].to_json(),
                second=res.to_json(),
            )
    return BaerReport(n, str(parse_reflector(reflector)), results[0].invariants, [r.fingerprint for r in results])


def to_json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
