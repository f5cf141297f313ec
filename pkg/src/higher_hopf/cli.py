"""Command-line front end.

Exit codes: 0 success, 2 validation failure, 3 size cap exceeded,
4 unparsable input.  ``oracle`` exits 1 when the two evaluators disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import groups as gp
from . import lie
from . import pxmod as px
from .backends import get_backend
from .config import limits
from .cubes import (
    arrow_cube,
    centralize_extension,
    cube_from_json,
    cube_to_json,
    validate_extension,
)
from .errors import HopfError, ParseError, UnsupportedReflectorBackend
from .hopf import (
    L_categorical,
    L_closed,
    baer_check,
    hopf_evaluate,
    hopf_homology,
    parse_reflector,
)
from .presentations import n_presentation, parse_variety

EXIT_CODES = {"validation": 2, "resources": 3, "parse": 4}


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    degree: int = 2
    reflector: str = "ab"
    variety: str | None = None
    backend: str | None = None
    max_order: int = 27
    trials: int = 2
    seed: int = 0
    format: str = "json"
    cap: int | None = None
    trust: bool = False

    @property
    def n(self) -> int:
        """Presentation dimension: ``H_{n+1}`` needs an n-presentation."""
        return self.degree - 1

    def check(self):
        refl = parse_reflector(self.reflector)
        be = self.backend or (parse_variety(self.variety).backend if self.variety else None)
        if be is not None:
            refl.check_backend(get_backend(be))
        if self.variety and self.backend and parse_variety(self.variety).backend != self.backend:
            raise UnsupportedReflectorBackend(
                f"variety {self.variety} does not live on backend {self.backend}", backend=self.backend
            )


# ---------------------------------------------------------------------------
# input


def _read_json(path: str | None):
    try:
        if path is None or path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ParseError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc


def load_object(obj, backend: str | None = None):
    """Carrier from JSON: a group table, a Lie bracket list or a precrossed module."""
    if not isinstance(obj, dict):
        raise ParseError("object JSON must be a mapping")
    kind = backend or obj.get("type")
    if kind is None:
        if "table" in obj:
            kind = "group"
        elif "brackets" in obj or "dim" in obj:
            kind = "lie"
        elif "C" in obj and "G" in obj:
            kind = "pxmod"
        else:
            raise ParseError("cannot tell which kind of object this is")
    if kind == "group":
        return gp.group_from_json(obj)
    if kind == "lie":
        return lie.whole(lie.lie_from_json(obj))
    if kind == "pxmod":
        return px.whole(px.pxmod_from_json(obj))
    raise ParseError(f"unknown object type {kind!r}")


def load_cube(cfg: RunConfig):
    obj = _read_json(cfg.input)
    if isinstance(obj, dict) and cfg.backend and "backend" not in obj:
        obj = dict(obj, backend=cfg.backend)
    return cube_from_json(obj)


# ---------------------------------------------------------------------------
# commands


def cmd_compute(cfg: RunConfig) -> dict:
    if cfg.variety is None:
        raise ParseError("compute needs --variety")
    v = parse_variety(cfg.variety)
    parse_reflector(cfg.reflector).check_backend(get_backend(v.backend))
    A = load_object(_read_json(cfg.input), cfg.backend or v.backend)
    return hopf_homology(A, cfg.n, cfg.reflector, v).to_json()


def cmd_evaluate(cfg: RunConfig) -> dict:
    cube = load_cube(cfg)
    return hopf_evaluate(cfg.reflector, cube, cfg.variety, trust=cfg.trust).to_json()


def cmd_validate(cfg: RunConfig) -> dict:
    cube = load_cube(cfg)
    rep = validate_extension(cube, parse_variety(cfg.variety) if cfg.variety else None)
    return rep.to_json()


def cmd_centralize(cfg: RunConfig) -> dict:
    cube = load_cube(cfg)
    return cube_to_json(centralize_extension(cube, cfg.reflector))


def cmd_present(cfg: RunConfig) -> dict:
    if cfg.variety is None:
        raise ParseError("present needs --variety")
    v = parse_variety(cfg.variety)
    A = load_object(_read_json(cfg.input), cfg.backend or v.backend)
    return cube_to_json(n_presentation(A, v, cfg.n, seed=cfg.seed or None))


def cmd_oracle(cfg: RunConfig) -> dict:
    """Closed form against kernel-pair recursion on generated arrows and double extensions."""
    from .corpus import double_extensions, pxmod_extensions, surjection_corpus

    refl = parse_reflector(cfg.reflector)
    rng = np.random.default_rng(cfg.seed)
    if refl.kind == "peiffer" or cfg.backend == "pxmod":
        refl.check_backend(get_backend("pxmod"))
        size = min(cfg.max_order, 8)
        cases, squares = pxmod_extensions(size, 1), pxmod_extensions(min(size, 4), 2)
        carrier = lambda X: X.M
    else:
        cases = [(c.name, arrow_cube(c.f)) for c in surjection_corpus(cfg.max_order, min_count=cfg.trials, seed=cfg.seed)]
        squares = double_extensions(min(cfg.max_order, 27))
        carrier = lambda X: X
    pick = lambda xs: [xs[i] for i in sorted(rng.permutation(len(xs))[: cfg.trials])]
    checked, bad, witness = 0, 0, None
    for name, cube in pick(cases) + pick(squares):
        checked += 1
        a, b = carrier(L_closed(refl, cube)), carrier(L_categorical(refl, cube))
        if not gp.subgroups_equal(a, b):
            bad += 1
            size_of = cube.backend.size(cube.initial)
            if witness is None or size_of < witness[0]:
                witness = (size_of, name, cube, a.order, b.order)
    out = {"reflector": str(refl), "max_order": cfg.max_order, "checked": checked, "disagreements": bad}
    if witness is not None:
        _, name, cube, oa, ob = witness
        out["witness"] = {"name": name, "closed_order": oa, "categorical_order": ob, "cube": cube_to_json(cube)}
    return out


def cmd_baer(cfg: RunConfig) -> dict:
    if cfg.variety is None:
        raise ParseError("baer-check needs --variety")
    v = parse_variety(cfg.variety)
    A = load_object(_read_json(cfg.input), cfg.backend or v.backend)
    return baer_check(A, cfg.n, cfg.reflector, v, trials=cfg.trials, seed=cfg.seed).to_json()


COMMANDS = {
    "compute": cmd_compute,
    "evaluate-cube": cmd_evaluate,
    "validate-cube": cmd_validate,
    "centralize": cmd_centralize,
    "present": cmd_present,
    "oracle": cmd_oracle,
    "baer-check": cmd_baer,
}


# ---------------------------------------------------------------------------
# output


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    lines = []

    def walk(obj, prefix=""):
        if isinstance(obj, dict):
            for k in sorted(obj):
                walk(obj[k], f"{prefix}{k}.")
        else:
            lines.append(f"{prefix[:-1]}: {json.dumps(obj, sort_keys=True)}")

    walk(report)
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="higher-hopf", description="Higher Hopf formulae over finite carriers.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--input", help="JSON file (object or cube); '-' for stdin")
    p.add_argument("--degree", type=int, default=2, help="homology degree d >= 2 (uses a (d-1)-presentation)")
    p.add_argument("--reflector", default="ab", help="ab | nil:k | sol:k | peiffer")
    p.add_argument("--variety", help="group:c<c>:p<p> or lie:c<c>:p<p>")
    p.add_argument("--backend", choices=["group", "lie", "pxmod"])
    p.add_argument("--max-order", type=int, default=27)
    p.add_argument("--trials", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["json", "text"], default="json")
    p.add_argument("--cap", type=int, help="carrier size cap (overrides HOPF_SIZE_CAP)")
    p.add_argument("--trust", action="store_true", help="accept cubes whose projectivity cannot be checked")
    return p


def run(argv=None) -> tuple[int, str]:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code == 0 else 4), ""
    cfg = RunConfig(
        command=args.command,
        input=args.input,
        degree=args.degree,
        reflector=args.reflector,
        variety=args.variety,
        backend=args.backend,
        max_order=args.max_order,
        trials=args.trials,
        seed=args.seed,
        format=args.format,
        cap=args.cap,
        trust=args.trust,
    )
    overrides = {} if cfg.cap is None else {"carrier_cap": cfg.cap}
    try:
        if cfg.degree < 2 and cfg.command in ("compute", "baer-check"):
            raise ParseError("--degree must be at least 2")
        cfg.check()
        with limits(**overrides):
            report = COMMANDS[cfg.command](cfg)
    except HopfError as exc:
        body = {"command": cfg.command, "category": exc.category, **exc.to_json()}
        return EXIT_CODES.get(exc.category, 2), render(body, cfg.format)
    if cfg.command == "oracle" and report["disagreements"]:
        return 1, render(report, cfg.format)
    if cfg.command == "validate-cube" and not report["is_extension"]:
        return 2, render(report, cfg.format)
    return 0, render(report, cfg.format)


def main(argv=None) -> int:
    code, text = run(argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
