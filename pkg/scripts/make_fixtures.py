"""Regenerate the JSON fixtures used by the CLI tests and the README examples."""

import json
import sys
from pathlib import Path

from higher_hopf import groups as gp
from higher_hopf import lie
from higher_hopf import pxmod as px
from higher_hopf.corpus import _abelian, heisenberg_group, quotient_square, small_lie_algebras, swap_module
from higher_hopf.cubes import arrow_cube, cube_to_json
from higher_hopf.presentations import n_presentation


def dump(path: Path, obj):
    path.write_text(json.dumps(obj, sort_keys=True, indent=1) + "\n")
    print(f"wrote {path}")


def main(out="fixtures"):
    out = Path(out)
    out.mkdir(exist_ok=True)
    dump(out / "c3c3.json", gp.group_to_json(_abelian(3, 3)))
    dump(out / "h27.json", gp.group_to_json(heisenberg_group(3)))
    dump(out / "s3.json", gp.group_to_json(gp.symmetric_group(3)))
    for L in small_lie_algebras(3):
        dump(out / f"lie_{L.name.replace('+', '_')}.json", lie.lie_to_json(L))
    dump(out / "swap_pxmod.json", px.pxmod_to_json(swap_module()))

    dump(out / "c3c3_pres1.json", cube_to_json(n_presentation(_abelian(3, 3), "group:c2:p3", 1)))
    # H27 over two central-by-cyclic quotients: a regular pushout
    G = heisenberg_group(3)
    normals = gp.all_normal_subgroups(G)
    N1, N2 = normals[1], normals[2]
    dump(out / "h27_square.json", cube_to_json(quotient_square(G, N1, N2, gp.join(N1, N2))))
    # same shape with a too-large base: not a double extension
    dump(out / "h27_bad_square.json", cube_to_json(quotient_square(G, N1, N2, normals[-1])))
    X = px.whole(swap_module())
    dump(out / "swap_arrow.json", cube_to_json(arrow_cube(px.px_quotient(X, X)[1])))


if __name__ == "__main__":
    main(*sys.argv[1:])
