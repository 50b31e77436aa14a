#!/usr/bin/env python3
"""Build the three broad-presheaf completions of a gallery category and
show how the subunit order grows under each flavour:

    python scripts/completion_demo.py boolean2x2
"""

from __future__ import annotations

import sys

from ttw import gallery
from ttw.daycat import broad_category
from ttw.dot import render_dot
from ttw.orderkit import (directed_downsets, downsets,
                          finitely_bounded_downsets, poset_isomorphism)
from ttw.subunits import is_locale_based, subunit_semilattice

FREE_COMPLETIONS = {
    "finite": finitely_bounded_downsets,
    "directed": directed_downsets,
    "all": downsets,
}


def main(name: str) -> None:
    mc = gallery.build(name)
    lat = subunit_semilattice(mc)
    print(f"{name}: {len(mc.objects)} objects, subunits "
          f"{[mc.obj_label(s.domain) for s in lat.subunits]}")
    for flavour, free in FREE_COMPLETIONS.items():
        completion = broad_category(mc, flavour)
        cat = completion.category
        lat2 = subunit_semilattice(cat)
        expected = free(lat.lattice)
        matches = poset_isomorphism(lat2.lattice.poset, expected.poset)
        print(f"  {flavour:8s}: {len(cat.objects):3d} objects, "
              f"{len(cat.morphisms):4d} morphisms, "
              f"{len(lat2):2d} subunits, "
              f"free completion match: {matches is not None}")
        if flavour == "all":
            verdict = is_locale_based(cat)
            print(f"  {'':8s}  locale based: {verdict.holds}")
            print(render_dot(lat2.lattice.poset, f"{name}-subunits"))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "q3")
