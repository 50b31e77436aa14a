#!/usr/bin/env python3
"""Run the whole property battery over the builtin gallery and print a
verdict table.  A quick way to see the hierarchy separate:

    python scripts/gallery_report.py
"""

from __future__ import annotations

import time

from ttw import gallery
from ttw.restriction import (verify_comonad_bijection, verify_graded_monad,
                             verify_ideal_bijection)
from ttw.subunits import (enumerate_subunits, has_universal_directed_joins,
                          has_universal_finite_joins, is_firm, is_locale_based,
                          is_stiff)


def main() -> None:
    columns = ("category", "|ISub|", "firm", "stiff", "fin", "dir", "locale",
               "graded", "comonads", "ideals", "secs")
    print(("{:<12}" + "{:>9}" * (len(columns) - 1)).format(*columns))
    for name in gallery.names():
        start = time.perf_counter()
        mc = gallery.build(name)
        row = [
            name,
            len(enumerate_subunits(mc)),
            is_firm(mc).holds,
            is_stiff(mc).holds,
            has_universal_finite_joins(mc).holds,
            has_universal_directed_joins(mc).holds,
            is_locale_based(mc).holds,
            verify_graded_monad(mc).holds,
            verify_comonad_bijection(mc).holds,
            verify_ideal_bijection(mc).holds,
        ]
        row.append(f"{time.perf_counter() - start:.2f}")
        print(("{:<12}" + "{:>9}" * (len(columns) - 1)).format(
            *[str(x) for x in row]))


if __name__ == "__main__":
    main()
