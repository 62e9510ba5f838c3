"""Socle series of every Weyl module below (2,2), printed top-down.

The whole run takes a few seconds.  Simple characters are shared through
one cache, so each L(mu) is computed once.
"""

from weylkit import CharacterCache, build_weyl_module, root_system, saturated_below, socle_series

G2 = root_system("G2")
cache = CharacterCache()

for lam in saturated_below((2, 2), G2):
    series = socle_series(build_weyl_module(lam, 2, G2), cache)
    print(f"Delta{lam}: {len(series)} layer(s)")
    for k in range(len(series), 0, -1):
        print(f"  {k:>2} | " + ", ".join(str(w) for w in series.layers[k - 1]))
    print()
print(f"{len(cache)} simple characters computed")
