"""Intertwining dimensions and the two blocks of the saturated set below (2,2)."""

from weylkit import CharacterCache, blocks, hom_dimension, root_system

G2 = root_system("G2")
cache = CharacterCache()

part = blocks((2, 2), 2, G2, cache)
for k, cls in enumerate(part.classes, start=1):
    print(f"block {k}: " + " ".join(f"{a}{b}" for a, b in cls))
    width = 4
    print("      " + "".join(f"{a}{b}".rjust(width) for a, b in cls))
    for i, lam in enumerate(cls):
        cells = [str(hom_dimension(mu, lam, 2, G2)) if j <= i else "." for j, mu in enumerate(cls)]
        print(f"  {lam[0]}{lam[1]}  " + "".join(c.rjust(width) for c in cells))
    print()
