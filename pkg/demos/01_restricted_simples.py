"""The four restricted simple modules of G2 in characteristic 2.

Delta(1,0) is the 7-dimensional Weyl module.  Mod 2 it carries a second
maximal vector of weight (0,0), which spans a trivial submodule, and the
quotient is the 6-dimensional simple module L(1,0).
"""

from weylkit import build_weyl_module, maximal_vectors, quotient, root_system, simple_character, submodule_generated

G2 = root_system("G2")

delta = build_weyl_module((1, 0), 2, G2)
print(f"dim Delta(1,0) = {delta.dim()}")
for weight, space in maximal_vectors(delta).items():
    print(f"  maximal vectors of weight {weight}: {len(space)}")

trivial = submodule_generated([delta.pbw_element((0, 0, 0, 1, 0, 0))])
print(f"the vector y4 v0 generates a submodule of dimension {trivial.dim()}")
top = quotient(delta, trivial)
print(f"the quotient has dimension {top.dim()} and {len(maximal_vectors(top))} maximal vector(s), so it is simple")

print()
print("restricted simple dimensions:")
for lam in [(0, 0), (1, 0), (0, 1), (1, 1)]:
    print(f"  dim L{lam} = {simple_character(lam, 2, G2).dim}")
