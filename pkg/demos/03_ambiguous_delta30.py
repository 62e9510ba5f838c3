"""Delta(3,0) has two independent maximal vectors of weight (2,0).

So there are two independent maps Delta(2,0) -> Delta(3,0).  Their sum
embeds Delta(2,0), and the cokernel picks up two trivial modules in its
socle.  A length-two quotient then certifies a non-split extension of
L(3,0) by L(2,0).
"""

from weylkit import (
    CharacterCache,
    build_weyl_module,
    ext1_witness,
    maximal_vectors,
    quotient,
    root_system,
    socle_series,
    submodule_generated,
)
from weylkit.modules import maximal_space

G2 = root_system("G2")
cache = CharacterCache()
delta = build_weyl_module((3, 0), 2, G2)

print("maximal-vector spaces of Delta(3,0):")
for weight, space in maximal_vectors(delta).items():
    print(f"  {weight}: dim {len(space)}")

m1 = delta.pbw_element((0, 0, 0, 1, 0, 0))  # y4 v0
m2 = delta.pbw_element((1, 0, 1, 0, 0, 0))  # y1 y3 v0
image = submodule_generated([m1 + m2])
print(f"\nthe sum of the two maps has an image of dimension {image.dim()} (Delta(2,0) has dimension 27)")

q3 = quotient(delta, image)
print(f"its cokernel has {len(maximal_space(q3, (0, 0)))} independent maximal vectors of weight (0,0)")
series = socle_series(q3, cache)
for k in range(len(series), 0, -1):
    print(f"  {k} | " + ", ".join(str(w) for w in series.layers[k - 1]))

witness = ext1_witness((3, 0), (2, 0), 2, G2, cache)
print("\n" + witness.report())
