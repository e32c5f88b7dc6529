"""
Points, lines and planes
========================

The hypergraph of an orthoalgebra has a point per four-element subalgebra,
a line per eight-element one and a plane per sixteen-element one.
"""

from orthoalg import hypergraph_of, infer_planes_omp, is_orthomodular_poset, named, orthodomain_of
from orthoalg.io import hypergraph_to_dot

for name in ["power_set_4", "fig1_gluing", "fano_minus_line", "fraser_cube"]:
    H = hypergraph_of(named(name))
    print(f"{name:16s} points={H.n_points:2d} lines={len(H.lines):2d} planes={len(H.planes)}")

# %%
# The cube: each plane is a face; opposite faces share two points.
H = hypergraph_of(named("fraser_cube"))
for s in H.planes:
    print(sorted(H.points[p] for p in s.points))
print("poset rebuilt from the hypergraph:", orthodomain_of(H).height_counts())

# %%
# For orthomodular posets the planes follow from the lines.
for name in ["fraser_cube", "fano_minus_line"]:
    A = named(name)
    H = hypergraph_of(A)
    print(name, "OMP:", is_orthomodular_poset(A), "inferred planes:", len(infer_planes_omp(H.n_points, H.lines)))

print(hypergraph_to_dot(hypergraph_of(named("mo2_times_two"))))
