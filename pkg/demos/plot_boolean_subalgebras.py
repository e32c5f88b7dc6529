"""
Boolean subalgebras of small orthoalgebras
==========================================

Enumerate the poset of Boolean subalgebras, compare it with the partition
lattice, and rebuild the algebra from the poset alone.
"""

from orthoalg import enumerate_bsub, named, partition_lattice, power_set, reconstruct_check
from orthoalg.io import poset_to_dot
from orthoalg.poset import find_poset_isomorphism

# %%
# For a power set the subalgebras are indexed by partitions of the base set.
for n in range(1, 6):
    X = enumerate_bsub(power_set(n))
    same = find_poset_isomorphism(X, partition_lattice(n)) is not None
    print(f"2^{n}: {X.size:3d} subalgebras, partition lattice: {same}")

# %%
# Two Boolean blocks glued along an atom.
X = enumerate_bsub(named("fig1_gluing"))
print(X.height_counts())
print(poset_to_dot(X))

# %%
# The poset determines the algebra: the witness maps elements to directions.
w = reconstruct_check(named("fraser_cube"))
print("witness verified:", w.verify(), "on", len(w.forward), "elements")
