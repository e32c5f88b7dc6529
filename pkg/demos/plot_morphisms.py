"""
Morphisms and their point maps
==============================

An orthoalgebra morphism induces a partial map of points.  Proper maps go
back again through directions.
"""

from orthoalg import g_functor, lift_hg_morphism
from orthoalg.morphisms import compose, composition_pair, is_proper_hg_morphism, is_proper_oa_morphism, mo2_embedding

f, g = composition_pair()
for h in (f, g, compose(g, f)):
    alpha = g_functor(h)
    print(h.name, "proper:", is_proper_oa_morphism(h), is_proper_hg_morphism(alpha))
    print("  ", alpha.named())

# %%
# A proper point map lifts to the morphism it came from.
lifted = lift_hg_morphism(g_functor(f), f.source, f.target)
print("lift recovers f:", lifted.mapping == f.mapping)

# %%
# The embedding of MO2 into 2^3 is a morphism, but only hits two points.
e = mo2_embedding()
print(g_functor(e).named(), "proper:", is_proper_oa_morphism(e))
