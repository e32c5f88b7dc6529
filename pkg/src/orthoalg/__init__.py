"""Orthoalgebras, their posets of Boolean subalgebras, and hypergraphs.

The main entry points:

* :mod:`orthoalg.core` for the algebras themselves and ``enumerate_bsub``;
* :mod:`orthoalg.catalog` for standard examples and constructions;
* :mod:`orthoalg.orthodomain` for directions and ``reconstruct_check``;
* :mod:`orthoalg.shadows` for truncation and the tall/short tests;
* :mod:`orthoalg.hypergraph` and :mod:`orthoalg.morphisms` for the
  hypergraph view and the functor between morphisms.
"""

from .catalog import (
    direct_product,
    fraser_cube,
    greechie_paste,
    horizontal_sum,
    mo,
    named,
    power_set,
)
from .core import (
    OrthoAlgebra,
    big_oplus,
    blocks,
    enumerate_bsub,
    generated_subalgebra,
    is_boolean,
    is_orthomodular_poset,
    is_proper,
    leq,
    oplus,
    remove_small_blocks,
    validate_orthoalgebra,
)
from .hypergraph import Hypergraph, hypergraph_of, infer_planes_omp, orthodomain_of
from .morphisms import OAMorphism, PartialPointMap, g_functor, lift_hg_morphism
from .orthodomain import directions_for, has_enough_directions, is_orthodomain, odir, reconstruct_check
from .poset import FinitePoset, find_poset_isomorphism, partition_lattice
from .shadows import bshad, is_short, is_tall, truncate_star

__version__ = "0.1.0"
