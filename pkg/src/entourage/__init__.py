"""Computable entourage, semi-coarse, quasi-coarse and coarse structures on finite sets."""

from .errors import (CarrierMismatch, EntourageError, HypothesisError, ParseError, ResourceCap,
                     UnknownLabel)
from .rel_core import (Carrier, Entourage, classify_relation, compose, image, inverse, power,
                       transitive_closure)
from .spaces import (FiniteEntourageSpace, StructureClass, boundedness, classify, connectivity,
                     from_generators, from_pairs, geometry, restrict, uniformly_bounded)
from .morphisms import (Closeness, SpaceMap, are_close, equivalence_oracle, profile,
                        sym_coarse_equivalence)
from .functors import (FunctorTag, apply_functor, coproduct, initial, is_weakly_soft, join, meet,
                       product, quotient)
from .weights import (INF, Chain, WeightFamily, WeightTable, classify_chain, classify_weight,
                      probe_b3_radius, probe_inverse_bound, structure_from_weight,
                      subadditive_chain, weight_from_chain)
from .algebra import (MagmaTable, catalog, classify_ideal, classify_magma, equi_bornologous,
                      hom_profile, loop_inverses, recover_ideal, side_structure)
from .graphs import (DiGraph, cayley, gen_invariance, graphic_realization, graphic_structure,
                     is_graph_homomorphism, path_weight, word_weight)
from .hyper import PowersetCarrier, exp_space, hyper_entourage, hyper_space, lift_map

__version__ = "0.1.0"
