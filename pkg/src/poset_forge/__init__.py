"""Balanced simplicial cell complexes from colored graphs, and exact checks on them."""

from .complex import (CellComplex, ConsistencyError, Face, build_from_graph, disjoint_union, faces,
                      glue_facets, link, simplex, validate)
from .constructions import (block_data, build_g, build_g_prime, link_shelling_order, synthesize,
                            words, xkd)
from .graph import ColoredMultigraph, components, is_connected_avoiding, restrict
from .homology import (F2, Q, FieldSpec, betti_via_order_complex, boundary_matrices, is_buchsbaum,
                       is_cohen_macaulay, rank, reduced_betti)
from .invariants import (BettiVector, FVector, HPrimeVector, HVector, binomial_identities, f_from_h,
                         f_vector, h_from_f, h_prime, ns_check, ridge_profile, short_simplicial_check)
from .shelling import (ShellingCertificate, h_from_shelling, is_cw_shelling, is_graphical_shelling,
                       separating_family_min)

__version__ = "0.1.0"
