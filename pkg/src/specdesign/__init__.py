"""Exact spectra of graphs built from designs and pseudo designs."""

from .designs import (BibdParams, Design, DesignError, ParameterError, PseudoParams,
                      complement_design, fano, is_bibd, is_primary, is_pseudo,
                      marrero_butson, marrero_conditions, named_pseudo, remove_block,
                      split_primary)
from .enumeration import (SizeGuardError, all_graphs, audit_conjecture, canonical_form,
                          design_isomorphic, enumerate_bipartite_graphs, enumerate_graphs,
                          enumerate_pseudo, scan_bibd_params)
from .exactalg import IntMatrix, IntPolynomial, char_poly, char_poly_oracle, rank
from .graphs import (Graph, Graph6Error, GraphError, disjoint_union, family,
                     graph6_decode, graph6_encode, graph_isomorphic, incidence_graph)
from .spectral import (RankOneDecomposition, SpectrumPattern, classify,
                       contains_half_spectrum, expected_spectrum, matches_pattern,
                       rank_one_decompose, recognize, verify_mates, verify_r_mates)

__version__ = "0.1.0"
