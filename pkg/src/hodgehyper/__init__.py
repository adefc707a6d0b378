"""Embedded homology, Hodge decompositions and Laplacian spectra of weighted hypergraphs."""

from .chains import (EvaluationWeight, TableWeight, TrivialWeight, WeightedHypergraph, ZeroWeight,
                     parse_weight, validate_weight)
from .hodge import degree_report, embedded_homology, hodge_summands, laplacian, s_star_analysis
from .hypergraph import Digraph, Hypergraph, closure, complement, digraph_to_hypergraph, random_hypergraph
from .spectra import quasi_spectrum, spectrum, verify_spectral_suite

__all__ = [
    "Digraph", "EvaluationWeight", "Hypergraph", "TableWeight", "TrivialWeight", "WeightedHypergraph",
    "ZeroWeight", "closure", "complement", "degree_report", "digraph_to_hypergraph", "embedded_homology",
    "hodge_summands", "laplacian", "parse_weight", "quasi_spectrum", "random_hypergraph", "s_star_analysis",
    "spectrum", "validate_weight", "verify_spectral_suite",
]
