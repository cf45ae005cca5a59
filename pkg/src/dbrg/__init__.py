"""Spectral recognition of distance-regular and distance-biregular graphs."""

__version__ = "0.1.0"

from .characterize import (Classification, ExcessReport, IntersectionNumbers, Verdict,  # noqa: E402
                           check_dbrg_diametral, check_drg_diametral, classify, cospectral_girth_dbrg,
                           halved_route_dbrg, locally_distance_regular, pseudo_dr_set, pseudo_dr_vertex,
                           spectral_excess_dbrg, spectral_excess_drg, weighted_locally_distance_regular)
from .corpus import FamilySpec, enumerate_small_bipartite, generate, standard_corpus  # noqa: E402
from .graph import (Bipartition, DistanceData, Graph, HalvedPair, bipartition, distance_data,  # noqa: E402
                    girth, halved_graphs, parse_edge_list, semiregular_profile)
from .spectral import SpectralDecomposition, decompose, local_measure, perron  # noqa: E402

__all__ = [
    "Bipartition", "Classification", "DistanceData", "ExcessReport", "FamilySpec", "Graph",
    "HalvedPair", "IntersectionNumbers", "SpectralDecomposition", "Verdict", "bipartition",
    "check_dbrg_diametral", "check_drg_diametral", "classify", "cospectral_girth_dbrg", "decompose",
    "distance_data", "enumerate_small_bipartite", "generate", "girth", "halved_graphs",
    "halved_route_dbrg", "local_measure", "locally_distance_regular", "parse_edge_list", "perron",
    "pseudo_dr_set", "pseudo_dr_vertex", "semiregular_profile", "spectral_excess_dbrg",
    "spectral_excess_drg", "standard_corpus", "weighted_locally_distance_regular",
]
