"""Construct and certify clique subdivisions in K_{s,t}-free graphs."""

from .graph import Graph, average_degree, parse_edge_list, read_edge_list, write_edge_list
from .pipeline import PipelineConfig, RunReport, experiment_linear_growth, run
from .verify import SubdivisionCertificate, oracle_max_subdivision, verify_subdivision

__version__ = "0.1.0"

__all__ = [
    "Graph", "average_degree", "parse_edge_list", "read_edge_list", "write_edge_list",
    "PipelineConfig", "RunReport", "run", "experiment_linear_growth",
    "SubdivisionCertificate", "verify_subdivision", "oracle_max_subdivision",
]
