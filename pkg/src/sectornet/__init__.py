"""Sector-level correlation network analysis.

From sector price panels and company fundamentals to correlation and
distance matrices, core-periphery extraction via eigenvector centrality,
minimum spanning trees, planar stress-majorization embeddings,
size-centrality regressions and minimum-variance portfolio diagnostics.
"""

__version__ = "0.1.0"

from .core import (
    CorrelationNet,
    PanelData,
    PanelKind,
    SectorFundamentals,
    SectorId,
    validate_panel,
)
from .ingestion import (
    CompanyRecord,
    MissingPolicy,
    aggregate_fundamentals,
    load_fundamentals,
    load_prices,
    to_log_returns,
)
from .network import absolute_matrix, elementwise_power, pearson_correlation
from .centrality import (
    CentralityReport,
    ThetaFormula,
    core_flags,
    eigenvector_centrality,
    threshold_value,
)
from .spanning_tree import Tree, backbone_check, minimum_spanning_tree
from .embedding import EmbeddingResult, embed_distances, mds_embed
from .regression import RegressionFit, ols_fit, standardize, students_t_sf
from .portfolio import PortfolioSolution, covariance, min_variance_weights
from .coremap import BitStringPair, hamming_distance, make_bitstrings, sweep_n
from .cli import PipelineConfig, run_pipeline

__all__ = [
    "BitStringPair",
    "CentralityReport",
    "CompanyRecord",
    "CorrelationNet",
    "EmbeddingResult",
    "MissingPolicy",
    "PanelData",
    "PanelKind",
    "PipelineConfig",
    "PortfolioSolution",
    "RegressionFit",
    "SectorFundamentals",
    "SectorId",
    "ThetaFormula",
    "Tree",
    "absolute_matrix",
    "aggregate_fundamentals",
    "backbone_check",
    "core_flags",
    "covariance",
    "eigenvector_centrality",
    "elementwise_power",
    "embed_distances",
    "hamming_distance",
    "load_fundamentals",
    "load_prices",
    "make_bitstrings",
    "mds_embed",
    "min_variance_weights",
    "minimum_spanning_tree",
    "ols_fit",
    "pearson_correlation",
    "run_pipeline",
    "standardize",
    "students_t_sf",
    "sweep_n",
    "threshold_value",
    "to_log_returns",
    "validate_panel",
]
