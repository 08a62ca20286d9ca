"""Yule-Simon simulation and h-truncated log-log impact analysis of citation counts."""
from .corpus import (
    CitationSchema,
    ResearcherProfile,
    WorkRecord,
    parse_citation_csv,
    read_profile,
    validate_profile,
    write_citation_csv,
)
from .impact import (
    BinnedHistogram,
    BinSpec,
    HIndexResult,
    LinearFitResult,
    Significance,
    SummaryStats,
    TruncatedDistribution,
    bin_frequencies,
    f_significance,
    h_index,
    log_pipeline,
    ols_fit,
    summary_stats,
    truncate_top_h,
)
from .simulate import (
    GenusHistogram,
    SimonPopulation,
    SimonProcessConfig,
    TailSlopeEstimate,
    YuleCohortConfig,
    run_simon,
    simulate_genera,
    tail_slope,
    yule_cohort_pmf,
)
from .special import f_critical, f_sf, regularized_incomplete_beta, yule_limit_pmf, yule_limit_sf

__version__ = "0.1.0"
