"""Elephant random walk with random memory: exact moments, index families,
exhaustive oracles and reproducible Monte Carlo."""

from .errors import InvalidArgumentError, ResourceLimitError
from .families import (
    IndexFamily,
    build_family,
    cardinality_formula,
    explicit_mean_displacement,
    explicit_mean_increment,
    family_weight,
)
from .moments import (
    MomentTable,
    build_moment_table,
    mean_displacement,
    mean_increment,
    product_moment_paper,
    product_moment_tower,
    second_moment_displacement,
    second_moment_paper_form,
)
from .montecarlo import SimulationSummary, run_simulation
from .oracle import ExactDistribution, exact_distribution, oracle_moment
from .poly import ALPHA, AlphaPolynomial
from .walk import (
    StepLottery,
    Trajectory,
    WalkParams,
    conditional_plus_probability,
    sample_next_step,
    sample_trajectory,
)

__version__ = "0.1.0"
