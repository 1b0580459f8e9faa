"""Ordinal-valued invariants of lattice-ordered value groups.

The package computes, entirely at the level of a lattice-ordered abelian
group and its extended positive cone: m-dimension and breadth (by iterated
collapse of convex subgroups), the filter calculus standing for ideals of a
domain with that value group, the divisibility/annihilator formula lattice,
and Cantor-Bendixson ranks of the associated point spectra.
"""

from .ordinal import (  # noqa: F401
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    add,
    compare,
    div_omega,
    is_limit,
    mul,
    natural_sum,
    omega_power,
    parse_ordinal,
    sub,
    succ,
)
from .boolspace import (  # noqa: F401
    ClopenSet,
    OrdinalSpace,
    cb_rank_space,
    derivative,
    derivative_chain,
    point_rank,
)
from .lgroup import (  # noqa: F401
    INF,
    GammaGroup,
    LexZ,
    ProductZ,
    RationalChain,
    Step,
    StepFunction,
    Trivial,
    parse_gamma,
)
from .dimension import (  # noqa: F401
    CollapseClass,
    CollapseChain,
    DimensionResult,
    Terminal,
    breadth_cone,
    collapse_step,
    mdim_cone,
    s_chain,
)
from .filters import (  # noqa: F401
    AdmissiblePair,
    IdealFilter,
    colon,
    inverse_colon,
    is_mult_prime,
    is_prime,
    limit_cut,
    pairs_equivalent,
    principal,
    sharp,
    shift_pair,
    zero_ideal,
)
from .ziegler import (  # noqa: F401
    BasicOpen,
    ClassifyReport,
    PpFormula,
    cb_rank_zg,
    cb_stratify,
    classify,
    leq_mixed,
    leq_pp,
    member,
    pp,
    prest_dual,
    spec_star_cb,
    translate_pp,
    zg_points,
)

__version__ = "0.1.0"
