"""probfold: exact finite distributions, column-stochastic matrix semantics,
and machine-checked fault-propagation laws for probabilistic recursion schemes.
"""

from .dims import BOOLS, Bools, Dim, EnumDim, Product, Range, Sum, UNIT, Unit, inl, inr
from .dist import (
    Dist,
    DistributionError,
    DomainError,
    ProbFn,
    bind,
    choice,
    dirac,
    dist_map,
    kleisli,
    marginals,
    normalize,
    pair,
    render,
    render_lines,
    tv_distance,
)
from .functors import CompF, ConstF, ForLoopF, FunctorDesc, IdF, ListF, SumF
from .matrix import (
    DimensionError,
    Matrix,
    TruncationError,
    bang,
    compose,
    converse,
    from_probfn,
    from_probfn_truncated,
    from_sharp_fn,
    fst_matrix,
    hadamard,
    identity,
    junc,
    khatri,
    kron,
    mat_choice,
    max_dev,
    oplus,
    relabel,
    snd_matrix,
    split,
    to_probfn,
)
from .schemes import (
    Algebra,
    FusionReport,
    SideConditionReport,
    banana_split,
    base_choice_split,
    cata_eval,
    fold_fusion_check,
    fold_list,
    for_loop,
    matrix_cata_fixpoint,
    mutual_eval,
    tupled_from_mutual,
    unzip,
)
from .cases import CaseParams, REGISTRY, fadd, fadd_combined, fadd_zero, run_case
from .laws import (
    CATALOGUE,
    LawReport,
    RiskReport,
    TrialConfig,
    check_all,
    check_law,
    random_cs_matrix,
    random_sharp,
    risk_preorder,
)

__version__ = "0.1.0"
