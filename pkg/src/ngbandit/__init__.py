"""Thompson sampling for normal-gamma linear bandits.

Hot loops run as numba kernels; set ``NGBANDIT_DISABLE_JIT=1`` before import
to run the same code interpreted.
"""

from ._jit import backend
from .agents import AgentState, choose_arm, make_agent, observe, select_action
from .analytics import (
    EnvBoundReport,
    TheoremScaleInput,
    compute_cd,
    compute_mk,
    countrho_bound,
    env_bound_report,
    main_lemma_bound,
    solve_governing,
    theorem_scale,
    validate_conddist,
    validate_delta_moments,
    validate_invgamma_max,
    validate_joint_events,
)
from .environment import (
    BayesPriorSpec,
    EnvironmentInstance,
    generate_contexts,
    sample_environment,
    sample_reward,
)
from .errors import (
    ConfigurationError,
    DimensionMismatchError,
    DomainError,
    FactorizationError,
    InvalidParameterError,
    NumericalCorruptionError,
)
from .mathcore import (
    chi_square_threshold,
    gaussian_q,
    lambert_w0,
    sample_chi_square,
    sample_gamma,
    sample_mvnormal,
    verify_appendix_inequalities,
    verify_gaussian_tail_bound,
)
from .posterior import NormalGammaParams, closed_form, initial_params, sample_qvalue, update
from .rng import RngStream
from .simulator import (
    BayesRegretCurve,
    RegretTrace,
    RunConfig,
    estimate_bayes_regret,
    run_episode,
)

__version__ = "0.1.0"
