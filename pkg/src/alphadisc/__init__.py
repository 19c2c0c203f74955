"""alphadisc: the alpha-approximation for s-to-z discretisation, with stability,
distortion and time-domain integration tooling."""
from ._accel import backend_name
from .analysis import (
    AlphaSearchResult,
    DistortionProfile,
    ExclusionReport,
    FrequencyGrid,
    Metric,
    Objective,
    Stability,
    aggregate,
    continuous_response,
    default_grid,
    discrete_response,
    discretization_stable,
    distortion_profile,
    exclusion_scan,
    hurwitz_stable,
    map_poles,
    search_alpha,
)
from .poly import (
    Polynomial,
    RationalFunction,
    poly_add,
    poly_eval,
    poly_mul,
    poly_pow,
    poly_roots,
)
from .systems import PlantSpec, make_lpf, make_notch, make_pi, make_plant, make_pr
from .timedomain import (
    SampledSignal,
    hexagonal_step,
    integrate_sequence,
    simulate_dtf,
)
from .transform import (
    AlphaParam,
    ContinuousTransferFunction,
    DiscreteTransferFunction,
    Method,
    SampleSpec,
    StabilityDisk,
    alpha_substitute,
    disk_within_unit_circle,
    s_to_z_point,
    stability_disk,
    to_alpha,
    z_to_s_point,
)

__version__ = "0.1.0"
