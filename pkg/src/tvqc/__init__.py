"""Quantum outage probabilities of time-varying amplitude damping channels."""

__version__ = "0.1.0"

from .capacity import CapacityValue, ad_capacity, capacity_of, hashing_bound, rayleigh_outage
from .channel_models import (ChannelKind, PauliPmf, asymmetry, cta_pmf, damping_from_t1,
                             depolarizing_probability, pta_pmf, t_algo_for_gamma)
from .errors import (DegenerateDistributionError, DomainError, NoSolutionError,
                     NotBracketedError, UndefinedAsymmetryError)
from .montecarlo import (McConfig, McEstimate, blocks_for_wer, confidence_interval,
                         empirical_outage)
from .outage import (CurveTable, NoiseLimit, OutageQuery, XAxis, critical_t1_from_talgo,
                     critical_t1_normalized, delta_out, noise_limit, outage_curve,
                     outage_probability)
from .stats_core import (TruncatedGaussian, binary_entropy, discrete_entropy, make_rng,
                         q_function, sample_t1, truncated_cdf, truncated_pdf)
