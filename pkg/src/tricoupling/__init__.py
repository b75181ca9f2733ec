"""Exact constant-sum couplings of decreasing distributions, and the
constants of the tri-coloured sum-free set problem around them."""

from .constants import lambda_prime, psi, psi_rational, rho, theta
from .couple import Coupling, couple, verify_coupling
from .decompose import simple_decompose, verify_decomposition
from .errors import InstanceError
from .exactdist import Dist, entropy, hat, make_dist, mean, mix, unhat, uniform, v_dist
from .oracle import check_certificate, compatible_oracle

__all__ = [
    "Coupling",
    "Dist",
    "InstanceError",
    "check_certificate",
    "compatible_oracle",
    "couple",
    "entropy",
    "hat",
    "lambda_prime",
    "make_dist",
    "mean",
    "mix",
    "psi",
    "psi_rational",
    "rho",
    "simple_decompose",
    "theta",
    "unhat",
    "uniform",
    "v_dist",
    "verify_coupling",
    "verify_decomposition",
]
