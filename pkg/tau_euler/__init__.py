"""Ramanujan's tau, Sato-Tate angles and degree-two Euler products."""

from .chebyshev_gate import classify, dilated_chebyshev
from .character_ring import VirtualCharacter, unitarity_test
from .config import RunConfig, get_config
from .euler_products import EulerProductSpec, truncated_product
from .polynomial import IntPolynomial
from .satotate import build_angles, satotate_test
from .tau_series import TauTable, expand_delta

__all__ = [
    "EulerProductSpec",
    "IntPolynomial",
    "RunConfig",
    "TauTable",
    "VirtualCharacter",
    "build_angles",
    "classify",
    "dilated_chebyshev",
    "expand_delta",
    "get_config",
    "satotate_test",
    "truncated_product",
    "unitarity_test",
]
