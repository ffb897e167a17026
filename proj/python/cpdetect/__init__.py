"""Change point detection for exponential-family time series."""

from cpdetect._core import (
    Model,
    argmax_quantiles,
    bridge_critical_value,
    confidence_interval,
    detect,
    gumbel_critical_value,
    nonparam_detect,
    simulate,
)

__all__ = [
    "Model",
    "argmax_quantiles",
    "bridge_critical_value",
    "confidence_interval",
    "detect",
    "gumbel_critical_value",
    "nonparam_detect",
    "simulate",
]
