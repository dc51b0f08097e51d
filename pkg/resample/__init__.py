"""
Bootstrap confidence intervals for inequality metrics
"""

from .bootstrap import (
    AllResamplesDegenerate,
    BootstrapConfig,
    BootstrapResult,
    bootstrap_difference,
    bootstrap_metric,
)

__all__ = [
    'AllResamplesDegenerate',
    'BootstrapConfig',
    'BootstrapResult',
    'bootstrap_difference',
    'bootstrap_metric',
]
