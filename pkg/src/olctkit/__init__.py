"""Offset linear canonical transform toolkit with numerical uncertainty checks."""

__version__ = "0.1.0"

from .errors import DomainError, GridError, NonFiniteError, OLCTError, UnimodularityError, UsageError
from .grid import IndexSet, SampledSignal, SpectrumSignal, gen_signal, gen_window, norm2, pnorm
from .olct import check_additivity, check_parseval, kernel, olct_forward, olct_inverse
from .params import CompositionResult, OLCTParams, compose, invert, make_params, special_case
from .report import BoundReport
from .stolct import TFGrid, check_ft_relation, check_norm_identity
from .uncertainty import (
    abb_projection_probe,
    concentration,
    donoho_stark_check,
    essential_support_bound,
    essential_support_check,
    hausdorff_young_check,
    lieb_check,
    smallest_concentration_set,
)
