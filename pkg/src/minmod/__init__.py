"""Exact q-series, (2,nu) minimal-model characters and their modular differential equations."""
from .characters import ModelSpec, character, character_product, character_sum
from .hypergeom import allowed_k, f21_series, gauge_ode_check, params_for_k
from .kernels import BACKEND
from .modforms import catalog, delta, eisenstein, eta, form, jfunction, rcf, serre, theta5
from .ode import OdeOperator, apply, derive_alphas, wronskian_ode
from .qseries import DEFAULT_TRUNC, QSeries
from .verify import Config, VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Config", "DEFAULT_TRUNC", "ModelSpec", "OdeOperator", "QSeries",
    "VerificationReport", "allowed_k", "apply", "catalog", "character", "character_product",
    "character_sum", "delta", "derive_alphas", "eisenstein", "eta", "f21_series", "form",
    "gauge_ode_check", "jfunction", "params_for_k", "rcf", "run_suite", "serre", "theta5",
    "wronskian_ode",
]
