"""Normality testing and Walsh analysis of p-ary functions."""

import json

from ._core import (
    ConsistencyError,
    Function,
    PnormError,
    affine_flat_count,
    algebraic_degree,
    brute_force_normal,
    classify,
    coulter_matthews,
    cubic_density_exponent,
    direct_sum_extend,
    dual,
    fixture,
    fixtures,
    gaussian_binomial,
    is_bent,
    normality_cap,
    nonnormal_existence,
    parse_spec,
    product_construction,
    resolve,
    walsh_norms,
    walsh_spectrum,
)
from . import _core

__all__ = [
    "ConsistencyError",
    "Function",
    "PnormError",
    "affine_flat_count",
    "algebraic_degree",
    "brute_force_normal",
    "classify",
    "coulter_matthews",
    "cubic_density_exponent",
    "direct_sum_extend",
    "dual",
    "fixture",
    "fixtures",
    "gaussian_binomial",
    "is_bent",
    "max_normality",
    "normality_cap",
    "nonnormal_existence",
    "parse_spec",
    "product_construction",
    "resolve",
    "test_normality",
    "walsh_norms",
    "walsh_spectrum",
]


def test_normality(f, k, mode="constant", workers=1, witness_cap=64, start_dim=1):
    """Report dict for (weak) k-normality; report["verdict"] is "normal" or "not_normal"."""
    return json.loads(_core.normality_json(f, k, mode, workers, witness_cap, start_dim))


test_normality.__test__ = False  # keep pytest from collecting it


def max_normality(f, mode="constant", workers=1, witness_cap=64):
    """(k_max, report dict or None)."""
    k, doc = _core.max_normality_json(f, mode, workers, witness_cap)
    return k, (json.loads(doc) if doc is not None else None)
