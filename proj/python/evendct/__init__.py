"""Fast even-length DCT flowgraphs (Kok recursion and its scaled variant)."""

from ._evendct import (
    OpCount,
    Plan,
    ScaledFactorization,
    complexity,
    dct3_plan,
    dct3_plan_via_scaled,
    fold,
    fold_scaled,
    kok_plan,
    oracle,
    plan_from_json,
    run_cli,
    scaled_plan,
)

__all__ = [
    "OpCount",
    "Plan",
    "ScaledFactorization",
    "complexity",
    "dct3_plan",
    "dct3_plan_via_scaled",
    "fold",
    "fold_scaled",
    "kok_plan",
    "oracle",
    "plan_from_json",
    "run_cli",
    "scaled_plan",
]
