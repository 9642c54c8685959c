"""Compositional feedback for non-deterministic, non-input-receptive
components over finite domains: relations with fail and unknown,
instantaneous feedback, the assert/update transformer algebra, and
finite-horizon unit-delay feedback."""

from feedkit._feedkit import (
    FeedkitError,
    FeedbackShape,
    Model,
    PrefixSemantics,
    Rfu,
    Spec,
    Sts,
    load_model,
)

__all__ = [
    "FeedkitError",
    "FeedbackShape",
    "Model",
    "PrefixSemantics",
    "Rfu",
    "Spec",
    "Sts",
    "load_model",
]
