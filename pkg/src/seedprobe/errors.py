"""Exception types shared across the package.

Plain ``ValueError`` is used for invalid arguments throughout; the classes
here cover failures that carry extra context (a diverging run, a broken
reference set, a bad config file).
"""

from __future__ import annotations


class TrainingFailure(RuntimeError):
    """A training run diverged or missed its convergence gate."""


class InferenceFailure(RuntimeError):
    """Diffusion inference produced non-finite values.

    Attributes:
        step: Timestep index at which the failure was detected.
    """

    def __init__(self, message: str, step: int):
        super().__init__(f"{message} (at timestep {step})")
        self.step = step


class InversionFailure(RuntimeError):
    """Diffusion inversion produced non-finite values.

    Attributes:
        step: Timestep index at which the failure was detected.
    """

    def __init__(self, message: str, step: int):
        super().__init__(f"{message} (at timestep {step})")
        self.step = step


class OptimizationFailure(RuntimeError):
    """A latent optimization loop diverged."""


class DegenerateReferenceError(ValueError):
    """The reference NLL set is indistinguishable from the normal baseline.

    Raised when the relative-distance denominator is zero: the ratio cannot
    be normalized and the surrounding experiment must stop loudly rather
    than emit an infinite score.
    """


class BatchFailure(RuntimeError):
    """Too many items of a batched run failed.

    Attributes:
        failures: Mapping from item id to the exception it raised.
    """

    def __init__(self, message: str, failures: dict[str, Exception]):
        detail = "; ".join(f"{k}: {v}" for k, v in failures.items())
        super().__init__(f"{message}: {detail}")
        self.failures = failures


class ConfigError(ValueError):
    """An experiment configuration is malformed or references missing files."""
