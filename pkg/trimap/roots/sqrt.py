from __future__ import annotations

from typing import Optional

from attrs import field, frozen
from attrs.validators import ge, in_, instance_of
import numpy as np

from trimap.core import typing as types
from trimap.core.models import SqrtKind
from trimap.core.utils import get_default


class NegativeRadicandError(ValueError):
    """Raised when a square root of a negative number is requested."""


def _default_epsilon(kind: SqrtKind) -> float:
    return 0.0 if kind is SqrtKind.EXACT else float(get_default("roots", "epsilon"))


def _default_precision(kind: SqrtKind) -> str:
    return "float64" if kind is SqrtKind.EXACT else str(get_default("roots", "precision"))


@frozen
class SqrtStrategy:
    """Square-root evaluation used by the maps.

    - `exact`: platform square root in float64.
    - `newton`: reciprocal square root seeded from the float32 bit pattern with the magic constant,
      refined by `newton_iterations` Newton-Raphson iterations and inverted as `x * rsqrt(x) + epsilon`.
    - `rsqrt`: software stand-in for a hardware reciprocal square root, the same seed refined by a
      single Newton-Raphson step and inverted as `x * rsqrt(x) + epsilon`.

    :param kind: Square-root kind.
    :param epsilon: Additive correction. Defaults to 0 for `exact` and to `roots.epsilon` otherwise.
    :param precision: Floating point type of the refinement (`float64` or `float32`). Defaults to `float64`
        for `exact` and to `roots.precision` otherwise.
    :param newton_iterations: Number of Newton-Raphson iterations of `newton`.
    :param magic: Magic constant of the bit-level seed.
    """

    kind: SqrtKind = field(default=SqrtKind.EXACT, converter=SqrtKind)
    epsilon: float = field(converter=float, validator=ge(0.0))
    precision: str = field(validator=in_(("float64", "float32")), kw_only=True)
    newton_iterations: int = field(
        factory=lambda: int(get_default("roots", "newton_iterations")),
        converter=int,
        validator=ge(0),
        kw_only=True,
    )
    magic: int = field(
        factory=lambda: int(get_default("roots", "magic")), validator=instance_of(int), kw_only=True
    )

    @epsilon.default
    def _epsilon_default(self) -> float:
        return _default_epsilon(self.kind)

    @precision.default
    def _precision_default(self) -> str:
        return _default_precision(self.kind)

    def __attrs_post_init__(self) -> None:
        if self.kind is SqrtKind.EXACT and self.epsilon != 0.0:
            raise ValueError(f"Exact square root does not take a correction, got epsilon={self.epsilon}.")

    @classmethod
    def from_tag(cls, tag: str | SqrtKind, epsilon: Optional[float] = None, **kwargs: object) -> SqrtStrategy:
        """Build strategy from its tag, keeping the default epsilon when `epsilon` is None."""
        kind = SqrtKind(tag)
        if epsilon is None:
            return cls(kind, **kwargs)  # type: ignore[arg-type]
        return cls(kind, float(epsilon), **kwargs)  # type: ignore[arg-type]

    @property
    def dtype(self) -> type[np.floating]:
        return np.float64 if self.precision == "float64" else np.float32


EXACT = SqrtStrategy()


def _magic_rsqrt(s: SqrtStrategy, x: types.FloatArray, iterations: int) -> types.FloatArray:
    """Bit-level reciprocal square root seed refined by `iterations` Newton-Raphson steps."""
    bits = x.astype(np.float32).view(np.int32)
    seed = (np.int32(s.magic) - (bits >> 1)).view(np.float32)

    dtype = s.dtype
    y = seed.astype(dtype)
    half_x = dtype(0.5) * x.astype(dtype)
    three_halves = dtype(1.5)
    for _ in range(iterations):
        y = y * (three_halves - half_x * y * y)
    return y


def sqrt_array(s: SqrtStrategy, x: types.RealOrArray) -> types.FloatArray:
    """Vectorized `sqrt_eval`.

    :param s: Square-root strategy.
    :param x: Non-negative values.
    :returns: float64 array of square roots.
    :raises NegativeRadicandError: Some value is negative.
    """
    x = np.asarray(x, dtype=np.float64)
    if np.any(x < 0):
        raise NegativeRadicandError(f"Square root of negative value {x[x < 0].flat[0]} requested.")

    if s.kind is SqrtKind.EXACT:
        return np.sqrt(x)

    dtype = s.dtype
    iterations = s.newton_iterations if s.kind is SqrtKind.NEWTON else 1
    with np.errstate(invalid="ignore", over="ignore"):
        rsqrt = _magic_rsqrt(s, x, iterations)
        xd = x.astype(dtype)
        root = np.where(xd > 0, xd * rsqrt, dtype(0.0))
    return root.astype(np.float64) + s.epsilon


def sqrt_eval(s: SqrtStrategy, x: float) -> float:
    """Square root of `x` evaluated with strategy `s`.

    Example:
        >>> sqrt_eval(SqrtStrategy("exact"), 4.0)
        2.0

    :raises NegativeRadicandError: `x` is negative.
    """
    return float(sqrt_array(s, np.array([x], dtype=np.float64))[0])
