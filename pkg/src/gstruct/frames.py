"""Oriented orthonormal frame spaces."""

from __future__ import annotations

from dataclasses import dataclass, field

from .backend import EXACT, ExactBackend, FloatBackend
from .errors import FrameMismatchError


@dataclass(frozen=True)
class FrameSpace:
    """An oriented n-dimensional orthonormal coframe.

    The listed order of the labels fixes the orientation: the volume form
    is the wedge of all labels in that order, with coefficient +1.
    """

    dim: int
    labels: tuple[str, ...]
    backend: ExactBackend | FloatBackend = field(default=EXACT, compare=False)

    def __post_init__(self):
        if len(self.labels) != self.dim:
            raise ValueError("label count must match dimension")
        if len(set(self.labels)) != self.dim:
            raise ValueError("frame labels must be distinct")

    @classmethod
    def standard(cls, dim: int, backend=EXACT, prefix: str = "e") -> "FrameSpace":
        return cls(dim, tuple(f"{prefix}{i}" for i in range(dim)), backend)

    def scalar(self, value):
        return self.backend.scalar(value)

    def is_zero(self, x) -> bool:
        return self.backend.is_zero(x)

    def eq(self, x, y) -> bool:
        return self.backend.eq(x, y)

    @property
    def vol_tuple(self) -> tuple[int, ...]:
        return tuple(range(self.dim))

    def check_same(self, other: "FrameSpace"):
        if self.dim != other.dim or self.labels != other.labels:
            raise FrameMismatchError(
                f"frame mismatch: {self.labels} vs {other.labels}"
            )
