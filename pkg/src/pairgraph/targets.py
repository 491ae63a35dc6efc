"""Target state specifications accepted by the synthesizer.

A target names a state family and its parameters. Graph constructors and
reference-state builders both consume these, so the definitions live in a
module without further package dependencies.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class GHZ:
    """n-party GHZ state of local dimension d."""

    n: int
    d: int = 2

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"GHZ party count must be >= 1, got {self.n}")
        if self.d < 2:
            raise ValueError(f"GHZ dimension must be >= 2, got {self.d}")


@dataclass(frozen=True)
class W:
    """n-party W state, the single-excitation Dicke state."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"W party count must be >= 2, got {self.n}")


@dataclass(frozen=True)
class Dicke:
    """n-party Dicke state with m excitations."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"Dicke party count must be >= 2, got {self.n}")
        if not 0 < self.m < self.n:
            raise ValueError(
                f"Dicke excitation count must satisfy 0 < m < n, got m={self.m}, n={self.n}"
            )


@dataclass(frozen=True)
class SRV:
    """Three-party target given by its vector of reduced-state ranks.

    Ranks are listed non-increasing: a >= b >= c >= 1. The realized state
    lives on three logical parties plus a constant trigger party.
    """

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if not self.a >= self.b >= self.c >= 1:
            raise ValueError(
                f"rank vector must be sorted non-increasing with positive entries, "
                f"got ({self.a}, {self.b}, {self.c})"
            )


@dataclass(frozen=True)
class AME:
    """Absolutely maximally entangled state of `parties` qudits of dimension d."""

    parties: int
    d: int = 2

    def __post_init__(self) -> None:
        if self.parties < 2:
            raise ValueError(f"AME party count must be >= 2, got {self.parties}")
        if self.d < 2:
            raise ValueError(f"AME dimension must be >= 2, got {self.d}")


TargetSpec = GHZ | W | Dicke | SRV | AME


def label(spec: TargetSpec) -> str:
    """Compact human-readable label, e.g. ``GHZ{4,2}`` or ``SRV{4,2,2}``."""
    if isinstance(spec, GHZ):
        return f"GHZ{{{spec.n},{spec.d}}}"
    if isinstance(spec, W):
        return f"W{{{spec.n}}}"
    if isinstance(spec, Dicke):
        return f"Dicke{{{spec.n},{spec.m}}}"
    if isinstance(spec, SRV):
        return f"SRV{{{spec.a},{spec.b},{spec.c}}}"
    if isinstance(spec, AME):
        return f"AME{{{spec.parties},{spec.d}}}"
    raise TypeError(f"not a target spec: {spec!r}")
