"""Closed-form spectra and published reference values.

Index conventions follow each formula: the square well counts ``p`` from
1, the harmonic oscillator and the Morse oscillator count from 0.  A
solver level with 0-based index ``j`` therefore maps to ``p = j + 1`` for
the square well and ``p = j`` otherwise.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

from .errors import DomainError, SpectrumExhausted

__all__ = [
    "square_well_energy",
    "harmonic_energy",
    "morse_energy",
    "morse_level_count",
    "Family",
    "ReferenceSpectrum",
    "LITERATURE",
    "closest_reference",
]


def square_well_energy(p: int, L: float) -> float:
    """Level ``p >= 1`` of a box of width ``2L`` (hbar = 1, 2m = 1)."""
    if int(p) != p or p < 1:
        raise DomainError(f"square-well index starts at 1, got {p!r}")
    if not L > 0:
        raise DomainError(f"half-width must be positive, got {L!r}")
    return p * p * math.pi**2 / (2.0 * L) ** 2


def harmonic_energy(p: int) -> float:
    """Level ``p >= 0`` of V = x**2: 2p + 1."""
    if int(p) != p or p < 0:
        raise DomainError(f"harmonic index starts at 0, got {p!r}")
    return 2.0 * (p + 0.5)


def morse_level_count(V0: float, lam: float) -> int:
    """Number of levels before the Morse formula stops increasing."""
    if not (V0 > 0 and lam > 0):
        raise DomainError(f"Morse parameters must be positive, got V0={V0!r}, lambda={lam!r}")
    # E_q - E_{q-1} > 0  <=>  q < sqrt(V0) / lam
    return int(math.ceil(math.sqrt(V0) / lam))


def morse_energy(q: int, V0: float, lam: float) -> float:
    """Morse level ``q`` of V0 * (1 - exp(-lam x))**2."""
    if int(q) != q or q < 0:
        raise DomainError(f"Morse index starts at 0, got {q!r}")
    if q >= morse_level_count(V0, lam):
        raise SpectrumExhausted(f"Morse spectrum with V0={V0}, lambda={lam} has no level {q}")
    s = math.sqrt(V0)
    nu = q + 0.5
    return 2.0 * lam * s * (nu - nu * nu * lam / (2.0 * s))


class Family(enum.Enum):
    SQUARE_WELL = "squarewell"
    HARMONIC_UNBOUNDED = "harmonic"
    MORSE = "morse"


@dataclass(frozen=True)
class ReferenceSpectrum:
    """Lazily enumerated closed-form spectrum.

    ``parameters`` is ``(L,)`` for the square well, ``()`` for the
    harmonic oscillator and ``(V0, lam)`` for Morse.
    """

    family: Family
    parameters: tuple = ()

    def level(self, j: int) -> float:
        """Energy of the ``j``-th level counted from 0."""
        if self.family is Family.SQUARE_WELL:
            return square_well_energy(j + 1, *self.parameters)
        if self.family is Family.HARMONIC_UNBOUNDED:
            return harmonic_energy(j)
        return morse_energy(j, *self.parameters)

    def levels(self):
        if self.family is Family.MORSE:
            count = morse_level_count(*self.parameters)
            return (self.level(j) for j in range(count))
        return (self.level(j) for j in itertools.count())

    def first(self, count: int):
        return list(itertools.islice(self.levels(), count))


# Published values for walled potentials, keyed by (canonical potential, a, b).
# Each entry maps a 0-based level to {source: energy}.
LITERATURE = {
    ("harmonic", -10.0, 10.0): {
        p: {"slab_method_n2000": v}
        for p, v in enumerate(
            (1.000586, 3.001487, 5.002569, 7.003471, 9.004435, 11.005464, 13.007584)
        )
    },
    ("harmonic", -1.0, 1.0): {
        0: {"slab_method_n2000": 2.59718},
        1: {"slab_method_n2000": 10.151348},
    },
    ("poly:1*x^2+1*x^4", -2.0, 2.0): {
        0: {"slab_method_n2000": 1.395},
        1: {"slab_method_n2000": 4.695, "power_series_alhendi_lashin_2005": 4.58734092},
    },
}


def closest_reference(key, level: int, value: float):
    """Source in :data:`LITERATURE` whose value lies nearest to ``value``.

    Returns ``(source, reference_value)`` or ``None`` when nothing is known.
    """
    refs = LITERATURE.get(key, {}).get(level)
    if not refs:
        return None
    src = min(refs, key=lambda s: abs(refs[s] - value))
    return src, refs[src]
