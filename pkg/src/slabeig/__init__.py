"""Bound states of walled 1D potentials by piecewise-constant slabs.

The interval between two infinite walls is cut into equal slabs, the
potential is frozen at each slab midpoint, and the slab solutions are
stitched together exactly.  Eigenvalues are the zeros of the resulting
quantification function.

Typical use::

    from slabeig import harmonic, partition, solve
    disc = partition(harmonic(-10, 10), 2000)
    levels = solve(disc, 0.0, 14.0)
"""
from ._backend import NAME as BACKEND
from .analytic import harmonic_energy, morse_energy, square_well_energy
from .errors import (
    DomainError,
    ParseError,
    PreconditionError,
    SlabError,
    SpectrumExhausted,
    StaleEnergyError,
    ValidationError,
)
from .grid import Discretization, partition
from .oracle import OracleResult, fd_spectrum
from .potentials import (
    Kind,
    PotentialSpec,
    evaluate,
    harmonic,
    morse,
    parse_potential,
    polynomial,
    render,
    square_well,
    tabulated,
)
from .quantify import QuantValue, coupling, quantification, shoot_real, wavenumber
from .spectrum import EigenLevel, refine, scan, sign_of, solve
from .wavefun import WavefunctionTable, continuity_audit, reconstruct

__version__ = "0.1.0"
