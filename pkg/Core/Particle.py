# File: Particle.py
# Path: FermiCorr/Core/Particle.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-24
# Last Modified: 2025-04-10
# Description: Particle-picture correlation - nonfreeness and two-fermion quantum nonfreeness

import itertools
import logging
import math
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np
from scipy.special import xlogy

from Core.DensMat import DensityMatrix, LogBaseFactor, VonNeumannEntropy, AsDensityMatrix
from Core.Errors import ValidationError
from Core.Fock import FockState, ModeBasis, NumberSector, OneParticleRdm, Popcount

Logger = logging.getLogger('FermiCorr.Particle')

OneParticleDimension = 4
SectorTolerance = 1e-10
SpectrumTolerance = 1e-10
BranchCutoff = 1e-12


@lru_cache(maxsize=None)
def LeviCivita(Dimension: int = OneParticleDimension) -> np.ndarray:
    """Totally antisymmetric tensor with epsilon[0, 1, ..., d-1] = +1."""
    Tensor = np.zeros((Dimension,) * Dimension)
    for Permutation in itertools.permutations(range(Dimension)):
        Inversions = sum(1 for Left, Right in itertools.combinations(Permutation, 2) if Left > Right)
        Tensor[Permutation] = -1.0 if Inversions % 2 else 1.0
    Tensor.setflags(write=False)
    return Tensor


def _TwoParticleIndices(ModeCount: int):
    return [(Index, [Mode for Mode in range(ModeCount) if (Index >> Mode) & 1])
            for Index in range(2 ** ModeCount) if Popcount(Index) == 2]


def ExpansionMatrix(Vector: Union[FockState, Sequence[complex]], Tolerance: float = SectorTolerance) -> np.ndarray:
    """
    Antisymmetric w with sum_ab w_ab f_a^dagger f_b^dagger |0> equal to the given state.

    Args:
        Vector: Two-fermion state (any norm) on a 4-mode Fock space
        Tolerance: Largest weight allowed outside the two-particle sector

    Returns:
        np.ndarray: Complex 4x4 antisymmetric matrix
    """
    Psi = np.asarray(Vector.Amplitudes if isinstance(Vector, FockState) else Vector, dtype=complex).reshape(-1)
    if Psi.shape[0] != 2 ** OneParticleDimension:
        raise ValidationError(f"Expected a {2 ** OneParticleDimension}-dimensional Fock vector, got {Psi.shape[0]}")

    W = np.zeros((OneParticleDimension, OneParticleDimension), dtype=complex)
    InSector = 0.0
    for Index, (A, B) in _TwoParticleIndices(OneParticleDimension):
        W[A, B] = Psi[Index] / 2.0
        W[B, A] = -Psi[Index] / 2.0
        InSector += abs(Psi[Index]) ** 2
    Outside = float(np.vdot(Psi, Psi).real) - InSector
    if Outside > Tolerance:
        raise ValidationError(f"State has weight {Outside:.3e} outside the two-particle sector")
    return W


def Pfaffian4(W: np.ndarray) -> complex:
    """Pfaffian of a 4x4 antisymmetric matrix; zero iff the two-fermion state is a single Slater determinant."""
    return complex(W[0, 1] * W[2, 3] - W[0, 2] * W[1, 3] + W[0, 3] * W[1, 2])


def SlaterKMatrixFromBranches(Branches: Sequence[Sequence[complex]]) -> np.ndarray:
    """
    K_ij = sum epsilon^{abcd} w^(i)_ab w^(j)_cd for an explicit decomposition rho = sum_i |psi_i><psi_i|.

    Args:
        Branches: Unnormalized two-fermion vectors carrying their weights

    Returns:
        np.ndarray: Complex symmetric r x r matrix
    """
    if len(Branches) == 0:
        raise ValidationError("K matrix needs at least one branch")
    Expansions = np.array([ExpansionMatrix(Branch) for Branch in Branches])
    return np.einsum('abcd,iab,jcd->ij', LeviCivita(OneParticleDimension), Expansions, Expansions)


def SlaterKMatrix(Rho: DensityMatrix) -> np.ndarray:
    """
    K matrix of a two-fermion state in four one-particle dimensions.

    Branches are the eigenvectors of rho scaled by the square roots of their eigenvalues.

    Args:
        Rho: 16x16 density matrix supported on the two-particle sector

    Returns:
        np.ndarray: r x r complex symmetric matrix, r = rank(rho) <= 6
    """
    Rho = AsDensityMatrix(Rho)
    if Rho.Dimension != 2 ** OneParticleDimension:
        raise ValidationError(f"Expected a {2 ** OneParticleDimension}-dimensional state, got {Rho.Dimension}")
    Sector = NumberSector(ModeBasis([(Mode, 'up') for Mode in range(OneParticleDimension)]), 2)
    Outside = 1.0 - float(np.real(np.trace(Rho.Matrix[np.ix_(Sector, Sector)])))
    if Outside > SectorTolerance:
        raise ValidationError(f"State has weight {Outside:.3e} outside the two-particle sector")

    Values, Vectors = Rho.Eigh
    Branches = [math.sqrt(Value) * Vectors[:, Index] for Index, Value in enumerate(Values) if Value > BranchCutoff]
    return SlaterKMatrixFromBranches(Branches)


def QuantumNonfreenessFromK(K: np.ndarray, Clamp: bool = True) -> float:
    """2 max|kappa| - sum|kappa| with |kappa| the singular values of K."""
    Singular = np.linalg.svd(np.atleast_2d(K), compute_uv=False)
    Value = float(2.0 * Singular.max() - Singular.sum())
    return max(Value, 0.0) if Clamp else Value


def QuantumNonfreeness(Rho: DensityMatrix, Clamp: bool = True) -> float:
    """
    Quantum part of the particle correlation of a two-fermion state.

    Args:
        Rho: 16x16 two-fermion density matrix
        Clamp: Clamp negative values to zero (disable to locate sign changes)

    Returns:
        float: Zero on convex mixtures of Slater determinants
    """
    return QuantumNonfreenessFromK(SlaterKMatrix(Rho), Clamp)


def _BinaryEntropy(Values: np.ndarray) -> float:
    return float(-np.sum(xlogy(Values, Values)))


def Nonfreeness(Rho: Union[DensityMatrix, FockState], Gamma: Optional[np.ndarray] = None,
                LogBase: Union[str, int] = 'e') -> float:
    """
    Total particle correlation S(gamma) + S(1 - gamma) - S(rho).

    Args:
        Rho: State on the Fock space
        Gamma: One-particle RDM normalized to N (computed from Rho when omitted)
        LogBase: 'e' or 2

    Returns:
        float: Non-negative value, zero exactly on configuration states
    """
    if isinstance(Rho, FockState):
        Rho = Rho.Density()
    Rho = AsDensityMatrix(Rho)
    Gamma = OneParticleRdm(Rho) if Gamma is None else np.asarray(Gamma)

    Occupations = np.linalg.eigvalsh(0.5 * (Gamma + Gamma.conj().T))
    if Occupations.min() < -SpectrumTolerance or Occupations.max() > 1.0 + SpectrumTolerance:
        raise ValidationError(
            f"One-particle spectrum [{Occupations.min():.3e}, {Occupations.max():.3e}] leaves [0, 1]")
    Occupations = np.clip(Occupations, 0.0, 1.0)

    Value = _BinaryEntropy(Occupations) + _BinaryEntropy(1.0 - Occupations) - VonNeumannEntropy(Rho)
    return max(Value, 0.0) / LogBaseFactor(LogBase)
