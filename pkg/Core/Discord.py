# File: Discord.py
# Path: FermiCorr/Core/Discord.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-20
# Last Modified: 2025-04-09
# Description: Geometric quantum discord - closest classical states by direct search and Metropolis walks

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize
from scipy.special import xlogy

from Core.DensMat import (DensityMatrix, LogBaseFactor, PartialTrace, RandomUnitary, ShannonEntropy,
                          VonNeumannEntropy, AsDensityMatrix)
from Core.Errors import ValidationError
from Core.Measures import MutualInformation
from Core.WorkerPool import ParallelMap

Logger = logging.getLogger('FermiCorr.Discord')

UnitaryTolerance = 1e-10
PolishTolerance = 1e-12


@dataclass(frozen=True)
class LocalBases:
    """Local orthonormal bases stored as the columns of two unitaries."""

    BasisA: np.ndarray
    BasisB: np.ndarray

    def __post_init__(self):
        for Name, Basis in (('A', self.BasisA), ('B', self.BasisB)):
            if Basis.ndim != 2 or Basis.shape[0] != Basis.shape[1]:
                raise ValidationError(f"Basis {Name} must be a square matrix, got shape {Basis.shape}")
            Deviation = float(np.max(np.abs(Basis.conj().T @ Basis - np.eye(Basis.shape[0]))))
            if Deviation > UnitaryTolerance:
                raise ValidationError(f"Basis {Name} is not unitary (deviation {Deviation:.3e})")

    @property
    def Dims(self) -> Tuple[int, int]:
        return self.BasisA.shape[0], self.BasisB.shape[0]

    def Joint(self) -> np.ndarray:
        return np.kron(self.BasisA, self.BasisB)


@dataclass(frozen=True)
class DiscordResult:
    """Minimized discord with the closest classical state found and the bases that produce it."""

    Discord: float
    ClosestClassical: DensityMatrix
    Bases: LocalBases
    Iterations: int
    History: Tuple[float, ...] = field(default=())
    LogBase: str = 'e'


@dataclass(frozen=True)
class WalkSettings:
    """Hyperparameters of the Metropolis walk on local unitaries."""

    Steps: int = 5000
    StepSize: float = 0.1
    InverseTemperature: float = 1e4
    Restarts: int = 8
    Polish: bool = True

    def __post_init__(self):
        if self.Steps < 1 or self.Restarts < 1:
            raise ValidationError("Steps and Restarts must be positive")
        if self.StepSize <= 0 or self.InverseTemperature <= 0:
            raise ValidationError("StepSize and InverseTemperature must be positive")

    @classmethod
    def FromConfig(cls, Section: Dict[str, Any]) -> 'WalkSettings':
        """Build settings from a ConfigManager 'DiscordConfig' section."""
        return cls(Steps=int(Section.get('Steps', 5000)), StepSize=float(Section.get('StepSize', 0.1)),
                   InverseTemperature=float(Section.get('InverseTemperature', 1e4)),
                   Restarts=int(Section.get('Restarts', 8)), Polish=bool(Section.get('Polish', True)))


def _RequireBipartite(Rho: DensityMatrix) -> DensityMatrix:
    Rho = AsDensityMatrix(Rho)
    if Rho.Shape.FactorCount != 2:
        raise ValidationError(f"Discord needs a bipartite shape, got {Rho.Shape.Dims}")
    return Rho


def _CheckBases(Rho: DensityMatrix, Bases: LocalBases) -> None:
    if Bases.Dims != Rho.Shape.Dims:
        raise ValidationError(f"Bases of dimensions {Bases.Dims} do not match state shape {Rho.Shape.Dims}")


def _ProductProbabilities(RhoMatrix: np.ndarray, Joint: np.ndarray) -> np.ndarray:
    """mu_ab = <a b| rho |a b> for the columns of Joint."""
    Mu = np.real(np.einsum('ia,ij,ja->a', Joint.conj(), RhoMatrix, Joint))
    return np.clip(Mu, 0.0, None)


def _DiscordNats(RhoMatrix: np.ndarray, UA: np.ndarray, UB: np.ndarray, Entropy: float) -> float:
    # S(rho || sigma_cl) = H(mu) - S(rho) because sigma_cl is diagonal where rho has diagonal mu
    return ShannonEntropy(_ProductProbabilities(RhoMatrix, np.kron(UA, UB))) - Entropy


def ClassicalState(Rho: DensityMatrix, Bases: LocalBases) -> DensityMatrix:
    """
    Closest classical state for fixed local bases.

    Args:
        Rho: Bipartite density matrix
        Bases: Local orthonormal bases matching the shape of Rho

    Returns:
        DensityMatrix: sum_ab mu_ab |a><a| (x) |b><b| with mu_ab = <ab|rho|ab>
    """
    Rho = _RequireBipartite(Rho)
    _CheckBases(Rho, Bases)
    Joint = Bases.Joint()
    Mu = _ProductProbabilities(Rho.Matrix, Joint)
    Mu = Mu / Mu.sum()
    return DensityMatrix((Joint * Mu) @ Joint.conj().T, Rho.Shape)


def MarginalEigenbases(Rho: DensityMatrix) -> LocalBases:
    """Eigenbases of the two marginals, the natural starting point of every search."""
    Rho = _RequireBipartite(Rho)
    _, BasisA = PartialTrace(Rho, 0).Eigh
    _, BasisB = PartialTrace(Rho, 1).Eigh
    return LocalBases(np.array(BasisA, dtype=complex), np.array(BasisB, dtype=complex))


def _Result(Rho: DensityMatrix, UA: np.ndarray, UB: np.ndarray, Iterations: int,
            History: Sequence[float], LogBase: Union[str, int]) -> DiscordResult:
    Bases = LocalBases(_Reunitarize(UA), _Reunitarize(UB))
    Sigma = ClassicalState(Rho, Bases)
    Factor = LogBaseFactor(LogBase)
    Value = max(_DiscordNats(Rho.Matrix, Bases.BasisA, Bases.BasisB, VonNeumannEntropy(Rho)), 0.0)
    return DiscordResult(Value / Factor, Sigma, Bases, Iterations,
                         tuple(Entry / Factor for Entry in History), str(LogBase))


def _Reunitarize(U: np.ndarray) -> np.ndarray:
    """Nearest unitary up to rounding, via QR with a positive-phase diagonal."""
    Q, R = np.linalg.qr(U)
    Phases = np.diag(R) / np.where(np.abs(np.diag(R)) > 0, np.abs(np.diag(R)), 1.0)
    return Q * Phases


def DiscordDirect(Rho: DensityMatrix, Samples: int = 2000, Seed: int = 0,
                  LogBase: Union[str, int] = 'e') -> DiscordResult:
    """
    Discord by brute-force sampling of Haar-random local bases.

    The marginal eigenbases are evaluated first, then Samples random draws; the running
    minimum only depends on the seed, so a larger Samples never gives a larger value.

    Args:
        Rho: Bipartite density matrix
        Samples: Number of random basis pairs
        Seed: Seed of the numpy Generator
        LogBase: 'e' or 2

    Returns:
        DiscordResult with the best bases seen
    """
    Rho = _RequireBipartite(Rho)
    if Samples < 1:
        raise ValidationError(f"Samples must be positive, got {Samples}")
    DimA, DimB = Rho.Shape.Dims
    Entropy = VonNeumannEntropy(Rho)
    Rng = np.random.default_rng(Seed)

    Start = MarginalEigenbases(Rho)
    BestA, BestB = Start.BasisA, Start.BasisB
    Best = _DiscordNats(Rho.Matrix, BestA, BestB, Entropy)
    History = [Best]

    for _ in range(Samples):
        UA = RandomUnitary(DimA, Rng)
        UB = RandomUnitary(DimB, Rng)
        Value = _DiscordNats(Rho.Matrix, UA, UB, Entropy)
        if Value < Best:
            Best, BestA, BestB = Value, UA, UB
        History.append(Best)

    Logger.debug(f"Direct search: discord {Best:.10g} after {Samples} samples")
    return _Result(Rho, BestA, BestB, Samples, History, LogBase)


def RandomHermitian(Dimension: int, Rng: np.random.Generator) -> np.ndarray:
    """Gaussian Hermitian matrix scaled to unit spectral norm."""
    G = Rng.standard_normal((Dimension, Dimension)) + 1j * Rng.standard_normal((Dimension, Dimension))
    H = 0.5 * (G + G.conj().T)
    return H / np.linalg.norm(H, 2)


def _HermitianFromVector(X: np.ndarray, Dimension: int) -> np.ndarray:
    H = np.zeros((Dimension, Dimension), dtype=complex)
    Upper = np.triu_indices(Dimension, 1)
    Count = len(Upper[0])
    H[np.diag_indices(Dimension)] = X[:Dimension]
    H[Upper] = X[Dimension:Dimension + Count] + 1j * X[Dimension + Count:]
    return H + np.triu(H, 1).conj().T


def _Polish(RhoMatrix: np.ndarray, UA: np.ndarray, UB: np.ndarray, Entropy: float) -> Tuple[np.ndarray, np.ndarray, float]:
    """Local refinement of the best walk point over exp(iH_A) U_A (x) exp(iH_B) U_B."""
    DimA, DimB = UA.shape[0], UB.shape[0]

    def Rotated(X: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return (expm(1j * _HermitianFromVector(X[:DimA ** 2], DimA)) @ UA,
                expm(1j * _HermitianFromVector(X[DimA ** 2:], DimB)) @ UB)

    def Objective(X: np.ndarray) -> float:
        return _DiscordNats(RhoMatrix, *Rotated(X), Entropy)

    Start = _DiscordNats(RhoMatrix, UA, UB, Entropy)
    Outcome = minimize(Objective, np.zeros(DimA ** 2 + DimB ** 2), method='BFGS',
                       options={'gtol': PolishTolerance, 'maxiter': 500})
    if not np.all(np.isfinite(Outcome.x)) or Outcome.fun >= Start:
        return UA, UB, Start
    NewA, NewB = Rotated(Outcome.x)
    return _Reunitarize(NewA), _Reunitarize(NewB), float(Outcome.fun)


def _RunWalk(Task: Tuple[np.ndarray, Tuple[int, int], WalkSettings, np.random.SeedSequence, int]
             ) -> Tuple[float, np.ndarray, np.ndarray, Tuple[float, ...]]:
    RhoMatrix, Dims, Settings, Seed, Index = Task
    DimA, DimB = Dims
    Rng = np.random.default_rng(Seed)
    Entropy = VonNeumannEntropy(DensityMatrix(RhoMatrix, Dims))

    if Index == 0:
        Start = MarginalEigenbases(DensityMatrix(RhoMatrix, Dims))
        UA, UB = Start.BasisA, Start.BasisB
    else:
        UA, UB = RandomUnitary(DimA, Rng), RandomUnitary(DimB, Rng)

    Current = _DiscordNats(RhoMatrix, UA, UB, Entropy)
    Best, BestA, BestB = Current, UA, UB
    History = [Best]
    Accepted = 0

    for _ in range(Settings.Steps):
        CandidateA = _Reunitarize(expm(1j * Settings.StepSize * RandomHermitian(DimA, Rng)) @ UA)
        CandidateB = _Reunitarize(expm(1j * Settings.StepSize * RandomHermitian(DimB, Rng)) @ UB)
        Value = _DiscordNats(RhoMatrix, CandidateA, CandidateB, Entropy)
        Draw = Rng.random()
        Delta = Value - Current
        if Delta <= 0 or Draw < math.exp(-Settings.InverseTemperature * Delta):
            UA, UB, Current = CandidateA, CandidateB, Value
            Accepted += 1
            if Current < Best:
                Best, BestA, BestB = Current, UA, UB
        History.append(Best)

    if Settings.Polish:
        BestA, BestB, Best = _Polish(RhoMatrix, BestA, BestB, Entropy)
        History.append(Best)

    Logger.debug(f"Walk {Index}: best {Best:.10g}, acceptance {Accepted / Settings.Steps:.3f}")
    return Best, BestA, BestB, tuple(History)


def DiscordMcmc(Rho: DensityMatrix, Steps: int = 5000, StepSize: float = 0.1, InverseTemperature: float = 1e4,
                Restarts: int = 8, Seed: int = 0, Jobs: int = 1, Polish: bool = True,
                LogBase: Union[str, int] = 'e', Settings: Optional[WalkSettings] = None) -> DiscordResult:
    """
    Discord by Metropolis random walks on pairs of local unitaries.

    Each step proposes U' = exp(i eta H) U on both sides with H a random Hermitian matrix of unit
    spectral norm and accepts with probability min(1, exp(-beta dD)). The best point of every walk is
    optionally refined by a local quasi-Newton search. Restart k is seeded by the k-th spawned child of
    Seed, and the minimum over restarts is returned, so the result does not depend on Jobs.

    Args:
        Rho: Bipartite density matrix
        Steps: Proposals per walk
        StepSize: eta
        InverseTemperature: beta
        Restarts: Independent walks (the first starts at the marginal eigenbases)
        Seed: Root seed
        Jobs: Worker processes for the walks
        Polish: Refine each walk's best point
        LogBase: 'e' or 2
        Settings: Overrides the individual hyperparameters when given

    Returns:
        DiscordResult whose History is the non-increasing best-so-far sequence of the winning walk
    """
    Rho = _RequireBipartite(Rho)
    Settings = Settings or WalkSettings(int(Steps), float(StepSize), float(InverseTemperature), int(Restarts), Polish)

    Children = np.random.SeedSequence(Seed).spawn(Settings.Restarts)
    Tasks = [(Rho.Matrix, Rho.Shape.Dims, Settings, Child, Index) for Index, Child in enumerate(Children)]
    Walks = ParallelMap(_RunWalk, Tasks, Jobs)

    Best, BestA, BestB, History = min(Walks, key=lambda Walk: Walk[0])
    Logger.info(f"Metropolis discord: best {Best:.10g} over {Settings.Restarts} walks of {Settings.Steps} steps")
    return _Result(Rho, BestA, BestB, Settings.Steps, History, LogBase)


def DiscordWernerClosedForm(C: float, LogBase: Union[str, int] = 'e') -> float:
    """
    Known discord of (1 - c) 1/4 + c |Psi-><Psi-|.

    Args:
        C: Singlet weight in [0, 1]
        LogBase: 'e' or 2
    """
    if not 0.0 <= C <= 1.0:
        raise ValidationError(f"Singlet weight must lie in [0, 1], got {C}")
    Value = (xlogy(1.0 - C, 1.0 - C) / 4.0 - xlogy(1.0 + C, 1.0 + C) / 2.0
             + xlogy(1.0 + 3.0 * C, 1.0 + 3.0 * C) / 4.0)
    return max(float(Value), 0.0) / LogBaseFactor(LogBase)


def WernerDiscordFamily(C: float) -> DensityMatrix:
    """(1 - c) 1/4 + c |Psi-><Psi-| on two qubits."""
    if not 0.0 <= C <= 1.0:
        raise ValidationError(f"Singlet weight must lie in [0, 1], got {C}")
    Psi = np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0)
    return DensityMatrix((1.0 - C) * np.eye(4) / 4.0 + C * np.outer(Psi, Psi), (2, 2))


def ClassicalCorrelationDiscord(Result: DiscordResult, LogBase: Optional[Union[str, int]] = None) -> float:
    """Mutual information of the closest classical state."""
    return MutualInformation(Result.ClosestClassical, LogBase if LogBase is not None else Result.LogBase)
