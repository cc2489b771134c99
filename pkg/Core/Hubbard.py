# File: Hubbard.py
# Path: FermiCorr/Core/Hubbard.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-27
# Last Modified: 2025-04-12
# Description: Hubbard dimer - spectrum, Gibbs states, (T, r) correlation scans and critical distances

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import bisect

from Core.DensMat import DensityMatrix, HermitianOperator
from Core.Errors import ConvergenceError, ValidationError
from Core.Fock import Bipartition, CreationOp, ModeBasis, NumberOp, NumberSector, SplitBipartite
from Core.Measures import CouplingBound
from Core.Particle import Nonfreeness, QuantumNonfreeness
from Core.RdmIO import ScanRecord
from Core.Ssr import SsrCorrelations, SsrKind
from Core.WorkerPool import ParallelMap

Logger = logging.getLogger('FermiCorr.Hubbard')

DimerBasis = ModeBasis.Dimer()
LeftRight = Bipartition((0, 1), (2, 3))
Canonical = 'canonical'
GrandCanonical = 'grand'
ModePicture = 'mode'
ParticlePicture = 'particle'
TwoLevels = 'two'
FullLevels = 'full'

RootTolerance = 1e-8
RootLowerEnd = 0.1
RootUpperMargin = 10.0

# Small-T expansion constants of the critical distances
C0 = math.log(2.0) - 0.5 * math.log(math.log(3.0))
C1 = -0.5 * (1.0 + math.log(3.0))
D0 = C0
D1 = -0.5 * (2.0 + math.log(3.0))


@dataclass(frozen=True)
class DimerParams:
    """
    Dimer parameters with U = 1 by default.

    Args:
        R: Separation; the hopping is t = exp(-R)
        T: Temperature (0 selects the ground state)
        U: On-site repulsion
    """

    R: float
    T: float = 0.0
    U: float = 1.0

    def __post_init__(self):
        if self.T < 0:
            raise ValidationError(f"Temperature must be non-negative, got {self.T}")
        if self.U <= 0:
            raise ValidationError(f"On-site repulsion must be positive, got {self.U}")

    @classmethod
    def FromHopping(cls, Hopping: float, T: float = 0.0, U: float = 1.0) -> 'DimerParams':
        if Hopping <= 0:
            raise ValidationError(f"Hopping must be positive to define a separation, got {Hopping}")
        return cls(-math.log(Hopping), T, U)

    @property
    def Hopping(self) -> float:
        return math.exp(-self.R)


@dataclass(frozen=True)
class DimerSpectrum:
    """Two-particle energies E_0..E_5 and the singlet mixing coefficients."""

    Energies: Tuple[float, ...]
    A: float
    B: float
    C: float
    D: float
    W: float

    @property
    def Gap(self) -> float:
        return self.Energies[1] - self.Energies[0]


def ClosedFormSpectrum(Params: DimerParams) -> DimerSpectrum:
    """
    Analytic N = 2 spectrum: E_0 = U/2 - W, E_1..E_3 = 0, E_4 = U, E_5 = U/2 + W.

    The ground state is a|1+> + b|2+> with |1+> the covalent singlet and |2+> the symmetric
    ionic singlet.
    """
    T, U = Params.Hopping, Params.U
    W = math.sqrt(U * U / 4.0 + 4.0 * T * T)
    # W - U/2 without cancellation at large separations
    Excess = 4.0 * T * T / (W + U / 2.0)
    A = math.sqrt((W + U / 2.0) / (2.0 * W))
    B = 2.0 * T / math.sqrt(2.0 * W * (W + U / 2.0))
    C = -math.sqrt(Excess / (2.0 * W))
    D = 2.0 * T / math.sqrt(2.0 * W * Excess) if Excess > 0 else 1.0
    return DimerSpectrum((-Excess, 0.0, 0.0, 0.0, U, U / 2.0 + W), A, B, C, D, W)


def _HoppingMatrix() -> np.ndarray:
    Hop = np.zeros((DimerBasis.Dimension, DimerBasis.Dimension))
    for Left, Right in ((0, 2), (1, 3)):
        LeftDagger, LeftAnnihilate = CreationOp(DimerBasis, Left)
        RightDagger, RightAnnihilate = CreationOp(DimerBasis, Right)
        Hop -= LeftDagger @ RightAnnihilate + RightDagger @ LeftAnnihilate
    return Hop


def DimerHamiltonian(Params: DimerParams, Mu: float = 0.0) -> Tuple[HermitianOperator, np.ndarray]:
    """
    H = -t sum_s (f_Ls^dagger f_Rs + h.c.) + U sum_i n_i,up n_i,down - mu N.

    Args:
        Params: Dimer parameters
        Mu: Chemical potential

    Returns:
        Tuple of (16x16 Fock-space Hamiltonian, 6x6 restriction to the N = 2 sector)
    """
    Interaction = np.zeros((DimerBasis.Dimension, DimerBasis.Dimension))
    for Up, Down in DimerBasis.SpinPairs():
        Interaction += NumberOp(DimerBasis, [Up]) @ NumberOp(DimerBasis, [Down])
    Matrix = Params.Hopping * _HoppingMatrix() + Params.U * Interaction - Mu * NumberOp(DimerBasis)
    Sector = NumberSector(DimerBasis, 2)
    return HermitianOperator(Matrix), Matrix[np.ix_(Sector, Sector)]


def CouplingTerms(Params: DimerParams) -> List[HermitianOperator]:
    """The inter-site hopping operator H_LR."""
    return [HermitianOperator(Params.Hopping * _HoppingMatrix())]


def _Boltzmann(Energies: np.ndarray, Vectors: np.ndarray, Temperature: float) -> np.ndarray:
    if Temperature == 0:
        Ground = Vectors[:, 0]
        return np.outer(Ground, Ground.conj())
    Weights = np.exp(-(Energies - Energies.min()) / Temperature)
    Weights /= Weights.sum()
    return (Vectors * Weights) @ Vectors.conj().T


def GibbsState(Params: DimerParams, Ensemble: str = Canonical, Mu: Optional[float] = None) -> DensityMatrix:
    """
    Thermal state of the dimer on its 16-dimensional Fock space.

    Args:
        Params: Dimer parameters; T = 0 gives the ground state
        Ensemble: 'canonical' (N = 2 sector) or 'grand' (all sectors at chemical potential Mu)
        Mu: Chemical potential of the grand ensemble (default U/2, half filling)

    Returns:
        DensityMatrix in Fock order
    """
    if Ensemble == Canonical:
        _, Sector = DimerHamiltonian(Params)
        Energies, Vectors = np.linalg.eigh(Sector)
        Block = _Boltzmann(Energies, Vectors, Params.T)
        Indices = NumberSector(DimerBasis, 2)
        Matrix = np.zeros((DimerBasis.Dimension, DimerBasis.Dimension), dtype=complex)
        Matrix[np.ix_(Indices, Indices)] = Block
    elif Ensemble == GrandCanonical:
        Full, _ = DimerHamiltonian(Params, Params.U / 2.0 if Mu is None else Mu)
        Energies, Vectors = Full.Eigh
        Matrix = _Boltzmann(Energies, Vectors, Params.T)
    else:
        raise ValidationError(f"Unknown ensemble {Ensemble!r}; use canonical or grand")
    return DensityMatrix(0.5 * (Matrix + Matrix.conj().T))


def SplitLeftRight(Rho: DensityMatrix) -> DensityMatrix:
    """The dimer state on H_L (x) H_R with local order (empty, up, down, up-down)."""
    return SplitBipartite(Rho, LeftRight)


def SectorWeightsTwoLevel(Params: DimerParams) -> Dict[str, float]:
    """
    Table weights of the number-projected Gibbs state keeping only the ground and triplet levels.

    Returns:
        Dict with keys 'p6'..'p11'
    """
    if Params.T <= 0:
        raise ValidationError("Two-level weights need a positive temperature")
    Spectrum = ClosedFormSpectrum(Params)
    Boltzmann = math.exp(-Spectrum.Gap / Params.T)
    PSquared = 1.0 / (1.0 + 3.0 * Boltzmann)
    QSquared = Boltzmann * PSquared
    Ionic = Spectrum.B ** 2 * PSquared / 2.0
    return {'p6': Ionic, 'p7': Ionic, 'p8': Spectrum.A ** 2 * PSquared,
            'p9': QSquared, 'p10': QSquared, 'p11': QSquared}


def TwoLevelBranches(Params: DimerParams) -> List[np.ndarray]:
    """
    Explicit decomposition sqrt(p)|Psi_0>, q|1->, q|up,up>, q|down,down> of the two-level Gibbs state.

    Vectors are in Fock order with modes (L up, L down, R up, R down).
    """
    if Params.T <= 0:
        raise ValidationError("Two-level branches need a positive temperature")
    Spectrum = ClosedFormSpectrum(Params)
    Boltzmann = math.exp(-Spectrum.Gap / Params.T)
    P = math.sqrt(1.0 / (1.0 + 3.0 * Boltzmann))
    Q = math.sqrt(Boltzmann / (1.0 + 3.0 * Boltzmann))

    def Pair(First: int, Second: int) -> np.ndarray:
        Vector = np.zeros(DimerBasis.Dimension)
        Vector[(1 << First) | (1 << Second)] = 1.0
        return Vector

    Root = 1.0 / math.sqrt(2.0)
    CovalentPlus = Root * (Pair(0, 3) - Pair(1, 2))
    CovalentMinus = Root * (Pair(0, 3) + Pair(1, 2))
    IonicPlus = Root * (Pair(0, 1) + Pair(2, 3))
    Ground = Spectrum.A * CovalentPlus + Spectrum.B * IonicPlus
    return [P * Ground, Q * CovalentMinus, Q * Pair(0, 2), Q * Pair(1, 3)]


def _Bracket(Temperature: float) -> Tuple[float, float]:
    if Temperature <= 0:
        raise ValidationError(f"Critical distances need T > 0, got {Temperature}")
    return RootLowerEnd, max(-0.5 * math.log(Temperature) + RootUpperMargin, RootLowerEnd + 1.0)


def _FindRoot(Function, Temperature: float, Label: str) -> float:
    Lower, Upper = _Bracket(Temperature)
    AtLower, AtUpper = Function(Lower), Function(Upper)
    if AtLower * AtUpper > 0:
        raise ConvergenceError(
            f"No sign change of the {Label} condition on r in [{Lower:g}, {Upper:g}] at T = {Temperature:g}")
    Root = bisect(Function, Lower, Upper, xtol=RootTolerance)
    Logger.debug(f"{Label} critical distance at T = {Temperature:g}: {Root:.10f}")
    return float(Root)


def CriticalDistanceMode(Temperature: float, Levels: str = TwoLevels, U: float = 1.0) -> float:
    """
    Separation beyond which the number-superselected Gibbs state is separable.

    Args:
        Temperature: T > 0
        Levels: 'two' solves 3 exp(-dE/T) = a^2; 'full' solves
            a^2 exp(-E_0/T) + c^2 exp(-E_5/T) = 3 for the six-level state

    Returns:
        float: r_crit to 1e-8
    """
    def TwoLevel(R: float) -> float:
        Spectrum = ClosedFormSpectrum(DimerParams(R, Temperature, U))
        return math.log(3.0) - Spectrum.Gap / Temperature - 2.0 * math.log(Spectrum.A)

    def FullLevel(R: float) -> float:
        Spectrum = ClosedFormSpectrum(DimerParams(R, Temperature, U))
        E0, E5 = Spectrum.Energies[0], Spectrum.Energies[5]
        return float(np.logaddexp(2.0 * math.log(Spectrum.A) - E0 / Temperature,
                                  2.0 * math.log(abs(Spectrum.C)) - E5 / Temperature)) - math.log(3.0)

    if Levels not in (TwoLevels, FullLevels):
        raise ValidationError(f"Unknown level set {Levels!r}; use two or full")
    return _FindRoot(TwoLevel if Levels == TwoLevels else FullLevel, Temperature, f"mode ({Levels})")


def CriticalDistanceParticle(Temperature: float, Levels: str = TwoLevels, U: float = 1.0) -> float:
    """
    Separation beyond which the quantum nonfreeness of the Gibbs state vanishes.

    Args:
        Temperature: T > 0
        Levels: 'two' solves |a^2 - b^2| p^2 = 3 q^2; 'full' finds the zero of the unclamped
            quantum nonfreeness of the six-level Gibbs state

    Returns:
        float: r_crit to 1e-8
    """
    def TwoLevel(R: float) -> float:
        Spectrum = ClosedFormSpectrum(DimerParams(R, Temperature, U))
        return math.log(abs(Spectrum.A ** 2 - Spectrum.B ** 2)) - math.log(3.0) + Spectrum.Gap / Temperature

    def FullLevel(R: float) -> float:
        return QuantumNonfreeness(GibbsState(DimerParams(R, Temperature, U)), Clamp=False)

    if Levels not in (TwoLevels, FullLevels):
        raise ValidationError(f"Unknown level set {Levels!r}; use two or full")
    return _FindRoot(TwoLevel if Levels == TwoLevels else FullLevel, Temperature, f"particle ({Levels})")


def AsymptoticRcrit(Temperature: float, Picture: str = ModePicture) -> float:
    """
    Small-T expansion -log(T)/2 + k_0 + k_1 T of the critical distance (O(T^2) dropped).

    Args:
        Temperature: T > 0
        Picture: 'mode' or 'particle'
    """
    if Temperature <= 0:
        raise ValidationError(f"Asymptotic form needs T > 0, got {Temperature}")
    Constants = {ModePicture: (C0, C1), ParticlePicture: (D0, D1)}
    if Picture not in Constants:
        raise ValidationError(f"Unknown picture {Picture!r}; use mode or particle")
    Zeroth, First = Constants[Picture]
    return -0.5 * math.log(Temperature) + Zeroth + First * Temperature


ModeColumns = ('I', 'E', 'C', 'BoundLhs', 'BoundRhs', 'BoundOk')
ParticleColumns = ('NF', 'QNF')


def ScanPoint(Task: Tuple[float, float, str, str, object, str, int]) -> ScanRecord:
    """
    Measures of one (T, r) grid point; backend failures land in the Status column.

    Args:
        Task: (T, r, picture, SSR kind, solver or None, log base, seed)
    """
    Temperature, R, Picture, Kind, Solver, LogBase, Seed = Task
    Columns = ModeColumns if Picture == ModePicture else ParticleColumns
    Record = ScanRecord({'T': float(Temperature), 'r': float(R)}, {Name: math.nan for Name in Columns})
    try:
        Params = DimerParams(R, Temperature)
        Rho = GibbsState(Params)
        if Picture == ModePicture:
            Report = SsrCorrelations(SplitLeftRight(Rho), Kind, Solver, LogBase, Seed=Seed)
            Record.Measures.update(I=Report.Total, E=Report.Entanglement, C=Report.Classical)
            if Temperature > 0:
                Thermal = SplitLeftRight(GibbsState(Params, GrandCanonical))
                Bound = CouplingBound(Thermal, CouplingTerms(Params), Temperature, LogBase=LogBase)
                Record.Measures.update(BoundLhs=Bound.Lhs, BoundRhs=Bound.Rhs, BoundOk=float(Bound.Satisfied))
            if not Report.Converged:
                Record.Status = 'not converged'
        else:
            Record.Measures.update(NF=Nonfreeness(Rho, LogBase=LogBase), QNF=QuantumNonfreeness(Rho))
    except Exception as Error:
        Logger.error(f"Scan point T={Temperature:g}, r={R:g} failed: {Error}")
        Record.Status = f"error: {Error}"
    return Record


def Scan(Temperatures: Sequence[float], Separations: Sequence[float], Picture: str = ModePicture,
         Kind: Union[SsrKind, str] = SsrKind.Number, Solver=None, LogBase: Union[str, int] = 'e',
         Jobs: int = 1, Seed: int = 0) -> List[ScanRecord]:
    """
    Correlation scan over a (T, r) grid in row-major order (T outer, r inner).

    Args:
        Temperatures: Temperature grid
        Separations: Separation grid
        Picture: 'mode' (I, E, C and the coupling bound of the L:R split) or 'particle' (NF, QNF)
        Kind: Superselection rule of the mode picture
        Solver: Optional SeparabilitySolver
        LogBase: 'e' or 2
        Jobs: Worker processes
        Seed: Root seed of any numerical optimizer

    Returns:
        List of ScanRecord in grid order
    """
    if Picture not in (ModePicture, ParticlePicture):
        raise ValidationError(f"Unknown picture {Picture!r}; use mode or particle")
    if len(Temperatures) == 0 or len(Separations) == 0:
        raise ValidationError("Scan grids must be non-empty")
    Kind = SsrKind.Parse(Kind).value
    Tasks = [(float(T), float(R), Picture, Kind, Solver, str(LogBase), Seed)
             for T in Temperatures for R in Separations]
    Logger.info(f"Hubbard {Picture} scan over {len(Tasks)} grid points")
    return ParallelMap(ScanPoint, Tasks, Jobs)
