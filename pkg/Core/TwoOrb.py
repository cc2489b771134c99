# File: TwoOrb.py
# Path: FermiCorr/Core/TwoOrb.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-20
# Last Modified: 2025-04-09
# Description: Symmetric two-orbital states - twirl, table basis, closed-form entanglement under SSRs

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np
from scipy.special import xlogy

from Core.DensMat import DensityMatrix, HermitianOperator, LogBaseFactor, TensorShape, AsDensityMatrix
from Core.Errors import ValidationError
from Core.Fock import Bipartition, ModeBasis, SplitOperator, SymmetryOperators

Logger = logging.getLogger('FermiCorr.TwoOrb')

NssrBasis = 'nssr'
PssrBasis = 'pssr'
Conventions = (NssrBasis, PssrBasis)

SymmetryTolerance = 1e-8
WeightTolerance = 1e-10
NegativeWeightTolerance = 1e-12
CommutatorTolerance = 1e-8

# Local orbital states in the order of the 2-mode split: empty, up, down, up-down
Empty, Up, Down, Double = 0, 1, 2, 3

TwoOrbitalShape = TensorShape((4, 4))
GeneratorNames = ('N', 'NA', 'NB', 'NANB', 'Sz', 'S2', 'Reflection')


def _Ket(A: int, B: int) -> np.ndarray:
    Vector = np.zeros(16)
    Vector[4 * A + B] = 1.0
    return Vector


@lru_cache(maxsize=None)
def TableBasis(Convention: str = NssrBasis) -> np.ndarray:
    """
    The 16 symmetry-adapted two-orbital states as columns (column k is Psi_{k+1}).

    Args:
        Convention: 'nssr' or 'pssr'; the latter replaces Psi_6/Psi_7 by
            (|0,ud> -/+ |ud,0>)/sqrt(2)

    Returns:
        np.ndarray: Real orthogonal 16x16 matrix in the 4 (x) 4 split basis
    """
    if Convention not in Conventions:
        raise ValidationError(f"Unknown table-basis convention {Convention!r}")
    Root = 1.0 / math.sqrt(2.0)
    Columns = [
        _Ket(Empty, Empty),
        _Ket(Empty, Up),
        _Ket(Up, Empty),
        _Ket(Empty, Down),
        _Ket(Down, Empty),
        _Ket(Double, Empty),
        _Ket(Empty, Double),
        Root * (_Ket(Up, Down) - _Ket(Down, Up)),
        Root * (_Ket(Up, Down) + _Ket(Down, Up)),
        _Ket(Up, Up),
        _Ket(Down, Down),
        _Ket(Double, Up),
        _Ket(Up, Double),
        _Ket(Double, Down),
        _Ket(Down, Double),
        _Ket(Double, Double),
    ]
    if Convention == PssrBasis:
        Columns[5] = Root * (_Ket(Empty, Double) - _Ket(Double, Empty))
        Columns[6] = Root * (_Ket(Empty, Double) + _Ket(Double, Empty))
    Basis = np.column_stack(Columns)
    Basis.setflags(write=False)
    return Basis


def _CheckConvention(Convention: str) -> str:
    if Convention not in Conventions:
        raise ValidationError(f"Unknown table-basis convention {Convention!r}")
    return Convention


@dataclass(frozen=True)
class SectorM:
    """Weights of the (1,1) singlet/triplet block: Psi_8, Psi_9, Psi_10, Psi_11."""

    P8: float
    P9: float
    P10: float
    P11: float

    def __post_init__(self):
        if min(self.P8, self.P9, self.P10, self.P11) < -NegativeWeightTolerance:
            raise ValidationError(f"Negative sector weight in {self}")
        if self.Trace > 1.0 + WeightTolerance:
            raise ValidationError(f"Sector trace {self.Trace:.12g} exceeds 1")

    @property
    def Trace(self) -> float:
        return self.P8 + self.P9 + self.P10 + self.P11

    def AsTuple(self) -> Tuple[float, float, float, float]:
        return self.P8, self.P9, self.P10, self.P11


@dataclass(frozen=True)
class SymmetricTwoOrbitalState:
    """
    Two-orbital state diagonal in the table basis.

    Args:
        Weights: 16 weights p_1..p_16 (stored 0-based)
        Convention: 'nssr' or 'pssr' reading of the Psi_6/Psi_7 weights
    """

    Weights: Tuple[float, ...]
    Convention: str = NssrBasis

    def __post_init__(self):
        _CheckConvention(self.Convention)
        Weights = np.asarray(self.Weights, dtype=float).reshape(-1)
        if Weights.shape[0] != 16:
            raise ValidationError(f"Expected 16 table weights, got {Weights.shape[0]}")
        if np.any(Weights < -NegativeWeightTolerance):
            raise ValidationError(f"Table weight {Weights.min():.3e} is negative")
        Weights = np.clip(Weights, 0.0, None)
        Total = float(Weights.sum())
        if abs(Total - 1.0) > WeightTolerance:
            raise ValidationError(f"Table weights sum to 1 + {Total - 1.0:.3e}")
        object.__setattr__(self, 'Weights', tuple(float(Value) for Value in Weights / Total))

    def Weight(self, Label: int) -> float:
        """Weight p_Label with the 1-based table numbering."""
        if not 1 <= Label <= 16:
            raise ValidationError(f"Table label must be in 1..16, got {Label}")
        return self.Weights[Label - 1]

    def Sector(self) -> SectorM:
        return SectorM(*(self.Weight(Label) for Label in (8, 9, 10, 11)))

    def Density(self) -> DensityMatrix:
        return SymmetricStateDensity(self)


def SymmetricStateDensity(State: SymmetricTwoOrbitalState) -> DensityMatrix:
    """The 16x16 state sum_i p_i |Psi_i><Psi_i| with shape (4, 4)."""
    Basis = TableBasis(State.Convention)
    return DensityMatrix((Basis * np.asarray(State.Weights)) @ Basis.T, TwoOrbitalShape)


@lru_cache(maxsize=None)
def _SplitGenerators() -> Dict[str, np.ndarray]:
    Basis = ModeBasis.Orbitals(2, Reflect=True)
    Parts = Bipartition((0, 1), (2, 3))
    Operators = SymmetryOperators(Basis, Parts)
    return {Name: SplitOperator(Operator, Parts).Matrix for Name, Operator in Operators.items()}


def TwirlGenerators(Names: Sequence[str]) -> List[np.ndarray]:
    """
    Generator matrices on the two-orbital split space.

    Args:
        Names: Any of 'N', 'NA', 'NB', 'NANB' (both local numbers), 'Sz', 'S2', 'Reflection'

    Returns:
        List of 16x16 Hermitian matrices
    """
    Available = _SplitGenerators()
    Generators = []
    for Name in Names:
        if Name == 'NANB':
            Generators.extend([Available['NA'], Available['NB']])
        elif Name in Available:
            Generators.append(Available[Name])
        else:
            raise ValidationError(f"Unknown twirl generator {Name!r}; expected one of {GeneratorNames}")
    return Generators


def _RangeBasis(Projector: np.ndarray) -> np.ndarray:
    Values, Vectors = np.linalg.eigh(Projector)
    return Vectors[:, Values > 0.5]


def JointEigenProjectors(Generators: Sequence[np.ndarray]) -> List[np.ndarray]:
    """
    Projectors onto the joint eigenspaces of commuting Hermitian generators.

    Args:
        Generators: Pairwise commuting Hermitian matrices of equal size

    Returns:
        List of orthogonal projectors summing to the identity
    """
    Generators = [np.asarray(Generator, dtype=complex) for Generator in Generators]
    if not Generators:
        raise ValidationError("Twirl needs at least one generator")
    Dimension = Generators[0].shape[0]
    for Index, Generator in enumerate(Generators):
        if Generator.shape != (Dimension, Dimension):
            raise ValidationError(f"Generator {Index} has shape {Generator.shape}, expected {(Dimension, Dimension)}")
        for Earlier in Generators[:Index]:
            Commutator = float(np.max(np.abs(Generator @ Earlier - Earlier @ Generator)))
            if Commutator > CommutatorTolerance:
                raise ValidationError(f"Twirl generators do not commute (deviation {Commutator:.3e})")

    Projectors = [np.eye(Dimension, dtype=complex)]
    for Generator in Generators:
        Refined = []
        for Projector in Projectors:
            Range = _RangeBasis(Projector)
            Values, Vectors = np.linalg.eigh(Range.conj().T @ Generator @ Range)
            Start = 0
            for Stop in range(1, len(Values) + 1):
                if Stop == len(Values) or Values[Stop] - Values[Start] > SymmetryTolerance:
                    Block = Range @ Vectors[:, Start:Stop]
                    Refined.append(Block @ Block.conj().T)
                    Start = Stop
        Projectors = Refined
    return Projectors


def Twirl(Rho: DensityMatrix, Generators: Sequence[Union[str, np.ndarray, HermitianOperator]]) -> DensityMatrix:
    """
    Group-average of rho over the unitaries generated by the given symmetries.

    The result is the block-diagonal part sum_k P_k rho P_k over the joint eigenprojectors.

    Args:
        Rho: State (16x16 when named generators are used)
        Generators: Names accepted by TwirlGenerators, or explicit matrices

    Returns:
        DensityMatrix with the shape of Rho
    """
    Rho = AsDensityMatrix(Rho)
    Matrices: List[np.ndarray] = []
    for Generator in Generators:
        if isinstance(Generator, str):
            Matrices.extend(TwirlGenerators([Generator]))
        elif isinstance(Generator, HermitianOperator):
            Matrices.append(Generator.Matrix)
        else:
            Matrices.append(np.asarray(Generator))
    if any(Matrix.shape != Rho.Matrix.shape for Matrix in Matrices):
        raise ValidationError(f"Generators must match the state dimension {Rho.Dimension}")

    Projectors = JointEigenProjectors(Matrices)
    Twirled = sum(Projector @ Rho.Matrix @ Projector for Projector in Projectors)
    return DensityMatrix(0.5 * (Twirled + Twirled.conj().T), Rho.Shape)


def _AsTwoOrbital(Rho: DensityMatrix) -> DensityMatrix:
    Rho = AsDensityMatrix(Rho)
    if Rho.Dimension != 16:
        raise ValidationError(f"Expected a 16-dimensional two-orbital state, got dimension {Rho.Dimension}")
    return Rho.WithShape(TwoOrbitalShape)


def TableBasisResidual(Rho: DensityMatrix, Convention: str = NssrBasis) -> float:
    """Largest off-diagonal magnitude of rho in the table basis."""
    Rho = _AsTwoOrbital(Rho)
    Basis = TableBasis(_CheckConvention(Convention))
    Rotated = Basis.T @ Rho.Matrix @ Basis
    return float(np.max(np.abs(Rotated - np.diag(np.diag(Rotated)))))


def ProjectToTableBasis(Rho: DensityMatrix, Convention: str = NssrBasis) -> SymmetricTwoOrbitalState:
    """
    Table-basis weights p_i = Tr[rho |Psi_i><Psi_i|] of a symmetric two-orbital state.

    Args:
        Rho: 16x16 state in the orbital-major split basis
        Convention: Table-basis convention for Psi_6/Psi_7

    Returns:
        SymmetricTwoOrbitalState

    Raises:
        ValidationError: rho does not commute with N, Sz and S^2 within 1e-8
    """
    Rho = _AsTwoOrbital(Rho)
    Generators = _SplitGenerators()
    for Name in ('N', 'Sz', 'S2'):
        Commutator = float(np.max(np.abs(Rho.Matrix @ Generators[Name] - Generators[Name] @ Rho.Matrix)))
        if Commutator > SymmetryTolerance:
            raise ValidationError(f"State does not commute with {Name} (deviation {Commutator:.3e})")

    Basis = TableBasis(_CheckConvention(Convention))
    Weights = np.real(np.einsum('ik,ij,jk->k', Basis, Rho.Matrix, Basis))
    return SymmetricTwoOrbitalState(tuple(Weights), Convention)


def SeparabilityConditionM(Sector: SectorM) -> bool:
    """A sector-M state is separable iff p10 p11 >= ((p8 - p9)/2)^2."""
    return Sector.P10 * Sector.P11 >= ((Sector.P8 - Sector.P9) / 2.0) ** 2 - 1e-15


def _ClosestSectorM(P8: float, P9: float, P10: float, P11: float) -> Tuple[float, float, float, float]:
    """Closest separable weights inside one singlet/triplet-like block with the same trace."""
    if SeparabilityConditionM(SectorM(P8, P9, P10, P11)):
        return P8, P9, P10, P11

    if P9 > P8:
        Q9, Q8, Q10, Q11 = _ClosestSectorM(P9, P8, P10, P11)
        return Q8, Q9, Q10, Q11

    S = P8 + P9 + P10 + P11
    if S - P8 <= 1e-14 * max(S, 1.0):
        # Pure singlet limit: dephase the block
        return S / 2.0, S - S / 2.0, 0.0, 0.0

    if abs(P10 - P11) <= WeightTolerance:
        Scale = S / (2.0 * (S - P8))
        return S / 2.0, Scale * P9, Scale * P10, Scale * P11

    A = S ** 2 - (P10 - P11) ** 2
    B = (P8 - P9) * S
    C = ((P10 + P11) ** 2 * (P8 - P9) ** 2
         + 8.0 * P10 * P11 * (2.0 * P10 * P11 + (P10 + P11) * (P8 + P9) + 2.0 * P8 * P9))
    Root = math.sqrt(max(C, 0.0))
    Q8 = (A + B + Root) / (4.0 * (S - P9))
    Q9 = (A - B - Root) / (4.0 * (S - P8))
    Shift = (P8 + P9 - Q8 - Q9) / 2.0
    return Q8, Q9, P10 + Shift, P11 + Shift


def _SectorRelativeEntropy(P: Sequence[float], Q: Sequence[float]) -> float:
    Value = 0.0
    for Pi, Qi in zip(P, Q):
        if Pi <= 0.0:
            continue
        if Qi <= 0.0:
            return math.inf
        Value += Pi * math.log(Pi / Qi)
    return max(Value, 0.0)


def SpecialCaseEntanglement(T: float, S: float) -> float:
    """t log t + (S - t) log(S - t) - S log(S/2) for the equal-triplet branch, t = max(p8, p9)."""
    if S <= 0.0:
        return 0.0
    return max(float(xlogy(T, T) + xlogy(S - T, S - T) - S * math.log(S / 2.0)), 0.0)


def ClosestSeparableNssr(State: SymmetricTwoOrbitalState,
                         LogBase: Union[str, int] = 'e') -> Tuple[SymmetricTwoOrbitalState, float]:
    """
    Closest separable state and relative entropy of entanglement of a symmetric state.

    Only sector M (Psi_8..Psi_11) carries entanglement; every other weight is kept and
    the sector trace is preserved.

    Args:
        State: Table-basis weights
        LogBase: 'e' or 2

    Returns:
        Tuple of (closest separable weights, entanglement)
    """
    Sector = State.Sector()
    Q = _ClosestSectorM(*Sector.AsTuple())
    Weights = list(State.Weights)
    Weights[7:11] = Q
    Closest = SymmetricTwoOrbitalState(tuple(Weights), State.Convention)
    Value = _SectorRelativeEntropy(Sector.AsTuple(), Q)
    Logger.debug(f"Sector M {Sector.AsTuple()} -> {Q}, E = {Value:.12g}")
    return Closest, Value / LogBaseFactor(LogBase)


def EntanglementNssr(State: SymmetricTwoOrbitalState, LogBase: Union[str, int] = 'e') -> float:
    return ClosestSeparableNssr(State, LogBase)[1]


def _RequireParticleHoleSymmetric(State: SymmetricTwoOrbitalState) -> None:
    if State.Convention != PssrBasis:
        raise ValidationError("Parity closed form needs weights in the 'pssr' table-basis convention")
    P1, P16 = State.Weight(1), State.Weight(16)
    if abs(P1 - P16) > WeightTolerance:
        raise ValidationError(f"Parity closed form needs p1 = p16, got |p1 - p16| = {abs(P1 - P16):.3e}")


def ClosestSeparablePssr(State: SymmetricTwoOrbitalState,
                         LogBase: Union[str, int] = 'e') -> Tuple[SymmetricTwoOrbitalState, float]:
    """
    Closed form under the parity rule for particle-hole symmetric states (p1 = p16).

    The even-even block M' = span{Psi_6', Psi_7', Psi_1, Psi_16} is handled like sector M
    and contributes only when it is entangled.

    Args:
        State: Weights in the 'pssr' convention
        LogBase: 'e' or 2

    Returns:
        Tuple of (closest separable weights, entanglement)
    """
    _RequireParticleHoleSymmetric(State)
    Closest, Value = ClosestSeparableNssr(State)

    Prime = (State.Weight(6), State.Weight(7), State.Weight(1), State.Weight(16))
    QPrime = _ClosestSectorM(*Prime)
    Extra = _SectorRelativeEntropy(Prime, QPrime)

    Weights = list(Closest.Weights)
    Weights[5], Weights[6], Weights[0], Weights[15] = QPrime
    return (SymmetricTwoOrbitalState(tuple(Weights), PssrBasis),
            (Value + Extra) / LogBaseFactor(LogBase))


def EntanglementPssr(State: SymmetricTwoOrbitalState, LogBase: Union[str, int] = 'e') -> float:
    return ClosestSeparablePssr(State, LogBase)[1]


def CoherentSectorSeparable(Q8: float, Q9: float, Q10: float, Q11: float, B: complex) -> bool:
    """Separability of a sector-M state with a Psi_8/Psi_9 coherence b: ((q8-q9)/2)^2 + Im(b)^2 <= q10 q11."""
    return ((Q8 - Q9) / 2.0) ** 2 + complex(B).imag ** 2 <= Q10 * Q11 + 1e-15


def _XLogX(Value: float) -> float:
    return float(xlogy(Value, Value))


def SingleOrbitalMeasures(P: Sequence[float], LogBase: Union[str, int] = 'e') -> Dict[str, float]:
    """
    Single-orbital correlation and entanglement of a pure total state.

    Args:
        P: Diagonal of the orbital reduced state (empty, up, down, up-down)
        LogBase: 'e' or 2

    Returns:
        Dict with keys 'I', 'E' (no rule), 'IP', 'EP' (parity) and 'IN', 'EN' (number)
    """
    P = np.asarray(P, dtype=float).reshape(-1)
    if P.shape[0] != 4:
        raise ValidationError(f"Expected 4 orbital probabilities, got {P.shape[0]}")
    if np.any(P < -NegativeWeightTolerance) or abs(float(P.sum()) - 1.0) > WeightTolerance:
        raise ValidationError(f"Invalid orbital probability vector {P.tolist()}")
    P1, P2, P3, P4 = np.clip(P, 0.0, None)

    Entropy = -sum(_XLogX(Value) for Value in (P1, P2, P3, P4))
    Even, Odd = _XLogX(P1 + P4), _XLogX(P2 + P3)
    Factor = LogBaseFactor(LogBase)

    Values = {
        'E': Entropy,
        'I': 2.0 * Entropy,
        'EP': Even + Odd + Entropy,
        'EN': Odd - _XLogX(P2) - _XLogX(P3),
    }
    Values['IP'] = Values['EP'] + Entropy
    Values['IN'] = Values['EN'] + Entropy
    return {Key: max(Value, 0.0) / Factor for Key, Value in Values.items()}


def IntrinsicCorrelation(Occupations: Sequence[float], ParticleCount: int) -> float:
    """
    Distance of natural occupation numbers to the Hartree-Fock point.

    Args:
        Occupations: Natural occupation numbers in [0, 1], descending
        ParticleCount: Number of particles N

    Returns:
        float: sum_{a<=N} (1 - lambda_a) + sum_{a>N} lambda_a
    """
    Lambda = np.asarray(Occupations, dtype=float).reshape(-1)
    if np.any(Lambda < -WeightTolerance) or np.any(Lambda > 1.0 + WeightTolerance):
        raise ValidationError("Natural occupation numbers must lie in [0, 1]")
    if np.any(np.diff(Lambda) > 1e-12):
        raise ValidationError("Natural occupation numbers must be sorted in descending order")
    if not 0 <= ParticleCount <= Lambda.shape[0]:
        raise ValidationError(f"Particle count {ParticleCount} out of range for {Lambda.shape[0]} orbitals")
    return float(np.sum(1.0 - Lambda[:ParticleCount]) + np.sum(Lambda[ParticleCount:]))
