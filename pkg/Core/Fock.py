# File: Fock.py
# Path: FermiCorr/Core/Fock.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-12
# Last Modified: 2025-04-05
# Description: Fermionic Fock spaces over ordered modes with Jordan-Wigner signs

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from Core.DensMat import DensityMatrix, HermitianOperator, PartialTrace, TensorShape, AsDensityMatrix
from Core.Errors import ValidationError

MaxModes = 12
Spins = ('up', 'down')

ModeLabel = Tuple[Any, str]


class ModeBasis:
    """
    Ordered fermionic modes labelled by (site or orbital, spin).

    Mode 0 is the least significant bit of the occupation-number index.

    Args:
        Labels: One (site, spin) pair per mode, pairwise distinct
        Reflection: Optional site-swap involution given as a mode permutation
    """

    def __init__(self, Labels: Sequence[ModeLabel], Reflection: Optional[Sequence[int]] = None):
        self.Labels: Tuple[ModeLabel, ...] = tuple((Site, Spin) for Site, Spin in Labels)
        if not self.Labels:
            raise ValidationError("ModeBasis needs at least one mode")
        if len(set(self.Labels)) != len(self.Labels):
            raise ValidationError(f"Mode labels must be distinct: {self.Labels}")
        if len(self.Labels) > MaxModes:
            raise ValidationError(f"At most {MaxModes} modes are supported, got {len(self.Labels)}")

        self.Reflection: Optional[Tuple[int, ...]] = None
        if Reflection is not None:
            Permutation = tuple(int(Mode) for Mode in Reflection)
            if sorted(Permutation) != list(range(self.ModeCount)):
                raise ValidationError(f"Reflection {Permutation} is not a permutation of the modes")
            if any(Permutation[Permutation[Mode]] != Mode for Mode in range(self.ModeCount)):
                raise ValidationError(f"Reflection {Permutation} is not an involution")
            self.Reflection = Permutation

    @classmethod
    def Orbitals(cls, OrbitalCount: int, Reflect: bool = False) -> 'ModeBasis':
        """Spatial orbitals 0..K-1, each contributing (up, down) modes in that order."""
        Labels = [(Orbital, Spin) for Orbital in range(OrbitalCount) for Spin in Spins]
        Reflection = None
        if Reflect:
            Reflection = [2 * (OrbitalCount - 1 - Mode // 2) + Mode % 2 for Mode in range(2 * OrbitalCount)]
        return cls(Labels, Reflection)

    @classmethod
    def Dimer(cls) -> 'ModeBasis':
        """Two sites L, R with modes (L up, L down, R up, R down) and the L<->R reflection."""
        return cls([('L', 'up'), ('L', 'down'), ('R', 'up'), ('R', 'down')], Reflection=(2, 3, 0, 1))

    @property
    def ModeCount(self) -> int:
        return len(self.Labels)

    @property
    def Dimension(self) -> int:
        return 2 ** self.ModeCount

    @property
    def Sites(self) -> List[Any]:
        Ordered: List[Any] = []
        for Site, _ in self.Labels:
            if Site not in Ordered:
                Ordered.append(Site)
        return Ordered

    def SiteModes(self, Site: Any) -> Tuple[int, ...]:
        return tuple(Mode for Mode, (Label, _) in enumerate(self.Labels) if Label == Site)

    def OrbitalModes(self, Orbital: int) -> Tuple[int, ...]:
        """Modes of the Orbital-th site in order of first appearance."""
        return self.SiteModes(self.Sites[Orbital])

    def SpinPairs(self) -> List[Tuple[int, int]]:
        """(up mode, down mode) per site; raises if a site is not spin paired."""
        Pairs = []
        for Site in self.Sites:
            Lookup = {Spin: Mode for Mode, (Label, Spin) in enumerate(self.Labels) if Label == Site}
            if set(Lookup) != set(Spins):
                raise ValidationError(f"Site {Site!r} has unpaired spin labels {sorted(Lookup)}")
            Pairs.append((Lookup['up'], Lookup['down']))
        return Pairs

    def __eq__(self, Other: object) -> bool:
        return isinstance(Other, ModeBasis) and self.Labels == Other.Labels and self.Reflection == Other.Reflection

    def __hash__(self) -> int:
        return hash((self.Labels, self.Reflection))

    def __repr__(self) -> str:
        return f"ModeBasis({list(self.Labels)})"


@dataclass(frozen=True)
class Bipartition:
    """Ordered mode subsets A and B whose disjoint union is every mode."""

    PartA: Tuple[int, ...]
    PartB: Tuple[int, ...]

    def __post_init__(self):
        PartA = tuple(int(Mode) for Mode in self.PartA)
        PartB = tuple(int(Mode) for Mode in self.PartB)
        Combined = PartA + PartB
        if len(set(Combined)) != len(Combined):
            raise ValidationError(f"Bipartition parts overlap: {PartA} / {PartB}")
        if sorted(Combined) != list(range(len(Combined))):
            raise ValidationError(f"Bipartition {PartA} / {PartB} does not cover modes 0..{len(Combined) - 1}")
        object.__setattr__(self, 'PartA', PartA)
        object.__setattr__(self, 'PartB', PartB)

    @classmethod
    def FromPartA(cls, ModeCount: int, PartA: Sequence[int]) -> 'Bipartition':
        PartA = tuple(PartA)
        return cls(PartA, tuple(Mode for Mode in range(ModeCount) if Mode not in PartA))

    @property
    def ModeCount(self) -> int:
        return len(self.PartA) + len(self.PartB)

    @property
    def Shape(self) -> TensorShape:
        return TensorShape((2 ** len(self.PartA), 2 ** len(self.PartB)))

    def Swapped(self) -> 'Bipartition':
        return Bipartition(self.PartB, self.PartA)


class FockState:
    """
    Normalized state vector on the Fock space of a ModeBasis.

    Args:
        Basis: Mode basis
        Amplitudes: Complex vector of length 2^d indexed by occupation bit-strings
    """

    def __init__(self, Basis: ModeBasis, Amplitudes: Sequence[complex]):
        Vector = np.array(Amplitudes, dtype=complex).reshape(-1)
        if Vector.shape[0] != Basis.Dimension:
            raise ValidationError(f"Expected {Basis.Dimension} amplitudes, got {Vector.shape[0]}")
        Norm = np.linalg.norm(Vector)
        if abs(Norm - 1.0) > 1e-10:
            raise ValidationError(f"FockState norm deviates from 1 by {Norm - 1.0:.3e}")
        Vector.setflags(write=False)
        self.Basis = Basis
        self.Amplitudes = Vector

    def Density(self) -> DensityMatrix:
        return DensityMatrix.FromPure(self.Amplitudes, (self.Basis.Dimension,))


def Popcount(Index: int) -> int:
    return bin(Index).count('1')


def _InversionParity(Sequence_: Sequence[int]) -> int:
    Inversions = sum(1 for Left in range(len(Sequence_)) for Right in range(Left + 1, len(Sequence_))
                     if Sequence_[Left] > Sequence_[Right])
    return -1 if Inversions % 2 else 1


@lru_cache(maxsize=None)
def _CreationMatrix(ModeCount: int, Mode: int) -> np.ndarray:
    Dimension = 2 ** ModeCount
    Matrix = np.zeros((Dimension, Dimension))
    Mask = (1 << Mode) - 1
    for Index in range(Dimension):
        if not (Index >> Mode) & 1:
            Matrix[Index | (1 << Mode), Index] = -1.0 if Popcount(Index & Mask) % 2 else 1.0
    Matrix.setflags(write=False)
    return Matrix


def CreationOp(Basis: ModeBasis, Mode: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Creation and annihilation matrices of one mode.

    f_i^dagger acting on |n_1...n_d> carries the phase (-1)^(sum_{j<i} n_j).

    Args:
        Basis: Mode basis
        Mode: Mode index

    Returns:
        Tuple of (f_i^dagger, f_i) as real 2^d x 2^d matrices
    """
    if not 0 <= int(Mode) < Basis.ModeCount:
        raise ValidationError(f"Mode index {Mode} out of range for {Basis.ModeCount} modes")
    Creation = _CreationMatrix(Basis.ModeCount, int(Mode))
    return Creation, Creation.T


def NumberOp(Basis: ModeBasis, Modes: Optional[Iterable[int]] = None) -> np.ndarray:
    """Diagonal particle-number operator over the given modes (default: all)."""
    Modes = range(Basis.ModeCount) if Modes is None else tuple(Modes)
    Mask = sum(1 << Mode for Mode in Modes)
    return np.diag([float(Popcount(Index & Mask)) for Index in range(Basis.Dimension)])


def NumberSector(Basis: ModeBasis, ParticleCount: int) -> np.ndarray:
    """Indices of the configuration states holding ParticleCount particles."""
    return np.array([Index for Index in range(Basis.Dimension) if Popcount(Index) == ParticleCount], dtype=int)


def ConfigState(Basis: ModeBasis, Occupied: Iterable[int]) -> FockState:
    """
    Configuration state f_{i1}^dagger f_{i2}^dagger ... |0> with i1 < i2 < ...

    Args:
        Basis: Mode basis
        Occupied: Occupied mode indices

    Returns:
        FockState: The signed occupation basis vector
    """
    Occupied = list(Occupied)
    if len(set(Occupied)) != len(Occupied):
        raise ValidationError(f"Duplicate occupied modes {Occupied}")
    for Mode in Occupied:
        if not 0 <= Mode < Basis.ModeCount:
            raise ValidationError(f"Mode index {Mode} out of range for {Basis.ModeCount} modes")

    Vector = np.zeros(Basis.Dimension, dtype=complex)
    Vector[0] = 1.0
    for Mode in sorted(Occupied, reverse=True):
        Vector = CreationOp(Basis, Mode)[0] @ Vector
    return FockState(Basis, Vector)


@lru_cache(maxsize=None)
def _SplitMatrix(ModeCount: int, Parts: Tuple[Tuple[int, ...], ...]) -> np.ndarray:
    """
    Signed permutation from Fock order to the tensor order of Parts.

    The tensor index is mixed radix with the first part most significant; inside a part the
    first listed mode is the least significant bit. The sign is the inversion parity of the
    occupied modes listed part by part.
    """
    Dimension = 2 ** ModeCount
    Matrix = np.zeros((Dimension, Dimension))
    for Index in range(Dimension):
        Target = 0
        Sequence_: List[int] = []
        for Part in Parts:
            Local = 0
            for Bit, Mode in enumerate(Part):
                if (Index >> Mode) & 1:
                    Local |= 1 << Bit
                    Sequence_.append(Mode)
            Target = Target * (2 ** len(Part)) + Local
        Matrix[Target, Index] = _InversionParity(Sequence_)
    Matrix.setflags(write=False)
    return Matrix


def _ModeCountOf(Dimension: int) -> int:
    ModeCount = int(round(np.log2(Dimension)))
    if 2 ** ModeCount != Dimension:
        raise ValidationError(f"Dimension {Dimension} is not a Fock-space dimension")
    return ModeCount


def SplitModes(Rho: Union[HermitianOperator, np.ndarray], Parts: Sequence[Sequence[int]]) -> HermitianOperator:
    """
    Reorder a Fock-space operator into the tensor product of the given mode parts.

    Args:
        Rho: Operator on the full Fock space
        Parts: Ordered mode subsets covering every mode exactly once

    Returns:
        Operator of the same class with shape (2^|P1|, 2^|P2|, ...)
    """
    Matrix = Rho.Matrix if isinstance(Rho, HermitianOperator) else np.asarray(Rho)
    ModeCount = _ModeCountOf(Matrix.shape[0])
    Parts = tuple(tuple(int(Mode) for Mode in Part) for Part in Parts)
    Flat = [Mode for Part in Parts for Mode in Part]
    if sorted(Flat) != list(range(ModeCount)):
        raise ValidationError(f"Mode parts {Parts} do not cover modes 0..{ModeCount - 1} exactly once")

    S = _SplitMatrix(ModeCount, Parts)
    Shape = TensorShape(tuple(2 ** len(Part) for Part in Parts))
    Result = type(Rho) if isinstance(Rho, HermitianOperator) else HermitianOperator
    return Result(S @ Matrix @ S.T, Shape)


def SplitVector(Vector: Sequence[complex], Parts: Bipartition) -> np.ndarray:
    """Amplitudes of a Fock-space vector in the A-major tensor order of Parts."""
    Psi = np.asarray(Vector, dtype=complex).reshape(-1)
    ModeCount = _ModeCountOf(Psi.shape[0])
    return _SplitMatrix(ModeCount, (Parts.PartA, Parts.PartB)) @ Psi


def SplitBipartite(StateOrRho: Union[FockState, DensityMatrix, np.ndarray], Parts: Bipartition) -> DensityMatrix:
    """
    Express a Fock-space state on H_A (x) H_B for the bipartition Parts.

    Args:
        StateOrRho: FockState, state vector or density matrix on the full Fock space
        Parts: Mode bipartition

    Returns:
        DensityMatrix with shape (2^|A|, 2^|B|)
    """
    if isinstance(StateOrRho, FockState):
        Rho = StateOrRho.Density()
    elif isinstance(StateOrRho, HermitianOperator):
        Rho = AsDensityMatrix(StateOrRho)
    else:
        Array = np.asarray(StateOrRho)
        Rho = DensityMatrix.FromPure(Array) if Array.ndim == 1 else DensityMatrix(Array)
    if Rho.Dimension != 2 ** Parts.ModeCount:
        raise ValidationError(f"State dimension {Rho.Dimension} does not match {Parts.ModeCount} modes")
    return SplitModes(Rho, (Parts.PartA, Parts.PartB))


def SplitOperator(Operator: Union[HermitianOperator, np.ndarray], Parts: Bipartition) -> HermitianOperator:
    """The signed reordering of SplitBipartite applied to any Hermitian operator."""
    if not isinstance(Operator, HermitianOperator):
        Operator = HermitianOperator(Operator)
    return SplitModes(HermitianOperator(Operator.Matrix), (Parts.PartA, Parts.PartB))


def Unsplit(Rho: HermitianOperator, Parts: Bipartition) -> HermitianOperator:
    """Inverse of SplitBipartite: back to Fock order with a single-factor shape."""
    if Rho.Dimension != 2 ** Parts.ModeCount:
        raise ValidationError(f"Operator dimension {Rho.Dimension} does not match {Parts.ModeCount} modes")
    S = _SplitMatrix(Parts.ModeCount, (Parts.PartA, Parts.PartB))
    return type(Rho)(S.T @ Rho.Matrix @ S, TensorShape((Rho.Dimension,)))


def ModeReducedDensity(Rho: Union[DensityMatrix, FockState], KeepModes: Sequence[int]) -> DensityMatrix:
    """
    Reduced state of the kept modes.

    For the two modes (up, down) of one orbital the result is 4x4 in the local order
    (empty, up, down, up-down).

    Args:
        Rho: State on the full Fock space
        KeepModes: Ordered modes to keep

    Returns:
        DensityMatrix on 2^k dimensions, first kept mode least significant
    """
    KeepModes = tuple(int(Mode) for Mode in KeepModes)
    if not KeepModes:
        raise ValidationError("KeepModes must be non-empty")
    if isinstance(Rho, FockState):
        Rho = Rho.Density()
    ModeCount = _ModeCountOf(Rho.Dimension)
    Parts = Bipartition.FromPartA(ModeCount, KeepModes)
    Reduced = PartialTrace(SplitBipartite(Rho, Parts), (0,))
    return DensityMatrix(Reduced.Matrix, TensorShape((2 ** len(KeepModes),)))


def OrbitalReducedDensity(Rho: Union[DensityMatrix, FockState], Basis: ModeBasis,
                          Orbitals: Sequence[int]) -> DensityMatrix:
    """
    Reduced state of whole orbitals with one 4-dimensional factor per orbital.

    Args:
        Rho: State on the full Fock space of Basis
        Basis: Mode basis with spin-paired sites
        Orbitals: Orbital indices; the first listed orbital is the most significant factor

    Returns:
        DensityMatrix with shape (4,) * len(Orbitals)
    """
    if isinstance(Rho, FockState):
        Rho = Rho.Density()
    Orbitals = tuple(Orbitals)
    if not Orbitals or len(set(Orbitals)) != len(Orbitals):
        raise ValidationError(f"Invalid orbital selection {Orbitals}")
    Pairs = Basis.SpinPairs()
    Parts = [Pairs[Orbital] for Orbital in Orbitals]
    Kept = {Mode for Part in Parts for Mode in Part}
    Rest = tuple(Mode for Mode in range(Basis.ModeCount) if Mode not in Kept)
    Split = SplitModes(AsDensityMatrix(Rho), Parts + [Rest])
    Reduced = PartialTrace(Split, tuple(range(len(Parts))))
    return DensityMatrix(Reduced.Matrix, Reduced.Shape)


def _ReflectionMatrix(Basis: ModeBasis) -> np.ndarray:
    Matrix = np.zeros((Basis.Dimension, Basis.Dimension))
    for Index in range(Basis.Dimension):
        Images = [Basis.Reflection[Mode] for Mode in range(Basis.ModeCount) if (Index >> Mode) & 1]
        Target = sum(1 << Mode for Mode in Images)
        Matrix[Target, Index] = _InversionParity(Images)
    return Matrix


def SymmetryOperators(Basis: ModeBasis, Parts: Optional[Bipartition] = None) -> Dict[str, HermitianOperator]:
    """
    Symmetry generators on the Fock space.

    Args:
        Basis: Mode basis; spin operators need spin-paired sites
        Parts: Optional bipartition for the local number operators NA and NB

    Returns:
        Dict with 'N', 'Sz', 'S2', plus 'NA'/'NB' when Parts is given and 'Reflection'
        when the basis declares one
    """
    Operators: Dict[str, HermitianOperator] = {'N': HermitianOperator(NumberOp(Basis))}
    if Parts is not None:
        Operators['NA'] = HermitianOperator(NumberOp(Basis, Parts.PartA))
        Operators['NB'] = HermitianOperator(NumberOp(Basis, Parts.PartB))

    Pairs = Basis.SpinPairs()
    SPlus = np.zeros((Basis.Dimension, Basis.Dimension))
    Sz = np.zeros((Basis.Dimension, Basis.Dimension))
    for Up, Down in Pairs:
        UpDagger, UpAnnihilate = CreationOp(Basis, Up)
        DownDagger, DownAnnihilate = CreationOp(Basis, Down)
        SPlus += UpDagger @ DownAnnihilate
        Sz += 0.5 * (UpDagger @ UpAnnihilate - DownDagger @ DownAnnihilate)
    SMinus = SPlus.T
    Operators['Sz'] = HermitianOperator(Sz)
    Operators['S2'] = HermitianOperator(0.5 * (SPlus @ SMinus + SMinus @ SPlus) + Sz @ Sz)

    if Basis.Reflection is not None:
        Operators['Reflection'] = HermitianOperator(_ReflectionMatrix(Basis))
    return Operators


def OneParticleRdm(PsiOrRho: Union[FockState, DensityMatrix], Basis: Optional[ModeBasis] = None) -> np.ndarray:
    """
    One-particle reduced density matrix gamma_ij = <f_j^dagger f_i>.

    Args:
        PsiOrRho: Pure FockState or density matrix on the Fock space
        Basis: Mode basis (taken from the FockState when omitted)

    Returns:
        np.ndarray: Hermitian d x d matrix with trace <N>
    """
    if isinstance(PsiOrRho, FockState):
        Basis = PsiOrRho.Basis
        Rho = PsiOrRho.Density()
    else:
        Rho = AsDensityMatrix(PsiOrRho)
        if Basis is None:
            # Only the mode count matters for gamma
            Basis = ModeBasis([(Mode, 'up') for Mode in range(_ModeCountOf(Rho.Dimension))])
    if Rho.Dimension != Basis.Dimension:
        raise ValidationError(f"State dimension {Rho.Dimension} does not match basis dimension {Basis.Dimension}")

    Gamma = np.zeros((Basis.ModeCount, Basis.ModeCount), dtype=complex)
    for I in range(Basis.ModeCount):
        Annihilate = CreationOp(Basis, I)[1]
        for J in range(Basis.ModeCount):
            Create = CreationOp(Basis, J)[0]
            Gamma[I, J] = np.trace(Rho.Matrix @ Create @ Annihilate)
    return 0.5 * (Gamma + Gamma.conj().T)


def OneBodyRotation(Basis: ModeBasis, U: np.ndarray) -> np.ndarray:
    """
    Fock-space unitary induced by the one-particle unitary U (f_a^dagger -> sum_b U_ba f_b^dagger).

    Args:
        Basis: Mode basis
        U: d x d unitary

    Returns:
        np.ndarray: 2^d x 2^d unitary preserving every particle-number sector
    """
    U = np.asarray(U, dtype=complex)
    if U.shape != (Basis.ModeCount, Basis.ModeCount):
        raise ValidationError(f"Expected a {Basis.ModeCount}x{Basis.ModeCount} unitary, got {U.shape}")
    Rotated = [sum(U[B, A] * CreationOp(Basis, B)[0] for B in range(Basis.ModeCount))
               for A in range(Basis.ModeCount)]

    Matrix = np.zeros((Basis.Dimension, Basis.Dimension), dtype=complex)
    for Index in range(Basis.Dimension):
        Vector = np.zeros(Basis.Dimension, dtype=complex)
        Vector[0] = 1.0
        for Mode in reversed([Mode for Mode in range(Basis.ModeCount) if (Index >> Mode) & 1]):
            Vector = Rotated[Mode] @ Vector
        Matrix[:, Index] = Vector
    return Matrix
