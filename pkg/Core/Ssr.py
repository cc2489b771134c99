# File: Ssr.py
# Path: FermiCorr/Core/Ssr.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-14
# Last Modified: 2025-04-09
# Description: Superselection-rule sectors, physical-part projection and SSR-restricted correlations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from Core import SepOpt, TwoOrb
from Core.DensMat import (DensityMatrix, HermitianOperator, LogBaseFactor, PartialTrace, TensorShape,
                          VonNeumannEntropy, AsDensityMatrix)
from Core.Errors import ConvergenceError, ValidationError
from Core.Fock import Popcount
from Core.Measures import (CorrelationReport, ClassicalCorrelationGeometric, ClosestUncorrelated,
                           MutualInformation)

Logger = logging.getLogger('FermiCorr.Ssr')

ProjectorTolerance = 1e-12
IntegerTolerance = 1e-8
DiagonalTolerance = 1e-8
PptExactDimension = 6

Sector = Tuple[int, np.ndarray]


class SsrKind(Enum):
    """Superselection rule applied to local observables."""

    NoRule = 'none'
    Parity = 'p'
    Number = 'n'

    @classmethod
    def Parse(cls, Value: Union['SsrKind', str, None]) -> 'SsrKind':
        """Accept an SsrKind, None, or one of 'none', 'p', 'n', 'parity', 'number'."""
        if isinstance(Value, SsrKind):
            return Value
        if Value is None:
            return cls.NoRule
        Aliases = {'none': cls.NoRule, 'p': cls.Parity, 'parity': cls.Parity, 'n': cls.Number, 'number': cls.Number}
        Key = str(Value).strip().lower()
        if Key not in Aliases:
            raise ValidationError(f"Unknown superselection rule {Value!r}; use none, p or n")
        return Aliases[Key]


def _Group(Values: np.ndarray, Vectors: np.ndarray, Kind: SsrKind) -> List[Sector]:
    Rounded = np.rint(Values)
    Deviation = float(np.max(np.abs(Values - Rounded), initial=0.0))
    if Deviation > IntegerTolerance:
        raise ValidationError(f"Local number operator has a non-integer eigenvalue (deviation {Deviation:.3e})")
    Labels = Rounded.astype(int) % 2 if Kind is SsrKind.Parity else Rounded.astype(int)
    Sectors = []
    for Label in sorted(set(Labels.tolist())):
        Columns = Vectors[:, Labels == Label]
        Sectors.append((Label, Columns @ Columns.conj().T))
    return Sectors


def LocalSectors(Dimension: int, Kind: Union[SsrKind, str],
                 NumberOperator: Optional[Union[np.ndarray, HermitianOperator]] = None) -> List[Sector]:
    """
    Sector projectors of one tensor factor.

    Without an explicit number operator the factor must be a Fock space whose basis index
    bits are the mode occupations, so the local particle number is the popcount.

    Args:
        Dimension: Local dimension
        Kind: Parity groups by N mod 2, Number by N
        NumberOperator: Optional local particle-number operator

    Returns:
        List of (quantum number, projector)
    """
    Kind = SsrKind.Parse(Kind)
    if Kind is SsrKind.NoRule:
        return [(0, np.eye(Dimension, dtype=complex))]
    if NumberOperator is not None:
        Matrix = NumberOperator.Matrix if isinstance(NumberOperator, HermitianOperator) else np.asarray(NumberOperator)
        if Matrix.shape != (Dimension, Dimension):
            raise ValidationError(f"Number operator shape {Matrix.shape} does not match dimension {Dimension}")
        Values, Vectors = np.linalg.eigh(0.5 * (Matrix + Matrix.conj().T))
        return _Group(Values, Vectors, Kind)
    if Dimension & (Dimension - 1):
        raise ValidationError(f"Factor of dimension {Dimension} has no declared local particle-number operator")
    Values = np.array([float(Popcount(Index)) for Index in range(Dimension)])
    return _Group(Values, np.eye(Dimension, dtype=complex), Kind)


@dataclass(frozen=True)
class SectorDecomposition:
    """Per-factor sector projectors of a superselection rule."""

    Kind: SsrKind
    Factors: Tuple[Tuple[Sector, ...], ...]

    def __post_init__(self):
        for Index, Sectors in enumerate(self.Factors):
            Dimension = Sectors[0][1].shape[0]
            Total = sum(Projector for _, Projector in Sectors)
            if np.max(np.abs(Total - np.eye(Dimension))) > ProjectorTolerance:
                raise ValidationError(f"Sector projectors of factor {Index} are not complete")
            for (_, Left), (_, Right) in itertools.combinations(Sectors, 2):
                if np.max(np.abs(Left @ Right)) > ProjectorTolerance:
                    raise ValidationError(f"Sector projectors of factor {Index} are not orthogonal")

    @classmethod
    def Build(cls, Shape: Union[TensorShape, Sequence[int]], Kind: Union[SsrKind, str],
              LocalNumberOps: Optional[Sequence[Optional[np.ndarray]]] = None) -> 'SectorDecomposition':
        """
        Sector decomposition of every factor of Shape.

        Args:
            Shape: Tensor shape of the state
            Kind: Superselection rule
            LocalNumberOps: Optional per-factor number operators (None entries use popcount)
        """
        Shape = Shape if isinstance(Shape, TensorShape) else TensorShape(tuple(Shape))
        Kind = SsrKind.Parse(Kind)
        Ops = list(LocalNumberOps) if LocalNumberOps is not None else [None] * Shape.FactorCount
        if len(Ops) != Shape.FactorCount:
            raise ValidationError(f"Expected {Shape.FactorCount} local number operators, got {len(Ops)}")
        return cls(Kind, tuple(tuple(LocalSectors(Dim, Kind, Op)) for Dim, Op in zip(Shape.Dims, Ops)))


def SsrProject(Rho: DensityMatrix, Kind: Union[SsrKind, str],
               LocalNumberOps: Optional[Sequence[Optional[np.ndarray]]] = None) -> DensityMatrix:
    """
    Physical part of rho under a superselection rule.

    Keeps only the blocks sum_{q,q'} (P_q (x) P_q') rho (P_q (x) P_q') that local observables
    can see.

    Args:
        Rho: Multi-factor density matrix
        Kind: 'none' returns Rho unchanged
        LocalNumberOps: Optional per-factor number operators

    Returns:
        DensityMatrix with the shape of Rho
    """
    Rho = AsDensityMatrix(Rho)
    Kind = SsrKind.Parse(Kind)
    if Kind is SsrKind.NoRule:
        return Rho

    Decomposition = SectorDecomposition.Build(Rho.Shape, Kind, LocalNumberOps)
    Projected = np.zeros_like(Rho.Matrix)
    for Choice in itertools.product(*Decomposition.Factors):
        Projector = np.array([[1.0 + 0.0j]])
        for _, Local in Choice:
            Projector = np.kron(Projector, Local)
        Projected += Projector @ Rho.Matrix @ Projector
    return DensityMatrix(0.5 * (Projected + Projected.conj().T), Rho.Shape)


def _SchmidtDephased(Rho: DensityMatrix) -> DensityMatrix:
    DimA, DimB = Rho.Shape.Dims
    Psi = Rho.Eigh[1][:, -1].reshape(DimA, DimB)
    U, Singular, Vh = np.linalg.svd(Psi)
    Sigma = np.zeros_like(Rho.Matrix)
    for K, Value in enumerate(Singular):
        if Value ** 2 <= 1e-15:
            continue
        Sigma += Value ** 2 * np.kron(np.outer(U[:, K], U[:, K].conj()), np.outer(Vh[K], Vh[K].conj()))
    return DensityMatrix(Sigma / np.real(np.trace(Sigma)), Rho.Shape)


def _Entanglement(Physical: DensityMatrix, Solver, Seed: int) -> Tuple[DensityMatrix, float, str, bool, Optional[float]]:
    if Physical.Rank == 1:
        return _SchmidtDephased(Physical), VonNeumannEntropy(PartialTrace(Physical, 0)), 'schmidt', True, None

    if Physical.Shape.Dims == (4, 4):
        if TwoOrb.TableBasisResidual(Physical, TwoOrb.NssrBasis) <= DiagonalTolerance:
            State = TwoOrb.ProjectToTableBasis(Physical, TwoOrb.NssrBasis)
            Closest, Value = TwoOrb.ClosestSeparableNssr(State)
            return Closest.Density(), Value, 'twoorb-nssr', True, None
        if TwoOrb.TableBasisResidual(Physical, TwoOrb.PssrBasis) <= DiagonalTolerance:
            State = TwoOrb.ProjectToTableBasis(Physical, TwoOrb.PssrBasis)
            if abs(State.Weight(1) - State.Weight(16)) <= TwoOrb.WeightTolerance:
                Closest, Value = TwoOrb.ClosestSeparablePssr(State)
                return Closest.Density(), Value, 'twoorb-pssr', True, None

    Solver = Solver or SepOpt.SeparabilitySolver()
    if Physical.Dimension <= PptExactDimension:
        Report = Solver.EPpt(Physical)
        return Report.SigmaStar, Report.Value, 'ppt', Report.Converged, None

    Report = Solver.ClosestSeparableAlternating(Physical, Seed=Seed)
    try:
        LowerBound: Optional[float] = Solver.EPpt(Physical).Value
    except ConvergenceError as Error:
        Logger.warning(f"PPT lower bound unavailable: {Error}")
        LowerBound = None
    return Report.SigmaStar, Report.Value, 'alternating', Report.Converged, LowerBound


def SsrCorrelations(Rho: DensityMatrix, Kind: Union[SsrKind, str] = SsrKind.NoRule, Solver=None,
                    LogBase: Union[str, int] = 'e', LocalNumberOps: Optional[Sequence[Optional[np.ndarray]]] = None,
                    Seed: int = 0) -> CorrelationReport:
    """
    Total correlation, entanglement and classical correlation of the physical part of rho.

    Entanglement comes from the cheapest exact backend available: Schmidt decomposition for
    pure states, two-orbital closed forms for table-diagonal states, the PPT relaxation up to
    dimension 6, and the alternating upper bound beyond.

    Args:
        Rho: Bipartite density matrix
        Kind: Superselection rule
        Solver: Optional SeparabilitySolver for the numerical backends
        LogBase: 'e' or 2
        LocalNumberOps: Optional per-factor number operators
        Seed: Root seed of the alternating restarts

    Returns:
        CorrelationReport
    """
    Rho = AsDensityMatrix(Rho)
    if Rho.Shape.FactorCount != 2:
        raise ValidationError(f"Expected a bipartite shape, got {Rho.Shape.Dims}")
    Kind = SsrKind.Parse(Kind)
    Physical = SsrProject(Rho, Kind, LocalNumberOps)

    Total = MutualInformation(Physical)
    Sigma, Entanglement, Method, Converged, LowerBound = _Entanglement(Physical, Solver, Seed)
    if Entanglement > Total:
        Logger.debug(f"Capping entanglement {Entanglement:.12g} by the product state value {Total:.12g}")
        Sigma, Entanglement = ClosestUncorrelated(Physical), Total
        Method = f"{Method}+product"
    Classical = ClassicalCorrelationGeometric(Physical, Sigma)

    Factor = LogBaseFactor(LogBase)
    Logger.debug(f"SSR {Kind.value}: I={Total:.10g} E={Entanglement:.10g} C={Classical:.10g} via {Method}")
    return CorrelationReport(Total / Factor, Entanglement / Factor, Classical / Factor, Kind.value,
                             str(LogBase), Method, Converged,
                             None if LowerBound is None else LowerBound / Factor)


MeasureAliases = {
    'total_correlation': 'Total', 'i': 'Total', 'total': 'Total',
    'entanglement': 'Entanglement', 'e': 'Entanglement',
    'classical_correlation': 'Classical', 'c': 'Classical', 'classical': 'Classical',
}


def SsrMeasure(Rho: DensityMatrix, Kind: Union[SsrKind, str], Measure: str, Solver=None,
               LogBase: Union[str, int] = 'e') -> float:
    """One of total_correlation, entanglement or classical_correlation of the physical part."""
    Key = MeasureAliases.get(str(Measure).lower())
    if Key is None:
        raise ValidationError(f"Unknown measure {Measure!r}")
    return getattr(SsrCorrelations(Rho, Kind, Solver, LogBase), Key)
