# File: Measures.py
# Path: FermiCorr/Core/Measures.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-13
# Last Modified: 2025-04-06
# Description: Correlation measures - mutual information, negativity, PPT test, thermal coupling bound

import math
from dataclasses import dataclass
from typing import Any, Optional, Sequence, Tuple, Union

import numpy as np

from Core.DensMat import (DensityMatrix, HermitianOperator, LogBaseFactor, PartialTrace, PartialTranspose,
                          RelativeEntropy, TensorProduct, TraceNorm, VonNeumannEntropy, AsDensityMatrix)
from Core.Errors import ValidationError

PptTolerance = 1e-10
BoundTolerance = 1e-9


@dataclass(frozen=True)
class CorrelationReport:
    """
    Total correlation, entanglement and classical correlation of one state.

    Method names the entanglement backend; LowerBound carries the PPT value when the
    reported entanglement is only an upper bound.
    """

    Total: float
    Entanglement: float
    Classical: float
    Ssr: Any
    LogBase: str = 'e'
    Method: str = ''
    Converged: bool = True
    LowerBound: Optional[float] = None

    def __post_init__(self):
        if self.Entanglement > self.Total + 1e-8:
            raise ValidationError(
                f"Entanglement {self.Entanglement:.6g} exceeds total correlation {self.Total:.6g}")


@dataclass(frozen=True)
class BoundCheck:
    Lhs: float
    Rhs: float
    Satisfied: bool


def _RequireBipartite(Rho: HermitianOperator) -> None:
    if Rho.Shape.FactorCount != 2:
        raise ValidationError(f"Expected a bipartite shape, got {Rho.Shape.Dims}")


def MutualInformation(Rho: DensityMatrix, LogBase: Union[str, int] = 'e') -> float:
    """
    Quantum mutual information S(rho_A) + S(rho_B) - S(rho).

    Args:
        Rho: Bipartite density matrix
        LogBase: 'e' or 2

    Returns:
        float: Non-negative mutual information
    """
    Rho = AsDensityMatrix(Rho)
    _RequireBipartite(Rho)
    Value = (VonNeumannEntropy(PartialTrace(Rho, 0)) + VonNeumannEntropy(PartialTrace(Rho, 1))
             - VonNeumannEntropy(Rho))
    return max(Value, 0.0) / LogBaseFactor(LogBase)


def ClosestUncorrelated(Rho: DensityMatrix) -> DensityMatrix:
    """The product of the marginals, rho_A (x) rho_B."""
    Rho = AsDensityMatrix(Rho)
    _RequireBipartite(Rho)
    return TensorProduct(PartialTrace(Rho, 0), PartialTrace(Rho, 1))


def ClassicalCorrelationGeometric(Rho: DensityMatrix, SigmaStar: DensityMatrix,
                                  LogBase: Union[str, int] = 'e') -> float:
    """
    Classical correlation S(sigma* || rho_A (x) rho_B) from the closest separable state.

    Args:
        Rho: Bipartite state
        SigmaStar: Its closest separable state
        LogBase: 'e' or 2
    """
    return RelativeEntropy(AsDensityMatrix(SigmaStar, AsDensityMatrix(Rho).Shape), ClosestUncorrelated(Rho), LogBase)


def LogNegativity(Rho: DensityMatrix, LogBase: Union[str, int] = 'e') -> float:
    """log of the trace norm of the partial transpose; zero for PPT states."""
    Rho = AsDensityMatrix(Rho)
    _RequireBipartite(Rho)
    Value = math.log(TraceNorm(PartialTranspose(Rho, 1)))
    return max(Value, 0.0) / LogBaseFactor(LogBase)


def IsPpt(Rho: DensityMatrix) -> Tuple[bool, float]:
    """
    Peres-Horodecki test.

    Returns:
        Tuple of (PPT flag, minimum eigenvalue of the partial transpose)
    """
    Rho = AsDensityMatrix(Rho)
    _RequireBipartite(Rho)
    MinEigenvalue = float(PartialTranspose(Rho, 1).Eigenvalues[0])
    return MinEigenvalue >= -PptTolerance, MinEigenvalue


def MultipartiteMutualInformation(Rho: DensityMatrix, Parts: Optional[Sequence[Sequence[int]]] = None,
                                  LogBase: Union[str, int] = 'e') -> float:
    """
    Generalized mutual information S(rho || rho_1 (x) ... (x) rho_nu).

    Args:
        Rho: Multi-factor density matrix
        Parts: Groups of factor indices (default: every factor on its own)
        LogBase: 'e' or 2

    Returns:
        float: Sum of part entropies minus the entropy of the union of the parts
    """
    Rho = AsDensityMatrix(Rho)
    if Parts is None:
        Parts = [(Factor,) for Factor in range(Rho.Shape.FactorCount)]
    Parts = [tuple(Part) for Part in Parts]
    if len(Parts) < 2:
        raise ValidationError("Multipartite mutual information needs at least two parts")
    Union_ = [Factor for Part in Parts for Factor in Part]
    if len(set(Union_)) != len(Union_):
        raise ValidationError(f"Parts overlap: {Parts}")

    Joint = Rho if sorted(Union_) == list(range(Rho.Shape.FactorCount)) else PartialTrace(Rho, sorted(Union_))
    Value = sum(VonNeumannEntropy(PartialTrace(Rho, Part)) for Part in Parts) - VonNeumannEntropy(Joint)
    return max(Value, 0.0) / LogBaseFactor(LogBase)


def EntanglementEntropy(Psi: Union[DensityMatrix, np.ndarray], Shape: Optional[Sequence[int]] = None,
                        LogBase: Union[str, int] = 'e') -> float:
    """S(rho_A) of a bipartite pure state."""
    Rho = DensityMatrix.FromPure(Psi, Shape) if not isinstance(Psi, HermitianOperator) else AsDensityMatrix(Psi)
    _RequireBipartite(Rho)
    if Rho.Rank != 1:
        raise ValidationError(f"Entanglement entropy needs a pure state, got rank {Rho.Rank}")
    return VonNeumannEntropy(PartialTrace(Rho, 0), LogBase)


def CouplingBound(RhoThermal: DensityMatrix, CouplingTerms: Sequence[Union[HermitianOperator, np.ndarray]],
                  Temperature: float, Parts: Optional[Sequence[Sequence[int]]] = None,
                  LogBase: Union[str, int] = 'e') -> BoundCheck:
    """
    Thermal-state correlation bound I <= (2/T) sum_ij ||H_ij||_F.

    Args:
        RhoThermal: Gibbs state with the subsystem factor structure
        CouplingTerms: Interaction operators between the subsystems
        Temperature: Temperature T > 0
        Parts: Optional factor grouping for the multipartite mutual information
        LogBase: 'e' or 2

    Returns:
        BoundCheck: Both sides and whether the bound holds
    """
    if Temperature <= 0:
        raise ValidationError(f"Temperature must be positive, got {Temperature}")
    Lhs = MultipartiteMutualInformation(RhoThermal, Parts, LogBase)
    Norms = [np.linalg.norm(Term.Matrix if isinstance(Term, HermitianOperator) else np.asarray(Term), 'fro')
             for Term in CouplingTerms]
    Rhs = 2.0 * float(sum(Norms)) / Temperature / LogBaseFactor(LogBase)
    return BoundCheck(Lhs, Rhs, Lhs <= Rhs + BoundTolerance)
