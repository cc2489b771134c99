# File: DensMat.py
# Path: FermiCorr/Core/DensMat.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-12
# Last Modified: 2025-04-04
# Description: Dense Hermitian-operator numerics - spectra, entropies, partial trace and transpose

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import unitary_group

from Core.Errors import ValidationError

HermitianTolerance = 1e-12
TraceTolerance = 1e-10
PositivityTolerance = 1e-10
EigenvalueClamp = 1e-12
SupportTolerance = 1e-10

ArrayLike = Union[np.ndarray, Sequence]


@dataclass(frozen=True)
class TensorShape:
    """Local dimensions of each tensor factor of an operator."""

    Dims: Tuple[int, ...]

    def __post_init__(self):
        Dims = tuple(int(Dim) for Dim in self.Dims)
        if not Dims:
            raise ValidationError("TensorShape needs at least one factor")
        if min(Dims) < 1:
            raise ValidationError(f"TensorShape dimensions must be positive, got {Dims}")
        object.__setattr__(self, 'Dims', Dims)

    @property
    def Dimension(self) -> int:
        return int(np.prod(self.Dims))

    @property
    def FactorCount(self) -> int:
        return len(self.Dims)

    def Keep(self, Factors: Sequence[int]) -> 'TensorShape':
        return TensorShape(tuple(self.Dims[Factor] for Factor in Factors))


def _AsShape(Shape: Union[None, TensorShape, Sequence[int], int], Dimension: int) -> TensorShape:
    if Shape is None:
        return TensorShape((Dimension,))
    if isinstance(Shape, TensorShape):
        return Shape
    if isinstance(Shape, (int, np.integer)):
        return TensorShape((int(Shape),))
    return TensorShape(tuple(Shape))


class HermitianOperator:
    """
    Immutable complex Hermitian matrix with an explicit tensor-factor shape.

    Args:
        Matrix: Square complex matrix
        Shape: Tensor shape, TensorShape or list of local dimensions (default: one factor)
    """

    def __init__(self, Matrix: ArrayLike, Shape: Union[None, TensorShape, Sequence[int]] = None):
        Array = np.array(Matrix, dtype=complex)
        if Array.ndim != 2 or Array.shape[0] != Array.shape[1]:
            raise ValidationError(f"Operator must be a square matrix, got shape {Array.shape}")

        self.Shape = _AsShape(Shape, Array.shape[0])
        if self.Shape.Dimension != Array.shape[0]:
            raise ValidationError(
                f"Tensor shape {self.Shape.Dims} does not match matrix dimension {Array.shape[0]}")

        Asymmetry = float(np.max(np.abs(Array - Array.conj().T))) if Array.size else 0.0
        if Asymmetry > HermitianTolerance:
            raise ValidationError(f"Operator is not Hermitian (max deviation {Asymmetry:.3e})")

        Array = 0.5 * (Array + Array.conj().T)
        Array.setflags(write=False)
        self._Matrix = Array

    @property
    def Matrix(self) -> np.ndarray:
        return self._Matrix

    @property
    def Dimension(self) -> int:
        return self._Matrix.shape[0]

    @property
    def IsReal(self) -> bool:
        return bool(np.max(np.abs(self._Matrix.imag), initial=0.0) <= HermitianTolerance)

    @cached_property
    def Eigh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Ascending eigenvalues and the matching orthonormal eigenvectors."""
        Values, Vectors = np.linalg.eigh(self._Matrix)
        Values.setflags(write=False)
        Vectors.setflags(write=False)
        return Values, Vectors

    @property
    def Eigenvalues(self) -> np.ndarray:
        return self.Eigh[0]

    def Apply(self, Function: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """Matrix function V f(lambda) V^dagger built from the eigendecomposition."""
        Values, Vectors = self.Eigh
        return (Vectors * Function(Values)) @ Vectors.conj().T

    def WithShape(self, Shape: Union[TensorShape, Sequence[int]]) -> 'HermitianOperator':
        return type(self)(self._Matrix, Shape)

    def Expectation(self, Observable: ArrayLike) -> float:
        return float(np.real(np.trace(self._Matrix @ np.asarray(Observable))))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(Shape={self.Shape.Dims})"


class DensityMatrix(HermitianOperator):
    """
    Trace-one positive semidefinite Hermitian operator.

    Args:
        Matrix: Square complex matrix
        Shape: Tensor shape (default: one factor)
    """

    def __init__(self, Matrix: ArrayLike, Shape: Union[None, TensorShape, Sequence[int]] = None):
        super().__init__(Matrix, Shape)

        Trace = float(np.real(np.trace(self.Matrix)))
        if abs(Trace - 1.0) > TraceTolerance:
            raise ValidationError(f"Density matrix trace deviates from 1 by {Trace - 1.0:.3e}")

        MinEigenvalue = float(self.Eigenvalues[0])
        if MinEigenvalue < -PositivityTolerance:
            raise ValidationError(
                f"Density matrix is not positive semidefinite (min eigenvalue {MinEigenvalue:.3e})")

    @classmethod
    def FromPure(cls, Vector: ArrayLike, Shape: Union[None, TensorShape, Sequence[int]] = None) -> 'DensityMatrix':
        """Build |psi><psi| from a (not necessarily normalized) state vector."""
        Psi = np.asarray(Vector, dtype=complex).reshape(-1)
        Norm = np.linalg.norm(Psi)
        if Norm < 1e-14:
            raise ValidationError("Cannot build a pure state from the zero vector")
        Psi = Psi / Norm
        return cls(np.outer(Psi, Psi.conj()), Shape)

    @classmethod
    def FromEnsemble(cls, Vectors: Sequence[ArrayLike], Weights: Sequence[float],
                     Shape: Union[None, TensorShape, Sequence[int]] = None) -> 'DensityMatrix':
        """Build sum_i w_i |psi_i><psi_i| with normalized states and weights."""
        Weights = np.asarray(Weights, dtype=float)
        if len(Vectors) != len(Weights) or np.any(Weights < 0) or Weights.sum() <= 0:
            raise ValidationError("Ensemble needs one non-negative weight per state")
        Weights = Weights / Weights.sum()
        Matrix = sum(Weight * cls.FromPure(Vector).Matrix for Vector, Weight in zip(Vectors, Weights))
        return cls(Matrix, Shape)

    @classmethod
    def FromOperator(cls, Operator: HermitianOperator) -> 'DensityMatrix':
        if isinstance(Operator, DensityMatrix):
            return Operator
        return cls(Operator.Matrix, Operator.Shape)

    @property
    def Rank(self) -> int:
        return int(np.sum(self.Eigenvalues > EigenvalueClamp))

    @property
    def Purity(self) -> float:
        return float(np.real(np.trace(self.Matrix @ self.Matrix)))


def AsDensityMatrix(Rho: Union[DensityMatrix, HermitianOperator, ArrayLike],
                    Shape: Union[None, TensorShape, Sequence[int]] = None) -> DensityMatrix:
    """Coerce arrays and operators to a validated DensityMatrix."""
    if isinstance(Rho, DensityMatrix):
        return Rho if Shape is None else Rho.WithShape(Shape)
    if isinstance(Rho, HermitianOperator):
        return DensityMatrix(Rho.Matrix, Rho.Shape if Shape is None else Shape)
    return DensityMatrix(Rho, Shape)


def LogBaseFactor(LogBase: Union[str, int, float, None] = 'e') -> float:
    """
    Divisor converting natural-log values to the requested base.

    Args:
        LogBase: 'e' (default) or 2

    Returns:
        float: ln(base)
    """
    if LogBase is None or str(LogBase).lower() in ('e', 'nat', 'ln'):
        return 1.0
    if str(LogBase) in ('2', '2.0', 'bit', 'bits'):
        return math.log(2.0)
    raise ValidationError(f"Unsupported log base {LogBase!r}; use 'e' or 2")


def ClampedSpectrum(Rho: HermitianOperator) -> np.ndarray:
    """Eigenvalues with |lambda| < 1e-12 and residual negatives set to zero."""
    Values = np.array(Rho.Eigenvalues, dtype=float)
    Values[Values < EigenvalueClamp] = 0.0
    return Values


def ShannonEntropy(Probabilities: ArrayLike) -> float:
    """-sum p log p in nats with 0 log 0 = 0."""
    P = np.asarray(Probabilities, dtype=float)
    P = P[P > 0]
    return float(-np.sum(P * np.log(P)))


def VonNeumannEntropy(Rho: Union[DensityMatrix, ArrayLike], LogBase: Union[str, int] = 'e') -> float:
    """
    Von Neumann entropy -Tr[rho log rho].

    Args:
        Rho: Density matrix
        LogBase: 'e' or 2

    Returns:
        float: Entropy in [0, log d]
    """
    Rho = AsDensityMatrix(Rho)
    Entropy = ShannonEntropy(ClampedSpectrum(Rho))
    Entropy = min(max(Entropy, 0.0), math.log(Rho.Dimension))
    return Entropy / LogBaseFactor(LogBase)


def RelativeEntropy(Rho: Union[DensityMatrix, ArrayLike], Sigma: Union[DensityMatrix, ArrayLike],
                    LogBase: Union[str, int] = 'e') -> float:
    """
    Quantum relative entropy S(rho||sigma) = Tr[rho (log rho - log sigma)].

    Args:
        Rho: First argument
        Sigma: Second argument, same tensor shape as Rho
        LogBase: 'e' or 2

    Returns:
        float: Non-negative value, or +inf when supp(rho) is not inside supp(sigma)
    """
    Rho = AsDensityMatrix(Rho)
    Sigma = AsDensityMatrix(Sigma)
    if Rho.Shape != Sigma.Shape:
        raise ValidationError(f"Shape mismatch: {Rho.Shape.Dims} vs {Sigma.Shape.Dims}")

    P, U = Rho.Eigh
    Q, V = Sigma.Eigh
    P = np.where(P < EigenvalueClamp, 0.0, P)
    Q = np.where(Q < EigenvalueClamp, 0.0, Q)

    # Weight of rho along each eigenvector of sigma
    Overlap = np.abs(U.conj().T @ V) ** 2
    Weight = P @ Overlap

    Kernel = Q == 0.0
    if np.any(Weight[Kernel] > SupportTolerance):
        return math.inf

    Value = -ShannonEntropy(P) - float(np.sum(Weight[~Kernel] * np.log(Q[~Kernel])))
    return max(Value, 0.0) / LogBaseFactor(LogBase)


def _CheckFactors(Shape: TensorShape, Factors: Iterable[int]) -> Tuple[int, ...]:
    Factors = tuple(int(Factor) for Factor in Factors)
    if not Factors:
        raise ValidationError("Factor index set must be non-empty")
    if len(set(Factors)) != len(Factors):
        raise ValidationError(f"Duplicate factor indices {Factors}")
    for Factor in Factors:
        if not 0 <= Factor < Shape.FactorCount:
            raise ValidationError(f"Factor index {Factor} out of range for shape {Shape.Dims}")
    return Factors


def PartialTrace(Rho: HermitianOperator, Keep: Union[int, Iterable[int]]) -> HermitianOperator:
    """
    Trace out every factor not listed in Keep.

    Args:
        Rho: Operator or density matrix with a multi-factor shape
        Keep: Factor indices to keep, in the order they should appear

    Returns:
        Reduced operator of the same class as Rho
    """
    if isinstance(Keep, (int, np.integer)):
        Keep = (int(Keep),)
    Keep = _CheckFactors(Rho.Shape, Keep)

    Dims = Rho.Shape.Dims
    Count = len(Dims)
    Tensor = np.asarray(Rho.Matrix).reshape(Dims + Dims)

    Traced = sorted(set(range(Count)) - set(Keep), reverse=True)
    Remaining = list(range(Count))
    for Factor in Traced:
        Position = Remaining.index(Factor)
        Tensor = np.trace(Tensor, axis1=Position, axis2=Position + len(Remaining))
        Remaining.pop(Position)

    Order = [Remaining.index(Factor) for Factor in Keep]
    Tensor = Tensor.transpose(Order + [Index + len(Order) for Index in Order])
    KeptShape = Rho.Shape.Keep(Keep)
    Matrix = Tensor.reshape(KeptShape.Dimension, KeptShape.Dimension)
    return type(Rho)(Matrix, KeptShape)


def PartialTranspose(Rho: HermitianOperator, Factor: int) -> HermitianOperator:
    """
    Transpose one tensor factor in the computational basis.

    Args:
        Rho: Operator with a multi-factor shape
        Factor: Index of the factor to transpose

    Returns:
        HermitianOperator: The partially transposed operator (same shape)
    """
    (Factor,) = _CheckFactors(Rho.Shape, (Factor,))
    Dims = Rho.Shape.Dims
    Count = len(Dims)
    Tensor = np.asarray(Rho.Matrix).reshape(Dims + Dims)
    Tensor = np.swapaxes(Tensor, Factor, Factor + Count)
    return HermitianOperator(Tensor.reshape(Rho.Dimension, Rho.Dimension), Rho.Shape)


def TraceNorm(Operator: Union[HermitianOperator, ArrayLike]) -> float:
    """Sum of absolute eigenvalues."""
    if not isinstance(Operator, HermitianOperator):
        Operator = HermitianOperator(Operator)
    return float(np.sum(np.abs(Operator.Eigenvalues)))


def TensorProduct(*Operators: HermitianOperator) -> HermitianOperator:
    """Kronecker product with concatenated tensor shape."""
    if not Operators:
        raise ValidationError("TensorProduct needs at least one operator")
    Matrix = np.array([[1.0 + 0.0j]])
    Dims: Tuple[int, ...] = ()
    for Operator in Operators:
        Matrix = np.kron(Matrix, Operator.Matrix)
        Dims = Dims + Operator.Shape.Dims
    Result = DensityMatrix if all(isinstance(Op, DensityMatrix) for Op in Operators) else HermitianOperator
    return Result(Matrix, TensorShape(Dims))


def MaximallyMixed(Shape: Union[TensorShape, Sequence[int], int]) -> DensityMatrix:
    Shape = _AsShape(Shape, 0) if not isinstance(Shape, TensorShape) else Shape
    return DensityMatrix(np.eye(Shape.Dimension) / Shape.Dimension, Shape)


def BellState(Kind: str = 'phi+') -> DensityMatrix:
    """
    Two-qubit Bell states.

    Args:
        Kind: One of 'phi+', 'phi-', 'psi+', 'psi-'
    """
    Vectors = {
        'phi+': [1, 0, 0, 1],
        'phi-': [1, 0, 0, -1],
        'psi+': [0, 1, 1, 0],
        'psi-': [0, 1, -1, 0],
    }
    if Kind not in Vectors:
        raise ValidationError(f"Unknown Bell state {Kind!r}")
    return DensityMatrix.FromPure(Vectors[Kind], (2, 2))


def FidelityPure(Vector: ArrayLike, Rho: HermitianOperator) -> float:
    """<psi|rho|psi> for a normalized state vector."""
    Psi = np.asarray(Vector, dtype=complex).reshape(-1)
    Psi = Psi / np.linalg.norm(Psi)
    return float(np.real(Psi.conj() @ Rho.Matrix @ Psi))


def RandomUnitary(Dimension: int, Rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Haar-random unitary."""
    Rng = Rng if Rng is not None else np.random.default_rng()
    if Dimension == 1:
        return np.exp(2j * np.pi * Rng.random()).reshape(1, 1)
    return unitary_group.rvs(Dimension, random_state=Rng)


def RandomDensityMatrix(Shape: Union[TensorShape, Sequence[int], int], Rank: Optional[int] = None,
                        Rng: Optional[np.random.Generator] = None, Real: bool = False) -> DensityMatrix:
    """
    Wishart-distributed random state G G^dagger / Tr.

    Args:
        Shape: Tensor shape of the state
        Rank: Number of Gaussian columns (default: full rank)
        Rng: numpy Generator
        Real: Draw a real symmetric state
    """
    Shape = Shape if isinstance(Shape, TensorShape) else _AsShape(Shape, 0)
    Rng = Rng if Rng is not None else np.random.default_rng()
    Rank = Rank or Shape.Dimension
    G = Rng.standard_normal((Shape.Dimension, Rank))
    if not Real:
        G = G + 1j * Rng.standard_normal((Shape.Dimension, Rank))
    Matrix = G @ G.conj().T
    return DensityMatrix(Matrix / np.trace(Matrix).real, Shape)
