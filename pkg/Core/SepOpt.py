# File: SepOpt.py
# Path: FermiCorr/Core/SepOpt.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-17
# Last Modified: 2025-04-08
# Description: Closest separable state search - PPT relaxation and alternating product decompositions

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import cvxpy as cp
import numpy as np

from Core.DensMat import (DensityMatrix, HermitianOperator, PartialTranspose, RelativeEntropy, TensorShape,
                          AsDensityMatrix)
from Core.Errors import ConvergenceError, ValidationError
from Core.Measures import IsPpt
from Core.WorkerPool import ParallelMap

Logger = logging.getLogger('FermiCorr.SepOpt')

FeasibilityTolerance = 1e-8
DecompositionTolerance = 1e-8
InaccurateTolerance = 1e-6
DeadTermTrace = 1e-14

PptLower = 'ppt_lower'
AlternatingUpper = 'alternating_upper'


@dataclass(frozen=True)
class ProductDecomposition:
    """Separable operator sum_i A_i (x) B_i with positive semidefinite factors."""

    Terms: Tuple[Tuple[np.ndarray, np.ndarray], ...]

    def __post_init__(self):
        if not self.Terms:
            raise ValidationError("ProductDecomposition needs at least one term")
        Total = 0.0
        for FactorA, FactorB in self.Terms:
            for Factor in (FactorA, FactorB):
                MinEigenvalue = float(np.linalg.eigvalsh(Factor)[0])
                if MinEigenvalue < -1e-10:
                    raise ValidationError(f"Product factor is not positive (min eigenvalue {MinEigenvalue:.3e})")
            Total += float(np.real(np.trace(FactorA) * np.trace(FactorB)))
        if abs(Total - 1.0) > DecompositionTolerance:
            raise ValidationError(f"Product decomposition trace deviates from 1 by {Total - 1.0:.3e}")

    @property
    def TermCount(self) -> int:
        return len(self.Terms)

    def Sigma(self) -> np.ndarray:
        return sum(np.kron(FactorA, FactorB) for FactorA, FactorB in self.Terms)


@dataclass(frozen=True)
class OptReport:
    """Result of a closest-separable-state search."""

    Value: float
    SigmaStar: DensityMatrix
    Iterations: int
    Converged: bool
    Kind: str
    Decomposition: Optional[ProductDecomposition] = None
    History: Tuple[float, ...] = field(default=())
    LowerBound: Optional[float] = None

    def __post_init__(self):
        if self.Kind not in (PptLower, AlternatingUpper):
            raise ValidationError(f"Unknown report kind {self.Kind!r}")
        if self.Kind == AlternatingUpper:
            if self.Decomposition is None:
                raise ValidationError("Alternating reports must carry their product decomposition")
            Deviation = float(np.max(np.abs(self.Decomposition.Sigma() - self.SigmaStar.Matrix)))
            if Deviation > DecompositionTolerance:
                raise ValidationError(f"sigma* differs from its decomposition by {Deviation:.3e}")


def CaratheodoryTermCount(Shape: TensorShape, Real: bool) -> int:
    """D(D+1)/2 product terms for real states, D^2 otherwise."""
    Dimension = Shape.Dimension
    return Dimension * (Dimension + 1) // 2 if Real else Dimension ** 2


def _Hermitize(Matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (Matrix + Matrix.conj().T)


def _PsdClip(Matrix: np.ndarray) -> np.ndarray:
    Values, Vectors = np.linalg.eigh(_Hermitize(Matrix))
    Values = np.clip(Values, 0.0, None)
    return _Hermitize((Vectors * Values) @ Vectors.conj().T)


def _ToDensity(Matrix: np.ndarray, Shape: TensorShape) -> DensityMatrix:
    Clipped = _PsdClip(np.asarray(Matrix, dtype=complex))
    return DensityMatrix(Clipped / np.real(np.trace(Clipped)), Shape)


def WernerState(P: float) -> DensityMatrix:
    """
    Two-qubit Werner family p 1/4 + (1 - p)|Phi+><Phi+|.

    Args:
        P: Mixing parameter in [0, 1]; P = 0 is the Bell state, P = 1 is maximally mixed
    """
    if not 0.0 <= P <= 1.0:
        raise ValidationError(f"Werner parameter must lie in [0, 1], got {P}")
    Phi = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)
    return DensityMatrix(P * np.eye(4) / 4.0 + (1.0 - P) * np.outer(Phi, Phi), (2, 2))


def HorodeckiState(A: float) -> DensityMatrix:
    """
    The 3x3 bound entangled family rho_a, PPT for every a in [0, 1].

    Args:
        A: Family parameter in [0, 1]
    """
    if not 0.0 <= A <= 1.0:
        raise ValidationError(f"Horodecki parameter must lie in [0, 1], got {A}")
    Matrix = np.zeros((9, 9))
    for Row in (0, 4, 8):
        for Column in (0, 4, 8):
            Matrix[Row, Column] = A
    for Index in (1, 2, 3, 5, 7):
        Matrix[Index, Index] = A
    Matrix[6, 6] = (1.0 + A) / 2.0
    Matrix[8, 8] = (1.0 + A) / 2.0
    Matrix[6, 8] = Matrix[8, 6] = math.sqrt(1.0 - A * A) / 2.0
    return DensityMatrix(Matrix / (8.0 * A + 1.0), (3, 3))


def _RunRestart(Task: Tuple['SeparabilitySolver', DensityMatrix, int, np.random.SeedSequence, int]) -> OptReport:
    Solver, Rho, TermCount, Seed, Index = Task
    return Solver._Alternate(Rho, TermCount, np.random.default_rng(Seed), Index)


class SeparabilitySolver:
    """
    Convex-programming backend for the relative entropy of entanglement.

    The operator relative entropy is handled by cvxpy's quantum_rel_entr atom, a rational
    approximation of the matrix logarithm with QuadApprox = (nodes, scaling steps). Reported
    values are always the exact relative entropy of the returned state.

    Args:
        Name: Primary cvxpy solver
        Fallback: Solver tried when the primary one fails (None to disable)
        QuadApprox: Quadrature order of the logarithm approximation
        MaxSweeps: Cap on alternating sweeps
        Tolerance: Minimum objective improvement per sweep
        Restarts: Independent random restarts of the alternating method
        TermCount: Product terms (0 selects the Caratheodory bound)
        Jobs: Worker processes for restarts
        ForceComplex: Optimize complex factors even for real states
    """

    def __init__(self, Name: str = 'CLARABEL', Fallback: Optional[str] = 'SCS',
                 QuadApprox: Sequence[int] = (3, 3), MaxSweeps: int = 500, Tolerance: float = 1e-8,
                 Restarts: int = 8, TermCount: int = 0, Jobs: int = 1, ForceComplex: bool = False):
        self.Logger = logging.getLogger('FermiCorr.SepOpt.SeparabilitySolver')
        self.Name = str(Name).upper()
        self.Fallback = str(Fallback).upper() if Fallback else None
        self.QuadApprox = tuple(int(Value) for Value in QuadApprox)
        self.MaxSweeps = int(MaxSweeps)
        self.Tolerance = float(Tolerance)
        self.Restarts = int(Restarts)
        self.TermCount = int(TermCount)
        self.Jobs = int(Jobs)
        self.ForceComplex = ForceComplex
        if self.MaxSweeps < 1 or self.Restarts < 1:
            raise ValidationError("MaxSweeps and Restarts must be positive")

    @classmethod
    def FromConfig(cls, Section: Dict[str, Any], Jobs: int = 1) -> 'SeparabilitySolver':
        """Build a solver from a ConfigManager 'SolverConfig' section."""
        return cls(Name=Section.get('Name', 'CLARABEL'), Fallback=Section.get('Fallback', 'SCS'),
                   QuadApprox=Section.get('QuadApprox', (3, 3)), MaxSweeps=Section.get('MaxSweeps', 500),
                   Tolerance=Section.get('Tolerance', 1e-8), Restarts=Section.get('Restarts', 8),
                   TermCount=Section.get('TermCount', 0), Jobs=Jobs)

    def _IsReal(self, Rho: HermitianOperator) -> bool:
        return Rho.IsReal and not self.ForceComplex

    @staticmethod
    def _Variable(Dimension: int, Real: bool) -> cp.Variable:
        if Real:
            return cp.Variable((Dimension, Dimension), symmetric=True)
        return cp.Variable((Dimension, Dimension), hermitian=True)

    @staticmethod
    def _Constant(Matrix: np.ndarray, Real: bool) -> np.ndarray:
        return np.ascontiguousarray(Matrix.real) if Real else np.ascontiguousarray(Matrix)

    @staticmethod
    def _UnitTrace(Sigma: cp.Expression, Real: bool) -> cp.Constraint:
        # cp.real on a symmetric variable breaks quantum_rel_entr canonicalization
        return cp.trace(Sigma) == 1 if Real else cp.real(cp.trace(Sigma)) == 1

    @staticmethod
    def Accepts(Status: str, Objective: Optional[float], Exact: float) -> bool:
        """
        Decide whether a solver outcome counts as converged.

        Inaccurate-optimal results are accepted when the exact relative entropy of the
        returned state agrees with the solver objective.

        Args:
            Status: cvxpy problem status
            Objective: Solver objective value in nats
            Exact: Exact relative entropy of the returned state in nats
        """
        if not math.isfinite(Exact):
            return False
        if Status == cp.OPTIMAL:
            return True
        if Status == cp.OPTIMAL_INACCURATE and Objective is not None and math.isfinite(Objective):
            return abs(Exact - Objective) <= InaccurateTolerance * max(1.0, abs(Exact))
        return False

    def _SolverOptions(self, Name: str) -> Dict[str, Any]:
        if Name == 'CLARABEL':
            return {'tol_gap_abs': 1e-9, 'tol_gap_rel': 1e-9, 'tol_feas': 1e-9, 'max_iter': 500}
        if Name == 'SCS':
            return {'eps_abs': 1e-9, 'eps_rel': 1e-9, 'max_iters': 200000}
        return {}

    def _Solve(self, Problem: cp.Problem) -> bool:
        """
        Solve with the primary solver, then the fallback.

        Returns:
            bool: True if some solver reported an optimal or inaccurate-optimal status
        """
        for Name in [self.Name, self.Fallback]:
            if not Name:
                continue
            try:
                Problem.solve(solver=Name, **self._SolverOptions(Name))
                if Problem.status in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
                    return True
                self.Logger.warning(f"Solver {Name} finished with status {Problem.status}")
            except Exception as Error:
                self.Logger.warning(f"Solver {Name} failed: {type(Error).__name__}: {Error}")
        return False

    def _RelativeEntropyObjective(self, RhoConstant: np.ndarray, Sigma: cp.Variable) -> cp.Minimize:
        return cp.Minimize(cp.quantum_rel_entr(RhoConstant, Sigma, quad_approx=self.QuadApprox))

    def EPpt(self, Rho: DensityMatrix) -> OptReport:
        """
        PPT-relaxed relative entropy of entanglement, a lower bound on E_RE.

        Minimizes S(rho||sigma) over unit-trace sigma >= 0 with sigma^{T_B} >= 0.

        Args:
            Rho: Bipartite density matrix

        Returns:
            OptReport of kind 'ppt_lower'
        """
        Rho = AsDensityMatrix(Rho)
        if Rho.Shape.FactorCount != 2:
            raise ValidationError(f"Expected a bipartite shape, got {Rho.Shape.Dims}")

        if IsPpt(Rho)[0]:
            return OptReport(0.0, Rho, 0, True, PptLower)

        Real = self._IsReal(Rho)
        Sigma = self._Variable(Rho.Dimension, Real)
        Constraints = [
            Sigma >> 0,
            cp.partial_transpose(Sigma, list(Rho.Shape.Dims), 1) >> 0,
            self._UnitTrace(Sigma, Real),
        ]
        Problem = cp.Problem(self._RelativeEntropyObjective(self._Constant(Rho.Matrix, Real), Sigma), Constraints)
        if not self._Solve(Problem) or Sigma.value is None:
            raise ConvergenceError("PPT relaxation failed with every configured solver", Report=Problem.status)

        SigmaStar = _ToDensity(Sigma.value, Rho.Shape)
        Value = RelativeEntropy(Rho, SigmaStar)
        MinPt = float(PartialTranspose(SigmaStar, 1).Eigenvalues[0])
        Converged = self.Accepts(Problem.status, Problem.value, Value) and MinPt >= -FeasibilityTolerance
        if not Converged:
            self.Logger.warning(f"PPT relaxation inexact: status {Problem.status}, min PT eigenvalue {MinPt:.3e}")
        self.Logger.debug(f"E_PPT = {Value:.10g} (solver objective {Problem.value})")
        return OptReport(Value, SigmaStar, 1, Converged, PptLower)

    def ClosestSeparableAlternating(self, Rho: DensityMatrix, TermCount: Optional[int] = None,
                                    Restarts: Optional[int] = None, Seed: int = 0) -> OptReport:
        """
        Upper bound on E_RE by alternating convex minimization over product decompositions.

        Each sweep minimizes S(rho || sum_i A_i (x) B_i) over the B_i with the A_i fixed and
        then over the A_i with the B_i fixed. The best restart wins.

        Args:
            Rho: Bipartite density matrix
            TermCount: Product terms (default: Caratheodory bound for real/complex rho)
            Restarts: Random restarts (default: solver setting)
            Seed: Root seed; restart k uses the k-th spawned SeedSequence child

        Returns:
            OptReport of kind 'alternating_upper'
        """
        Rho = AsDensityMatrix(Rho)
        if Rho.Shape.FactorCount != 2:
            raise ValidationError(f"Expected a bipartite shape, got {Rho.Shape.Dims}")
        TermCount = int(TermCount or self.TermCount or CaratheodoryTermCount(Rho.Shape, self._IsReal(Rho)))
        if TermCount < 1:
            raise ValidationError(f"TermCount must be positive, got {TermCount}")
        Restarts = int(Restarts or self.Restarts)

        Children = np.random.SeedSequence(Seed).spawn(Restarts)
        Tasks = [(self, Rho, TermCount, Child, Index) for Index, Child in enumerate(Children)]
        Reports = ParallelMap(_RunRestart, Tasks, self.Jobs)

        Best = min(Reports, key=lambda Report: Report.Value)
        self.Logger.info(f"Alternating search: best {Best.Value:.10g} over {Restarts} restarts "
                         f"({TermCount} terms, converged={Best.Converged})")
        return Best

    def _InitialFactors(self, DimA: int, DimB: int, TermCount: int, Rng: np.random.Generator,
                        Real: bool) -> Tuple[List[np.ndarray], List[np.ndarray]]:
        def Wishart(Dimension: int) -> np.ndarray:
            G = Rng.standard_normal((Dimension, Dimension))
            if not Real:
                G = G + 1j * Rng.standard_normal((Dimension, Dimension))
            Matrix = G @ G.conj().T
            return Matrix / np.real(np.trace(Matrix))

        FactorsA = [Wishart(DimA) for _ in range(TermCount)]
        Weights = Rng.dirichlet(np.ones(TermCount))
        FactorsB = [Weight * Wishart(DimB) for Weight in Weights]
        return FactorsA, FactorsB

    @staticmethod
    def _Normalized(Fixed: List[np.ndarray], Free: List[np.ndarray]) -> Tuple[List[np.ndarray], List[np.ndarray]]:
        """Move every trace into the free side; dead fixed factors become maximally mixed."""
        NewFixed, NewFree = [], []
        for FixedFactor, FreeFactor in zip(Fixed, Free):
            Trace = float(np.real(np.trace(FixedFactor)))
            if Trace <= DeadTermTrace:
                NewFixed.append(np.eye(FixedFactor.shape[0]) / FixedFactor.shape[0])
                NewFree.append(np.zeros_like(FreeFactor))
            else:
                NewFixed.append(FixedFactor / Trace)
                NewFree.append(FreeFactor * Trace)
        return NewFixed, NewFree

    def _HalfStep(self, RhoConstant: np.ndarray, Fixed: List[np.ndarray], FreeDimension: int,
                  FreeIsB: bool, Real: bool) -> Optional[List[np.ndarray]]:
        Dimension = RhoConstant.shape[0]
        Variables = [self._Variable(FreeDimension, Real) for _ in Fixed]
        Terms = [cp.kron(self._Constant(Factor, Real), Variable) if FreeIsB
                 else cp.kron(Variable, self._Constant(Factor, Real))
                 for Factor, Variable in zip(Fixed, Variables)]
        Sigma = self._Variable(Dimension, Real)
        Constraints = [Sigma == sum(Terms), self._UnitTrace(Sigma, Real)]
        Constraints += [Variable >> 0 for Variable in Variables]

        Problem = cp.Problem(self._RelativeEntropyObjective(RhoConstant, Sigma), Constraints)
        if not self._Solve(Problem) or any(Variable.value is None for Variable in Variables):
            return None
        return [_PsdClip(np.asarray(Variable.value, dtype=complex)) for Variable in Variables]

    @staticmethod
    def _Assemble(FactorsA: List[np.ndarray], FactorsB: List[np.ndarray]) -> ProductDecomposition:
        Total = sum(float(np.real(np.trace(A) * np.trace(B))) for A, B in zip(FactorsA, FactorsB))
        return ProductDecomposition(tuple((_Hermitize(A), _Hermitize(B) / Total)
                                          for A, B in zip(FactorsA, FactorsB)))

    @staticmethod
    def _Evaluate(Rho: DensityMatrix, Decomposition: ProductDecomposition) -> Tuple[float, DensityMatrix]:
        Sigma = DensityMatrix(_Hermitize(Decomposition.Sigma()), Rho.Shape)
        return RelativeEntropy(Rho, Sigma), Sigma

    def _Alternate(self, Rho: DensityMatrix, TermCount: int, Rng: np.random.Generator, Index: int) -> OptReport:
        DimA, DimB = Rho.Shape.Dims
        Real = self._IsReal(Rho)
        RhoConstant = self._Constant(Rho.Matrix, Real)

        FactorsA, FactorsB = self._InitialFactors(DimA, DimB, TermCount, Rng, Real)
        Decomposition = self._Assemble(FactorsA, FactorsB)
        Current, SigmaStar = self._Evaluate(Rho, Decomposition)
        History = [Current]
        Converged = False
        Sweep = 0

        for Sweep in range(1, self.MaxSweeps + 1):
            Start = Current
            Failed = False

            for FreeIsB in (True, False):
                if FreeIsB:
                    FactorsA, FactorsB = self._Normalized(FactorsA, FactorsB)
                    Free = self._HalfStep(RhoConstant, FactorsA, DimB, True, Real)
                    Candidate = (FactorsA, Free)
                else:
                    FactorsB, FactorsA = self._Normalized(FactorsB, FactorsA)
                    Free = self._HalfStep(RhoConstant, FactorsB, DimA, False, Real)
                    Candidate = (Free, FactorsB)

                if Free is None:
                    Failed = True
                    break

                NewDecomposition = self._Assemble(*Candidate)
                Value, Sigma = self._Evaluate(Rho, NewDecomposition)
                # Accept only non-increasing steps so the recorded objective is monotone
                if Value <= Current:
                    FactorsA, FactorsB = Candidate
                    Decomposition, Current, SigmaStar = NewDecomposition, Value, Sigma
                    History.append(Current)
                else:
                    self.Logger.debug(f"Restart {Index}: rejected half-step {Value:.12g} > {Current:.12g}")

            self.Logger.debug(f"Restart {Index} sweep {Sweep}: objective {Current:.12g}")
            if Failed:
                self.Logger.warning(f"Restart {Index}: convex half-step failed at sweep {Sweep}")
                break
            if Start - Current < self.Tolerance:
                Converged = True
                break

        if not Converged:
            self.Logger.warning(f"Restart {Index} stopped without converging after {Sweep} sweeps")
        return OptReport(Current, SigmaStar, Sweep, Converged, AlternatingUpper, Decomposition, tuple(History))


def EPpt(Rho: DensityMatrix, Solver: Optional[SeparabilitySolver] = None) -> OptReport:
    """PPT-relaxed lower bound with a default or supplied solver."""
    return (Solver or SeparabilitySolver()).EPpt(Rho)


def ClosestSeparableAlternating(Rho: DensityMatrix, TermCount: Optional[int] = None, Restarts: Optional[int] = None,
                                Seed: int = 0, Solver: Optional[SeparabilitySolver] = None) -> OptReport:
    """Alternating upper bound with a default or supplied solver."""
    return (Solver or SeparabilitySolver()).ClosestSeparableAlternating(Rho, TermCount, Restarts, Seed)
