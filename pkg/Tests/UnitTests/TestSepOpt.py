# File: TestSepOpt.py
# Path: FermiCorr/Tests/UnitTests/TestSepOpt.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-19
# Last Modified: 2025-04-07
# Description: Unit tests for the closest separable state searches

import os
import sys
import math
import unittest
from pathlib import Path
from unittest import mock

import cvxpy as cp
import numpy as np

# Add project root to path for imports
ProjectRoot = Path(__file__).resolve().parents[2]
sys.path.append(str(ProjectRoot))

from Core.DensMat import BellState, DensityMatrix, TensorShape
from Core.Errors import ConvergenceError, ValidationError
from Core.Measures import IsPpt
from Core.SepOpt import (CaratheodoryTermCount, ClosestSeparableAlternating, EPpt, HorodeckiState, OptReport,
                         ProductDecomposition, SeparabilitySolver, WernerState)

class TestFamilies(unittest.TestCase):
    """Test case for the reference state families."""

    def test_WernerFamily(self):
        """Test end points and the PPT threshold at p = 2/3."""
        np.testing.assert_allclose(WernerState(0.0).Matrix, BellState('phi+').Matrix, atol=1e-15)
        np.testing.assert_allclose(WernerState(1.0).Matrix, np.eye(4) / 4, atol=1e-15)
        self.assertFalse(IsPpt(WernerState(0.6))[0])
        self.assertTrue(IsPpt(WernerState(0.7))[0])
        with self.assertRaises(ValidationError):
            WernerState(1.2)

    def test_HorodeckiFamily(self):
        """Test that every member is a PPT state on 3x3."""
        for A in (0.0, 0.225, 0.5, 1.0):
            Rho = HorodeckiState(A)
            self.assertEqual(Rho.Shape.Dims, (3, 3))
            self.assertAlmostEqual(float(np.trace(Rho.Matrix).real), 1.0, places=12)
            self.assertTrue(IsPpt(Rho)[0])
        with self.assertRaises(ValidationError):
            HorodeckiState(-0.5)

    def test_HorodeckiGridIsPositiveAndPpt(self):
        """Test positivity and positive partial transpose on the full scan grid."""
        for Step in range(41):
            Rho = HorodeckiState(0.025 * Step)
            self.assertGreaterEqual(float(np.linalg.eigvalsh(Rho.Matrix)[0]), -1e-12)
            IsPptState, MinEigenvalue = IsPpt(Rho)
            self.assertTrue(IsPptState, f"a = {0.025 * Step}: min PT eigenvalue {MinEigenvalue:.3e}")

    def test_CaratheodoryTermCount(self):
        """Test the product-term bounds for two qubits."""
        self.assertEqual(CaratheodoryTermCount(TensorShape((2, 2)), True), 10)
        self.assertEqual(CaratheodoryTermCount(TensorShape((2, 2)), False), 16)

class TestReports(unittest.TestCase):
    """Test case for decompositions and optimizer reports."""

    def test_ProductDecomposition(self):
        """Test trace and positivity checks of the factors."""
        Up, Down = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
        Decomposition = ProductDecomposition(((0.5 * Up, Up), (0.5 * Down, Down)))
        self.assertEqual(Decomposition.TermCount, 2)
        np.testing.assert_allclose(Decomposition.Sigma(), np.diag([0.5, 0, 0, 0.5]))
        with self.assertRaises(ValidationError):
            ProductDecomposition(((Up, Up), (Down, Down)))
        with self.assertRaises(ValidationError):
            ProductDecomposition(((np.diag([1.5, -0.5]), Up),))
        with self.assertRaises(ValidationError):
            ProductDecomposition(())

    def test_OptReportKinds(self):
        """Test that alternating reports need a matching decomposition."""
        Sigma = DensityMatrix(np.eye(4) / 4, (2, 2))
        with self.assertRaises(ValidationError):
            OptReport(0.0, Sigma, 1, True, 'alternating_upper')
        with self.assertRaises(ValidationError):
            OptReport(0.0, Sigma, 1, True, 'exact')
        Half = np.eye(2) / 2
        Report = OptReport(0.0, Sigma, 1, True, 'alternating_upper', ProductDecomposition(((Half, Half),)))
        self.assertEqual(Report.Decomposition.TermCount, 1)

    def test_SolverValidation(self):
        """Test solver settings and configuration loading."""
        Solver = SeparabilitySolver.FromConfig({'Name': 'scs', 'Restarts': 2, 'QuadApprox': [4, 4]}, Jobs=3)
        self.assertEqual((Solver.Name, Solver.Restarts, Solver.QuadApprox, Solver.Jobs), ('SCS', 2, (4, 4), 3))
        with self.assertRaises(ValidationError):
            SeparabilitySolver(Restarts=0)

class TestSeparabilitySearch(unittest.TestCase):
    """Test case for the PPT relaxation and the alternating method."""

    def test_PptStateHasZeroLowerBound(self):
        """Test the shortcut for PPT input."""
        Rho = WernerState(0.8)
        Report = EPpt(Rho)
        self.assertEqual(Report.Value, 0.0)
        self.assertIs(Report.SigmaStar, Rho)
        self.assertEqual(Report.Kind, 'ppt_lower')

    def test_BellLowerBound(self):
        """Test the PPT relaxation on a maximally entangled state."""
        Report = EPpt(BellState('phi+'))
        self.assertEqual(Report.Kind, 'ppt_lower')
        self.assertAlmostEqual(Report.Value, math.log(2), delta=1e-3)
        self.assertGreaterEqual(IsPpt(Report.SigmaStar)[1], -1e-8)

    def test_WernerLowerBound(self):
        """Test the PPT relaxation on an entangled Werner state against the known value."""
        Fidelity = 1.0 - 0.75 * 0.3
        Expected = math.log(2) + Fidelity * math.log(Fidelity) + (1 - Fidelity) * math.log(1 - Fidelity)
        Report = EPpt(WernerState(0.3))
        self.assertTrue(Report.Converged)
        self.assertAlmostEqual(Report.Value, Expected, delta=1e-5)

    def test_AlternatingOnRealState(self):
        """Test that the alternating method runs on a real entangled state."""
        Solver = SeparabilitySolver(MaxSweeps=3, Restarts=1)
        Report = Solver.ClosestSeparableAlternating(WernerState(0.3), TermCount=4, Seed=1)
        self.assertEqual(Report.Kind, 'alternating_upper')
        self.assertGreater(Report.Iterations, 0)
        self.assertGreaterEqual(Report.Value, EPpt(WernerState(0.3)).Value - 1e-6)

    def test_SolverCrashBecomesConvergenceError(self):
        """Test that any backend exception surfaces as a convergence failure."""
        for Failure in (NotImplementedError("graph"), MemoryError()):
            with mock.patch.object(cp.Problem, 'solve', side_effect=Failure):
                with self.assertRaises(ConvergenceError):
                    EPpt(WernerState(0.3))

    def test_AcceptsInaccurateWhenExactAgrees(self):
        """Test acceptance of inaccurate-optimal results."""
        Accepts = SeparabilitySolver.Accepts
        self.assertTrue(Accepts(cp.OPTIMAL, None, 0.5))
        self.assertTrue(Accepts(cp.OPTIMAL_INACCURATE, 0.6931470, 0.6931472))
        self.assertFalse(Accepts(cp.OPTIMAL_INACCURATE, 0.69, 0.6931472))
        self.assertFalse(Accepts(cp.OPTIMAL_INACCURATE, None, 0.6931472))
        self.assertFalse(Accepts(cp.OPTIMAL, 0.5, math.inf))
        self.assertFalse(Accepts(cp.INFEASIBLE, 0.5, 0.5))

    def test_BipartiteRequired(self):
        """Test that single-factor states are refused."""
        with self.assertRaises(ValidationError):
            EPpt(DensityMatrix(np.eye(4) / 4))
        with self.assertRaises(ValidationError):
            ClosestSeparableAlternating(DensityMatrix(np.eye(4) / 4))

    @unittest.skipUnless(os.environ.get("FERMICORR_SLOW"), "Set FERMICORR_SLOW=1 to run alternating searches")
    def test_BellAlternating(self):
        """Test the alternating upper bound on a Bell state."""
        Report = ClosestSeparableAlternating(BellState('phi+'), TermCount=4, Restarts=2, Seed=3)
        self.assertEqual(Report.Kind, 'alternating_upper')
        self.assertAlmostEqual(Report.Value, math.log(2), delta=1e-3)
        self.assertGreaterEqual(Report.Value, math.log(2) - 1e-6)
        self.assertLessEqual(Report.Decomposition.TermCount, 4)

if __name__ == '__main__':
    unittest.main()
