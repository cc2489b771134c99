# File: TestSsr.py
# Path: FermiCorr/Tests/UnitTests/TestSsr.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-16
# Last Modified: 2025-04-09
# Description: Unit tests for superselection sectors and SSR-restricted correlations

import sys
import math
import unittest
from pathlib import Path

import numpy as np

# Add project root to path for imports
ProjectRoot = Path(__file__).resolve().parents[2]
sys.path.append(str(ProjectRoot))

from Core.DensMat import BellState, DensityMatrix, RandomDensityMatrix
from Core.Errors import ValidationError
from Core.Ssr import LocalSectors, SectorDecomposition, SsrCorrelations, SsrKind, SsrMeasure, SsrProject
from Core.TwoOrb import EntanglementNssr, SymmetricTwoOrbitalState

class TestSectors(unittest.TestCase):
    """Test case for local sector projectors."""

    def test_ParseKinds(self):
        """Test the accepted rule names."""
        self.assertIs(SsrKind.Parse('n'), SsrKind.Number)
        self.assertIs(SsrKind.Parse('Parity'), SsrKind.Parity)
        self.assertIs(SsrKind.Parse(None), SsrKind.NoRule)
        with self.assertRaises(ValidationError):
            SsrKind.Parse('q')

    def test_OrbitalSectors(self):
        """Test sector counts of one orbital."""
        self.assertEqual([Label for Label, _ in LocalSectors(4, 'n')], [0, 1, 2])
        self.assertEqual([Label for Label, _ in LocalSectors(4, 'p')], [0, 1])
        self.assertEqual(len(LocalSectors(4, 'none')), 1)
        Projector = dict(LocalSectors(4, 'p'))[0]
        np.testing.assert_allclose(np.diag(Projector).real, [1, 0, 0, 1])

    def test_ExplicitNumberOperator(self):
        """Test sectors from a declared number operator."""
        Sectors = LocalSectors(3, 'n', np.diag([0.0, 1.0, 1.0]))
        self.assertEqual([Label for Label, _ in Sectors], [0, 1])
        with self.assertRaises(ValidationError):
            LocalSectors(3, 'n')
        with self.assertRaises(ValidationError):
            LocalSectors(2, 'n', np.diag([0.0, 0.5]))

    def test_Decomposition(self):
        """Test that the decomposition validates each factor."""
        Decomposition = SectorDecomposition.Build((4, 4), 'n')
        self.assertEqual(len(Decomposition.Factors), 2)
        with self.assertRaises(ValidationError):
            SectorDecomposition.Build((4, 4), 'n', [None])

class TestProjection(unittest.TestCase):
    """Test case for the physical part of a state."""

    def setUp(self):
        """Set up test fixtures."""
        self.Rng = np.random.default_rng(31)

    def test_BellLosesCoherence(self):
        """Test that N-SSR removes the |00>/|11> coherence."""
        Physical = SsrProject(BellState(), 'n')
        np.testing.assert_allclose(Physical.Matrix, np.diag([0.5, 0, 0, 0.5]), atol=1e-14)

    def test_ProjectionIsIdempotent(self):
        """Test that projecting twice changes nothing and the trace survives."""
        Rho = RandomDensityMatrix((4, 4), Rng=self.Rng)
        for Kind in ('p', 'n'):
            Once = SsrProject(Rho, Kind)
            np.testing.assert_allclose(SsrProject(Once, Kind).Matrix, Once.Matrix, atol=1e-14)
            self.assertAlmostEqual(float(np.trace(Once.Matrix).real), 1.0, places=12)

    def test_NumberIsFinerThanParity(self):
        """Test that N-SSR removes at least the coherences P-SSR removes."""
        Rho = RandomDensityMatrix((4, 4), Rng=self.Rng)
        Both = SsrProject(SsrProject(Rho, 'p'), 'n')
        np.testing.assert_allclose(Both.Matrix, SsrProject(Rho, 'n').Matrix, atol=1e-14)

    def test_NoRuleIsIdentity(self):
        """Test that the empty rule returns the state."""
        Rho = RandomDensityMatrix((2, 2), Rng=self.Rng)
        self.assertIs(SsrProject(Rho, 'none'), Rho)

class TestSsrCorrelations(unittest.TestCase):
    """Test case for SSR-restricted correlation reports."""

    def test_BellWithoutRule(self):
        """Test the Bell state reference values."""
        Report = SsrCorrelations(BellState())
        self.assertAlmostEqual(Report.Total, 2 * math.log(2), places=10)
        self.assertAlmostEqual(Report.Entanglement, math.log(2), places=10)
        self.assertAlmostEqual(Report.Classical, math.log(2), places=10)
        self.assertEqual(Report.Method, 'schmidt')

    def test_BellUnderNumberRule(self):
        """Test that the physical part of a Bell state is classically correlated only."""
        Report = SsrCorrelations(BellState(), 'n', LogBase=2)
        self.assertAlmostEqual(Report.Total, 1.0, places=10)
        self.assertAlmostEqual(Report.Entanglement, 0.0, places=12)
        self.assertAlmostEqual(Report.Classical, 1.0, places=10)
        self.assertEqual(Report.Ssr, 'n')

    def test_SingletSurvivesNumberRule(self):
        """Test that a singlet with one particle per orbital keeps its entanglement."""
        Singlet = SymmetricTwoOrbitalState(tuple(1.0 if Index == 7 else 0.0 for Index in range(16))).Density()
        Report = SsrCorrelations(Singlet, 'n')
        self.assertAlmostEqual(Report.Entanglement, math.log(2), places=10)
        self.assertAlmostEqual(Report.Total, 2 * math.log(2), places=10)

    def test_TableDiagonalDispatch(self):
        """Test that mixed symmetric states use the closed form."""
        Weights = [0.0] * 16
        Weights[7], Weights[8], Weights[9], Weights[10] = 0.7, 0.1, 0.1, 0.1
        State = SymmetricTwoOrbitalState(tuple(Weights))
        Report = SsrCorrelations(State.Density(), 'n')
        self.assertEqual(Report.Method, 'twoorb-nssr')
        self.assertAlmostEqual(Report.Entanglement, EntanglementNssr(State), places=12)
        self.assertLessEqual(Report.Entanglement, Report.Total + 1e-12)

    def test_SsrMeasure(self):
        """Test single-measure access and alias validation."""
        self.assertAlmostEqual(SsrMeasure(BellState(), 'none', 'entanglement'), math.log(2), places=10)
        with self.assertRaises(ValidationError):
            SsrMeasure(BellState(), 'none', 'discord')

    def test_RequiresBipartite(self):
        """Test that single-factor states are refused."""
        with self.assertRaises(ValidationError):
            SsrCorrelations(DensityMatrix(np.eye(4) / 4))

if __name__ == '__main__':
    unittest.main()
