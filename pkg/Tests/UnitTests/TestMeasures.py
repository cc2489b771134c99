# File: TestMeasures.py
# Path: FermiCorr/Tests/UnitTests/TestMeasures.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-15
# Last Modified: 2025-04-03
# Description: Unit tests for mutual information, negativity and the coupling bound

import sys
import math
import unittest
from pathlib import Path

import numpy as np

# Add project root to path for imports
ProjectRoot = Path(__file__).resolve().parents[2]
sys.path.append(str(ProjectRoot))

from Core.DensMat import (BellState, DensityMatrix, MaximallyMixed, RandomDensityMatrix, TensorProduct,
                          VonNeumannEntropy)
from Core.Errors import ValidationError
from Core.Measures import (ClassicalCorrelationGeometric, ClosestUncorrelated, CorrelationReport, CouplingBound,
                           EntanglementEntropy, IsPpt, LogNegativity, MultipartiteMutualInformation,
                           MutualInformation)

class TestMeasures(unittest.TestCase):
    """Test case for bipartite correlation measures."""

    def setUp(self):
        """Set up test fixtures."""
        self.Rng = np.random.default_rng(5)
        self.Bell = BellState()

    def test_BellValues(self):
        """Test mutual information and negativity of a Bell state."""
        self.assertAlmostEqual(MutualInformation(self.Bell), 2 * math.log(2), places=12)
        self.assertAlmostEqual(MutualInformation(self.Bell, LogBase=2), 2.0, places=12)
        self.assertAlmostEqual(LogNegativity(self.Bell, LogBase=2), 1.0, places=12)
        self.assertAlmostEqual(EntanglementEntropy(self.Bell), math.log(2), places=12)

    def test_ProductStateHasNoCorrelation(self):
        """Test that product states carry no mutual information."""
        Product = TensorProduct(RandomDensityMatrix(2, Rng=self.Rng), RandomDensityMatrix(3, Rng=self.Rng))
        self.assertAlmostEqual(MutualInformation(Product), 0.0, places=10)
        self.assertTrue(IsPpt(Product)[0])
        self.assertEqual(LogNegativity(Product), 0.0)

    def test_ClosestUncorrelated(self):
        """Test that the product of marginals reproduces the mutual information."""
        Rho = RandomDensityMatrix((2, 2), Rng=self.Rng)
        Product = ClosestUncorrelated(Rho)
        self.assertEqual(Product.Shape.Dims, (2, 2))
        # Geometric classical correlation of rho against itself is I
        self.assertAlmostEqual(ClassicalCorrelationGeometric(Rho, Rho), MutualInformation(Rho), places=9)

    def test_IsPptOnWernerBoundary(self):
        """Test the PPT flag on both sides of the Werner threshold."""
        Singlet = BellState('psi-').Matrix
        for Weight, Expected in ((0.3, True), (0.4, False)):
            Rho = DensityMatrix(Weight * Singlet + (1 - Weight) * np.eye(4) / 4, (2, 2))
            self.assertEqual(IsPpt(Rho)[0], Expected)

    def test_RequiresBipartiteShape(self):
        """Test that single-factor states are refused."""
        with self.assertRaises(ValidationError):
            MutualInformation(MaximallyMixed(4))
        with self.assertRaises(ValidationError):
            EntanglementEntropy(MaximallyMixed((2, 2)))

    def test_MultipartiteMutualInformation(self):
        """Test the multipartite form against the bipartite one."""
        Rho = RandomDensityMatrix((2, 2, 2), Rng=self.Rng)
        Total = MultipartiteMutualInformation(Rho)
        Pairwise = MultipartiteMutualInformation(Rho, [(0,), (1, 2)])
        self.assertGreaterEqual(Total + 1e-12, Pairwise)

        # Two single factors reduce to the bipartite mutual information
        Reduced = DensityMatrix(Rho.Matrix, (2, 4))
        self.assertAlmostEqual(Pairwise, MutualInformation(Reduced), places=10)
        with self.assertRaises(ValidationError):
            MultipartiteMutualInformation(Rho, [(0, 1), (1, 2)])

    def test_CorrelationReportOrdering(self):
        """Test that a report with E > I is refused."""
        Report = CorrelationReport(Total=1.0, Entanglement=0.5, Classical=0.5, Ssr='none')
        self.assertEqual(Report.LogBase, 'e')
        with self.assertRaises(ValidationError):
            CorrelationReport(Total=0.5, Entanglement=1.0, Classical=0.0, Ssr='none')

    def test_CouplingBound(self):
        """Test the bound on a Gibbs state of two coupled qubits."""
        Z = np.diag([1.0, -1.0])
        Coupling = np.kron(Z, Z)
        Hamiltonian = 0.5 * (np.kron(Z, np.eye(2)) + np.kron(np.eye(2), Z)) + Coupling
        Temperature = 0.7
        Values, Vectors = np.linalg.eigh(Hamiltonian)
        Weights = np.exp(-(Values - Values.min()) / Temperature)
        Gibbs = DensityMatrix((Vectors * (Weights / Weights.sum())) @ Vectors.T, (2, 2))

        Check = CouplingBound(Gibbs, [Coupling], Temperature)
        self.assertTrue(Check.Satisfied)
        self.assertAlmostEqual(Check.Rhs, 2 * 2.0 / Temperature, places=12)
        with self.assertRaises(ValidationError):
            CouplingBound(Gibbs, [Coupling], 0.0)

if __name__ == '__main__':
    unittest.main()
