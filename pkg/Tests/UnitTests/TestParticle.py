# File: TestParticle.py
# Path: FermiCorr/Tests/UnitTests/TestParticle.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-24
# Last Modified: 2025-04-10
# Description: Unit tests for nonfreeness and the two-fermion quantum nonfreeness

import sys
import math
import unittest
from pathlib import Path

import numpy as np

# Add project root to path for imports
ProjectRoot = Path(__file__).resolve().parents[2]
sys.path.append(str(ProjectRoot))

from Core.DensMat import DensityMatrix, RandomUnitary
from Core.Errors import ValidationError
from Core.Fock import ConfigState, ModeBasis, OneBodyRotation
from Core.Hubbard import ClosedFormSpectrum, DimerParams, TwoLevelBranches
from Core.Particle import (ExpansionMatrix, LeviCivita, Nonfreeness, Pfaffian4, QuantumNonfreeness,
                           QuantumNonfreenessFromK, SlaterKMatrix, SlaterKMatrixFromBranches)

def _Pair(First: int, Second: int) -> np.ndarray:
    Vector = np.zeros(16)
    Vector[(1 << First) | (1 << Second)] = 1.0
    return Vector

class TestParticle(unittest.TestCase):
    """Test case for particle-picture correlation."""

    def setUp(self):
        """Set up test fixtures."""
        self.Basis = ModeBasis.Dimer()
        self.Singlet = (_Pair(0, 3) - _Pair(1, 2)) / math.sqrt(2)

    def test_LeviCivita(self):
        """Test signs of the antisymmetric tensor."""
        Epsilon = LeviCivita(4)
        self.assertEqual(Epsilon[0, 1, 2, 3], 1.0)
        self.assertEqual(Epsilon[1, 0, 2, 3], -1.0)
        self.assertEqual(Epsilon[0, 0, 2, 3], 0.0)

    def test_ExpansionMatrix(self):
        """Test the antisymmetric expansion and its sector check."""
        W = ExpansionMatrix(self.Singlet)
        np.testing.assert_allclose(W, -W.T)
        self.assertAlmostEqual(W[0, 3], 0.5 / math.sqrt(2))
        with self.assertRaises(ValidationError):
            ExpansionMatrix(np.ones(16) / 4)
        with self.assertRaises(ValidationError):
            ExpansionMatrix(np.ones(8))

    def test_SlaterDeterminantHasZeroPfaffian(self):
        """Test that a rotated configuration state is a Slater determinant."""
        Rotation = OneBodyRotation(self.Basis, RandomUnitary(4, np.random.default_rng(1)))
        Slater = Rotation @ ConfigState(self.Basis, [0, 2]).Amplitudes
        self.assertAlmostEqual(abs(Pfaffian4(ExpansionMatrix(Slater))), 0.0, places=12)
        self.assertAlmostEqual(QuantumNonfreeness(DensityMatrix.FromPure(Slater)), 0.0, places=10)

    def test_SingletQuantumNonfreeness(self):
        """Test that the covalent singlet has unit quantum nonfreeness."""
        Rho = DensityMatrix.FromPure(self.Singlet)
        self.assertAlmostEqual(QuantumNonfreeness(Rho), 1.0, places=10)
        self.assertEqual(SlaterKMatrix(Rho).shape, (1, 1))

    def test_OrbitalRotationInvariance(self):
        """Test that one-body rotations leave both measures unchanged."""
        Rotation = OneBodyRotation(self.Basis, RandomUnitary(4, np.random.default_rng(2)))
        Mixed = DensityMatrix(0.6 * np.outer(self.Singlet, self.Singlet) + 0.4 * np.outer(_Pair(0, 2), _Pair(0, 2)))
        Rotated = DensityMatrix(Rotation @ Mixed.Matrix @ Rotation.conj().T)
        self.assertAlmostEqual(QuantumNonfreeness(Rotated), QuantumNonfreeness(Mixed), places=9)
        self.assertAlmostEqual(Nonfreeness(Rotated), Nonfreeness(Mixed), places=9)

    def test_MixtureOfSlaterDeterminants(self):
        """Test that mixing the singlet with triplets switches off the quantum part."""
        Vectors = [self.Singlet, (_Pair(0, 3) + _Pair(1, 2)) / math.sqrt(2), _Pair(0, 2), _Pair(1, 3)]
        Rho = DensityMatrix(sum(0.25 * np.outer(Vector, Vector) for Vector in Vectors))
        self.assertAlmostEqual(QuantumNonfreeness(Rho), 0.0, places=10)
        self.assertLess(QuantumNonfreeness(Rho, Clamp=False), 0.0)

    def test_KMatrixOfTwoLevelGibbsState(self):
        """Test the explicit K matrix of the two-level Gibbs decomposition."""
        Params = DimerParams(2.5, 0.02)
        Spectrum = ClosedFormSpectrum(Params)
        Boltzmann = math.exp(-Spectrum.Gap / Params.T)
        PSquared = 1.0 / (1.0 + 3.0 * Boltzmann)
        QSquared = Boltzmann * PSquared

        K = SlaterKMatrixFromBranches(TwoLevelBranches(Params))
        Expected = np.array([
            [(Spectrum.B ** 2 - Spectrum.A ** 2) * PSquared, 0, 0, 0],
            [0, QSquared, 0, 0],
            [0, 0, 0, -QSquared],
            [0, 0, -QSquared, 0],
        ])
        np.testing.assert_allclose(K, Expected, atol=1e-12)
        self.assertAlmostEqual(QuantumNonfreenessFromK(K, Clamp=False),
                               abs(Spectrum.A ** 2 - Spectrum.B ** 2) * PSquared - 3 * QSquared, places=12)

    def test_KMatrixIsBasisIndependent(self):
        """Test that eigenvector and explicit branches give the same quantum nonfreeness."""
        Params = DimerParams(1.2, 0.1)
        Branches = TwoLevelBranches(Params)
        Rho = DensityMatrix(sum(np.outer(Branch, Branch) for Branch in Branches))
        self.assertAlmostEqual(QuantumNonfreeness(Rho, Clamp=False),
                               QuantumNonfreenessFromK(SlaterKMatrixFromBranches(Branches), Clamp=False),
                               places=10)

    def test_SectorCheck(self):
        """Test that states outside the two-particle sector are refused."""
        with self.assertRaises(ValidationError):
            QuantumNonfreeness(DensityMatrix(np.eye(16) / 16))
        with self.assertRaises(ValidationError):
            SlaterKMatrixFromBranches([])

    def test_Nonfreeness(self):
        """Test nonfreeness of configuration and singlet states."""
        self.assertAlmostEqual(Nonfreeness(ConfigState(self.Basis, [0, 3])), 0.0, places=12)
        self.assertAlmostEqual(Nonfreeness(DensityMatrix.FromPure(self.Singlet)), 4 * math.log(2), places=10)
        self.assertAlmostEqual(Nonfreeness(DensityMatrix.FromPure(self.Singlet), LogBase=2), 4.0, places=10)

    def test_NonfreenessOfMixedState(self):
        """Test that the maximally mixed state has no particle correlation."""
        self.assertAlmostEqual(Nonfreeness(DensityMatrix(np.eye(16) / 16)), 0.0, places=10)

if __name__ == '__main__':
    unittest.main()
