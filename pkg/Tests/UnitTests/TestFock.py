# File: TestFock.py
# Path: FermiCorr/Tests/UnitTests/TestFock.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-13
# Last Modified: 2025-04-05
# Description: Unit tests for Fock spaces, Jordan-Wigner signs and mode splitting

import sys
import unittest
from pathlib import Path

import numpy as np

# Add project root to path for imports
ProjectRoot = Path(__file__).resolve().parents[2]
sys.path.append(str(ProjectRoot))

from Core.DensMat import DensityMatrix, PartialTrace, RandomDensityMatrix, RandomUnitary
from Core.Errors import ValidationError
from Core.Fock import (Bipartition, ConfigState, CreationOp, FockState, ModeBasis, ModeReducedDensity,
                       NumberOp, NumberSector, OneBodyRotation, OneParticleRdm, OrbitalReducedDensity,
                       SplitBipartite, SplitModes, SplitVector, SymmetryOperators, Unsplit)

def _Pair(First: int, Second: int) -> np.ndarray:
    Vector = np.zeros(16)
    Vector[(1 << First) | (1 << Second)] = 1.0
    return Vector

class TestModeBasis(unittest.TestCase):
    """Test case for mode bases and bipartitions."""

    def test_DimerLayout(self):
        """Test the dimer mode order and spin pairs."""
        Basis = ModeBasis.Dimer()
        self.assertEqual(Basis.ModeCount, 4)
        self.assertEqual(Basis.Dimension, 16)
        self.assertEqual(Basis.Sites, ['L', 'R'])
        self.assertEqual(Basis.SpinPairs(), [(0, 1), (2, 3)])
        self.assertEqual(Basis.Reflection, (2, 3, 0, 1))

    def test_OrbitalsReflection(self):
        """Test the orbital basis with a reflection."""
        Basis = ModeBasis.Orbitals(3, Reflect=True)
        self.assertEqual(Basis.Reflection, (4, 5, 2, 3, 0, 1))
        self.assertEqual(Basis.OrbitalModes(1), (2, 3))

    def test_InvalidBases(self):
        """Test that malformed mode bases are refused."""
        with self.assertRaises(ValidationError):
            ModeBasis([])
        with self.assertRaises(ValidationError):
            ModeBasis([(0, 'up'), (0, 'up')])
        with self.assertRaises(ValidationError):
            ModeBasis([(0, 'up'), (1, 'up'), (2, 'up')], Reflection=(1, 2, 0))
        with self.assertRaises(ValidationError):
            ModeBasis([(0, 'up')]).SpinPairs()

    def test_Bipartition(self):
        """Test bipartition validation and helpers."""
        Parts = Bipartition.FromPartA(4, (2, 0))
        self.assertEqual(Parts.PartB, (1, 3))
        self.assertEqual(Parts.Shape.Dims, (4, 4))
        self.assertEqual(Parts.Swapped().PartA, (1, 3))
        with self.assertRaises(ValidationError):
            Bipartition((0, 1), (1, 2))
        with self.assertRaises(ValidationError):
            Bipartition((0,), (2,))

class TestOperators(unittest.TestCase):
    """Test case for creation operators and configuration states."""

    def setUp(self):
        """Set up test fixtures."""
        self.Basis = ModeBasis.Orbitals(2)

    def test_CanonicalAnticommutation(self):
        """Test {f_i, f_j^dagger} = delta_ij and {f_i, f_j} = 0."""
        Identity = np.eye(self.Basis.Dimension)
        for I in range(self.Basis.ModeCount):
            CreateI, AnnihilateI = CreationOp(self.Basis, I)
            for J in range(self.Basis.ModeCount):
                CreateJ, AnnihilateJ = CreationOp(self.Basis, J)
                Expected = Identity if I == J else 0 * Identity
                np.testing.assert_allclose(AnnihilateI @ CreateJ + CreateJ @ AnnihilateI, Expected, atol=1e-14)
                np.testing.assert_allclose(AnnihilateI @ AnnihilateJ + AnnihilateJ @ AnnihilateI, 0, atol=1e-14)

    def test_JordanWignerSign(self):
        """Test the phase of f_i^dagger on an occupied lower mode."""
        Create1 = CreationOp(self.Basis, 1)[0]
        Create0 = CreationOp(self.Basis, 0)[0]
        Vacuum = np.zeros(self.Basis.Dimension)
        Vacuum[0] = 1.0
        # f_0^dagger f_1^dagger |0> = -f_1^dagger f_0^dagger |0>
        np.testing.assert_allclose(Create0 @ Create1 @ Vacuum, -(Create1 @ Create0 @ Vacuum))
        self.assertEqual((Create1 @ Create0 @ Vacuum)[3], -1.0)

    def test_ConfigState(self):
        """Test that configuration states are signed basis vectors."""
        State = ConfigState(self.Basis, [3, 0])
        self.assertEqual(State.Amplitudes[0b1001], 1.0)
        self.assertAlmostEqual(float(np.linalg.norm(State.Amplitudes)), 1.0)
        with self.assertRaises(ValidationError):
            ConfigState(self.Basis, [1, 1])
        with self.assertRaises(ValidationError):
            ConfigState(self.Basis, [4])

    def test_NumberOperators(self):
        """Test the number operator and sector indices."""
        Number = NumberOp(self.Basis)
        self.assertEqual(Number[0b1011, 0b1011], 3.0)
        self.assertEqual(len(NumberSector(self.Basis, 2)), 6)
        self.assertEqual(NumberOp(self.Basis, [0, 1])[0b0110, 0b0110], 1.0)

    def test_FockStateValidation(self):
        """Test amplitude count and normalization checks."""
        with self.assertRaises(ValidationError):
            FockState(self.Basis, np.ones(8))
        with self.assertRaises(ValidationError):
            FockState(self.Basis, np.ones(16))

class TestSplitting(unittest.TestCase):
    """Test case for the signed reordering into tensor products."""

    def setUp(self):
        """Set up test fixtures."""
        self.Basis = ModeBasis.Dimer()
        self.LeftRight = Bipartition((0, 1), (2, 3))
        self.Rng = np.random.default_rng(17)

    def test_SplitSign(self):
        """Test that the split sign follows the part order."""
        Vector = ConfigState(self.Basis, [0, 3]).Amplitudes
        Forward = SplitVector(Vector, self.LeftRight)
        Backward = SplitVector(Vector, self.LeftRight.Swapped())
        # |up> on L, |down> on R: local indices 1 and 2
        self.assertEqual(Forward[4 * 1 + 2], 1.0)
        self.assertEqual(Backward[4 * 2 + 1], -1.0)

    def test_SplitPreservesSpectrum(self):
        """Test that splitting is a signed permutation."""
        Rho = RandomDensityMatrix(16, Rng=self.Rng)
        Split = SplitBipartite(Rho, self.LeftRight)
        self.assertEqual(Split.Shape.Dims, (4, 4))
        np.testing.assert_allclose(Split.Eigenvalues, Rho.Eigenvalues, atol=1e-12)

    def test_UnsplitInverts(self):
        """Test Unsplit after SplitBipartite."""
        Rho = RandomDensityMatrix(16, Rng=self.Rng)
        Parts = Bipartition((3, 0), (2, 1))
        np.testing.assert_allclose(Unsplit(SplitBipartite(Rho, Parts), Parts).Matrix, Rho.Matrix, atol=1e-12)

    def test_SplitModesCoverage(self):
        """Test that parts must cover every mode once."""
        with self.assertRaises(ValidationError):
            SplitModes(np.eye(16) / 16, [(0, 1), (2,)])
        with self.assertRaises(ValidationError):
            SplitModes(np.eye(12) / 12, [(0, 1), (2, 3)])

    def test_ModeReducedDensity(self):
        """Test reduced states of single sites."""
        State = ConfigState(self.Basis, [0, 3])
        Left = ModeReducedDensity(State, (0, 1))
        Right = ModeReducedDensity(State, (2, 3))
        np.testing.assert_allclose(np.diag(Left.Matrix).real, [0, 1, 0, 0], atol=1e-14)
        np.testing.assert_allclose(np.diag(Right.Matrix).real, [0, 0, 1, 0], atol=1e-14)

    def test_OrbitalReducedDensityMatchesSplit(self):
        """Test that two-orbital reduction of the dimer equals the left/right split."""
        Rho = RandomDensityMatrix(16, Rng=self.Rng)
        Orbital = OrbitalReducedDensity(Rho, self.Basis, (0, 1))
        np.testing.assert_allclose(Orbital.Matrix, SplitBipartite(Rho, self.LeftRight).Matrix, atol=1e-12)
        # Single orbital equals the partial trace of the split
        Single = OrbitalReducedDensity(Rho, self.Basis, (0,))
        np.testing.assert_allclose(Single.Matrix, PartialTrace(SplitBipartite(Rho, self.LeftRight), 0).Matrix,
                                   atol=1e-12)

class TestSymmetries(unittest.TestCase):
    """Test case for symmetry generators, one-particle RDMs and orbital rotations."""

    def setUp(self):
        """Set up test fixtures."""
        self.Basis = ModeBasis.Dimer()
        self.Operators = SymmetryOperators(self.Basis, Bipartition((0, 1), (2, 3)))

    def test_SpinOfTwoSiteStates(self):
        """Test total spin of singlet and triplet states."""
        Singlet = (_Pair(0, 3) - _Pair(1, 2)) / np.sqrt(2)
        Triplet = (_Pair(0, 3) + _Pair(1, 2)) / np.sqrt(2)
        S2 = self.Operators['S2'].Matrix
        self.assertAlmostEqual(float(np.real(Singlet @ S2 @ Singlet)), 0.0, places=12)
        self.assertAlmostEqual(float(np.real(Triplet @ S2 @ Triplet)), 2.0, places=12)
        UpUp = _Pair(0, 2)
        self.assertAlmostEqual(float(UpUp @ self.Operators['Sz'].Matrix @ UpUp), 1.0, places=12)

    def test_GeneratorsCommute(self):
        """Test that N, Sz, S2 and the reflection commute pairwise."""
        Names = ['N', 'Sz', 'S2', 'Reflection']
        for First in Names:
            for Second in Names:
                A = self.Operators[First].Matrix
                B = self.Operators[Second].Matrix
                np.testing.assert_allclose(A @ B - B @ A, 0, atol=1e-12)
        Reflection = self.Operators['Reflection'].Matrix
        np.testing.assert_allclose(Reflection @ Reflection, np.eye(16), atol=1e-14)

    def test_LocalNumbers(self):
        """Test that NA + NB = N."""
        np.testing.assert_allclose(self.Operators['NA'].Matrix + self.Operators['NB'].Matrix,
                                   self.Operators['N'].Matrix)

    def test_OneParticleRdm(self):
        """Test gamma of a configuration state."""
        Gamma = OneParticleRdm(ConfigState(self.Basis, [1, 2]))
        np.testing.assert_allclose(Gamma, np.diag([0, 1, 1, 0]), atol=1e-14)

        Rho = RandomDensityMatrix(16, Rng=np.random.default_rng(2))
        self.assertAlmostEqual(float(np.trace(OneParticleRdm(Rho)).real), Rho.Expectation(NumberOp(self.Basis)),
                               places=10)

    def test_OneBodyRotation(self):
        """Test that orbital rotations are unitary and conserve N."""
        U = RandomUnitary(4, np.random.default_rng(9))
        Rotation = OneBodyRotation(self.Basis, U)
        np.testing.assert_allclose(Rotation.conj().T @ Rotation, np.eye(16), atol=1e-10)
        Number = NumberOp(self.Basis)
        np.testing.assert_allclose(Rotation @ Number - Number @ Rotation, 0, atol=1e-10)
        # Identity maps to identity
        np.testing.assert_allclose(OneBodyRotation(self.Basis, np.eye(4)), np.eye(16), atol=1e-14)

        # gamma transforms as U gamma U^dagger
        State = ConfigState(self.Basis, [0, 3]).Amplitudes
        Rotated = DensityMatrix.FromPure(Rotation @ State)
        Gamma = OneParticleRdm(ConfigState(self.Basis, [0, 3]))
        np.testing.assert_allclose(OneParticleRdm(Rotated), U @ Gamma @ U.conj().T, atol=1e-10)

if __name__ == '__main__':
    unittest.main()
