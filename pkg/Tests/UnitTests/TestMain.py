# File: TestMain.py
# Path: FermiCorr/Tests/UnitTests/TestMain.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-30
# Last Modified: 2025-04-12
# Description: Unit tests for the command line entry point

import os
import sys
import json
import math
import tempfile
import unittest
from pathlib import Path

# Add project root to path for imports
ProjectRoot = Path(__file__).resolve().parents[2]
sys.path.append(str(ProjectRoot))

from Core.RdmIO import ReadScan
from Core.ConfigManager import ConfigManager
from Main import ExitSuccess, ExitValidation, Main, ParseCommandLine, _Context

FixtureDir = ProjectRoot / 'Tests' / 'Fixtures'
SingletFixture = str(FixtureDir / 'singlet_two_orbital.rdm')

class TestMain(unittest.TestCase):
    """Test case for the FermiCorr command line."""

    def setUp(self):
        """Set up test fixtures."""
        self.TempDir = tempfile.TemporaryDirectory()

    def tearDown(self):
        """Tear down test fixtures."""
        self.TempDir.cleanup()

    def _Run(self, Argv, Name='out.csv'):
        OutPath = os.path.join(self.TempDir.name, Name)
        Code = Main(Argv + ['--out', OutPath])
        return Code, OutPath

    def test_Bell(self):
        """Test the Bell state triple."""
        Code, OutPath = self._Run(['bell', '--jobs', '1'])
        self.assertEqual(Code, ExitSuccess)
        (Record,) = ReadScan(OutPath)
        self.assertAlmostEqual(Record.Measures['I'], 2 * math.log(2), places=10)
        self.assertAlmostEqual(Record.Measures['E'], math.log(2), places=10)
        self.assertAlmostEqual(Record.Measures['C'], math.log(2), places=10)

    def test_BellInBits(self):
        """Test the base-2 option with JSON output."""
        Code, OutPath = self._Run(['bell', '--jobs', '1', '--log-base', '2', '--format', 'json'], 'out.json')
        self.assertEqual(Code, ExitSuccess)
        with open(OutPath, 'r', encoding='utf-8') as File:
            Rows = json.load(File)
        self.assertAlmostEqual(Rows[0]['I'], 2.0, places=10)
        self.assertEqual(Rows[0]['Status'], 'ok')

    def test_FlagsOverrideConfig(self):
        """Test that command line flags are written into the application settings."""
        ConfigPath = os.path.join(self.TempDir.name, 'run.yaml')
        with open(ConfigPath, 'w', encoding='utf-8') as File:
            File.write("AppConfig:\n  Seed: 3\n  Jobs: 4\n  LogBase: e\n")
        Config = ConfigManager(ConfigPath)
        self.assertTrue(Config.LoadConfig())

        Context = _Context(ParseCommandLine(['bell', '--seed', '11', '--log-base', '2']), Config)
        self.assertEqual((Context['Seed'], Context['Jobs'], Context['LogBase']), (11, 4, '2'))
        self.assertEqual(Config.GetAppConfig('Seed'), 11)
        self.assertEqual(Config.GetAppConfig('LogBase'), '2')

    def test_UsageErrors(self):
        """Test that bad flags and subcommands exit with the validation code."""
        for Argv in (['bell', '--bogus'], ['teleport'], ['werner', '--ssr', 'q']):
            with self.assertRaises(SystemExit) as Context:
                Main(Argv)
            self.assertEqual(Context.exception.code, ExitValidation)

    def test_InvalidInputs(self):
        """Test missing files and malformed grids."""
        with self.assertRaises(SystemExit) as Context:
            self._Run(['twoorb', '--rdm', os.path.join(self.TempDir.name, 'absent.rdm')])
        self.assertEqual(Context.exception.code, ExitValidation)
        with self.assertRaises(SystemExit) as Context:
            self._Run(['werner', '--p', '1:0:0.1'])
        self.assertEqual(Context.exception.code, ExitValidation)

    def test_DiscordIsReproducible(self):
        """Test byte-identical discord tables for a fixed seed."""
        Argv = ['discord', '--family', 'werner', '--c', '0:1:0.5', '--steps', '20', '--restarts', '2',
                '--seed', '7', '--jobs', '1']
        _, First = self._Run(Argv, 'first.csv')
        _, Second = self._Run(Argv, 'second.csv')
        self.assertEqual(Path(First).read_bytes(), Path(Second).read_bytes())
        Records = ReadScan(First)
        self.assertEqual([Record.Parameters['c'] for Record in Records], [0.0, 0.5, 1.0])
        for Record in Records:
            self.assertAlmostEqual(Record.Measures['D'], Record.Measures['D_exact'], delta=1e-8)

    def test_RdmSummary(self):
        """Test the summary of the singlet fixture."""
        Code, OutPath = self._Run(['rdm', '--rdm', SingletFixture])
        self.assertEqual(Code, ExitSuccess)
        (Record,) = ReadScan(OutPath)
        self.assertAlmostEqual(Record.Measures['Trace'], 1.0, places=12)
        self.assertAlmostEqual(Record.Measures['Entropy'], 0.0, places=10)
        self.assertAlmostEqual(Record.Measures['p8'], 1.0, places=12)
        self.assertAlmostEqual(Record.Measures['p9'], 0.0, places=12)

    def test_TwoOrbital(self):
        """Test the correlation triple of the singlet fixture with and without N-SSR."""
        Code, OutPath = self._Run(['twoorb', '--rdm', SingletFixture, '--jobs', '1'])
        self.assertEqual(Code, ExitSuccess)
        (Record,) = ReadScan(OutPath)
        self.assertAlmostEqual(Record.Measures['E'], math.log(2), places=10)

        Code, OutPath = self._Run(['twoorb', '--rdm', SingletFixture, '--jobs', '1', '--ssr', 'n'], 'nssr.csv')
        (Record,) = ReadScan(OutPath)
        self.assertAlmostEqual(Record.Measures['E'], math.log(2), places=10)

    def test_Particle(self):
        """Test particle correlation of the singlet fixture."""
        Code, OutPath = self._Run(['particle', '--rdm', SingletFixture])
        self.assertEqual(Code, ExitSuccess)
        (Record,) = ReadScan(OutPath)
        self.assertAlmostEqual(Record.Measures['QNF'], 1.0, places=10)
        self.assertAlmostEqual(Record.Measures['NF'], 4 * math.log(2), places=10)

    def test_CriticalDistance(self):
        """Test the rcrit action of the hubbard subcommand."""
        Code, OutPath = self._Run(['hubbard', 'rcrit', '--T', '0.1'])
        self.assertEqual(Code, ExitSuccess)
        (Record,) = ReadScan(OutPath)
        self.assertEqual(Record.Parameters['T'], 0.1)
        self.assertAlmostEqual(Record.Measures['r_crit'], 1.70, delta=0.02)
        self.assertTrue(math.isfinite(Record.Measures['r_asym']))

if __name__ == '__main__':
    unittest.main()
