# File: TestLoggingUtils.py
# Path: FermiCorr/Tests/UnitTests/TestLoggingUtils.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-12
# Last Modified: 2025-04-02
# Description: Unit tests for logging setup and the exception hierarchy

import os
import sys
import logging
import tempfile
import unittest
from pathlib import Path

# Add project root to path for imports
ProjectRoot = Path(__file__).resolve().parents[2]
sys.path.append(str(ProjectRoot))

from Core.Errors import ConvergenceError, FermiCorrError, ValidationError
from Core.LoggingUtils import AppLoggerName, SetupLogging

class TestLoggingUtils(unittest.TestCase):
    """Test case for SetupLogging."""

    def setUp(self):
        """Set up test fixtures."""
        self.TempDir = tempfile.TemporaryDirectory()

    def tearDown(self):
        """Tear down test fixtures."""
        SetupLogging(LogToFile=False)
        self.TempDir.cleanup()

    def test_ConsoleOnly(self):
        """Test level names and handler replacement."""
        Logger = SetupLogging('debug', LogToFile=False)
        self.assertEqual(Logger.name, AppLoggerName)
        self.assertEqual(Logger.level, logging.DEBUG)
        self.assertEqual(len(Logger.handlers), 1)

        Logger = SetupLogging('NOT_A_LEVEL', LogToFile=False)
        self.assertEqual(Logger.level, logging.INFO)
        self.assertEqual(len(Logger.handlers), 1)

    def test_FileHandler(self):
        """Test that file logging writes into the requested directory."""
        Logger = SetupLogging(logging.INFO, LogToFile=True, LogDir=self.TempDir.name)
        logging.getLogger(f'{AppLoggerName}.Test').info("scan started")
        for Handler in Logger.handlers:
            Handler.flush()
        LogPath = os.path.join(self.TempDir.name, 'FermiCorr.log')
        with open(LogPath, 'r', encoding='utf-8') as File:
            self.assertIn("scan started", File.read())

class TestErrors(unittest.TestCase):
    """Test case for the exception hierarchy."""

    def test_Hierarchy(self):
        """Test base classes and the attached report."""
        self.assertTrue(issubclass(ValidationError, ValueError))
        self.assertTrue(issubclass(ConvergenceError, FermiCorrError))
        Error = ConvergenceError("no root", Report=3)
        self.assertEqual(Error.Report, 3)
        self.assertEqual(str(Error), "no root")

if __name__ == '__main__':
    unittest.main()
