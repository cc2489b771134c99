# File: Errors.py
# Path: FermiCorr/Core/Errors.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-11
# Last Modified: 2025-04-02
# Description: Exception hierarchy shared by the FermiCorr library and CLI

from typing import Any, Optional


class FermiCorrError(Exception):
    """Base class for all FermiCorr errors."""


class ValidationError(FermiCorrError, ValueError):
    """Raised when an input violates a documented invariant or precondition."""


class ConvergenceError(FermiCorrError):
    """
    Raised when an optimizer or root finder cannot meet its contract.

    Args:
        Message: Human readable description
        Report: Best-so-far result, if one exists
    """

    def __init__(self, Message: str, Report: Optional[Any] = None):
        super().__init__(Message)
        self.Report = Report
