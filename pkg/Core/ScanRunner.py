# File: ScanRunner.py
# Path: FermiCorr/Core/ScanRunner.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-28
# Last Modified: 2025-04-12
# Description: Parameter grids and the Werner, Horodecki and discord family scans

import logging
import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from Core.DensMat import DensityMatrix, LogBaseFactor
from Core.Discord import DiscordMcmc, DiscordWernerClosedForm, WalkSettings, WernerDiscordFamily
from Core.Errors import ValidationError
from Core.Measures import IsPpt
from Core.RdmIO import ScanRecord
from Core.SepOpt import HorodeckiState, SeparabilitySolver, WernerState
from Core.WorkerPool import ParallelMap

Logger = logging.getLogger('FermiCorr.ScanRunner')

GridTolerance = 1e-12
PptExactDimension = 6
SeparabilityColumns = ('E_RE', 'E_PPT')
DiscordColumns = ('D', 'D_exact')


def ParseGrid(Text: Union[str, float, int]) -> List[float]:
    """
    Expand 'start:stop:step' into an inclusive grid; a single number is a one-point grid.

    Args:
        Text: Grid specification

    Returns:
        List of floats; stop is included when it lies on the grid within 1e-12
    """
    if isinstance(Text, (int, float)):
        return [float(Text)]
    Fields = str(Text).strip().split(':')
    try:
        Numbers = [float(Field) for Field in Fields]
    except ValueError:
        raise ValidationError(f"Malformed grid {Text!r}; use start:stop:step or a single value")

    if len(Numbers) == 1:
        return Numbers
    if len(Numbers) != 3:
        raise ValidationError(f"Malformed grid {Text!r}; use start:stop:step or a single value")

    Start, Stop, Step = Numbers
    if Step <= 0:
        raise ValidationError(f"Grid step must be positive, got {Step}")
    if Stop < Start:
        raise ValidationError(f"Grid stop {Stop} lies below start {Start}")
    Count = int(math.floor((Stop - Start) / Step + GridTolerance / Step)) + 1
    return [min(Start + Index * Step, Stop) for Index in range(Count)]


def RowSeeds(Seed: int, Count: int) -> List[int]:
    """Independent per-row seeds derived from one root seed."""
    return [int(Value) for Value in np.random.SeedSequence(Seed).generate_state(max(Count, 1))[:Count]]


def _SeparabilityRow(Task: Tuple[str, float, DensityMatrix, SeparabilitySolver, int, str]) -> ScanRecord:
    Name, Value, Rho, Solver, Seed, LogBase = Task
    Factor = LogBaseFactor(LogBase)
    Record = ScanRecord({Name: float(Value)}, {Column: math.nan for Column in SeparabilityColumns})
    try:
        Lower = Solver.EPpt(Rho)
        Record.Measures['E_PPT'] = Lower.Value / Factor
        Converged = Lower.Converged

        if IsPpt(Rho)[0] and Rho.Dimension <= PptExactDimension:
            # PPT implies separable in 2x2 and 2x3
            Record.Measures['E_RE'] = 0.0
        else:
            Upper = Solver.ClosestSeparableAlternating(Rho, Seed=Seed)
            Record.Measures['E_RE'] = Upper.Value / Factor
            Converged = Converged and Upper.Converged
        if not Converged:
            Record.Status = 'not converged'
    except Exception as Error:
        Logger.error(f"Separability point {Name}={Value:g} failed: {Error}")
        Record.Status = f"error: {Error}"
    return Record


def _SeparabilityScan(Name: str, Grid: Sequence[float], Family, Solver: Optional[SeparabilitySolver],
                      Jobs: int, Seed: int, LogBase: Union[str, int]) -> List[ScanRecord]:
    if len(Grid) == 0:
        raise ValidationError("Scan grid must be non-empty")
    Solver = Solver or SeparabilitySolver()
    States = [Family(Value) for Value in Grid]
    Seeds = RowSeeds(Seed, len(Grid))
    Tasks = [(Name, Value, Rho, Solver, RowSeed, str(LogBase)) for Value, Rho, RowSeed in zip(Grid, States, Seeds)]
    Logger.info(f"Separability scan over {len(Tasks)} values of {Name}")
    return ParallelMap(_SeparabilityRow, Tasks, Jobs)


def WernerScan(Grid: Sequence[float], Solver: Optional[SeparabilitySolver] = None, Jobs: int = 1,
               Seed: int = 0, LogBase: Union[str, int] = 'e') -> List[ScanRecord]:
    """
    E_RE and E_PPT of the two-qubit Werner family along a p grid.

    Args:
        Grid: Values of p in [0, 1]
        Solver: SeparabilitySolver (default settings when omitted)
        Jobs: Worker processes over grid points
        Seed: Root seed of the alternating restarts
        LogBase: 'e' or 2

    Returns:
        Records with columns p, E_RE, E_PPT, Status
    """
    return _SeparabilityScan('p', Grid, WernerState, Solver, Jobs, Seed, LogBase)


def HorodeckiScan(Grid: Sequence[float], Solver: Optional[SeparabilitySolver] = None, Jobs: int = 1,
                  Seed: int = 0, LogBase: Union[str, int] = 'e') -> List[ScanRecord]:
    """
    Alternating upper bound and PPT value of the 3x3 bound entangled family along an a grid.

    Returns:
        Records with columns a, E_RE, E_PPT, Status
    """
    return _SeparabilityScan('a', Grid, HorodeckiState, Solver, Jobs, Seed, LogBase)


def _DiscordRow(Task: Tuple[float, WalkSettings, int, str]) -> ScanRecord:
    C, Settings, Seed, LogBase = Task
    Record = ScanRecord({'c': float(C)}, {Column: math.nan for Column in DiscordColumns})
    try:
        Result = DiscordMcmc(WernerDiscordFamily(C), Seed=Seed, LogBase=LogBase, Settings=Settings)
        Record.Measures.update(D=Result.Discord, D_exact=DiscordWernerClosedForm(C, LogBase))
    except Exception as Error:
        Logger.error(f"Discord point c={C:g} failed: {Error}")
        Record.Status = f"error: {Error}"
    return Record


def DiscordScan(Grid: Sequence[float], Settings: Optional[WalkSettings] = None, LogBase: Union[str, int] = 'e',
                Jobs: int = 1, Seed: int = 0) -> List[ScanRecord]:
    """
    Metropolis discord of the singlet-Werner family next to its closed form.

    Args:
        Grid: Values of c in [0, 1]
        Settings: Walk hyperparameters (defaults when omitted)
        LogBase: 'e' or 2
        Jobs: Worker processes over grid points
        Seed: Root seed; each row gets its own derived seed

    Returns:
        Records with columns c, D, D_exact, Status
    """
    if len(Grid) == 0:
        raise ValidationError("Scan grid must be non-empty")
    Settings = Settings or WalkSettings()
    Tasks = [(float(C), Settings, RowSeed, str(LogBase)) for C, RowSeed in zip(Grid, RowSeeds(Seed, len(Grid)))]
    Logger.info(f"Discord scan over {len(Tasks)} values of c")
    return ParallelMap(_DiscordRow, Tasks, Jobs)
