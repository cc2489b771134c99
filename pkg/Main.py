# File: Main.py
# Path: FermiCorr/Main.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-11
# Last Modified: 2025-04-12
# Description: Command line entry point for FermiCorr computations and scans

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

# Add project root to path
ProjectRoot = Path(__file__).resolve().parent
sys.path.append(str(ProjectRoot))

from Core.ConfigManager import ConfigManager
from Core.Errors import ConvergenceError, FermiCorrError, ValidationError
from Core.LoggingUtils import SetupLogging
from Core.WorkerPool import ResolveJobs

RootLogger = logging.getLogger('FermiCorr')

ExitSuccess = 0
ExitValidation = 1
ExitConvergence = 2

Subcommands = ('bell', 'discord', 'werner', 'horodecki', 'hubbard', 'twoorb', 'particle', 'sep-opt', 'rdm')


class CommandParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with the validation code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ExitValidation, f"{self.prog}: error: {message}\n")


def _CommonFlags() -> argparse.ArgumentParser:
    Common = CommandParser(add_help=False)
    Common.add_argument("--config", help="Path to a YAML or JSON configuration file")
    Common.add_argument("--debug", action="store_true", help="Enable debug logging")
    Common.add_argument("--log-base", choices=['e', '2'], default=None, help="Logarithm base of all measures")
    Common.add_argument("--jobs", type=int, default=None, help="Worker processes (default: FERMICORR_JOBS or all cores)")
    Common.add_argument("--seed", type=int, default=None, help="Root seed of every stochastic routine")
    Common.add_argument("--out", default=None, help="Output file (default: standard output)")
    Common.add_argument("--format", choices=['csv', 'json'], default=None, help="Output table format")
    Common.add_argument("--ssr", choices=['none', 'p', 'n'], default=None, help="Superselection rule")
    return Common


def ParseCommandLine(Argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parse command line arguments.

    Args:
        Argv: Argument list (default: sys.argv[1:])

    Returns:
        Namespace with parsed arguments
    """
    Common = _CommonFlags()
    Parser = CommandParser(prog='FermiCorr',
                           description="FermiCorr - mode and particle correlation of fermionic states")
    Commands = Parser.add_subparsers(dest='Command', metavar='{' + ','.join(Subcommands) + '}')
    Commands.required = True

    Commands.add_parser('bell', parents=[Common], help="Correlation triple of the Bell state")

    Discord = Commands.add_parser('discord', parents=[Common], help="Geometric quantum discord")
    Discord.add_argument("--family", choices=['werner'], default=None, help="State family to scan")
    Discord.add_argument("--c", default='0.0:1.0:0.1', help="Grid of singlet weights")
    Discord.add_argument("--rdm", default=None, help="Two-orbital RDM file")
    Discord.add_argument("--method", choices=['mcmc', 'direct'], default='mcmc', help="Minimizer")
    Discord.add_argument("--steps", type=int, default=None, help="Metropolis steps per walk")
    Discord.add_argument("--restarts", type=int, default=None, help="Independent walks")
    Discord.add_argument("--samples", type=int, default=None, help="Random basis pairs of the direct search")

    Werner = Commands.add_parser('werner', parents=[Common], help="E_RE and E_PPT of the Werner family")
    Werner.add_argument("--p", default='0.0:1.0:0.02', help="Grid of p")

    Horodecki = Commands.add_parser('horodecki', parents=[Common], help="Bound entanglement of the Horodecki family")
    Horodecki.add_argument("--a", default='0.0:1.0:0.025', help="Grid of a")

    SepOpt = Commands.add_parser('sep-opt', parents=[Common], help="Closest separable state search")
    SepOpt.add_argument("--family", choices=['werner', 'horodecki'], default=None, help="State family to scan")
    SepOpt.add_argument("--grid", default=None, help="Parameter grid of the family")
    SepOpt.add_argument("--rdm", default=None, help="Two-orbital RDM file")
    SepOpt.add_argument("--terms", type=int, default=None, help="Product terms of the decomposition")
    SepOpt.add_argument("--restarts", type=int, default=None, help="Random restarts")

    Hubbard = Commands.add_parser('hubbard', parents=[Common], help="Hubbard dimer scans and critical distances")
    Hubbard.add_argument("action", nargs='?', choices=['scan', 'rcrit'], default='scan')
    Hubbard.add_argument("--picture", choices=['mode', 'particle'], default='mode')
    Hubbard.add_argument("--T", dest='T', default=None, help="Temperature value or grid")
    Hubbard.add_argument("--r", dest='r', default=None, help="Separation grid")
    Hubbard.add_argument("--levels", choices=['two', 'full'], default='two', help="Level set of rcrit")

    TwoOrbital = Commands.add_parser('twoorb', parents=[Common], help="I/E/C triple of a two-orbital RDM")
    TwoOrbital.add_argument("--rdm", required=True, help="Two-orbital RDM file")

    Particle = Commands.add_parser('particle', parents=[Common], help="Nonfreeness of a two-orbital RDM")
    Particle.add_argument("--rdm", required=True, help="Two-orbital RDM file")

    Rdm = Commands.add_parser('rdm', parents=[Common], help="Validate and summarize an RDM file")
    Rdm.add_argument("--rdm", required=True, help="RDM file")

    return Parser.parse_args(Argv)


def ShowErrorAndExit(Message, Error=None, ExitCode: int = ExitValidation):
    """
    Show error message and exit.

    Args:
        Message: Error message to display
        Error: Optional exception object
        ExitCode: Process exit status
    """
    ErrorText = f"{Message}"
    if Error:
        ErrorText += f"\nError: {Error}"

    RootLogger.error(ErrorText)
    sys.exit(ExitCode)


def _Records(Record) -> List:
    return Record if isinstance(Record, list) else [Record]


def _Bell(Args, Context):
    from Core.DensMat import BellState
    from Core.RdmIO import ScanRecord
    from Core.Ssr import SsrCorrelations

    Report = SsrCorrelations(BellState('phi+'), Context['Ssr'] or 'none', Context['Solver'](1), Context['LogBase'],
                             Seed=Context['Seed'])
    RootLogger.info(f"Bell state entanglement via {Report.Method}")
    Record = ScanRecord({}, {'I': Report.Total, 'E': Report.Entanglement, 'C': Report.Classical})
    if not Report.Converged:
        Record.Status = 'not converged'
    return Record


def _WalkSettings(Args, Context):
    from Core.Discord import WalkSettings

    Section = Context['Config'].GetSection('DiscordConfig')
    if Args.steps is not None:
        Section['Steps'] = Args.steps
    if Args.restarts is not None:
        Section['Restarts'] = Args.restarts
    return WalkSettings.FromConfig(Section)


def _Discord(Args, Context):
    from Core import Discord, ScanRunner
    from Core.RdmIO import ParseRdm, ScanRecord

    Settings = _WalkSettings(Args, Context)
    if Args.rdm:
        Rho = ParseRdm(Args.rdm)
        if Args.method == 'direct':
            Samples = Args.samples or int(Context['Config'].GetSection('DiscordConfig')['Samples'])
            Result = Discord.DiscordDirect(Rho, Samples, Context['Seed'], Context['LogBase'])
        else:
            Result = Discord.DiscordMcmc(Rho, Seed=Context['Seed'], Jobs=Context['Jobs'],
                                         LogBase=Context['LogBase'], Settings=Settings)
        return ScanRecord({}, {'D': Result.Discord,
                               'C_cl': Discord.ClassicalCorrelationDiscord(Result)})

    if Args.family != 'werner':
        raise ValidationError("discord needs --family werner or --rdm <file>")
    return ScanRunner.DiscordScan(ScanRunner.ParseGrid(Args.c), Settings, Context['LogBase'],
                                  Context['Jobs'], Context['Seed'])


def _FamilyScan(Family: str, Grid: str, Context):
    from Core import ScanRunner

    Scan = ScanRunner.WernerScan if Family == 'werner' else ScanRunner.HorodeckiScan
    return Scan(ScanRunner.ParseGrid(Grid), Context['Solver'](1), Context['Jobs'], Context['Seed'],
                Context['LogBase'])


def _SepOpt(Args, Context):
    from Core.DensMat import LogBaseFactor
    from Core.RdmIO import ParseRdm, ScanRecord

    if Args.family:
        Default = '0.0:1.0:0.02' if Args.family == 'werner' else '0.0:1.0:0.025'
        return _FamilyScan(Args.family, Args.grid or Default, Context)
    if not Args.rdm:
        raise ValidationError("sep-opt needs --family werner|horodecki or --rdm <file>")

    Rho = ParseRdm(Args.rdm)
    Solver = Context['Solver'](Context['Jobs'])
    Factor = LogBaseFactor(Context['LogBase'])
    Lower = Solver.EPpt(Rho)
    Upper = Solver.ClosestSeparableAlternating(Rho, Args.terms, Args.restarts, Context['Seed'])
    Record = ScanRecord({}, {'E_PPT': Lower.Value / Factor, 'E_RE': Upper.Value / Factor,
                             'Iterations': float(Upper.Iterations)})
    if not (Lower.Converged and Upper.Converged):
        Record.Status = 'not converged'
    return Record


def _Hubbard(Args, Context):
    from Core import Hubbard, ScanRunner
    from Core.RdmIO import ScanRecord

    ScanConfig = Context['Config'].GetSection('ScanConfig')
    if Args.T is not None:
        Temperatures = ScanRunner.ParseGrid(Args.T)
    else:
        Temperatures = [float(Value) for Value in ScanConfig['TGrid']]

    if Args.action == 'rcrit':
        Finder = Hubbard.CriticalDistanceMode if Args.picture == 'mode' else Hubbard.CriticalDistanceParticle
        Records = []
        for Temperature in Temperatures:
            Record = ScanRecord({'T': Temperature}, {'r_crit': math.nan,
                                                     'r_asym': Hubbard.AsymptoticRcrit(Temperature, Args.picture)})
            try:
                Record.Measures['r_crit'] = Finder(Temperature, Args.levels)
            except ConvergenceError as Error:
                RootLogger.error(f"No critical distance at T = {Temperature:g}: {Error}")
                Record.Status = 'not converged'
            Records.append(Record)
        return Records

    Separations = ScanRunner.ParseGrid(Args.r if Args.r is not None else ScanConfig['RGrid'])
    return Hubbard.Scan(Temperatures, Separations, Args.picture, Context['Ssr'] or 'n', Context['Solver'](1),
                        Context['LogBase'], Context['Jobs'], Context['Seed'])


def _TwoOrb(Args, Context):
    from Core.RdmIO import ParseRdm, ScanRecord
    from Core.Ssr import SsrCorrelations

    Report = SsrCorrelations(ParseRdm(Args.rdm), Context['Ssr'] or 'none', Context['Solver'](Context['Jobs']),
                             Context['LogBase'], Seed=Context['Seed'])
    RootLogger.info(f"Entanglement of {Args.rdm} via {Report.Method}")
    Record = ScanRecord({}, {'I': Report.Total, 'E': Report.Entanglement, 'C': Report.Classical})
    if not Report.Converged:
        Record.Status = 'not converged'
    return Record


def _Particle(Args, Context):
    from Core.Fock import Bipartition, Unsplit
    from Core.Particle import Nonfreeness, QuantumNonfreeness
    from Core.RdmIO import ParseRdm, ScanRecord

    Rho = ParseRdm(Args.rdm)
    if Rho.Dimension != 16:
        raise ValidationError("particle needs a two-orbital RDM (kind two)")
    Fock = Unsplit(Rho, Bipartition((0, 1), (2, 3)))
    Record = ScanRecord({}, {'NF': Nonfreeness(Fock, LogBase=Context['LogBase']), 'QNF': math.nan})
    try:
        Record.Measures['QNF'] = QuantumNonfreeness(Fock)
    except ValidationError as Error:
        RootLogger.warning(f"Quantum nonfreeness needs a two-fermion state: {Error}")
    return Record


def _Rdm(Args, Context):
    from Core import TwoOrb
    from Core.DensMat import VonNeumannEntropy
    from Core.RdmIO import ReadRdmFile, ScanRecord

    File = ReadRdmFile(Args.rdm)
    Rho = File.Density()
    Measures = {
        'Trace': float(np.real(np.trace(Rho.Matrix))),
        'MinEigenvalue': float(Rho.Eigenvalues[0]),
        'Entropy': VonNeumannEntropy(Rho, Context['LogBase']),
    }
    if File.Kind == 'one':
        Measures.update(TwoOrb.SingleOrbitalMeasures(np.real(np.diag(Rho.Matrix)), Context['LogBase']))
    else:
        try:
            State = TwoOrb.ProjectToTableBasis(Rho)
            Measures.update({f"p{Label}": State.Weight(Label) for Label in range(1, 17)})
        except ValidationError as Error:
            RootLogger.info(f"No table-basis weights: {Error}")
    return ScanRecord({}, Measures)


Handlers = {
    'bell': _Bell,
    'discord': _Discord,
    'werner': lambda Args, Context: _FamilyScan('werner', Args.p, Context),
    'horodecki': lambda Args, Context: _FamilyScan('horodecki', Args.a, Context),
    'sep-opt': _SepOpt,
    'hubbard': _Hubbard,
    'twoorb': _TwoOrb,
    'particle': _Particle,
    'rdm': _Rdm,
}


def _ApplyOverrides(Args, Config: ConfigManager) -> None:
    """Write command line flags over the loaded AppConfig values."""
    if Args.log_base:
        Config.SetAppConfig('LogBase', Args.log_base)
    if Args.seed is not None:
        Config.SetAppConfig('Seed', Args.seed)
    if Args.jobs is not None:
        Config.SetAppConfig('Jobs', Args.jobs)


def _Context(Args, Config: ConfigManager) -> dict:
    from Core.SepOpt import SeparabilitySolver

    _ApplyOverrides(Args, Config)
    SolverSection = Config.GetSection('SolverConfig')
    return {
        'Config': Config,
        'LogBase': str(Config.GetAppConfig('LogBase', 'e')),
        'Seed': int(Config.GetAppConfig('Seed', 0)),
        'Jobs': ResolveJobs(Config.GetAppConfig('Jobs', 0)),
        'Ssr': Args.ssr,
        'Format': Args.format or Config.GetSection('ScanConfig').get('Format', 'csv'),
        'Solver': lambda Jobs: SeparabilitySolver.FromConfig(SolverSection, Jobs),
    }


def Main(Argv: Optional[Sequence[str]] = None) -> int:
    """
    Application entry point.

    Args:
        Argv: Argument list (default: sys.argv[1:])

    Returns:
        int: 0 on success, 2 when a computation did not converge
    """
    Args = ParseCommandLine(Argv)
    LogLevel = logging.DEBUG if Args.debug else logging.INFO
    Logger = SetupLogging(LogLevel=LogLevel, LogToFile=False)

    Config = ConfigManager(Args.config)
    if not Config.LoadConfig():
        ShowErrorAndExit(f"Invalid configuration file: {Args.config}")
    if not Args.debug:
        Logger = SetupLogging(LogLevel=Config.GetAppConfig('LogLevel', 'INFO'),
                              LogToFile=bool(Config.GetAppConfig('LogToFile', False)))

    from Core.RdmIO import WriteScan

    try:
        Context = _Context(Args, Config)
        Records = _Records(Handlers[Args.Command](Args, Context))
        WriteScan(Records, Context['Format'], Args.out)
    except ValidationError as Error:
        ShowErrorAndExit(f"Invalid input for {Args.Command}", Error, ExitValidation)
    except ConvergenceError as Error:
        ShowErrorAndExit(f"{Args.Command} did not converge", Error, ExitConvergence)
    except (FermiCorrError, OSError) as Error:
        ShowErrorAndExit(f"{Args.Command} failed", Error, ExitValidation)

    Failed = [Record for Record in Records if Record.Status != 'ok']
    if Failed:
        Logger.warning(f"{len(Failed)} of {len(Records)} rows did not complete: {Failed[0].Status}")
        return ExitConvergence
    return ExitSuccess


if __name__ == "__main__":
    sys.exit(Main())
