# File: LoggingUtils.py
# Path: FermiCorr/Core/LoggingUtils.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-11
# Last Modified: 2025-04-02
# Description: Logging utilities for the FermiCorr library and command line

import logging
import os
from pathlib import Path
from typing import Optional, Union

AppLoggerName = 'FermiCorr'
LogFormat = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def GetLogDir() -> Path:
    """
    Determine the default log directory based on the operating system.

    Returns:
        Path: Directory that holds FermiCorr.log
    """
    HomeDir = Path.home()
    if os.name == 'nt':  # Windows
        return HomeDir / 'AppData' / 'Local' / 'FermiCorr' / 'logs'
    return HomeDir / '.config' / 'FermiCorr' / 'logs'


def SetupLogging(LogLevel: Union[int, str] = logging.INFO, LogToFile: bool = True,
                 LogDir: Optional[Union[str, Path]] = None) -> logging.Logger:
    """
    Set up logging for the application.

    Console output goes to stderr so that result tables written to stdout stay clean.
    Calling this again replaces the handlers installed by a previous call.

    Args:
        LogLevel: Logging level or level name (default: INFO)
        LogToFile: Whether to log to file (default: True)
        LogDir: Optional log directory overriding the platform default

    Returns:
        logging.Logger: The configured application logger
    """
    if isinstance(LogLevel, str):
        LogLevel = logging.getLevelName(LogLevel.upper())
        if not isinstance(LogLevel, int):
            LogLevel = logging.INFO

    Logger = logging.getLogger(AppLoggerName)
    Logger.setLevel(LogLevel)
    Logger.propagate = False

    for Handler in list(Logger.handlers):
        Logger.removeHandler(Handler)
        Handler.close()

    Formatter = logging.Formatter(LogFormat)

    ConsoleHandler = logging.StreamHandler()
    ConsoleHandler.setLevel(LogLevel)
    ConsoleHandler.setFormatter(Formatter)
    Logger.addHandler(ConsoleHandler)

    if LogToFile:
        Directory = Path(LogDir) if LogDir else GetLogDir()
        Directory.mkdir(parents=True, exist_ok=True)

        FileHandler = logging.FileHandler(str(Directory / 'FermiCorr.log'))
        FileHandler.setLevel(LogLevel)
        FileHandler.setFormatter(Formatter)
        Logger.addHandler(FileHandler)

    return Logger
