# File: ConfigManager.py
# Path: FermiCorr/Core/ConfigManager.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-11
# Last Modified: 2025-04-02
# Description: Configuration management for solver, discord and scan settings

import copy
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

SectionNames = ('AppConfig', 'SolverConfig', 'DiscordConfig', 'ScanConfig')
KnownSolvers = ('CLARABEL', 'SCS')

DefaultConfig: Dict[str, Dict[str, Any]] = {
    'AppConfig': {
        'Version': '1.0.0',
        'LogLevel': 'INFO',
        'LogToFile': False,
        'LogBase': 'e',
        'Seed': 0,
        'Jobs': 0,
    },
    'SolverConfig': {
        'Name': 'CLARABEL',
        'Fallback': 'SCS',
        'QuadApprox': [3, 3],
        'MaxSweeps': 500,
        'Tolerance': 1e-8,
        'Restarts': 8,
        'TermCount': 0,
    },
    'DiscordConfig': {
        'Steps': 5000,
        'StepSize': 0.1,
        'InverseTemperature': 1e4,
        'Restarts': 8,
        'Samples': 2000,
        'Polish': True,
    },
    'ScanConfig': {
        'RGrid': '0.1:6.0:0.05',
        'TGrid': [0.001, 0.01, 0.1, 1.0],
        'Format': 'csv',
    },
}


class ConfigManager:
    """Manages application configuration settings for FermiCorr runs."""

    def __init__(self, ConfigPath: Optional[str] = None):
        """
        Initialize the configuration manager.

        Without a path the defaults are held in memory and nothing is written to disk.

        Args:
            ConfigPath: Optional path to a YAML or JSON configuration file
        """
        self.Logger = logging.getLogger('FermiCorr.ConfigManager')
        self.ConfigPath = ConfigPath
        self.Sections: Dict[str, Dict[str, Any]] = {}
        self._CreateDefaultConfig()

    def _CreateDefaultConfig(self) -> None:
        """Reset every section to its default values."""
        self.Sections = copy.deepcopy(DefaultConfig)

    @property
    def AppConfig(self) -> Dict[str, Any]:
        return self.Sections['AppConfig']

    def LoadConfig(self) -> bool:
        """
        Load configuration from file, merging file values over the defaults.

        Returns:
            bool: True if configuration loaded successfully, False otherwise
        """
        if not self.ConfigPath:
            return True

        try:
            ConfigPath = Path(self.ConfigPath)

            if not ConfigPath.exists():
                self.Logger.warning(f"Configuration file not found, using defaults: {ConfigPath}")
                return True

            if ConfigPath.suffix.lower() == '.json':
                with open(ConfigPath, 'r') as ConfigFile:
                    ConfigData = json.load(ConfigFile)
            elif ConfigPath.suffix.lower() in ['.yaml', '.yml']:
                with open(ConfigPath, 'r') as ConfigFile:
                    ConfigData = yaml.safe_load(ConfigFile)
            else:
                self.Logger.error(f"Unsupported configuration file format: {ConfigPath.suffix}")
                return False

            ConfigData = ConfigData or {}
            Success = True
            for Name in SectionNames:
                if Name in ConfigData:
                    Success = self.SetSection(Name, ConfigData[Name]) and Success

            self.Logger.info(f"Configuration loaded from file: {ConfigPath}")
            return Success

        except Exception as Error:
            self.Logger.error(f"Error loading configuration: {Error}")
            self._CreateDefaultConfig()
            return False

    def SaveConfig(self) -> bool:
        """
        Save current configuration to file.

        Returns:
            bool: True if configuration saved successfully, False otherwise
        """
        if not self.ConfigPath:
            self.Logger.error("No configuration path set; configuration is in-memory only")
            return False

        try:
            ConfigPath = Path(self.ConfigPath)
            ConfigPath.parent.mkdir(parents=True, exist_ok=True)

            if ConfigPath.suffix.lower() == '.json':
                with open(ConfigPath, 'w') as ConfigFile:
                    json.dump(self.Sections, ConfigFile, indent=2)
            elif ConfigPath.suffix.lower() in ['.yaml', '.yml']:
                with open(ConfigPath, 'w') as ConfigFile:
                    yaml.dump(self.Sections, ConfigFile, default_flow_style=False)
            else:
                self.Logger.error(f"Unsupported configuration file format: {ConfigPath.suffix}")
                return False

            self.Logger.info(f"Configuration saved to file: {ConfigPath}")
            return True

        except Exception as Error:
            self.Logger.error(f"Error saving configuration: {Error}")
            return False

    def GetAppConfig(self, Key: Optional[str] = None, Default: Any = None) -> Any:
        """
        Get application configuration.

        Args:
            Key: Optional configuration key to retrieve
            Default: Default value if key not found

        Returns:
            Configuration value or entire configuration dictionary
        """
        if Key:
            return self.AppConfig.get(Key, Default)
        return self.AppConfig

    def SetAppConfig(self, Key: str, Value: Any) -> None:
        """
        Set application configuration.

        Args:
            Key: Configuration key to set
            Value: Configuration value
        """
        self.AppConfig[Key] = Value

    def GetSection(self, Name: str) -> Dict[str, Any]:
        """
        Get a copy of a configuration section.

        Args:
            Name: Section name, e.g. 'SolverConfig'

        Returns:
            Dict: Section values
        """
        if Name not in self.Sections:
            self.Logger.error(f"Unknown configuration section: {Name}")
            return {}
        return dict(self.Sections[Name])

    def SetSection(self, Name: str, Values: Dict[str, Any]) -> bool:
        """
        Merge values into a section after validation.

        Args:
            Name: Section name
            Values: Partial or complete section values

        Returns:
            bool: True if the values were accepted
        """
        if Name not in self.Sections:
            self.Logger.error(f"Unknown configuration section: {Name}")
            return False
        if not isinstance(Values, dict):
            self.Logger.error(f"Section {Name} must be a mapping")
            return False

        Merged = dict(self.Sections[Name])
        Merged.update(Values)

        Validators = {
            'AppConfig': self._ValidateAppConfig,
            'SolverConfig': self._ValidateSolverConfig,
            'DiscordConfig': self._ValidateDiscordConfig,
            'ScanConfig': self._ValidateScanConfig,
        }
        if not Validators[Name](Merged):
            return False

        self.Sections[Name] = Merged
        return True

    def _ValidateAppConfig(self, Config: Dict[str, Any]) -> bool:
        if str(Config.get('LogBase')) not in ('e', '2'):
            self.Logger.error(f"Invalid LogBase: {Config.get('LogBase')}")
            return False
        if not isinstance(Config.get('Seed'), int) or Config['Seed'] < 0:
            self.Logger.error(f"Invalid Seed: {Config.get('Seed')}")
            return False
        if not isinstance(Config.get('Jobs'), int) or Config['Jobs'] < 0:
            self.Logger.error(f"Invalid Jobs: {Config.get('Jobs')}")
            return False
        return True

    def _ValidateSolverConfig(self, Config: Dict[str, Any]) -> bool:
        """
        Validate solver configuration.

        Args:
            Config: Solver configuration to validate

        Returns:
            bool: True if configuration is valid, False otherwise
        """
        try:
            for Key in ('Name', 'Fallback'):
                if Config[Key] is not None and str(Config[Key]).upper() not in KnownSolvers:
                    self.Logger.error(f"Unknown solver for {Key}: {Config[Key]}")
                    return False

            QuadApprox = Config['QuadApprox']
            if len(QuadApprox) != 2 or min(int(Value) for Value in QuadApprox) < 1:
                self.Logger.error(f"Invalid QuadApprox: {QuadApprox}")
                return False

            if int(Config['MaxSweeps']) < 1 or int(Config['Restarts']) < 1:
                self.Logger.error("MaxSweeps and Restarts must be positive")
                return False

            if not 0 < float(Config['Tolerance']) < 1:
                self.Logger.error(f"Invalid Tolerance: {Config['Tolerance']}")
                return False

            if int(Config['TermCount']) < 0:
                self.Logger.error(f"Invalid TermCount: {Config['TermCount']}")
                return False

            return True

        except Exception as Error:
            self.Logger.error(f"Error validating solver configuration: {Error}")
            return False

    def _ValidateDiscordConfig(self, Config: Dict[str, Any]) -> bool:
        try:
            if int(Config['Steps']) < 1 or int(Config['Restarts']) < 1 or int(Config['Samples']) < 1:
                self.Logger.error("Steps, Restarts and Samples must be positive")
                return False
            if float(Config['StepSize']) <= 0 or float(Config['InverseTemperature']) <= 0:
                self.Logger.error("StepSize and InverseTemperature must be positive")
                return False
            return True
        except Exception as Error:
            self.Logger.error(f"Error validating discord configuration: {Error}")
            return False

    def _ValidateScanConfig(self, Config: Dict[str, Any]) -> bool:
        if Config.get('Format') not in ('csv', 'json'):
            self.Logger.error(f"Invalid scan format: {Config.get('Format')}")
            return False
        if not Config.get('TGrid') or min(float(Value) for Value in Config['TGrid']) < 0:
            self.Logger.error(f"Invalid TGrid: {Config.get('TGrid')}")
            return False
        return True
