"""
Verification suite base class and registry for wishbound.
Suites are registered by name and run from the command line or from tests.
"""

import sys
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, List, Optional, Type, Union

import pandas as pd

from .analysis_result import SuiteResult

# Package logger; quiet unless verbose mode is switched on
logger = logging.getLogger('wishbound')
logger.setLevel(logging.WARNING)


@dataclass(frozen=True)
class SuiteOptions:
    """Knobs shared by all suites; defaults are the full acceptance sizes."""
    seed: int = 1
    samples: int = 1_000_000
    workers: int = 1
    points: int = 1000
    beta_count: int = 100
    max_dim: int = 4
    progress: bool = False
    mc_grid: Optional[str] = None


class VerificationSuite(ABC):
    """Base class for verification suites."""

    def __init__(self, debug: bool = False):
        """Initialize the suite with an empty dataframe."""
        self.results_df = pd.DataFrame()
        self.debug = debug

    @property
    def debug(self) -> bool:
        return self._debug

    @debug.setter
    def debug(self, value: bool) -> None:
        self._debug = value
        self.logger.setLevel(logging.DEBUG if value else logging.NOTSET)

    @property
    def logger(self) -> logging.Logger:
        return logging.getLogger(type(self).__module__)

    @abstractmethod
    def get_name(self) -> str:
        """
        Returns the name the suite is registered under.

        Returns:
            Suite name as used by `wishbound verify <name>`
        """
        pass

    @abstractmethod
    def run_checks(self, options: SuiteOptions, result: SuiteResult) -> None:
        """
        Run every check, recording each one on the result.

        Args:
            options: Sizes, seed and parallelism for the run
            result: SuiteResult to record rows and failures on
        """
        pass

    def run(self, options: Optional[SuiteOptions] = None) -> SuiteResult:
        """Run the suite; property failures are recorded, never raised."""
        options = options or SuiteOptions()
        result = SuiteResult(suite=self.get_name(), run_info={'options': options.__dict__.copy()})
        self.logger.debug(f"Starting suite {self.get_name()}")
        try:
            self.run_checks(options, result)
        except Exception as e:
            error_msg = f"{self.get_name()}: internal error - {type(e).__name__}: {e}"
            result.record({'check': 'internal'}, False, error_msg)
            logger.error(error_msg)
        for failure in result.failures:
            logger.error(failure.get('message', str(failure)))
        self.results_df = result.to_dataframe()
        self.logger.debug(f"Suite {self.get_name()}: {result.checks} checks, {len(result.failures)} failures")
        return result

    def get_results_dataframe(self) -> pd.DataFrame:
        """
        Get the results dataframe of the last run.

        Returns:
            pandas DataFrame with one row per check
        """
        return self.results_df


class SuiteRegistry:
    """Registry for verification suites."""

    def __init__(self):
        self._suites: Dict[str, VerificationSuite] = {}
        self._verbose = False
        self._log_file = None

    def set_verbose(self, verbose: bool, log_file: Optional[str] = None) -> None:
        """Set verbose mode for debug output and optionally redirect to file.

        Args:
            verbose: Whether to enable verbose output
            log_file: Optional file path to write verbose output to
        """
        self._verbose = verbose
        self._log_file = log_file

        package_logger = logging.getLogger('wishbound')
        package_logger.setLevel(logging.DEBUG if verbose else logging.WARNING)

        for handler in package_logger.handlers[:]:
            package_logger.removeHandler(handler)
            handler.close()

        if verbose:
            if log_file:
                handler = logging.FileHandler(log_file, mode='w')
                formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')
            else:
                handler = logging.StreamHandler(sys.stderr)
                formatter = logging.Formatter('%(levelname)s: %(message)s')
            handler.setFormatter(formatter)
            package_logger.addHandler(handler)

        for suite in self._suites.values():
            suite.debug = verbose

    def _debug(self, message: str) -> None:
        """Log debug message if verbose mode is enabled."""
        if self._verbose:
            logger.debug(message)

    def register_suite(self, suite: Union[Type[VerificationSuite], VerificationSuite]) -> None:
        """Register a suite under its name.

        Args:
            suite: Either a VerificationSuite class or instance
        """
        if isinstance(suite, type):
            suite = suite()
        suite.debug = self._verbose
        self._debug(f"Registering suite: {suite.get_name()}")
        self._suites[suite.get_name()] = suite

    def get_suite(self, name: str) -> Optional[VerificationSuite]:
        return self._suites.get(name)

    def suite_names(self) -> List[str]:
        return list(self._suites)

    def run(self, name: str, options: Optional[SuiteOptions] = None) -> SuiteResult:
        suite = self.get_suite(name)
        if suite is None:
            raise KeyError(f"Unknown suite {name!r}; known: {', '.join(self.suite_names())}")
        return suite.run(options)

    def run_all(self, options: Optional[SuiteOptions] = None) -> List[SuiteResult]:
        return [self.run(name, options) for name in self.suite_names()]


def default_registry() -> SuiteRegistry:
    """A registry holding every built-in suite."""
    from .suites import ALL_SUITES
    registry = SuiteRegistry()
    for suite_class in ALL_SUITES:
        registry.register_suite(suite_class)
    return registry
