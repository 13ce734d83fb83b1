"""
Common result types for wishbound verification suites.
"""

from typing import Any, Dict, List
from dataclasses import dataclass, field

import pandas as pd


@dataclass
class AnalysisResult:
    """Base class for all analysis results."""
    errors: List[str] = field(default_factory=list)
    run_info: Dict[str, Any] = field(default_factory=dict)

    def is_valid(self) -> bool:
        """Check if the result is valid (has no errors)."""
        return len(self.errors) == 0


@dataclass
class SuiteResult(AnalysisResult):
    """Result object for one verification suite run.

    Stores:
    - one row per individual check in `rows`
    - a machine-readable record per failed check in `failures`
    """
    suite: str = ""
    rows: List[Dict[str, Any]] = field(default_factory=list)
    failures: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def checks(self) -> int:
        return len(self.rows)

    def record(self, row: Dict[str, Any], ok: bool, message: str = "") -> None:
        """Add a check row; a failing row is also kept as a failure record."""
        row = dict(row)
        row['ok'] = bool(ok)
        self.rows.append(row)
        if not ok:
            failure = {'suite': self.suite, **row}
            if message:
                failure['message'] = message
            self.failures.append(failure)
            self.errors.append(message or f"{self.suite}: check failed for {row}")

    def to_dataframe(self) -> pd.DataFrame:
        """Convert the suite rows to a pandas DataFrame."""
        return pd.DataFrame(self.rows)
