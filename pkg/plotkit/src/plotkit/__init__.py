"""Figure rendering for the divisibility-analysis CSV outputs.

Pure file-to-file scripts: all physics numbers come from the CSVs produced
by the pdiv command-line tool; this package only plots them.
"""

from .schemas import REGION_COLUMNS, TIMELINE_COLUMNS, read_region_csv, read_timeline_csv

__all__ = [
    "REGION_COLUMNS",
    "TIMELINE_COLUMNS",
    "read_region_csv",
    "read_timeline_csv",
]

__version__ = "0.1.0"
