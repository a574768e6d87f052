"""
Text rendering of rationals, enclosures and result tables.

Tables are pandas DataFrames printed either aligned for reading or as CSV.
"""
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Union

import pandas as pd

from models.values import ConvergenceTable, Interval, RealValue
from models.words import word_text

RATIO_PLACES = 5


def format_rational(value: Union[int, Fraction]) -> str:
    """``p/q``, or ``p`` for integers."""
    return str(Fraction(value))


def format_decimal(value: Union[int, Fraction], places: int = RATIO_PLACES) -> str:
    """Exact decimal rounding of a rational to a fixed number of places."""
    scaled = round(Fraction(value) * 10 ** places)
    sign = "-" if scaled < 0 else ""
    whole, fraction = divmod(abs(scaled), 10 ** places)
    if places == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{fraction:0{places}d}"


def format_real(value: RealValue, places: int = 0) -> str:
    """``p/q`` or ``[lo, hi]``, optionally followed by a decimal rendering of the midpoint."""
    text = str(value)
    if not value.certified:
        text += " (uncertified)"
    if places:
        prefix = "" if value.lo == value.hi else "~"
        text += f" = {prefix}{format_decimal(value.midpoint, places)}"
    return text


def render(frame: pd.DataFrame, csv: bool = False) -> str:
    """Aligned text or CSV with a header row; no index column either way."""
    if csv:
        return frame.to_csv(index=False, lineterminator="\n")
    if frame.empty:
        return ""
    return frame.to_string(index=False) + "\n"


def records_frame(records: Iterable[Dict[str, Any]], columns: List[str]) -> pd.DataFrame:
    return pd.DataFrame(list(records), columns=columns)


def convergence_frame(table: ConvergenceTable) -> pd.DataFrame:
    """Columns ``n,prefix,val,v,ratio_exact,ratio_dec``."""
    return records_frame(
        ({
            "n": row.n,
            "prefix": word_text(row.prefix),
            "val": str(row.val),
            "v": str(row.v),
            "ratio_exact": format_rational(row.ratio),
            "ratio_dec": format_decimal(row.ratio),
        } for row in table.rows),
        ["n", "prefix", "val", "v", "ratio_exact", "ratio_dec"],
    )


def intervals_frame(intervals: Iterable[Interval]) -> pd.DataFrame:
    return records_frame(
        ({"word": word_text(i.label), "lo": str(i.lo), "hi": str(i.hi)} for i in intervals),
        ["word", "lo", "hi"],
    )


def interval_lines(intervals: Iterable[Interval]) -> str:
    """One ``y: [lo, hi]`` line per interval."""
    return "".join(f"{interval}\n" for interval in intervals)
