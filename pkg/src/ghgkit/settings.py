"""Numerical tolerances shared by the whole package."""
import os

DEFAULT_TOLERANCE = 1e-9
LINE_EQUALITY_TOL = 1e-9
ANGLE_CLASSIFY_TOL = 1e-7
UPSILON_DENSE_MAX_S = 16


def tolerance() -> float:
    """Global comparison tolerance; ``GHG_TOLERANCE`` in the environment overrides it."""
    raw = os.environ.get("GHG_TOLERANCE")
    if raw is None:
        return DEFAULT_TOLERANCE
    try:
        val = float(raw)
    except ValueError:
        raise ValueError(f"GHG_TOLERANCE must be a float, got {raw!r}") from None
    if not val > 0:
        raise ValueError("GHG_TOLERANCE must be positive")
    return val
