"""Serialization helpers: 12 significant digits, plain Python containers."""

from __future__ import annotations

import json

import numpy as np

SIG_DIGITS = 12


def round_sig(x: float, digits: int = SIG_DIGITS) -> float:
    if not np.isfinite(x):
        return float(x)
    r = float(f"{float(x):.{digits}g}")
    return 0.0 if r == 0.0 else r  # drop negative zero


def to_plain(obj, digits: int = SIG_DIGITS):
    """Recursively convert numpy values and containers to JSON-ready objects."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v, digits) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist(), digits)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round_sig(float(obj), digits)
    return obj


def dumps(obj) -> str:
    return json.dumps(to_plain(obj), indent=2, sort_keys=True)
