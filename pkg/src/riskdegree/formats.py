"""Measure JSON and sample-file readers/writers.

Measure files are strict JSON objects in one of two shapes::

    {"type": "kusuoka", "atoms": [{"alpha": 0.25, "weight": 0.5}, ...]}
    {"type": "dual_utility", "breakpoints": [[0.0, 0.0], [0.5, 0.0], [1.0, 1.0]],
     "atom_at_one": 0.0}

Unknown keys are rejected.  Sample files hold one finite decimal per line;
blank lines are skipped.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import EmptySample, MeasureFormatError, RiskDegreeError
from .evaluate import EmpiricalSample
from .riskcore import DualUtilityCdf, KusuokaMeasure, SpectralMeasure, make_kusuoka

_KUSUOKA_KEYS = {"type", "atoms"}
_DUAL_KEYS = {"type", "breakpoints", "atom_at_one"}
_ATOM_KEYS = {"alpha", "weight"}


def format_number(x: float) -> float:
    """Round to 15 significant digits; ``json``/``repr`` then print the shortest form."""
    x = float(x)
    if not math.isfinite(x):
        return x
    return float(f"{x:.15g}")


def format_text(x) -> str:
    if isinstance(x, float) and math.isfinite(x):
        return repr(format_number(x))
    return str(x)


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MeasureFormatError(f"{where}: expected a number, got {value!r}")
    x = float(value)
    if not math.isfinite(x):
        raise MeasureFormatError(f"{where}: expected a finite number, got {value!r}")
    return x


def _check_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise MeasureFormatError(f"{where}: unknown key(s) {', '.join(map(repr, unknown))}")
    missing = sorted(required - set(obj))
    if missing:
        raise MeasureFormatError(f"{where}: missing key(s) {', '.join(map(repr, missing))}")


def measure_from_dict(obj) -> SpectralMeasure:
    if not isinstance(obj, dict):
        raise MeasureFormatError("measure: expected a JSON object")
    kind = obj.get("type")
    if kind == "kusuoka":
        _check_keys(obj, _KUSUOKA_KEYS, _KUSUOKA_KEYS, "measure")
        atoms = obj["atoms"]
        if not isinstance(atoms, list) or not atoms:
            raise MeasureFormatError("atoms: expected a nonempty list")
        pairs = []
        for i, atom in enumerate(atoms):
            if not isinstance(atom, dict):
                raise MeasureFormatError(f"atoms[{i}]: expected an object")
            _check_keys(atom, _ATOM_KEYS, _ATOM_KEYS, f"atoms[{i}]")
            pairs.append((_number(atom["alpha"], f"atoms[{i}].alpha"), _number(atom["weight"], f"atoms[{i}].weight")))
        try:
            return SpectralMeasure(make_kusuoka(pairs))
        except RiskDegreeError as exc:
            raise type(exc)(f"atoms: {exc}") from None
    if kind == "dual_utility":
        _check_keys(obj, _DUAL_KEYS, _DUAL_KEYS, "measure")
        bps = obj["breakpoints"]
        if not isinstance(bps, list) or len(bps) < 2:
            raise MeasureFormatError("breakpoints: expected a list of at least two [t, w] pairs")
        t, w = [], []
        for i, bp in enumerate(bps):
            if not isinstance(bp, list) or len(bp) != 2:
                raise MeasureFormatError(f"breakpoints[{i}]: expected a [t, w] pair")
            t.append(_number(bp[0], f"breakpoints[{i}][0]"))
            w.append(_number(bp[1], f"breakpoints[{i}][1]"))
        atom = _number(obj["atom_at_one"], "atom_at_one")
        try:
            return SpectralMeasure(DualUtilityCdf(t, w, atom))
        except RiskDegreeError as exc:
            raise type(exc)(f"breakpoints: {exc}") from None
    raise MeasureFormatError(f"type: expected 'kusuoka' or 'dual_utility', got {kind!r}")


def measure_to_dict(measure: SpectralMeasure, kind: str) -> dict:
    if kind == "kusuoka":
        mu: KusuokaMeasure = measure.kusuoka
        return {
            "type": "kusuoka",
            "atoms": [{"alpha": format_number(a), "weight": format_number(lam)} for a, lam in mu.atoms],
        }
    if kind == "dual_utility":
        w: DualUtilityCdf = measure.dual_utility
        return {
            "type": "dual_utility",
            "breakpoints": [[format_number(t), format_number(v)] for t, v in w.breakpoints],
            "atom_at_one": format_number(w.atom_at_one),
        }
    raise ValueError(f"unknown representation {kind!r}")


def load_measure(path) -> SpectralMeasure:
    text = Path(path).read_text(encoding="utf-8")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MeasureFormatError(f"{path}: invalid JSON ({exc})") from None
    return measure_from_dict(obj)


def dump_measure(measure: SpectralMeasure, kind: str) -> str:
    return json.dumps(measure_to_dict(measure, kind)) + "\n"


def parse_sample(text: str) -> EmpiricalSample:
    values = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            x = float(line)
        except ValueError:
            raise MeasureFormatError(f"line {lineno}: not a number: {line!r}") from None
        if not math.isfinite(x):
            raise MeasureFormatError(f"line {lineno}: not a finite number: {line!r}")
        values.append(x)
    if not values:
        raise EmptySample("sample file contains no values")
    return EmpiricalSample(values)


def load_sample(path) -> EmpiricalSample:
    return parse_sample(Path(path).read_text(encoding="utf-8"))
