"""Finite orthomodular lattice toolkit: equation checking, Greechie diagram
generation and exact state-space analysis."""

from fractions import Fraction

from . import _core
from ._core import (
    Lattice,
    admits_strong_set,
    canonical_gdf,
    check,
    check_ngo_dp,
    check_noa,
    count,
    evaluate,
    fixture,
    fixture_names,
    generate,
    is_legless,
    known_verdicts,
    load_lattice,
    parse_statement,
    registry_entry,
    registry_ids,
    scan,
    wagon_wheel,
)

__all__ = [
    "Lattice",
    "admits_classical_strong",
    "admits_strong_set",
    "canonical_gdf",
    "check",
    "check_ngo_dp",
    "check_noa",
    "count",
    "evaluate",
    "find_state",
    "fixture",
    "fixture_names",
    "generate",
    "is_legless",
    "known_verdicts",
    "load_lattice",
    "parse_statement",
    "registry_entry",
    "registry_ids",
    "scan",
    "wagon_wheel",
]


def find_state(lattice, fixed, q, maximize=False, model="auto"):
    """Optimize m(q) over states with m(e) = r for each (e, r) in `fixed`.

    Returns (optimum, state) as Fractions, or None when no state fits."""
    raw = _core.find_state(lattice, {str(k): str(Fraction(v)) for k, v in fixed.items()}, str(q), maximize, model)
    if raw is None:
        return None
    opt, state = raw
    return Fraction(opt), {k: Fraction(v) for k, v in state.items()}


def admits_classical_strong(lattice):
    out = _core.admits_classical_strong(lattice)
    if out["witness"] is not None:
        out["witness"] = {k: Fraction(v) for k, v in out["witness"].items()}
    return out
