"""Height functions that lift branch sheets off the complex plane.

The "charisma" of a domain point is the hidden real quantity that selects
which value of a multivalued function applies there; plotted as a third
coordinate it turns the stack of branch sheets into a Riemann surface.
All kinds except the raw branch index are computed from the range value
w = f_k(z), never from z itself.
"""

from __future__ import annotations

import math
from enum import Enum

from .branches import IndexedFunction, principal_phase

__all__ = [
    "CharismaCompatibilityError",
    "CharismaKind",
    "compatible_kinds",
    "evaluate_charisma",
    "is_compatible",
]


class CharismaKind(str, Enum):
    INDEX = "index"  # c = k: flat stacked sheets, discontinuous joins
    PHASE = "phase"  # c = ph(w): continuous except across the ph = +-pi wrap
    SIN = "sin"      # c = sin(ph w): continuous and periodic
    COS = "cos"      # c = cos(ph w): like sin, principal sheet on top
    IMAG = "imag"    # c = Im(ln_k z): the logarithm helix


class CharismaCompatibilityError(ValueError):
    """Charisma kind not defined for the given function."""


_ROOT_KINDS = (CharismaKind.INDEX, CharismaKind.PHASE, CharismaKind.SIN, CharismaKind.COS)
_LOG_KINDS = (CharismaKind.INDEX, CharismaKind.IMAG)


def compatible_kinds(f: IndexedFunction) -> tuple[CharismaKind, ...]:
    """Charisma kinds defined for f: trigonometric kinds need the periodic
    range of a root; the imaginary part is the log height."""
    return _LOG_KINDS if f.is_log else _ROOT_KINDS


def is_compatible(kind: CharismaKind, f: IndexedFunction) -> bool:
    return kind in compatible_kinds(f)


def evaluate_charisma(
    z: complex,
    k: int,
    f: IndexedFunction,
    kind: CharismaKind,
    *,
    use_range_imag: bool = False,
) -> float:
    """Charisma of the domain point z on branch k of f.

    use_range_imag switches the sin kind from sin(ph w) to Im(w); the two
    differ by the radial factor |w|. Raises CharismaCompatibilityError for
    a kind/function mismatch and DomainError at z = 0.
    """
    kind = CharismaKind(kind)
    if not is_compatible(kind, f):
        raise CharismaCompatibilityError(
            f"charisma '{kind.value}' is not defined for {f.label()}; "
            f"valid: {', '.join(c.value for c in compatible_kinds(f))}"
        )
    w = f.branch_value(z, k)
    if kind is CharismaKind.INDEX:
        return float(k)
    if kind is CharismaKind.PHASE:
        return principal_phase(w)
    if kind is CharismaKind.SIN:
        return w.imag if use_range_imag else math.sin(principal_phase(w))
    if kind is CharismaKind.COS:
        return math.cos(principal_phase(w))
    return w.imag  # IMAG: w is log_branch(z, k)
