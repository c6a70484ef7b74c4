"""
Square roots tracked by continuity along a path.

The first root on a path is fixed by the determination on C minus [0, +inf) with
sqrt(-1) = i; every later root is the one of the two closest to its predecessor.
"""

import cmath
from dataclasses import dataclass
from typing import Iterable, List

from ..utils.exceptions import BranchCutError


@dataclass
class BranchedSqrtState:
    """Caller-owned history of a tracked square root."""

    previous_value: complex = 0j
    initialized: bool = False

    def reset(self) -> None:
        self.previous_value = 0j
        self.initialized = False


def _on_cut(w: complex) -> bool:
    return w.imag == 0.0 and w.real >= 0.0


def branched_sqrt(w: complex, state: BranchedSqrtState) -> complex:
    """
    Square root of w continuing the branch recorded in state.

    Args:
        w: Complex radicand
        state: Path history, updated in place

    Returns:
        A square root of w

    Raises:
        BranchCutError: If state is uninitialized and w lies on [0, +inf)
    """
    w = complex(w)
    root = cmath.sqrt(w)

    if not state.initialized:
        if _on_cut(w):
            raise BranchCutError(
                f"Cannot start a tracked square root on the cut [0, +inf): w={w}",
                details={"w": str(w)},
            )
        # arg(root) in (0, pi]
        if root.imag < 0.0:
            root = -root
    elif abs(root - state.previous_value) > abs(root + state.previous_value):
        root = -root

    state.previous_value = root
    state.initialized = True
    return root


def branched_sqrt_path(ws: Iterable[complex], state: BranchedSqrtState) -> List[complex]:
    """Track the square root along an ordered sequence of radicands."""
    return [branched_sqrt(w, state) for w in ws]
