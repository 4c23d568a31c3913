"""Entanglement swapping for a three-pair network.

Three two-qubit states chi_{A1 B1}, chi_{A2 B2}, chi_{A3 B3} are combined
and the three A qubits are measured in the GHZ basis.  Each of the eight
outcomes leaves a conditional three-qubit state on (B1, B2, B3); the
register order is (A1, B1, A2, B2, A3, B3), so the measured qubits sit at
positions (0, 2, 4) and the output is read from (1, 3, 5).
"""

from dataclasses import dataclass

import numpy as np

from . import qcore
from .xychain import ground_state, thermal_state

__all__ = ["SwapResult", "swap_once", "swap_triple", "swap_all"]

_MEASURED = (0, 2, 4)
_KEPT = (1, 3, 5)


@dataclass(frozen=True)
class SwapResult:
    """Outcome probabilities, conditional states (None for impossible
    branches) and the outcome-averaged mixture."""

    probabilities: np.ndarray
    post_states: tuple
    mixture: np.ndarray


def _swap_outcome(product, i):
    proj = qcore.ket_density(qcore.ghz_ket(i))
    prob, post = qcore.measure(product, proj, _MEASURED)
    if post is None:
        return prob, None
    return prob, qcore.partial_trace(post, _KEPT)


def swap_once(chi1, chi2, chi3, i):
    """Probability and conditional (B1, B2, B3) state for GHZ outcome i."""
    for chi in (chi1, chi2, chi3):
        qcore.validate_density(chi, dim=4)
    if i not in range(8):
        raise ValueError(f"outcome index must be in 0..7, got {i!r}")
    product = qcore.tensor(chi1, chi2, chi3)
    return _swap_outcome(product, i)


def swap_triple(chi1, chi2, chi3):
    """All eight GHZ outcomes for three (possibly distinct) pair states."""
    for chi in (chi1, chi2, chi3):
        qcore.validate_density(chi, dim=4)
    product = qcore.tensor(chi1, chi2, chi3)
    probs = np.zeros(8)
    states = []
    mixture = np.zeros((8, 8), dtype=complex)
    for i in range(8):
        prob, state = _swap_outcome(product, i)
        probs[i] = prob
        states.append(state)
        if state is not None:
            mixture += prob * state
    return SwapResult(probs, tuple(states), mixture)


def swap_all(params):
    """Swap three identical pairs drawn from the chain model (thermal for
    T > 0, ground state at T = 0)."""
    chi = thermal_state(params) if params.T > 0.0 else ground_state(params)
    return swap_triple(chi, chi, chi)
