"""Private communication over BB84-type Pauli channels with and without the SWITCH.

Alice sends through two copies of ``N_q``. In a definite order the result is
again a BB84 channel with error rate ``r = 2q - 2q^2``; its private capacity
is bounded above by ``H(1/2 - 2x(1-x)) - H(2x(1-x))`` evaluated at ``x = r``.
In the SWITCH protocol each copy is followed by a ``Y`` gate, which turns
``N_q`` into ``N_{1-q}``; the coherent information of the resulting
two-copy SWITCH at the maximally mixed input lower-bounds the private rate.
"""

from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import brentq

from .channels import PauliChannel
from .numkit import binary_entropy
from .pauli import coherent_info_switch, switch_branches


def _check_q(q):
    q = float(q)
    if not 0.0 <= q <= 1.0:
        raise ValueError(f"error rate {q} outside [0, 1]")
    return q


@dataclass(frozen=True)
class BB84Channel:
    q: float

    def __post_init__(self):
        object.__setattr__(self, "q", _check_q(self.q))

    @property
    def pauli(self):
        return bb84_as_pauli(self.q)


def bb84_as_pauli(q):
    q = _check_q(q)
    return PauliChannel([(1 - q) ** 2, q * (1 - q), q * q, q * (1 - q)])


def sigma_y_conjugate(ch):
    """Pauli form of ``Y o N_q``, which is ``N_{1-q}``."""
    q = ch.q if isinstance(ch, BB84Channel) else _check_q(ch)
    return bb84_as_pauli(1.0 - q)


def _bound(x):
    e = 2.0 * x * (1.0 - x)
    return binary_entropy(0.5 - e) - binary_entropy(e)


def private_upper_bound(q, clamp=True):
    raw = _bound(_check_q(q))
    return max(0.0, raw) if clamp else raw


def composite_rate(q):
    """Error rate of two BB84 channels applied in sequence."""
    q = _check_q(q)
    return 2.0 * q - 2.0 * q * q


def switch_coherent_info(q):
    return coherent_info_switch(switch_branches(sigma_y_conjugate(q), 2))


@dataclass(frozen=True)
class ProtocolReport:
    q: float
    composite_upper_bound: float
    switch_coherent_info: float
    advantage: bool

    def to_dict(self):
        return asdict(self)


def protocol_report(q):
    q = _check_q(q)
    bound = private_upper_bound(composite_rate(q))
    ic = float(switch_coherent_info(q))
    return ProtocolReport(q, bound, ic, bool(bound <= 0.0 and ic > 0.0))


def _margin(q):
    # positive exactly where the protocol shows an advantage (up to the boundary)
    return min(switch_coherent_info(q), -private_upper_bound(composite_rate(q), clamp=False))


def crossover_scan(q_grid, refine=True):
    """Evaluate the protocol on ``q_grid`` and locate the advantage interval.

    Returns ``(rows, interval)``; ``interval`` is ``(q_low, q_high)`` for the
    longest contiguous run of grid points with an advantage, endpoints refined
    by root finding between neighbouring grid points, or ``None`` if no grid
    point shows an advantage.
    """
    grid = np.sort(np.asarray(q_grid, dtype=float))
    rows = [protocol_report(q) for q in grid]
    flags = [r.advantage for r in rows]
    best, start = None, None
    for i, f in enumerate(flags + [False]):
        if f and start is None:
            start = i
        elif not f and start is not None:
            if best is None or i - start > best[1] - best[0] + 1:
                best = (start, i - 1)
            start = None
    if best is None:
        return rows, None
    lo_i, hi_i = best
    q_low, q_high = grid[lo_i], grid[hi_i]
    if refine:
        if lo_i > 0:
            q_low = brentq(_margin, grid[lo_i - 1], grid[lo_i], xtol=1e-12)
        if hi_i < len(grid) - 1:
            q_high = brentq(_margin, grid[hi_i], grid[hi_i + 1], xtol=1e-12)
    return rows, (float(q_low), float(q_high))
