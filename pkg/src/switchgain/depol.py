"""Closed forms for n copies of a qudit depolarizing channel in the SWITCH.

For ``D(rho) = (1-p) rho + p I/d`` both SWITCH branches are again
depolarizing maps ``rho -> (1-lam) rho + lam I/d``; the minus branch has
``lam >= 1`` and is entanglement breaking.  Capacities follow from the
two-point output spectrum of a depolarizing map on a pure input, so no
eigensolver is involved anywhere in this module.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .numkit import DimensionError

PN_ZERO = 1e-12
N_SCAN_MAX = 64


def _check(d, p, n):
    if int(d) != d or d < 2:
        raise DimensionError("d must be an integer >= 2")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    return int(d), float(p), int(n)


def _powers(d, p, n):
    a = (1.0 - p + p / d) ** n
    b = (1.0 - p - p / d) ** n
    return a, b


def pn_depol(d, p, n):
    d, p, n = _check(d, p, n)
    a, b = _powers(d, p, n)
    pn = 0.5 - 0.25 * ((d + 1) * a - (d - 1) * b)
    if not -1e-12 <= pn <= 0.5 + 1e-12:
        raise ArithmeticError(f"P_n = {pn} outside [0, 1/2]")
    return min(0.5, max(0.0, pn))


@dataclass(frozen=True)
class DepolBranches:
    """Branch weights of the SWITCH; ``lambda2`` is None when P_n vanishes."""

    d: int
    p: float
    n: int
    pn: float
    lambda1: float
    lambda2: float | None

    def to_dict(self):
        return asdict(self)


def depol_branches(d, p, n):
    d, p, n = _check(d, p, n)
    a, b = _powers(d, p, n)
    pn = pn_depol(d, p, n)
    noise = 1.0 - (1.0 - p) ** n
    cross = 0.5 * d * (a - b)
    lam1 = (noise + cross) / (1.0 + 0.5 * ((d + 1) * a - (d - 1) * b))
    lam2 = None
    if pn >= PN_ZERO:
        lam2 = (noise - cross) / (1.0 - 0.5 * ((d + 1) * a - (d - 1) * b))
    return DepolBranches(d, p, n, pn, lam1, lam2)


def depol_choi(d, lam):
    """Choi matrix of rho -> (1 - lam) rho + lam tr(rho) I/d."""
    omega = np.eye(d).reshape(d * d)
    return (1.0 - lam) * np.outer(omega, omega) + lam / d * np.eye(d * d)


def branches_choi(br):
    from .oracle import branch_choi

    minus = depol_choi(br.d, br.lambda2) if br.lambda2 is not None else None
    return branch_choi(br.d, depol_choi(br.d, br.lambda1), minus, br.pn)


def _xlog2x(x):
    return 0.0 if x <= 0.0 else x * math.log2(x)


def min_output_entropy(d, lam):
    """Output entropy of a depolarizing map with weight ``lam`` on any pure state."""
    if not -1e-12 <= lam <= d * d / (d * d - 1) + 1e-12:
        raise ValueError(f"lambda = {lam} is not completely positive for d = {d}")
    lam = max(lam, 0.0)
    return -_xlog2x(1.0 - lam + lam / d) - (d - 1) * _xlog2x(lam / d)


def capacity_depol(d, p, n=1):
    """Classical capacity of the n-fold composition of the depolarizing channel."""
    d, p, n = _check(d, p, n)
    return math.log2(d) - min_output_entropy(d, 1.0 - (1.0 - p) ** n)


def capacity_depol_switch(br):
    cap = math.log2(br.d) - (1.0 - br.pn) * min_output_entropy(br.d, br.lambda1)
    if br.lambda2 is not None:
        cap -= br.pn * min_output_entropy(br.d, br.lambda2)
    return cap


def delta_c_depol(d, p, n):
    return capacity_depol_switch(depol_branches(d, p, n)) - capacity_depol(d, p, n)


def n_opt_scan(d, p, n_max=N_SCAN_MAX):
    """Number of copies maximizing the classical causal gain.

    Returns ``(n_opt, gains)`` with ``gains[i]`` the gain for ``n = i + 1``;
    ties resolve to the smallest n.
    """
    if n_max > N_SCAN_MAX:
        raise ValueError(f"n_max is limited to {N_SCAN_MAX}")
    gains = [delta_c_depol(d, p, n) for n in range(1, n_max + 1)]
    return int(np.argmax(gains)) + 1, gains


def depol_gain_report(d, p, n):
    br = depol_branches(d, p, n)
    composite = capacity_depol(d, p, n)
    switch = capacity_depol_switch(br)
    out = br.to_dict()
    out.update(capacity_composite=composite, capacity_switch=switch,
               delta_c=switch - composite)
    return out
