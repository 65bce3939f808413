"""Closed forms for n copies of a Pauli channel in the forward/backward SWITCH.

With control state |+>, the effective channel splits as

    S^n(rho) = (1 - P_n) Phi_+(rho) (x) |+><+| + P_n Phi_-(rho) (x) |-><-|

where both branches are Pauli channels. Their (unnormalized) weights ``s`` and
``t`` are polynomials in the input probabilities, obtained by grouping Kraus
products by how many identity factors they contain and by the parities of the
X, Y, Z exponents.
"""

import enum
from dataclasses import asdict, dataclass
from math import comb, factorial

import numpy as np

from .channels import PauliChannel, pauli_power, pauli_transfer_eigenvalues
from .numkit import PAULI, h_lambda, shannon_entropy

N_MAX = 20
PN_ZERO = 1e-12


def _check_n(n):
    if int(n) != n or n < 1:
        raise ValueError("n must be a positive integer")
    if n > N_MAX:
        raise ValueError(f"closed forms are limited to n <= {N_MAX}")
    return int(n)


def _compositions(k):
    for r1 in range(k + 1):
        for r2 in range(k - r1 + 1):
            yield r1, r2, k - r1 - r2


def _multinomial(k, r):
    return factorial(k) // (factorial(r[0]) * factorial(r[1]) * factorial(r[2]))


def _parity_sums(k, p):
    """Group sum_{r1+r2+r3=k} k!/(r1!r2!r3!) p1^r1 p2^r2 p3^r3 by exponent parity.

    Returns a dict keyed by the tuple of parities (r1 % 2, r2 % 2, r3 % 2).
    """
    sums = {}
    for r in _compositions(k):
        key = (r[0] % 2, r[1] % 2, r[2] % 2)
        term = _multinomial(k, r) * p[1] ** r[0] * p[2] ** r[1] * p[3] ** r[2]
        sums[key] = sums.get(key, 0.0) + term
    return sums


def coeff_d(k, p):
    """Weights of the symmetric (plus) part from products with k non-identity factors.

    Even k: all exponents even, contributing to the identity.  Odd k: exactly
    one odd exponent, contributing to that Pauli.
    """
    p = np.asarray(p, dtype=float)
    sums = _parity_sums(k, p)
    out = np.zeros(4)
    if k % 2 == 0:
        out[0] = sums.get((0, 0, 0), 0.0)
    else:
        out[1] = sums.get((1, 0, 0), 0.0)
        out[2] = sums.get((0, 1, 0), 0.0)
        out[3] = sums.get((0, 0, 1), 0.0)
    return out


def coeff_e(k, p):
    """Weights of the antisymmetric (minus) part; zero unless two or more factors.

    Even k: exponent i even and the other two odd, contributing to sigma_i.
    Odd k: all three exponents odd, contributing to the identity.
    """
    p = np.asarray(p, dtype=float)
    sums = _parity_sums(k, p)
    out = np.zeros(4)
    if k % 2 == 0:
        out[1] = sums.get((0, 1, 1), 0.0)
        out[2] = sums.get((1, 0, 1), 0.0)
        out[3] = sums.get((1, 1, 0), 0.0)
    else:
        out[0] = sums.get((1, 1, 1), 0.0)
    return out


@dataclass(frozen=True)
class BranchCoeffs:
    s: np.ndarray
    t: np.ndarray


def branch_coeffs(ch, n):
    n = _check_n(n)
    p = ch.p
    s = np.zeros(4)
    t = np.zeros(4)
    for k in range(n + 1):
        w = p[0] ** (n - k) * comb(n, k)
        s += w * coeff_d(k, p)
        if k >= 2:
            t += w * coeff_e(k, p)
    return BranchCoeffs(s, t)


def pn_pauli(ch, n):
    return float(branch_coeffs(ch, n).t.sum())


@dataclass(frozen=True)
class SwitchBranches:
    pn: float
    phi_plus: PauliChannel
    phi_minus: PauliChannel | None
    n: int = 0


def switch_branches(ch, n):
    c = branch_coeffs(ch, n)
    pn = float(c.t.sum())
    plus = PauliChannel(c.s / c.s.sum())
    if pn < PN_ZERO:
        return SwitchBranches(0.0, plus, None, n)
    return SwitchBranches(pn, plus, PauliChannel(c.t / pn), n)


def branch_kraus(branches):
    """Kraus operators of S^n on system (x) control, control in the |+>, |-> basis."""
    plus = np.array([1.0, 1.0]) / np.sqrt(2)
    minus = np.array([1.0, -1.0]) / np.sqrt(2)
    ops = []
    for weight, ch, ctrl in ((1.0 - branches.pn, branches.phi_plus, plus),
                             (branches.pn, branches.phi_minus, minus)):
        if ch is None or weight <= 0.0:
            continue
        for i, pi in enumerate(ch.p):
            if pi > 0.0:
                op = np.sqrt(weight * pi) * np.einsum("ai,k->aki", PAULI[i], ctrl)
                ops.append(op.reshape(4, 2))
    return np.array(ops)


def branches_choi(branches):
    """Choi matrix of S^n, same factor order as the brute-force oracle."""
    ops = branch_kraus(branches)
    vecs = ops.reshape(len(ops), -1)
    return vecs.T @ vecs.conj()


def max_abs_eig(ch):
    return float(np.max(np.abs(pauli_transfer_eigenvalues(ch))))


def classical_capacity_pauli(ch):
    return 1.0 - h_lambda(max_abs_eig(ch))


def coherent_info_pauli(ch):
    """Hashing bound 1 - H(p): coherent information at the maximally mixed input."""
    return 1.0 - shannon_entropy(ch.p)


def classical_capacity_switch(branches):
    cap = (1.0 - branches.pn) * classical_capacity_pauli(branches.phi_plus)
    if branches.phi_minus is not None:
        cap += branches.pn * classical_capacity_pauli(branches.phi_minus)
    return cap


def coherent_info_switch(branches):
    val = 1.0 - (1.0 - branches.pn) * shannon_entropy(branches.phi_plus.p)
    if branches.phi_minus is not None:
        val -= branches.pn * shannon_entropy(branches.phi_minus.p)
    return val


def holevo_switch(branches):
    """Holevo information of S^n as the best single-axis input.

    Minimizes (1-P) h(|mu_i|) + P h(|nu_i|) over the three Bloch axes; this
    equals classical_capacity_switch exactly when both branches are least
    noisy along a common axis.
    """
    mu = np.abs(pauli_transfer_eigenvalues(branches.phi_plus))
    if branches.phi_minus is None:
        return 1.0 - min(h_lambda(m) for m in mu)
    nu = np.abs(pauli_transfer_eigenvalues(branches.phi_minus))
    pn = branches.pn
    return 1.0 - min((1 - pn) * h_lambda(a) + pn * h_lambda(b) for a, b in zip(mu, nu))


@dataclass(frozen=True)
class GainReport:
    pn: float
    lam: float
    mu: float
    nu: float
    capacity_composite: float
    capacity_switch: float
    delta_c: float
    coherent_composite: float
    coherent_switch: float
    delta_i: float

    def to_dict(self):
        return asdict(self)


def gain_report(ch, n):
    """Capacities and causal gains of the SWITCH of n copies of ``ch``."""
    composite = pauli_power(ch, n)
    br = switch_branches(ch, n)
    lam = max_abs_eig(composite)
    mu = max_abs_eig(br.phi_plus)
    nu = max_abs_eig(br.phi_minus) if br.phi_minus is not None else 0.0
    # bottleneck gain written as h(lam) - (1-P) h(mu) - P h(nu)
    dc = h_lambda(lam) - (1.0 - br.pn) * h_lambda(mu)
    if br.phi_minus is not None:
        dc -= br.pn * h_lambda(nu)
    q_ent = shannon_entropy(composite.p)
    di = q_ent - (1.0 - br.pn) * shannon_entropy(br.phi_plus.p)
    if br.phi_minus is not None:
        di -= br.pn * shannon_entropy(br.phi_minus.p)
    return GainReport(
        pn=br.pn,
        lam=lam,
        mu=mu,
        nu=nu,
        capacity_composite=1.0 - h_lambda(lam),
        capacity_switch=classical_capacity_switch(br),
        delta_c=dc,
        coherent_composite=1.0 - q_ent,
        coherent_switch=coherent_info_switch(br),
        delta_i=di,
    )


def delta_c(ch, n):
    return gain_report(ch, n).delta_c


def delta_i(ch, n):
    return gain_report(ch, n).delta_i


class PnZeroClass(enum.Enum):
    EVEN_COMMUTING = "EvenCommuting"
    ODD_AT_MOST_TWO_KRAUS = "OddAtMostTwoKraus"
    SINGLE_COPY = "SingleCopy"
    NONZERO = "Nonzero"


def pn_zero_classify(ch, n):
    """Decide from the support of ``p`` alone whether P_n vanishes.

    Even n: P_n = 0 iff the Kraus operators commute, i.e. the support is
    contained in {I, sigma_i} for a single i.  Odd n >= 3: iff at most two
    Kraus operators.  For n = 1 the two orders coincide and P_1 = 0.
    """
    n = _check_n(n)
    support = {i for i, pi in enumerate(ch.p) if pi > 0.0}
    if n == 1:
        return PnZeroClass.SINGLE_COPY
    if n % 2 == 0:
        if len(support - {0}) <= 1:
            return PnZeroClass.EVEN_COMMUTING
        return PnZeroClass.NONZERO
    if len(support) <= 2:
        return PnZeroClass.ODD_AT_MOST_TWO_KRAUS
    return PnZeroClass.NONZERO


def _sign(x, atol):
    return 0 if abs(x) <= atol else (1 if x > 0 else -1)


def sign_violations(ch, n, atol=1e-13):
    """List the sign relations between branch weights that fail for ``ch``.

    Checked relations, with ``{i, j, k} = {1, 2, 3}``:

    plus branch, n even
        s0 >= si, with equality iff p0 = pi = 1/2; for p0 > 0
        sign(sj - sk) = sign(pj - pk), for p0 = 0 sj = sk = 0.
    plus branch, n odd
        sign(s0 - si) = sign(p0 - pi); sign(sj - sk) = sign(pj - pk).
    minus branch, n even
        t0 <= ti, strictly iff pj pk > 0; for pi > 0
        sign(tj - tk) = -sign(pj - pk), for pi = 0 tj = tk = 0.
    minus branch, n odd
        t0 - ti = 0 when pj pk = 0, else sign(t0 - ti) = -sign(p0 - pi);
        for p0 pi > 0 sign(tj - tk) = -sign(pj - pk), otherwise tj = tk = 0.

    A difference within ``atol`` of zero is accepted for any expected sign.
    Returns a list of human-readable descriptions (empty when all hold).
    """
    n = _check_n(n)
    p = ch.p
    c = branch_coeffs(ch, n)
    s, t = c.s, c.t
    bad = []

    def expect(actual, want, label):
        got = _sign(actual, atol)
        if got != 0 and got != want:
            bad.append(f"{label}: difference {actual:.3e}, expected sign {want}")

    def sgn(x):
        return 0 if x == 0 else (1 if x > 0 else -1)

    others = {1: (2, 3), 2: (1, 3), 3: (1, 2)}
    for i in (1, 2, 3):
        j, k = others[i]
        if n % 2 == 0:
            equal_case = p[0] == 0.5 and p[i] == 0.5
            expect(s[0] - s[i], 0 if equal_case else 1, f"s0-s{i}")
            expect(t[0] - t[i], -1 if p[j] * p[k] > 0 else 0, f"t0-t{i}")
            if p[0] > 0:
                expect(s[j] - s[k], sgn(p[j] - p[k]), f"s{j}-s{k}")
            else:
                expect(abs(s[j]) + abs(s[k]), 0, f"s{j},s{k} at p0=0")
            if p[i] > 0:
                expect(t[j] - t[k], -sgn(p[j] - p[k]), f"t{j}-t{k}")
            else:
                expect(abs(t[j]) + abs(t[k]), 0, f"t{j},t{k} at p{i}=0")
        else:
            expect(s[0] - s[i], sgn(p[0] - p[i]), f"s0-s{i}")
            expect(s[j] - s[k], sgn(p[j] - p[k]), f"s{j}-s{k}")
            if n >= 3 and p[j] * p[k] > 0:
                expect(t[0] - t[i], -sgn(p[0] - p[i]), f"t0-t{i}")
            else:
                expect(t[0] - t[i], 0, f"t0-t{i}")
            if n >= 3 and p[0] * p[i] > 0:
                expect(t[j] - t[k], -sgn(p[j] - p[k]), f"t{j}-t{k}")
            else:
                expect(abs(t[j]) + abs(t[k]), 0, f"t{j},t{k} at p0*p{i}=0")
    return bad


def sign_properties_check(ch, n, atol=1e-13):
    return not sign_violations(ch, n, atol)


def same_index_check(branches, atol=1e-12):
    """Whether the largest |eigenvalue| of both branches sits on a shared axis."""
    if branches.phi_minus is None:
        raise ValueError("same-index check needs P_n > 0")
    mu = np.abs(pauli_transfer_eigenvalues(branches.phi_plus))
    nu = np.abs(pauli_transfer_eigenvalues(branches.phi_minus))
    top_mu = set(np.nonzero(mu >= mu.max() - atol)[0])
    top_nu = set(np.nonzero(nu >= nu.max() - atol)[0])
    return bool(top_mu & top_nu)
