"""Brute-force construction of the quantum SWITCH effective channel.

Every index tuple ``(s_1, ..., s_n)`` of the input Kraus sets is enumerated and,
for each permutation ``pi`` in the set, the ordered product

    K_pi(s) = C^{pi(1)}_{s_pi(1)} ... C^{pi(n)}_{s_pi(n)}

is formed. The effective channel with control state ``omega`` is

    S(rho) = sum_s sum_{k,l} K_k(s) rho K_l(s)^dagger (x) omega_kl |k><l|

and is returned as a Choi matrix with factor order (system out, control, input).
Nothing here relies on any closed form, so it serves as the reference the
analytic modules are checked against.
"""

import math
from dataclasses import dataclass

import numpy as np

from .channels import TP_TOL, KrausChannel, choi, to_kraus
from .numkit import DimensionError, as_cmatrix, hermitian_eigenvalues

DEFAULT_CAP = 10**7
_CHUNK = 1 << 14


class EnumerationCapError(ValueError):
    """Raised when the number of enumerated terms exceeds the configured cap."""


@dataclass(frozen=True)
class PermutationSet:
    """Orders of ``n`` channels; each permutation is a 0-based tuple."""

    n: int
    perms: tuple

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        if self.n < 1 or not perms:
            raise ValueError("need n >= 1 and at least one permutation")
        for p in perms:
            if sorted(p) != list(range(self.n)):
                raise ValueError(f"{p} is not a permutation of range({self.n})")
        if len(set(perms)) != len(perms):
            raise ValueError("duplicate permutations")
        object.__setattr__(self, "perms", perms)

    @property
    def m(self):
        return len(self.perms)

    @classmethod
    def forward_backward(cls, n):
        if n < 2:
            raise ValueError("forward and backward orders coincide for n < 2")
        return cls(n, (tuple(range(n)), tuple(reversed(range(n)))))

    @classmethod
    def cyclic(cls, n):
        return cls(n, tuple(tuple((i + k) % n for i in range(n)) for k in range(n)))


@dataclass(frozen=True)
class ControlState:
    omega: np.ndarray

    def __post_init__(self):
        w = as_cmatrix(self.omega)
        if w.shape[0] != w.shape[1]:
            raise DimensionError("control state must be square")
        if abs(np.trace(w) - 1.0) > 1e-10:
            raise ValueError("control state must have unit trace")
        if hermitian_eigenvalues(w)[0] < -1e-10:
            raise ValueError("control state is not positive semidefinite")
        w.setflags(write=False)
        object.__setattr__(self, "omega", w)

    @property
    def m(self):
        return self.omega.shape[0]

    @classmethod
    def uniform(cls, m):
        v = np.full(m, 1.0 / np.sqrt(m))
        return cls(np.outer(v, v))

    @classmethod
    def pure(cls, vec):
        v = np.asarray(vec, dtype=complex)
        v = v / np.linalg.norm(v)
        return cls(np.outer(v, v.conj()))


@dataclass(frozen=True)
class SwitchOutput:
    """Choi matrix of the effective channel, ordered (system out, control, input)."""

    choi: np.ndarray
    n: int
    m: int
    d: int

    @property
    def dim_out(self):
        return self.d * self.m

    def apply(self, rho):
        rho = as_cmatrix(rho)
        j = self.choi.reshape(self.dim_out, self.d, self.dim_out, self.d)
        return np.einsum("aibj,ij->ab", j, rho)

    def trace_control(self):
        """Choi matrix of the system channel with the control discarded."""
        j = self.choi.reshape(self.d, self.m, self.d, self.d, self.m, self.d)
        return np.einsum("akibkj->aibj", j).reshape(self.d**2, self.d**2)


def _validate(channels, perms):
    channels = [to_kraus(c) for c in channels]
    if len(channels) != perms.n:
        raise ValueError(f"{len(channels)} channels given for permutations of {perms.n}")
    d = channels[0].dim_in
    for c in channels:
        if c.dim_in != d or c.dim_out != d:
            raise DimensionError("all channels must map C^d to C^d for a common d")
    return channels, d


def _check_cap(channels, perms, cap):
    terms = math.prod(len(c) for c in channels) * perms.m**2
    if terms > cap:
        raise EnumerationCapError(f"enumeration needs {terms} terms, cap is {cap}")
    return terms


def _ordered_products(channels, perms):
    """Yield ``(tuples, products)`` chunks; products has shape (B, m, d, d).

    Tuples are produced in lexicographic order of ``(s_1, ..., s_n)``.
    """
    sizes = [len(c) for c in channels]
    total = math.prod(sizes)
    for start in range(0, total, _CHUNK):
        flat = np.arange(start, min(total, start + _CHUNK))
        idx = np.array(np.unravel_index(flat, sizes))
        out = []
        for perm in perms.perms:
            prod = None
            for pos in perm:
                factor = channels[pos].kraus[idx[pos]]
                prod = factor if prod is None else prod @ factor
            out.append(prod)
        yield idx.T, np.stack(out, axis=1)


def effective_switch(channels, perms, control, *, cap=DEFAULT_CAP):
    """Choi matrix of the SWITCH effective channel by explicit enumeration."""
    channels, d = _validate(channels, perms)
    if control.m != perms.m:
        raise DimensionError(f"control state is {control.m}-dimensional, need {perms.m}")
    _check_cap(channels, perms, cap)
    m = perms.m
    dim = d * m * d
    acc = np.zeros((dim, dim), dtype=complex)
    for _, prods in _ordered_products(channels, perms):
        # W_s[(a, k), i] = K_k(s)[a, i], flattened in (a, k, i) order
        w = prods.transpose(0, 2, 1, 3).reshape(prods.shape[0], dim)
        acc += w.T @ w.conj()
    j = acc.reshape(d, m, d, d, m, d) * control.omega[None, :, None, None, :, None]
    out = SwitchOutput(j.reshape(dim, dim), perms.n, m, d)
    _check_cptp(out)
    return out


def _check_cptp(out, tol=TP_TOL):
    j = out.choi
    if np.max(np.abs(j - j.conj().T)) > tol:
        raise ArithmeticError("effective channel Choi matrix is not Hermitian")
    tp = np.einsum("xixj->ij", j.reshape(out.dim_out, out.d, out.dim_out, out.d))
    if np.max(np.abs(tp - np.eye(out.d))) > tol:
        raise ArithmeticError("effective channel is not trace preserving")
    if np.linalg.eigvalsh(0.5 * (j + j.conj().T))[0] < -tol:
        raise ArithmeticError("effective channel is not completely positive")


def f2_observable(out, measure=None):
    """Hermitian G with tr[(I (x) F2) S(rho)] = tr(G rho).

    ``F2 = I - |w><w|`` where ``w`` defaults to the uniform superposition.
    """
    m, d = out.m, out.d
    w = np.full(m, 1.0 / np.sqrt(m)) if measure is None else np.asarray(measure, complex)
    w = w / np.linalg.norm(w)
    f2 = np.eye(m) - np.outer(w, w.conj())
    j = out.choi.reshape(d, m, d, d, m, d)
    g = np.einsum("akialj,lk->ji", j, f2)
    return 0.5 * (g + g.conj().T)


def pn_exact(channels, perms, *, cap=DEFAULT_CAP):
    """P_n as the largest eigenvalue of the F2 observable pulled back to the input.

    The control state is the uniform superposition over the permutation set.
    """
    out = effective_switch(channels, perms, ControlState.uniform(perms.m), cap=cap)
    return float(hermitian_eigenvalues(f2_observable(out))[-1])


def sample_pure_states(d, n_random=100, seed=0):
    """Deterministic set of pure input vectors.

    Pauli eigenstates for qubits, otherwise the computational basis plus the
    quadratic-phase Fourier bases (mutually unbiased for prime d), followed by
    ``n_random`` Haar-random vectors from a seeded generator.
    """
    if d == 2:
        s = 1 / np.sqrt(2)
        vecs = [[1, 0], [0, 1], [s, s], [s, -s], [s, 1j * s], [s, -1j * s]]
    else:
        x = np.arange(d)
        omega = np.exp(2j * np.pi / d)
        vecs = list(np.eye(d))
        for k in range(d):
            for j in range(d):
                vecs.append(omega ** ((k * x * x + j * x) % d) / np.sqrt(d))
    rng = np.random.default_rng(seed)
    z = rng.normal(size=(n_random, d)) + 1j * rng.normal(size=(n_random, d))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    return np.concatenate([np.array(vecs, dtype=complex).reshape(-1, d), z])


def pn_state_dependence(channels, perms, control, *, measure=None, cap=DEFAULT_CAP,
                        n_random=100, seed=0):
    """Range of the F2 probability over input states.

    Returns ``(low, high)``: the extremes over the sampled pure states joined
    with the exact spectral extremes of the F2 observable.
    """
    out = effective_switch(channels, perms, control, cap=cap)
    g = f2_observable(out, measure)
    ev = hermitian_eigenvalues(g)
    vecs = sample_pure_states(out.d, n_random, seed)
    probs = np.real(np.einsum("si,ij,sj->s", vecs.conj(), g, vecs))
    return float(min(ev[0], probs.min())), float(max(ev[-1], probs.max()))


def s_invariance_check(channels, perms, *, atol=1e-10, cap=DEFAULT_CAP):
    """Whether every permuted Kraus product agrees across the permutation set.

    Returns ``(True, None)`` or ``(False, s)`` with ``s`` the first index tuple
    (lexicographic) for which two orders give different products.
    """
    channels, _ = _validate(channels, perms)
    _check_cap(channels, perms, cap)
    for tuples, prods in _ordered_products(channels, perms):
        diff = np.abs(prods - prods[:, :1]).max(axis=(1, 2, 3))
        bad = np.nonzero(diff > atol)[0]
        if bad.size:
            return False, tuple(int(x) for x in tuples[bad[0]])
    return True, None


def capacity_floor_check(channels, perms, control, *, atol=1e-9, cap=DEFAULT_CAP):
    """Check that an S-invariant input makes the SWITCH factorize as N (x) omega."""
    ok, _ = s_invariance_check(channels, perms, cap=cap)
    if not ok:
        raise ValueError("channels are not S-invariant")
    channels, d = _validate(channels, perms)
    composite = _product_channel(channels, perms.perms[0])
    out = effective_switch(channels, perms, control, cap=cap)
    jc = choi(composite).reshape(d, d, d, d)
    expected = np.einsum("aibj,kl->akiblj", jc, control.omega)
    return bool(np.linalg.norm(out.choi - expected.reshape(out.choi.shape)) < atol)


def _product_channel(channels, perm):
    ops = None
    for pos in perm:
        k = channels[pos].kraus
        ops = k if ops is None else np.einsum("iab,jbc->ijac", ops, k).reshape(-1, *k.shape[1:])
    return KrausChannel(ops)


def branch_choi(d, plus_choi, minus_choi, pn):
    """Choi matrix of ``(1-pn) A (x) |+><+| + pn B (x) |-><-|`` for two qudit maps.

    ``plus_choi`` and ``minus_choi`` are the (d^2 x d^2) Choi matrices of the
    normalized branch channels; ``minus_choi`` may be ``None`` when ``pn == 0``.
    """
    plus = np.full((2, 2), 0.5)
    minus = np.array([[0.5, -0.5], [-0.5, 0.5]])
    j = (1.0 - pn) * np.einsum("aibj,kl->akiblj",
                               np.asarray(plus_choi).reshape(d, d, d, d), plus)
    if minus_choi is not None and pn > 0.0:
        j = j + pn * np.einsum("aibj,kl->akiblj",
                               np.asarray(minus_choi).reshape(d, d, d, d), minus)
    return j.reshape(2 * d * d, 2 * d * d)

