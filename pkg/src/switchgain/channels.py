"""Channel representations: Kraus, Pauli and qudit depolarizing channels.

Kraus sets are stored stacked as an array of shape ``(K, dim_out, dim_in)``.
Choi matrices use the convention ``J = sum_ij N(|i><j|) (x) |i><j|``, i.e. the
output factor first and the input factor second, with an unnormalized
maximally entangled vector.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .numkit import PAULI, DimensionError, as_cmatrix

TP_TOL = 1e-9


@dataclass(frozen=True)
class KrausChannel:
    """A CPTP map given by Kraus operators ``kraus[i]`` of shape (dim_out, dim_in)."""

    kraus: np.ndarray
    dim_in: int = field(init=False)
    dim_out: int = field(init=False)

    def __post_init__(self):
        ops = np.array(self.kraus, dtype=complex)
        if ops.ndim == 2:
            ops = ops[None]
        if ops.ndim != 3 or ops.shape[0] == 0:
            raise DimensionError(f"expected a stack of Kraus matrices, got shape {ops.shape}")
        if not np.all(np.isfinite(ops)):
            raise ValueError("Kraus operators have non-finite entries")
        gram = np.einsum("kai,kaj->ij", ops.conj(), ops)
        if np.max(np.abs(gram - np.eye(ops.shape[2]))) > TP_TOL:
            raise ValueError("Kraus operators are not trace preserving")
        ops.setflags(write=False)
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "dim_out", ops.shape[1])
        object.__setattr__(self, "dim_in", ops.shape[2])

    def __len__(self):
        return self.kraus.shape[0]


@dataclass(frozen=True)
class PauliChannel:
    """rho -> sum_i p[i] sigma_i rho sigma_i over (I, X, Y, Z)."""

    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float).ravel()
        if p.shape != (4,):
            raise ValueError("a Pauli channel needs exactly four probabilities")
        if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"{p} is not a probability vector")
        p = np.clip(p, 0.0, None)
        p.setflags(write=False)
        object.__setattr__(self, "p", p)


@dataclass(frozen=True)
class DepolChannel:
    """rho -> (1 - p) rho + p tr(rho) I / d."""

    d: int
    p: float

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise ValueError("dimension must be an integer >= 2")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("depolarizing probability must lie in [0, 1]")
        object.__setattr__(self, "d", int(self.d))
        object.__setattr__(self, "p", float(self.p))


def pauli_to_kraus(ch):
    ops = [np.sqrt(pi) * PAULI[i] for i, pi in enumerate(ch.p) if pi > 0.0]
    return KrausChannel(np.array(ops))


def weyl_basis(d):
    """Heisenberg-Weyl unitaries X^a Z^b, ordered by (a, b)."""
    omega = np.exp(2j * np.pi / d)
    shift = np.roll(np.eye(d), 1, axis=0)
    clock = np.diag(omega ** np.arange(d))
    return np.array(
        [np.linalg.matrix_power(shift, a) @ np.linalg.matrix_power(clock, b)
         for a in range(d) for b in range(d)]
    )


def depol_to_kraus(ch):
    d, p = ch.d, ch.p
    ops = []
    if p < 1.0:
        ops.append(np.sqrt(1.0 - p) * np.eye(d))
    if p > 0.0:
        ops.extend(np.sqrt(p) / d * weyl_basis(d))
    return KrausChannel(np.array(ops))


def to_kraus(ch):
    if isinstance(ch, KrausChannel):
        return ch
    if isinstance(ch, PauliChannel):
        return pauli_to_kraus(ch)
    if isinstance(ch, DepolChannel):
        return depol_to_kraus(ch)
    raise TypeError(f"cannot convert {type(ch).__name__} to Kraus form")


def apply_channel(ch, rho):
    rho = as_cmatrix(rho)
    if rho.shape != (ch.dim_in, ch.dim_in):
        raise DimensionError(f"state of shape {rho.shape} does not match dim_in={ch.dim_in}")
    k = ch.kraus
    return np.einsum("kai,ij,kbj->ab", k, rho, k.conj())


def choi(ch):
    """Choi matrix (ch (x) id)(|Omega><Omega|) of a Kraus channel."""
    vecs = ch.kraus.reshape(len(ch), -1)
    return vecs.T @ vecs.conj()


def choi_distance(a, b):
    return float(np.linalg.norm(np.asarray(a) - np.asarray(b)))


def channels_equal(a, b, atol=1e-9):
    """Representation-independent equality: Frobenius distance of Choi matrices."""
    return choi_distance(choi(to_kraus(a)), choi(to_kraus(b))) < atol


def pauli_transfer_eigenvalues(ch):
    p0, p1, p2, p3 = ch.p
    rest = p1 + p2 + p3
    return np.array([p0 + 2 * p1 - rest, p0 + 2 * p2 - rest, p0 + 2 * p3 - rest])


def eigs_to_pauli(lam):
    l1, l2, l3 = (float(x) for x in lam)
    p = np.array([
        1 + l1 + l2 + l3,
        1 + l1 - l2 - l3,
        1 - l1 + l2 - l3,
        1 - l1 - l2 + l3,
    ]) / 4.0
    if np.any(p < -1e-12):
        raise ValueError(f"eigenvalues {lam} do not define a CP Pauli channel")
    p = np.clip(p, 0.0, None)
    return PauliChannel(p / p.sum())


def pauli_power(ch, n):
    """The n-fold composition of a Pauli channel with itself."""
    if n < 1:
        raise ValueError("n must be positive")
    return eigs_to_pauli(pauli_transfer_eigenvalues(ch) ** n)


def compose(a, b):
    """Kraus form of ``a o b`` (``b`` acts first)."""
    if a.dim_in != b.dim_out:
        raise DimensionError("channels are not composable")
    ops = np.einsum("iab,jbc->ijac", a.kraus, b.kraus)
    return KrausChannel(ops.reshape(-1, a.dim_out, b.dim_in))


# --------------------------------------------------------------------------- #
#                              ChannelSpec files                              #
# --------------------------------------------------------------------------- #

def _parse_matrix(m, dim_out, dim_in):
    arr = np.array(m, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError("matrix entries must be [re, im] pairs")
    z = arr[..., 0] + 1j * arr[..., 1]
    if z.size != dim_out * dim_in:
        raise ValueError(f"matrix has {z.size} entries, expected {dim_out * dim_in}")
    return z.reshape(dim_out, dim_in)


def channel_from_spec(spec):
    """Build a channel from a ChannelSpec dict or JSON string.

    Accepted forms::

        {"kind": "pauli", "p": [p0, p1, p2, p3]}
        {"kind": "depolarizing", "d": d, "p": p}
        {"kind": "kraus", "dim_in": di, "dim_out": do,
         "matrices": [[[re, im], ...], ...]}

    Kraus matrices are row-major, either flat or as nested rows.
    """
    if isinstance(spec, str):
        spec = json.loads(spec)
    if not isinstance(spec, dict):
        raise ValueError("channel spec must be a JSON object")
    kind = spec.get("kind")
    try:
        if kind == "pauli":
            return PauliChannel(spec["p"])
        if kind == "depolarizing":
            return DepolChannel(spec["d"], spec["p"])
        if kind == "kraus":
            di, do = int(spec["dim_in"]), int(spec["dim_out"])
            ops = [_parse_matrix(m, do, di) for m in spec["matrices"]]
            return KrausChannel(np.array(ops))
    except KeyError as exc:
        raise ValueError(f"channel spec of kind {kind!r} is missing field {exc}") from None
    raise ValueError(f"unknown channel kind {kind!r}")


def channel_to_spec(ch):
    if isinstance(ch, PauliChannel):
        return {"kind": "pauli", "p": [float(x) for x in ch.p]}
    if isinstance(ch, DepolChannel):
        return {"kind": "depolarizing", "d": ch.d, "p": ch.p}
    if isinstance(ch, KrausChannel):
        return {
            "kind": "kraus",
            "dim_in": ch.dim_in,
            "dim_out": ch.dim_out,
            "matrices": [[[z.real, z.imag] for z in m.ravel()] for m in ch.kraus],
        }
    raise TypeError(f"no spec form for {type(ch).__name__}")
