import json

import numpy as np
import pytest

from switchgain.channels import (DepolChannel, KrausChannel, PauliChannel, apply_channel,
                                 channel_from_spec, channel_to_spec, channels_equal, choi,
                                 compose, depol_to_kraus, eigs_to_pauli, pauli_power,
                                 pauli_to_kraus, pauli_transfer_eigenvalues, to_kraus,
                                 weyl_basis)
from switchgain.numkit import PAULI, DimensionError

I2, X, Y, Z = PAULI
BELL = np.array([[1, 0, 0, 1], [0, 1, 1, 0], [0, 1j, -1j, 0], [1, 0, 0, -1]]) / np.sqrt(2)


def random_state(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def test_kraus_channel_validation():
    with pytest.raises(ValueError):
        KrausChannel([np.eye(2), np.eye(2)])
    with pytest.raises(DimensionError):
        KrausChannel(np.zeros((0, 2, 2)))
    ch = KrausChannel(np.eye(3))
    assert (ch.dim_in, ch.dim_out, len(ch)) == (3, 3, 1)


def test_pauli_channel_validation():
    with pytest.raises(ValueError):
        PauliChannel([0.5, 0.5, 0.1, 0])
    with pytest.raises(ValueError):
        PauliChannel([0.5, 0.5])
    with pytest.raises(ValueError):
        DepolChannel(1, 0.5)
    with pytest.raises(ValueError):
        DepolChannel(2, 1.5)


def test_pauli_to_kraus_examples(rng):
    assert len(pauli_to_kraus(PauliChannel([1, 0, 0, 0]))) == 1
    k = pauli_to_kraus(PauliChannel([0.5, 0.5, 0, 0])).kraus
    assert np.allclose(k, [I2 / np.sqrt(2), X / np.sqrt(2)])
    p = rng.dirichlet(np.ones(4))
    ops = pauli_to_kraus(PauliChannel(p)).kraus
    assert np.allclose(np.einsum("kai,kaj->ij", ops.conj(), ops), I2, atol=1e-12)


def test_depol_to_kraus_examples():
    assert len(depol_to_kraus(DepolChannel(2, 0))) == 1
    ops = depol_to_kraus(DepolChannel(2, 1)).kraus
    assert len(ops) == 4
    assert channels_equal(KrausChannel(ops), PauliChannel([0.25] * 4))
    ops = depol_to_kraus(DepolChannel(3, 0.4)).kraus
    assert len(ops) == 10
    assert np.allclose(np.einsum("kai,kaj->ij", ops.conj(), ops), np.eye(3), atol=1e-12)


def test_weyl_basis_is_orthonormal():
    for d in (2, 3, 5):
        u = weyl_basis(d)
        gram = np.einsum("aij,bij->ab", u.conj(), u) / d
        assert np.allclose(gram, np.eye(d * d), atol=1e-12)


@pytest.mark.parametrize("d,p", [(2, 0.3), (3, 0.4), (4, 1.0), (5, 0.77)])
def test_depol_action_matches_definition(rng, d, p):
    rho = random_state(rng, d)
    out = apply_channel(to_kraus(DepolChannel(d, p)), rho)
    assert np.allclose(out, (1 - p) * rho + p * np.eye(d) / d, atol=1e-12)


def test_apply_channel_examples(rng):
    rho = random_state(rng, 2)
    assert np.allclose(apply_channel(KrausChannel(I2), rho), rho)
    assert np.allclose(apply_channel(to_kraus(PauliChannel([0.25] * 4)), rho), I2 / 2)
    out = apply_channel(to_kraus(PauliChannel([0.7, 0.3, 0, 0])), np.diag([1, 0]))
    assert np.allclose(out, np.diag([0.7, 0.3]))
    with pytest.raises(DimensionError):
        apply_channel(KrausChannel(I2), np.eye(3) / 3)


def test_choi_examples():
    omega = np.array([1, 0, 0, 1])
    assert np.allclose(choi(KrausChannel(I2)), np.outer(omega, omega))
    assert np.allclose(choi(to_kraus(PauliChannel([0.25] * 4))), np.eye(4) / 2)
    j = choi(to_kraus(PauliChannel([0.5, 0.5, 0, 0])))
    assert np.sum(np.linalg.eigvalsh(j) > 1e-12) == 2


def test_choi_is_bell_diagonal(rng):
    for _ in range(20):
        p = rng.dirichlet(np.ones(4))
        j = choi(to_kraus(PauliChannel(p)))
        # row b of BELL is the conjugated Bell vector with sigma_b applied
        m = BELL.conj() @ j @ BELL.T
        assert np.allclose(m, np.diag(2 * p), atol=1e-12)


def test_choi_trace_condition(rng):
    ops = depol_to_kraus(DepolChannel(3, 0.3))
    j = choi(ops).reshape(3, 3, 3, 3)
    assert np.allclose(np.einsum("aiaj->ij", j), np.eye(3))


def test_transfer_eigenvalue_examples():
    assert np.allclose(pauli_transfer_eigenvalues(PauliChannel([1, 0, 0, 0])), 1)
    assert np.allclose(pauli_transfer_eigenvalues(PauliChannel([0.25] * 4)), 0)
    lam = pauli_transfer_eigenvalues(PauliChannel([0.7, 0.3, 0, 0]))
    assert np.allclose(lam, [1, 0.4, 0.4])


def test_eigs_to_pauli_examples(rng):
    assert np.allclose(eigs_to_pauli([1, 1, 1]).p, [1, 0, 0, 0])
    assert np.allclose(eigs_to_pauli([0, 0, 0]).p, [0.25] * 4)
    for _ in range(50):
        p = rng.dirichlet(np.ones(4))
        back = eigs_to_pauli(pauli_transfer_eigenvalues(PauliChannel(p))).p
        assert np.max(np.abs(back - p)) < 1e-14
    with pytest.raises(ValueError):
        eigs_to_pauli([1, 1, -1])


def test_pauli_power_examples(rng):
    ch = PauliChannel(rng.dirichlet(np.ones(4)))
    assert np.allclose(pauli_power(ch, 1).p, ch.p)
    assert np.allclose(pauli_power(PauliChannel([0.7, 0.3, 0, 0]), 2).p, [0.58, 0.42, 0, 0])
    k = to_kraus(ch)
    cube = compose(k, compose(k, k))
    assert channels_equal(cube, pauli_power(ch, 3), atol=1e-12)


def test_pauli_power_semigroup(rng):
    for _ in range(20):
        ch = PauliChannel(rng.dirichlet(np.ones(4)))
        m, n = (int(x) for x in rng.integers(1, 6, size=2))
        nested = pauli_power(pauli_power(ch, m), n).p
        assert np.max(np.abs(nested - pauli_power(ch, m * n).p)) < 1e-12
        joined = compose(to_kraus(pauli_power(ch, m)), to_kraus(pauli_power(ch, n)))
        assert channels_equal(joined, pauli_power(ch, m + n), atol=1e-12)


def test_compose_examples():
    ident = KrausChannel(I2)
    assert channels_equal(compose(ident, ident), ident)
    flip = to_kraus(PauliChannel([0.7, 0.3, 0, 0]))
    twice = compose(flip, flip)
    assert len(twice) == 4
    assert channels_equal(twice, pauli_power(PauliChannel([0.7, 0.3, 0, 0]), 2), atol=1e-12)
    with pytest.raises(DimensionError):
        compose(ident, KrausChannel(np.eye(3)))


def test_compose_order():
    # b acts first: an X rotation followed by a projection onto |0>
    measure = KrausChannel([np.diag([1, 0]), np.array([[0, 1], [0, 0]])])
    flip = KrausChannel(X)
    out = apply_channel(compose(flip, measure), np.diag([1, 0]))
    assert np.allclose(out, np.diag([0, 1]))


def test_channel_spec_round_trip(rng):
    p = rng.dirichlet(np.ones(4))
    for ch in (PauliChannel(p), DepolChannel(3, 0.25), to_kraus(PauliChannel(p))):
        spec = channel_to_spec(ch)
        back = channel_from_spec(json.dumps(spec))
        assert channels_equal(back, ch)


def test_channel_spec_nested_matrix_rows():
    s = 1 / np.sqrt(2)
    spec = {"kind": "kraus", "dim_in": 2, "dim_out": 2,
            "matrices": [[[[s, 0], [0, 0]], [[0, 0], [s, 0]]],
                         [[[0, 0], [s, 0]], [[s, 0], [0, 0]]]]}
    assert channels_equal(channel_from_spec(spec), PauliChannel([0.5, 0.5, 0, 0]))


@pytest.mark.parametrize("spec", [
    {"kind": "pauli"},
    {"kind": "nope"},
    {"kind": "pauli", "p": [1, 1, 0, 0]},
    {"kind": "kraus", "dim_in": 2, "dim_out": 2, "matrices": [[[1, 0]]]},
    [1, 2],
])
def test_channel_spec_errors(spec):
    with pytest.raises(ValueError):
        channel_from_spec(spec)
