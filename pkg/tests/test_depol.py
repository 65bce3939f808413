import math

import numpy as np
import pytest

from switchgain.channels import DepolChannel, PauliChannel, apply_channel, choi, to_kraus
from switchgain.depol import (branches_choi, capacity_depol, capacity_depol_switch,
                              delta_c_depol, depol_branches, depol_choi,
                              depol_gain_report, min_output_entropy, n_opt_scan,
                              pn_depol)
from switchgain.numkit import DimensionError, von_neumann_entropy
from switchgain.oracle import ControlState, PermutationSet, effective_switch, pn_exact
from switchgain.pauli import classical_capacity_switch, switch_branches

P_GRID = np.round(np.arange(0, 1.0001, 0.01), 10)


def test_pn_examples():
    assert pn_depol(3, 0.0, 4) == 0
    assert pn_depol(2, 1.0, 2) == pytest.approx(3 / 8, abs=1e-15)
    for d in (2, 3, 5):
        for n in (2, 3, 6):
            vals = [pn_depol(d, p, n) for p in P_GRID]
            assert np.all(np.diff(vals) >= -1e-15)


@pytest.mark.parametrize("args", [(1, 0.5, 2), (2, -0.1, 2), (2, 1.1, 2), (2, 0.5, 0), (2.5, 0.5, 2)])
def test_domain_errors(args):
    with pytest.raises(ValueError):
        pn_depol(*args)


def test_dimension_error_type():
    with pytest.raises(DimensionError):
        depol_branches(1, 0.5, 2)


def test_branches_examples():
    br = depol_branches(4, 0.0, 3)
    assert br.pn == 0 and br.lambda1 == 0 and br.lambda2 is None
    br = depol_branches(2, 1.0, 2)
    assert br.lambda2 == pytest.approx(4 / 3, abs=1e-14)
    pauli = switch_branches(PauliChannel([0.25] * 4), 2)
    assert np.allclose(pauli.phi_minus.p, [0, 1 / 3, 1 / 3, 1 / 3])


def test_branch_ranges_on_grid():
    for d in range(2, 9):
        bound = d * d / (d * d - 1)
        for n in range(1, 17):
            for p in P_GRID:
                br = depol_branches(d, p, n)
                assert 0 <= br.pn <= 0.5
                assert -1e-12 <= br.lambda1 <= 1 + 1e-12
                if br.lambda2 is not None:
                    assert 1 - 1e-9 <= br.lambda2 <= bound + 1e-9


def test_mixing_identity():
    for d in (2, 3, 5):
        for n in (2, 3, 4, 7):
            for p in (0.05, 0.3, 0.8, 1.0):
                br = depol_branches(d, p, n)
                mix = (1 - br.pn) * depol_choi(d, br.lambda1)
                if br.lambda2 is not None:
                    mix = mix + br.pn * depol_choi(d, br.lambda2)
                target = depol_choi(d, 1 - (1 - p) ** n)
                assert np.linalg.norm(mix - target) < 1e-10


def test_depol_choi_matches_kraus():
    for d, p in ((2, 0.3), (3, 0.9)):
        assert np.allclose(depol_choi(d, p), choi(to_kraus(DepolChannel(d, p))), atol=1e-12)


def test_oracle_equivalence_small():
    for d, n in ((2, 2), (2, 3), (3, 2)):
        perms = PermutationSet.forward_backward(n)
        for p in (0.1, 0.5, 0.9):
            out = effective_switch([DepolChannel(d, p)] * n, perms, ControlState.uniform(2))
            br = depol_branches(d, p, n)
            assert np.linalg.norm(out.choi - branches_choi(br)) < 1e-10
            assert abs(pn_exact([DepolChannel(d, p)] * n, perms) - br.pn) < 1e-10


def test_min_output_entropy_matches_spectrum(rng):
    for d in (2, 3, 4):
        for lam in (0.0, 0.3, 1.0, d * d / (d * d - 1)):
            v = rng.normal(size=d) + 1j * rng.normal(size=d)
            v /= np.linalg.norm(v)
            rho = (1 - lam) * np.outer(v, v.conj()) + lam * np.eye(d) / d
            assert min_output_entropy(d, lam) == pytest.approx(von_neumann_entropy(rho), abs=1e-9)
    with pytest.raises(ValueError):
        min_output_entropy(2, 1.5)
    with pytest.raises(ValueError):
        min_output_entropy(3, -0.1)


def test_capacity_examples():
    for d in (2, 3, 7):
        assert capacity_depol(d, 0.0, 3) == pytest.approx(math.log2(d))
        assert capacity_depol_switch(depol_branches(d, 0.0, 3)) == pytest.approx(math.log2(d))
    for n in (2, 3):
        for p in np.linspace(0, 1, 21):
            pauli = PauliChannel([1 - 3 * p / 4, p / 4, p / 4, p / 4])
            a = capacity_depol_switch(depol_branches(2, p, n))
            b = classical_capacity_switch(switch_branches(pauli, n))
            assert abs(a - b) < 1e-12
    assert capacity_depol_switch(depol_branches(2, 1.0, 2)) == pytest.approx(0.0488, abs=1e-4)


def test_apply_composite_matches_capacity_formula():
    # the n-fold composition is depolarizing with strength 1 - (1-p)^n
    d, p, n = 3, 0.35, 3
    k = to_kraus(DepolChannel(d, p))
    rho = np.diag([1.0, 0, 0]).astype(complex)
    for _ in range(n):
        rho = apply_channel(k, rho)
    assert capacity_depol(d, p, n) == pytest.approx(math.log2(d) - von_neumann_entropy(rho))


def test_delta_c_examples():
    assert delta_c_depol(2, 0.0, 2) == 0
    assert abs(delta_c_depol(2, 1.0, 3)) < 1e-12
    assert delta_c_depol(2, 1.0, 2) == pytest.approx(0.048794940695398525, abs=1e-12)


def test_delta_c_zero_set():
    for d in (2, 3, 6):
        for n in range(1, 9):
            for p in P_GRID:
                g = delta_c_depol(d, p, n)
                zero = p == 0 or n == 1 or (p == 1 and n % 2 == 1)
                assert (abs(g) < 1e-12) == zero, (d, n, p, g)


def test_n_opt_examples():
    assert n_opt_scan(2, 0.5)[0] == 2
    assert 8 <= n_opt_scan(2, 0.1)[0] <= 12
    opt, table = n_opt_scan(2, 0.2, n_max=10)
    assert len(table) == 10 and table[opt - 1] == max(table)
    seq = [delta_c_depol(d, 1.0, 2) for d in (2, 4, 8, 16)]
    assert all(a > b for a, b in zip(seq, seq[1:]))
    assert seq[-1] < 1e-3
    with pytest.raises(ValueError):
        n_opt_scan(2, 0.5, n_max=65)


def test_n_opt_ties_resolve_to_smallest():
    # p = 0: every gain is zero
    assert n_opt_scan(3, 0.0, n_max=8)[0] == 1


def test_gain_decreases_in_n_for_small_d_at_055():
    for d in (2, 3, 4, 5):
        vals = [delta_c_depol(d, 0.55, n) for n in range(2, 9)]
        assert all(a > b for a, b in zip(vals, vals[1:]))


def test_gain_report_keys():
    rep = depol_gain_report(3, 0.4, 2)
    assert rep["delta_c"] == pytest.approx(rep["capacity_switch"] - rep["capacity_composite"])
    assert {"pn", "lambda1", "lambda2", "d", "n", "p"} <= set(rep)
