"""Causal gains of the quantum SWITCH for Pauli and qudit depolarizing channels."""

__version__ = "0.1.0"

from .bb84 import (BB84Channel, ProtocolReport, bb84_as_pauli, crossover_scan,
                   private_upper_bound, protocol_report, sigma_y_conjugate)
from .channels import (DepolChannel, KrausChannel, PauliChannel, apply_channel,
                       channel_from_spec, channel_to_spec, channels_equal, choi,
                       compose, pauli_power, to_kraus)
from .depol import (DepolBranches, capacity_depol, capacity_depol_switch,
                    delta_c_depol, depol_branches, n_opt_scan, pn_depol)
from .oracle import (ControlState, EnumerationCapError, PermutationSet, SwitchOutput,
                     capacity_floor_check, effective_switch, pn_exact,
                     pn_state_dependence, s_invariance_check)
from .pauli import (BranchCoeffs, GainReport, PnZeroClass, SwitchBranches,
                    branch_coeffs, coeff_d, coeff_e, delta_c, delta_i, gain_report,
                    pn_pauli, pn_zero_classify, sign_properties_check,
                    switch_branches)

__all__ = [name for name in dir() if not name.startswith("_")]
