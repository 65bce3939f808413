"""Pauli channels for which the SWITCH gives nothing.

When every reordering of the Kraus products agrees, the control qubit never
sees the order and P_n vanishes: for even n this happens exactly when the
Kraus operators commute, for odd n when there are at most two of them.

P_n > 0 is not quite enough for a classical gain though. With an even number
of copies of a channel built from two anticommuting Paulis, for instance Y
and Z, the composite is already a perfect classical channel along the X axis,
so nothing is left to gain even though P_n > 0.

Run:  python3 demos/04_where_the_switch_cannot_help.py
"""

from switchgain import PauliChannel, gain_report, pn_zero_classify, s_invariance_check
from switchgain.oracle import PermutationSet

cases = {
    "I/X mixture": [0.5, 0.5, 0.0, 0.0],
    "X/Y mixture": [0.0, 0.3, 0.7, 0.0],
    "Y/Z mixture": [0.0, 0.0, 0.05, 0.95],
    "generic": [0.5, 0.2, 0.2, 0.1],
}

for name, p in cases.items():
    ch = PauliChannel(p)
    print(name, p)
    for n in (2, 3):
        invariant, witness = s_invariance_check([ch] * n, PermutationSet.forward_backward(n))
        rep = gain_report(ch, n)
        print(f"  n={n}  class={pn_zero_classify(ch, n).value:<18} invariant={invariant!s:<5}"
              f" P_n={rep.pn:.4f}  C(N^n)={rep.capacity_composite:.4f}"
              f"  dC={rep.delta_c:.2e}  dI={rep.delta_i:.2e}")
