"""How many noisy copies should be switched?

For a qubit depolarizing channel with small error p, the classical gain of
the SWITCH peaks near n = 1/p copies. Once p reaches 1/2 the best choice is
always two. The gain at p = 1 also shrinks as the dimension grows.

Run:  python3 demos/02_how_many_copies.py
"""

from switchgain import delta_c_depol, n_opt_scan

print(" p      n_opt   p*n_opt   best gain")
for p in (0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.8):
    n_opt, table = n_opt_scan(2, p)
    print(f"{p:4.2f}   {n_opt:5d}   {p * n_opt:7.2f}   {max(table):.3e}")

print("\ncompletely depolarizing pair (p = 1, n = 2) against dimension")
for d in (2, 3, 4, 8, 16, 32):
    print(f"  d = {d:2d}   gain = {delta_c_depol(d, 1.0, 2):.3e}")

print("\np = 0.55: gain against n for a few dimensions")
for d in (2, 5, 8):
    row = "  ".join(f"{delta_c_depol(d, 0.55, n):.4f}" for n in range(2, 9))
    print(f"  d = {d}: {row}")
