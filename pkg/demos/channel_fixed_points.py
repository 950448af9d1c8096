"""Tour of the three single-qubit noise channels.

Shows Kraus completeness across the strength range, what each channel does
to a generic state at full strength, and how the Bloch vector contracts.
"""

import numpy as np

from nvqa.channels import CHANNEL_KINDS, make_channel, apply_channel_one_qubit, ptm_from_channel
from nvqa.qstate import pure_state

# a generic single-qubit state with coherences and population imbalance
psi = np.array([np.cos(0.4), np.sin(0.4) * np.exp(0.3j)])
rho = pure_state(psi)

print("input state:")
print(np.round(rho.data, 4))

for kind in CHANNEL_KINDS:
    print(f"\n=== {kind} ===")

    defect = max(
        make_channel(kind, g).completeness_defect() for g in np.linspace(0.0, 1.0, 51)
    )
    print(f"worst completeness defect over gamma in [0, 1]: {defect:.2e}")

    out = apply_channel_one_qubit(rho, make_channel(kind, 1.0), 0)
    print("state after full-strength channel:")
    print(np.round(out.data, 4))

    # the Pauli transfer matrix makes the Bloch contraction explicit:
    # row/column order is (I, X, Y, Z)
    for g in (0.1, 0.5, 1.0):
        diag = np.diag(ptm_from_channel(make_channel(kind, g)))
        print(f"  gamma={g:.1f}  PTM diagonal = {np.round(diag, 4)}")

print("\nreading the diagonals:")
print("  phase damping kills X and Y (coherences) and keeps Z")
print("  amplitude damping shrinks everything and pumps toward |0>")
print("  depolarising shrinks X, Y, Z uniformly toward the maximally mixed state")
