"""Walk a two-level state along its orbit and watch the certainty bound tighten.

The state (|0> + |1>)/sqrt(2) under H = diag(0, 1) reaches a quantum angle of
one radian at the earliest parameter the certainty relation allows, so the
slack |ds| * std(H) - hbar drops to zero there.

Run with ``python3 demos/certainty_two_level.py``.
"""

import numpy as np

from certainty import certainty_report, min_substantial_parameter, std_dev
from certainty.models import two_level
from certainty.unitary import orbit_angles

H, psi = two_level(1.0)
spread = std_dev(H, psi)
print(f"std(H) in the initial state: {spread:.6f}")

params = np.linspace(0.0, 3.0, 7)
for s, angle in zip(params, orbit_angles(H, psi, params)):
    print(f"  s = {s:4.2f}   angle = {angle:.6f} rad")

s_star = min_substantial_parameter(psi, H)
rep = certainty_report(psi, H, s_star)
print(f"first parameter with angle >= 1 rad: {s_star:.12f}")
print(f"|ds| * std(H) = {rep.lhs:.12f}, hbar = {rep.rhs:.1f}, status {rep.status}")
