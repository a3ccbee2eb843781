"""Compare the standard-deviation and interval forms of position/momentum uncertainty.

A Gaussian packet is split into two bumps that are pulled apart. With equal
weights both products grow with the separation, because the interval has to
cover both bumps. A far bump carrying less than the tail probability (about
7.9%) is different: it inflates the standard deviation, and with it the
Kennard product, but the interval simply leaves it in the tail.

Run with ``python3 demos/kennard_versus_interval.py``.
"""

from certainty import kennard, uncertainty_xp
from certainty.models import bimodal_packet, gaussian_packet, make_lattice

lat = make_lattice(256, 256.0)

print("state                          Kennard product   interval product")
rows = [("single Gaussian, sigma 6", gaussian_packet(lat, 0.0, 0.0, 6.0))]
for sep in (20, 60, 120):
    rows.append((f"two bumps {sep:3d} apart", bimodal_packet(lat, sep, 0.5, 6.0, x0=-sep / 2)))
rows.append(("5% bump 100 apart", bimodal_packet(lat, 100, 0.05, 6.0, x0=-50)))

for label, psi in rows:
    k = kennard(psi, lat.X, lat.P)
    u = uncertainty_xp(psi, lat.X_measure, lat.P)
    print(f"{label:30s} {k.lhs:15.4f} {u.lhs:18.4f}")

print("Kennard bound: 0.5   interval bound: 1.0 (units of hbar)")
