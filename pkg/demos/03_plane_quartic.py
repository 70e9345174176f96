"""The smallest case: curves in |K + 7H| on the plane.

K + 7H = 4H, so a general member is a smooth quartic of genus 3 and the audit
certifies hyperbolicity.  One step lower, 3H gives elliptic curves and no
admissible decomposition N + 4L exists.

Run: python3 demos/03_plane_quartic.py
"""

from torichyp.audit import conjecture_audit, hyperbolicity_audit, surface_general_member_genus
from torichyp.divisors import prime_divisor
from torichyp.fixtures import p2

P2 = p2()
H = prime_divisor(P2, 0)

cert = conjecture_audit(P2, H)
print("verdict:", cert.verdict, " genus table:", cert.leaf_genera(), " epsilon:", cert.epsilon)

print("genus of a cubic:", surface_general_member_genus(P2, 3 * H).genus)
for k in (1, 2):
    print(f"3H = N + 4L with L = {k}H:", hyperbolicity_audit(P2, (3 - 4 * k) * H, k * H).verdict)

# The 3n variant fails exactly on projective space.
print("3n variant on P^2:", conjecture_audit(P2, H, variant="3n").verdict)
