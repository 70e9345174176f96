"""|K + 9L| on Gorenstein toric 3-folds.

Each audit checks that K + 3L and K + 4L are nef, that sections of K + 9L
restrict onto every invariant surface, and that the restricted curves have
genus at least 2.

Run: python3 demos/05_gorenstein_threefolds.py
"""

from torichyp.audit import gorenstein_3fold_audit
from torichyp.divisors import canonical_divisor, prime_divisor
from torichyp.fixtures import p3, quadric_cone, x1

fx = x1()
cert = gorenstein_3fold_audit(fx.fan, fx.polarization(1, 3))
print("X1:", cert.verdict, " exceptional:", cert.exceptional_rays)
for entry, check in zip(cert.genus_table, cert.surjectivity_log):
    print(f"  ray {check.ray}: h0 triple {check.triple}, leaf genus {entry.genus}")

q = quadric_cone()
cert = gorenstein_3fold_audit(q, -canonical_divisor(q))
print("quadric cone:", cert.verdict)
for check in cert.surjectivity_log:
    print(f"  ray {check.ray}: {check.triple}{'  (via small Q-factorialization)' if check.via_qfactorialization else ''}")

print("P3:", gorenstein_3fold_audit(p3(), prime_divisor(p3(), 0)).verdict)
