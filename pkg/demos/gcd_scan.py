"""
How large can gcd(F_y - 1, F_z - 1) get?
=========================================

The exponent is expected to stay below k/(k+1), up to a constant.
"""

import numpy as np

from pisot_triples import FIBONACCI, TRIBONACCI, gcd_scan

for spec, z_hi in ((FIBONACCI, 200), (TRIBONACCI, 150)):
    rep = gcd_scan(spec, 10, z_hi)
    ratios = np.array([float(r.ratio) for r in rep.records])
    print(spec)
    print("   kappa     ", rep.kappa)
    print("   max ratio ", float(rep.max_ratio))
    print("   median    ", np.median(ratios))
    print("   slack     ", float(rep.fitted_slack))
    best = max(rep.records, key=lambda r: r.ratio)
    print("   attained at y, z =", best.y, best.z, " g =", best.g)

# the Fibonacci maximum comes from shared Lucas factors:
# F_13 - 1 = F_6 L_7 and F_16 - 1 = F_9 L_7, with L_7 = 29
