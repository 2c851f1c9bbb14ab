"""
Plane waves on the torus
========================

A plane wave exp(i(x + y) - i theta t) with u = 1 solves the fractional
system when theta = (2^(alpha/2))/2 - 1. For alpha = 2 the frequency
vanishes and the wave is a steady state of the scheme; for fractional alpha
it rotates and the final-time error shows the second order of FPAVF-C.
"""

import numpy as np

from fkgs import RunConfig, closed_form_error
from fkgs.problems import plane_wave_frequency

for alpha in (2.0, 1.6, 1.4):
    errs = [closed_form_error(RunConfig("ex42", "fpavf-c", alpha, 2.0, tau=t, t_final=1.0, tol=1e-14))
            for t in (1e-2, 5e-3, 2.5e-3)]
    ratios = np.array(errs[:-1]) / np.array(errs[1:])
    print(f"alpha={alpha}: theta={plane_wave_frequency(alpha):+.4f}  errors={np.array2string(np.array(errs), precision=2)}"
          f"  ratios={np.round(ratios, 2)}")
