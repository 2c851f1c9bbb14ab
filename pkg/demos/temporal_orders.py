"""
Order of accuracy in time
=========================

Successive-refinement errors E(tau) on the soliton problem. FPAVF is first
order; its symmetric composition and the other two schemes are second order.
"""

from fkgs import RunConfig, temporal_error_table

taus = [1 / 40, 1 / 80, 1 / 160, 1 / 320]
for scheme in ("fpavf", "fpavf-c", "fpavf-p", "favf"):
    cfg = RunConfig("ex41", scheme, alpha=1.7, beta=1.7, t_final=1.0, n=128, tol=1e-14)
    table = temporal_error_table(cfg, taus)
    print(scheme)
    for row in table.rows:
        order = "-" if row.order is None else f"{row.order:.3f}"
        print(f"  tau={row.param:.5f}  E={row.error:.3e}  order={order}")
