"""
Spectral accuracy in space
==========================

With a tiny time step the error between grids of N and 2N nodes is purely
spatial. Once the soliton is resolved the observed order keeps growing,
the signature of spectral convergence, until round-off takes over.
"""

from fkgs import RunConfig, spatial_error_table

cfg = RunConfig("ex41", "fpavf-c", alpha=2.0, beta=2.0, tau=1e-4, t_final=0.1, tol=1e-14)
table = spatial_error_table(cfg, [32, 64, 128, 256, 512])
for row in table.rows:
    order = "-" if row.order is None else f"{row.order:.2f}"
    print(f"N={int(row.param):4d}  E={row.error:.3e}  order={order}")
