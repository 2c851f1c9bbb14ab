"""
Cost of the four schemes
========================

Wall time and total fixed-point sweeps for a short soliton run. Absolute
times depend on the machine; the ordering is what matters.
"""

from fkgs import RunConfig, bench

cfg = RunConfig("ex41", tau=1e-3, t_final=2.0, n=128)
for row in bench(cfg, ["fpavf", "fpavf-c", "fpavf-p", "favf"], repeats=3):
    print(f"{row.scheme:8s} {row.wall_time:6.2f} s  {row.iterations:6d} sweeps  {row.steps} steps")
