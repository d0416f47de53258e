"""Run the benchmark grid and print the CSV that `paritylab bench` emits.

Run: python demos/enhancement_bench.py
"""

import io

from paritylab import run_bench, write_csv

records = run_bench(
    families=["core", "scc"],
    ks=range(1, 5),
    variants=["plain", "memo", "memo+scc"],
)

buf = io.StringIO()
write_csv(records, buf)
print(buf.getvalue(), end="")

slowest = max(records, key=lambda r: r.wall_time_ms)
print(
    f"\nslowest cell: {slowest.family} k={slowest.k} {slowest.variant} "
    f"at {slowest.wall_time_ms:.1f} ms, {slowest.total_calls} calls"
)
