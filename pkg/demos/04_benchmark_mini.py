"""A miniature benchmark: per-sample cost and cache occupancy.

Runs a scaled-down version of the standard suite (a 2000-sample chirp
instead of 20000, three runs instead of fifty) and prints the same table
the `stlmon bench` command produces.  The interesting columns:

  * the conjunction needs no temporal caches at all (K = 0);
  * the wedge keeps the bounded-always cheap no matter the bound;
  * until caches both operands across its whole window, so K tracks 2(b+1).
"""

from stlmon.bench import ChirpSpec, format_table, generate_chirp, run_cell

steps = generate_chirp(ChirpSpec(duration=2000))

cells = [
    ("(x < 0.5) && (x > -0.5)", "delayed-qualitative"),
    ("G[0, 50] (x > 0)", "delayed-quantitative"),
    ("G[0, 500] (x > 0)", "delayed-quantitative"),
    ("(x > 0) U[0, 50] (x < 0)", "delayed-quantitative"),
    ("(x > 0) U[0, 500] (x < 0)", "delayed-quantitative"),
    ("(x > 0) U[0, 200] (x < 0)", "eager-qualitative"),
    ("(x > 0) U[0, 200] (x < 0)", "rosi"),
]

results = [run_cell(formula, sem, steps, runs=3) for formula, sem in cells]
print(format_table(results))
print()
print("note how the always-cost barely moves from b=50 to b=500 while the")
print("until-cost scales with b, and how much the eager mode saves by")
print("retiring evaluation times early.")
