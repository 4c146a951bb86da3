"""Quick start: parameterized formulas, a RoSI monitor, streaming verdicts.

A plant must keep its temperature below a configurable limit for the next
five seconds, and whenever pressure exceeds 10 bar the relief valve must
open within two seconds.  We watch both at once and read off the verdict
interval as soon as the first samples arrive.
"""

import stlmon

phi1 = stlmon.parse_formula("G[0, 5] (temp < $MAX_TEMP)")
phi2 = stlmon.parse_formula("pressure > 10.0 -> F[0, 2] valve_open == 1.0")
phi = stlmon.parse_formula("phi1 and phi2", env={"phi1": phi1, "phi2": phi2})

print("formula:       ", phi)
print("temporal depth:", stlmon.temporal_depth(phi), "seconds")
print("variables:     ", sorted(stlmon.free_variables(phi)))
print()

monitor = stlmon.Monitor(phi, semantics="Rosi", variables={"MAX_TEMP": 120.0})

# Verdicts appear only once every signal has reported: the first two
# updates buffer, the third one evaluates t=0.
for signal, value in [("temp", 125.5), ("pressure", 15.0), ("valve_open", 1.0)]:
    output = monitor.update(signal, value, 0.0)
    print(f"update {signal:>10} = {value:<6} ->", str(output) or "(no verdicts yet)")

# The interval [-inf, -5.5] says: already at least 5.5 below the margin
# (the temperature limit is violated by 5.5 degrees), and future samples
# can only make it worse, never better than -5.5.
print()
print("temperature margin so far:", stlmon.atom_robustness(stlmon.Cmp.LT, 125.5, 120.0))
