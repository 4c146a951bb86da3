"""Asynchronous signals, zero-order hold, and the frontier.

Two sensors report at different rates: a fast one (x, every second) and a
slow one (y, every four seconds).  Evaluation times are the union of both
clocks, each signal is held constant between its own samples, and verdicts
for a time t wait until *both* signals have reached it.
"""

import stlmon

monitor = stlmon.Monitor("x > 0 && y > 0", semantics="delayed-quantitative")

feed = [
    ("x", 2.0, 0.0),
    ("y", 5.0, 0.0),
    ("x", 1.5, 1.0),   # y@1 is held from t=0: verdict min(1.5, 5.0)
    ("x", -0.5, 2.0),
    ("x", 3.0, 3.0),
    ("y", 0.25, 4.0),  # y catches up: t=2, 3 resolve now, then t=4
    ("x", 1.0, 4.0),
]

for signal, value, t in feed:
    output = monitor.update(signal, value, t)
    emitted = ", ".join(str(e) for e in output) or "(buffered)"
    print(f"{signal}={value:<5} @ {t}:  frontier={monitor.frontier:<4} {emitted}")

# t=1..3 cannot be judged while y's frontier is behind them, even though x
# is already known there; the moment y@4 arrives, three verdicts flush in
# time order, each using the held y value from t=0.
print()
print("batch replay produces the identical stream:")
replay = stlmon.Monitor("x > 0 && y > 0", semantics="delayed-quantitative")
print(replay.update_batch(feed))
