"""One trace, four semantics.

The same specification G[0,3](x > 0) over the same eight samples, monitored
under every semantics side by side: delayed modes wait until the window is
fully covered, the eager mode falsifies at the first offending sample, and
RoSI tracks the tightening enclosure in between.
"""

import stlmon

TRACE = [(0, 0.8), (1, 0.6), (2, 0.9), (3, 0.4), (4, -0.3), (5, 0.2), (6, 0.7), (7, 0.5)]

for semantics in ["delayed-quantitative", "delayed-qualitative", "eager-qualitative", "rosi"]:
    monitor = stlmon.Monitor("G[0, 3] (x > 0)", semantics=semantics)
    print(f"--- {semantics} ---")
    for t, value in TRACE:
        output = monitor.update("x", value, float(t))
        for event in output:
            flag = "final" if event.final else "open "
            print(f"  after x@{t}: [{flag}] {event}")
    print()

# Things to notice:
#  * both delayed modes emit t exactly when the trace reaches t+3;
#  * eager reports False for t=1..4 the moment x@4 = -0.3 lands, three
#    samples before the delayed modes can say so for t=2..4;
#  * RoSI's verdict for each t starts as (-inf, smallest-so-far) and
#    narrows to the point equal to the delayed robustness.
