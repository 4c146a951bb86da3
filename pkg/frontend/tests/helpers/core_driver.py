"""Drive a core monitoring session over the exact transport the bindings use.

Reads prepared input rows from a file, pumps them through a `run --ack`
session in pipelined chunks, waits for every acknowledgement, and prints
the per-sample mean in microseconds (transport + engine, no binding layer).
"""

import subprocess
import sys
import time


def main() -> int:
    rows_path, formula, semantics = sys.argv[1], sys.argv[2], sys.argv[3]
    with open(rows_path, "r", encoding="utf-8") as fh:
        rows = fh.read().splitlines()
    proc = subprocess.Popen(
        [
            sys.executable, "-m", "stlmon", "run",
            "--input", "-", "--output", "-", "--ack",
            "--formula", formula, "--semantics", semantics,
        ],
        stdin=subprocess.PIPE,
        stdout=subprocess.PIPE,
        text=True,
    )
    proc.stdin.write("time,signal,value\n")
    proc.stdin.flush()
    proc.stdout.readline()  # output header: the core is ready

    start = time.perf_counter()
    chunk_size = 500
    written = 0
    while written < len(rows):
        chunk = rows[written: written + chunk_size]
        proc.stdin.write("\n".join(chunk) + "\n")
        proc.stdin.flush()
        written += len(chunk)
        last_row_no = written + 1  # data rows are numbered from 2
        while True:
            line = proc.stdout.readline()
            if line.startswith("#") and not line.startswith("#error"):
                if int(line[1:]) >= last_row_no:
                    break
    elapsed = time.perf_counter() - start
    proc.stdin.close()
    proc.wait()
    print(f"{elapsed * 1e6 / len(rows):.3f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
