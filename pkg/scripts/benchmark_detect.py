"""Time ``negscope detect`` on a synthetic corpus, repeated a few times."""

import argparse
import random
import statistics
import tempfile
import time
from pathlib import Path

from negscope.cli import main as cli_main
from negscope.corpus import dumps
from negscope.synthetic import random_record


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=10_000)
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    rng = random.Random(args.seed)
    with tempfile.TemporaryDirectory() as d:
        src = Path(d) / "in.jsonl"
        src.write_text("".join(dumps(random_record(rng, f"s{k}")) + "\n" for k in range(args.n)))
        times = []
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            code = cli_main(["detect", str(src), "-o", str(Path(d) / "out.jsonl")])
            times.append(time.perf_counter() - t0)
            if code:
                raise SystemExit(f"detect exited {code}")
    print(f"{args.n} sentences: median {statistics.median(times):.2f}s, "
          f"{args.n / statistics.median(times):.0f} sentences/s")


if __name__ == "__main__":
    main()
