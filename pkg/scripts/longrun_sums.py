"""Long-run reproduction of the conjecture partial sums.

The desk-scale tests pin the sums over the first 200 confirmed extremal
primes. Reaching the headline figures (sum 1/e_k over k <= 2000 near 1.090,
and sum 1/ln e_k past 100) needs a sieve limit around 3.7e11, which is an
overnight job, so it lives here as a checkpointed driver instead of a test:

    python3 scripts/longrun_sums.py --limit 3.7*10^11 --checkpoint sums.ck \
        --chunk 10^9

Interrupt freely; rerunning with the same checkpoint resumes exactly
(compensated-sum state round-trips bit for bit).
"""

import argparse
import os
import sys
import time

from primehull.analysis import conjecture_sums, records_from_state
from primehull.cli import parse_limit
from primehull.hull_engine import compute_extremal
from primehull.persistence import fmt12, load_checkpoint, save_checkpoint


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", required=True, help="final sieve limit (e.g. 3.7*10^11)")
    ap.add_argument("--checkpoint", required=True, help="checkpoint path, resumed if present")
    ap.add_argument("--chunk", default="10^9", help="limit increment per checkpoint write")
    args = ap.parse_args()

    limit = parse_limit(args.limit)
    chunk = parse_limit(args.chunk)
    state = None
    if os.path.exists(args.checkpoint):
        state, _ = load_checkpoint(args.checkpoint)
        print(f"resuming from {state.last_processed}")

    done = state.last_processed if state else 0
    while done < limit:
        target = min(done + chunk, limit)
        t0 = time.perf_counter()
        state = compute_extremal(target, state=state).state
        save_checkpoint(state, args.checkpoint, config_echo={"limit": limit})
        done = state.last_processed
        confirmed = records_from_state(state)
        sums = conjecture_sums(confirmed)
        print(
            f"x={done}  confirmed k={len(confirmed)}  "
            f"sum 1/e_k={fmt12(sums.sum_inv)}  sum 1/ln e_k={fmt12(sums.sum_invlog)}  "
            f"({time.perf_counter() - t0:.1f}s)",
            flush=True,
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
