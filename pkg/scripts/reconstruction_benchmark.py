"""Timed round trips: random covering-level data -> Hopf values -> reconstruction.

    python scripts/reconstruction_benchmark.py --trials 20 --max-side 5
"""

import argparse
import random
import time
from dataclasses import dataclass

from higher_mu import checks, invariants
from higher_mu.lie import WedgeSignature


@dataclass
class BenchConfig:
    trials: int = 10
    max_side: int = 5
    seed: int = 0


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, value in vars(BenchConfig()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=value)
    cfg = BenchConfig(**vars(ap.parse_args()))
    rng = random.Random(cfg.seed)
    print(f"{'r':>2} {'group':<12} {'window':<28} {'#H':>6} {'#data':>6} {'ok':>3} {'sec':>7}")
    for r in (2, 3, 4):
        for _ in range(cfg.trials):
            group = checks.random_group(rng)
            window = checks.random_window(rng, r - 1, cfg.max_side)
            sig = WedgeSignature(1, tuple(rng.randint(2, 5) for _ in range(r - 1)))
            data = checks.random_graded_data(rng, r, window, group)
            start = time.perf_counter()
            need = invariants.required_hopf_indices(window, r)
            vals = invariants.hopf_values(data, need, group)
            rec = invariants.reconstruct_kappa(vals, window, sig, group)
            ok = {k: v for k, v in rec.h_family.items() if not v.is_zero()} == data
            print(f"{r:>2} {str(group):<12} {str(window):<28} {len(need):>6} {len(data):>6} "
                  f"{'yes' if ok else 'NO':>3} {time.perf_counter() - start:>7.3f}")


if __name__ == "__main__":
    main()
