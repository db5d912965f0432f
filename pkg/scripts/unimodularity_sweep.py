"""Determinants of the basic-product matrices D_s over a grid of wedges.

    python scripts/unimodularity_sweep.py --max-r 4 --max-s 3 --max-q 4
"""

import argparse
import itertools
import time
from dataclasses import dataclass

from higher_mu.hopf import basis_matrix
from higher_mu.lie import WedgeSignature


@dataclass
class SweepConfig:
    max_r: int = 4
    max_s: int = 3
    max_n: int = 3
    max_q: int = 4


def sweep(cfg: SweepConfig):
    rows = []
    for r in range(2, cfg.max_r + 1):
        for n in range(2, cfg.max_n + 1):
            for q in itertools.product(range(2, cfg.max_q + 1), repeat=r - 1):
                sig = WedgeSignature(n, q)
                for s in range(cfg.max_s + 1):
                    m = basis_matrix(sig, s).matrix
                    rows.append((sig, s, m.shape[0], m.det))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for name, value in vars(SweepConfig()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=int, default=value)
    cfg = SweepConfig(**vars(ap.parse_args()))
    start = time.perf_counter()
    rows = sweep(cfg)
    counts = {}
    for _, _, _, det in rows:
        counts[det] = counts.get(det, 0) + 1
    bad = [(str(sig), s, det) for sig, s, _, det in rows if det not in (1, -1)]
    print(f"{len(rows)} matrices in {time.perf_counter() - start:.2f}s; determinant histogram {dict(sorted(counts.items()))}")
    print("all unimodular" if not bad else f"NOT unimodular: {bad}")
    # which parity patterns give -1
    neg = sorted({(sig.n % 2, tuple(x % 2 for x in sig.q), s) for sig, s, _, det in rows if det == -1})
    print(f"(n mod 2, q mod 2, s) with det -1: {neg}")


if __name__ == "__main__":
    main()
