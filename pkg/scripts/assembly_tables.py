"""Target-group assembly for three-component link maps S^3+S^3+S^3 -> S^n x R^{6-n}
(and any other problem given on the command line).

    python scripts/assembly_tables.py
    python scripts/assembly_tables.py --p 3 3 3 --m 6 --window 2
"""

import argparse
from dataclasses import dataclass, field

from higher_mu.invariants import LinkProblem, StableStemTable, classify_brunnian, classify_total, linking_pipeline


@dataclass
class AssemblyConfig:
    p: tuple = (3, 3, 3)
    m: int = 6
    ns: tuple = (1, 2, 3, 4)
    window: int = 1                      # levels [-W, W] when n = 1
    stems: str | None = None
    extra: list = field(default_factory=list)


def report(cfg: AssemblyConfig):
    table = StableStemTable.from_file(cfg.stems) if cfg.stems else StableStemTable.default()
    for n in cfg.ns:
        prob = LinkProblem(cfg.p, cfg.m, n)
        print(f"=== n = {n} ===")
        if n >= 2:
            print("Brunnian part:")
            print(classify_brunnian(prob, table).table_text())
        print("total invariant container:")
        window = (-cfg.window, cfg.window) if n == 1 else None
        print(classify_total(prob, table, window=window).table_text())
        pipe = linking_pipeline(LinkProblem(cfg.p[:2], cfg.m, n), table, 1)
        row = pipe.rows[0]
        print(f"pair linking coefficient: wedge {pipe.sig}, k_0 = {row.k_s}, lambda in {row.lambda_group}")
        print()


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--p", type=int, nargs="+", default=list(AssemblyConfig.p))
    ap.add_argument("--m", type=int, default=AssemblyConfig.m)
    ap.add_argument("--ns", type=int, nargs="+", default=list(AssemblyConfig.ns))
    ap.add_argument("--window", type=int, default=AssemblyConfig.window)
    ap.add_argument("--stems")
    a = ap.parse_args()
    report(AssemblyConfig(tuple(a.p), a.m, tuple(a.ns), a.window, a.stems))


if __name__ == "__main__":
    main()
