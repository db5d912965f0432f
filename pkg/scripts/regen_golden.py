"""Regenerate the CLI golden files from tests/golden/cases.json.

Run from anywhere; commands execute with tests/golden as working directory,
in file order (later cases may read earlier outputs).
"""

import io
import json
import os
from pathlib import Path

from higher_mu.cli import run

GOLDEN = Path(__file__).resolve().parent.parent / "tests" / "golden"


def run_case(args):
    out, err = io.StringIO(), io.StringIO()
    code = run(args, out, err)
    return code, out.getvalue(), err.getvalue()


def main():
    os.chdir(GOLDEN)
    cases = json.loads(Path("cases.json").read_text())
    for case in cases:
        code, out, err = run_case(case["args"])
        Path(f"{case['name']}.stdout").write_text(out, newline="\n")
        Path(f"{case['name']}.stderr").write_text(err, newline="\n")
        Path(f"{case['name']}.exit").write_text(f"{code}\n", newline="\n")
        print(f"{case['name']:<28} exit {code}")


if __name__ == "__main__":
    main()
