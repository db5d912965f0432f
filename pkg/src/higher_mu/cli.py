"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 window inconsistency during an
inversion.  ``--json`` output always echoes the parsed input (and the stem
table, where one is used) so that a result file is self-describing.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import checks, hilton, hopf, invariants, lie, transform
from .groups import AbelianGroup, GroupElement
from .invariants import LinkProblem, StableStemTable
from .lie import WedgeSignature
from .transform import WindowInconsistency


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _window_pairs(ns) -> list[tuple[int, int]] | None:
    if not ns.window:
        return None
    return [(int(lo), int(hi)) for lo, hi in ns.window]


def _single_window(ns) -> tuple[int, int] | None:
    w = _window_pairs(ns)
    if w is None:
        return None
    if len(w) != 1:
        raise ValueError("this command takes a single --window lo hi")
    return w[0]


def _sig(ns) -> WedgeSignature:
    if ns.n is None or not ns.q:
        raise ValueError("--n and --q are required")
    return WedgeSignature(ns.n, tuple(ns.q))


def _prob(ns) -> LinkProblem:
    if not ns.p or ns.m is None or ns.n is None:
        raise ValueError("--p, --m and --n are required")
    return LinkProblem(tuple(ns.p), ns.m, ns.n)


def _table(ns) -> StableStemTable:
    if ns.stems:
        table = StableStemTable.from_file(ns.stems)
        table.source = ns.stems
        return table
    return StableStemTable.default()


def _read_json(path: str):
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"cannot read JSON input {path}: {e}") from None
    # accept a previous --json document and read its result
    if isinstance(obj, dict) and "command" in obj and "result" in obj:
        obj = obj["result"]
    return obj


def _ints(xs) -> list[str]:
    return [str(x) for x in xs]


# --------------------------------------------------------------------------
# subcommands: each returns (json payload, text)

def cmd_hilton(ns):
    sig = _sig(ns)
    if ns.k is None:
        raise ValueError("--k is required")
    window = _single_window(ns)
    rep = hilton.summand_report(sig, ns.k, window)
    preds = hilton.range_predicates(sig, ns.k, ns.s)
    payload = rep.to_json()
    payload["range_predicates"] = preds.to_json()
    text = rep.table() + "\n" + "\n".join(f"{k}: {v}" for k, v in preds.to_json().items())
    return payload, text


def cmd_perms(ns):
    if ns.r is None or ns.s is None:
        raise ValueError("--r and --s are required")
    perms = hopf.enumerate_monotone(ns.r, ns.s)
    payload = {"r": str(ns.r), "s": str(ns.s), "count": str(len(perms)),
               "permutations": [g.to_json() | {"contraction": _ints(hopf.contraction(g, ns.s))} for g in perms]}
    lines = [f"{len(perms)} {ns.s}-monotone permutations of 1..{ns.r + ns.s - 2}"]
    for g in perms:
        parts, gbar = g.decomposition
        lines.append(f"{str(g):<20} s={parts} gamma_bar={gbar} delta={hopf.contraction(g, ns.s)}")
    return payload, "\n".join(lines)


def cmd_normalize(ns):
    sig = _sig(ns)
    if ns.expr is not None:
        ns.expression, ns.expr = ns.expr, None
    if ns.expression is None:
        raise ValueError("an expression is required")
    x = lie.parse_expression(ns.expression, sig)
    nf = lie.normalize(x, sig)
    terms = []
    for word, c in nf.terms.items():
        t = {"comb": str(lie.comb(word, nf.anchor)), "outer": [g.text for g in word], "coefficient": str(c)}
        if not sig.graded or all(g.level is None for g in word):
            t["arrangement"] = _ints(g.index for g in word)
        terms.append(t)
    payload = {"expression": ns.expression, "input": str(x), "normal_form": str(nf),
               "anchor": None if nf.anchor is None else nf.anchor.text, "terms": terms}
    return payload, f"{x}\n  = {nf}"


def cmd_basis_matrix(ns):
    sig = _sig(ns)
    if ns.s is None:
        raise ValueError("--s is required")
    bm = hopf.basis_matrix(sig, ns.s)
    lines = [f"D_{ns.s} for {sig}: det = {bm.matrix.det}",
             "columns: " + " ".join("(" + ",".join(map(str, d)) + ")" for d in bm.columns)]
    for p, row in zip(bm.products, bm.matrix.rows):
        lines.append(f"{str(p.tree):<32} " + " ".join(f"{v:>3}" for v in row))
    return bm.to_json(), "\n".join(lines)


def cmd_btransform(ns):
    obj = _read_json(ns.input)
    if ns.direction == "forward":
        a = transform.SupportedSequence.from_json(obj)
        if ns.max_s is None:
            raise ValueError("--max-s is required")
        if a.arity == 1:
            vals = {(s,): v for s, v in enumerate(transform.forward_d(a, ns.max_s))}
        else:
            vals = transform.forward_Dprime(a, ns.max_s, per_axis=ns.per_axis)
        payload = transform.values_to_json(vals, a.group)
        text = "\n".join(f"s={s}: {v}" for s, v in sorted(vals.items()))
        return payload, text
    vals, group = transform.values_from_json(obj)
    window = _window_pairs(ns)
    if window is None:
        window = obj.get("window")
        if window is None:
            raise ValueError("--window is required (or a 'window' key in the input)")
        window = [(int(lo), int(hi)) for lo, hi in window]
    if not vals:
        raise ValueError("no transform values given")
    arity = len(next(iter(vals)))
    if len(window) != arity:
        raise ValueError(f"window has {len(window)} axes, values have arity {arity}")
    if arity == 1:
        size = window[0][1] - window[0][0] + 1
        missing = [s for s in range(size) if (s,) not in vals]
        if missing:
            raise ValueError(f"missing transform value at s={missing[0]}")
        top = max(s for s, in vals)
        d = [vals.get((s,), GroupElement.zero(group)) for s in range(top + 1)]
        a = transform.invert_d(d, window[0], group)
    else:
        a = transform.invert_Dprime(vals, tuple(window), group)
    text = "\n".join(f"g={g}: {v}" for g, v in a.entries.items()) or "0"
    return a.to_json(), text


def _graded_data(obj) -> tuple[dict, AbelianGroup, int]:
    group = transform._group_from_json(obj.get("group"))
    r = int(obj["r"])
    data = {}
    for e in obj.get("entries", []):
        key = (tuple(int(x) for x in e["g"]), tuple(int(x) for x in e["gamma_bar"]))
        if len(key[0]) != r - 1 or sorted(key[1]) != list(range(1, r - 1)):
            raise ValueError(f"entry {key} does not match r = {r}")
        data[key] = GroupElement.from_json(group, e["value"])
    return data, group, r


def _hopf_values_json(values: dict, group: AbelianGroup) -> dict:
    return {"group": transform.group_to_json(group),
            "values": [{"gamma": _ints(g.values), "s": str(g.s), "value": v.to_json()}
                       for g, v in sorted(values.items(), key=lambda kv: (kv[0].s, kv[0].values))]}


def cmd_hopf_eval(ns):
    if ns.expr is not None:
        sig = _sig(ns)
        if ns.s is None:
            raise ValueError("--s is required")
        nf = lie.normalize(lie.parse_expression(ns.expr, sig), sig)
        vals = hopf.evaluate_H(nf, ns.s)
        payload = {"expression": ns.expr, "s": str(ns.s), "convention_dependent": hopf.CONVENTION_DEPENDENT,
                   "values": [{"gamma": _ints(g.values)} | v.to_json() for g, v in vals.items()]}
        text = "\n".join(f"H_{ns.s},{g} = {v.coefficient} {v.source_class}" for g, v in vals.items()) or "0"
        return payload, text
    if ns.input is None:
        raise ValueError("give a graded dataset file or --expr")
    data, group, r = _graded_data(_read_json(ns.input))
    if ns.s is None and ns.max_s is None:
        raise ValueError("--s or --max-s is required")
    s_range = [ns.s] if ns.s is not None else range(ns.max_s + 1)
    values = {}
    for s in s_range:
        values.update(hopf.evaluate_H_graded(data, s, r, group))
    payload = _hopf_values_json(values, group)
    payload["r"] = str(r)
    payload["convention_dependent"] = hopf.CONVENTION_DEPENDENT
    text = "\n".join(f"H_{g.s},{g} = {v}" for g, v in sorted(values.items(), key=lambda kv: (kv[0].s, kv[0].values)))
    return payload, text


def cmd_reconstruct(ns):
    sig = _sig(ns)
    if not sig.graded:
        raise ValueError("reconstruction from Hopf values needs the core circle (n = 1)")
    obj = _read_json(ns.input)
    group = transform._group_from_json(obj.get("group"))
    window = _window_pairs(ns)
    if window is None:
        raise ValueError("--window lo hi is required once per level axis")
    values = {}
    for e in obj["values"]:
        g = hopf.MonotonePermutation(sig.r, int(e["s"]), tuple(int(x) for x in e["gamma"]))
        values[g] = GroupElement.from_json(group, e["value"])
    rec = invariants.reconstruct_kappa(values, tuple(window), sig, group)
    if ns.canonical:
        rec = rec.canonical()
    lines = [f"h_(g),gamma_bar on window {rec.window}:"]
    lines += [f"  g={g} gamma_bar={gb}: {v}" for (g, gb), v in rec.h_family.items() if not v.is_zero()]
    lines.append("Hilton components per level vector, basic products " + ", ".join(str(p.tree) for p in rec.products))
    lines += [f"  g={g}: " + ", ".join(map(str, vals)) for g, vals in rec.hilton.items()
              if any(not v.is_zero() for v in vals)]
    return rec.to_json(), "\n".join(lines)


def cmd_mu_targets(ns):
    prob = _prob(ns)
    table = _table(ns)
    max_s = 3 if ns.max_s is None else ns.max_s
    rows = []
    for s in range(max_s + 1):
        d = invariants.mu_stem(prob, s)
        rows.append({"s": str(s), "stem": str(d), "u_rs": str(hopf.u(prob.r, s)),
                     "group": str(invariants.mu_target(prob, s, table))})
    payload = {"problem": prob.to_json(), "targets": rows,
               "stems_used": invariants.stems_used(table, [invariants.mu_stem(prob, s) for s in range(max_s + 1)])}
    text = "\n".join(f"mu^({r['s']}): ({invariants.stem_label(int(r['stem']))})^{r['u_rs']} = {r['group']}" for r in rows)
    return payload, text


def cmd_pipeline(ns):
    prob = _prob(ns)
    rep = invariants.linking_pipeline(prob, _table(ns), ns.max_s)
    lines = [f"linking coefficient wedge {rep.sig}"]
    for name, ok in rep.assumptions.items():
        lines.append(f"  [{'ok' if ok else '--'}] {name}")
    for r in rep.rows:
        flag = "" if r.stable_at_s is None else f"  [{'ok' if r.stable_at_s else '--'}] at s"
        lines.append(f"  s={r.s}: k_s={r.k_s}  x{r.multiplicity} {r.lambda_group}  mu: {r.mu_group}{flag}")
    lines += [f"  caveat: {c}" for c in rep.caveats]
    return rep.to_json(), "\n".join(lines)


def cmd_classify(ns):
    prob = _prob(ns)
    table = _table(ns)
    if ns.total:
        rep = invariants.classify_total(prob, table, ns.max_s, _single_window(ns))
    else:
        rep = invariants.classify_brunnian(prob, table, ns.max_s)
    return rep.to_json(), rep.table_text()


def cmd_check(ns):
    results = checks.run_suites(ns.suite)
    lines = [r.line() for r in results]
    failed = sum(not r.ok for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    payload = {"results": [{"suite": r.suite, "ok": r.ok, "detail": r.detail} for r in results],
               "passed": str(len(results) - failed), "failed": str(failed)}
    return payload, "\n".join(lines)


COMMANDS = {
    "hilton": cmd_hilton, "perms": cmd_perms, "normalize": cmd_normalize,
    "basis-matrix": cmd_basis_matrix, "btransform": cmd_btransform, "hopf-eval": cmd_hopf_eval,
    "reconstruct": cmd_reconstruct, "mu-targets": cmd_mu_targets, "pipeline": cmd_pipeline,
    "classify": cmd_classify, "check": cmd_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="higher-mu", description="Whitehead products, Hopf invariants and mu-invariant bookkeeping")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, *, sig=False, prob=False, window=False, stems=False):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if sig:
            p.add_argument("--n", type=int)
            p.add_argument("--q", type=int, nargs="+")
        if prob:
            p.add_argument("--p", type=int, nargs="+")
            p.add_argument("--m", type=int)
            p.add_argument("--n", type=int)
            p.add_argument("--max-s", type=int, dest="max_s")
        if window:
            p.add_argument("--window", nargs=2, type=int, action="append", metavar=("LO", "HI"))
        if stems:
            p.add_argument("--stems", help="stable stem table JSON (default: bundled table)")

    p = sub.add_parser("hilton", help="Hilton summands of pi_k of a wedge")
    common(p, sig=True, window=True)
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)

    p = sub.add_parser("perms", help="s-monotone permutations with decompositions")
    common(p)
    p.add_argument("--r", type=int)
    p.add_argument("--s", type=int)

    p = sub.add_parser("normalize", help="comb normal form of a bracket expression")
    common(p, sig=True)
    p.add_argument("expression", nargs="?")
    p.add_argument("--expr", help="expression (alternative to the positional argument)")

    p = sub.add_parser("basis-matrix", help="matrix D_s of basic products in the comb basis")
    common(p, sig=True)
    p.add_argument("--s", type=int)

    p = sub.add_parser("btransform", help="binomial transform of a sequence, or its inverse")
    common(p, window=True)
    p.add_argument("direction", choices=["forward", "invert"])
    p.add_argument("input", help="sequence JSON (forward) or transform values JSON (invert)")
    p.add_argument("--max-s", type=int, dest="max_s")
    p.add_argument("--per-axis", action="store_true", dest="per_axis")

    p = sub.add_parser("hopf-eval", help="Hopf values from covering-level data or of an expression")
    common(p, sig=True)
    p.add_argument("input", nargs="?")
    p.add_argument("--expr")
    p.add_argument("--s", type=int)
    p.add_argument("--max-s", type=int, dest="max_s")

    p = sub.add_parser("reconstruct", help="covering-level data and Hilton components from Hopf values")
    common(p, sig=True, window=True)
    p.add_argument("input")
    p.add_argument("--canonical", action="store_true", help="translate to the canonical representative")

    p = sub.add_parser("mu-targets", help="target groups of mu^(s)")
    common(p, prob=True, stems=True)

    p = sub.add_parser("pipeline", help="linking-coefficient pipeline")
    common(p, prob=True, stems=True)

    p = sub.add_parser("classify", help="assembled classification group")
    common(p, prob=True, window=True, stems=True)
    p.add_argument("--total", action="store_true", help="total invariant of all sub-links")

    p = sub.add_parser("check", help="run invariant sweep suites")
    common(p)
    p.add_argument("--suite", action="append", help=f"one of: {', '.join(checks.SUITES)}")
    return parser


def _echo(ns) -> dict:
    out = {}
    for key, value in sorted(vars(ns).items()):
        if key in ("json", "command") or value is None or value is False:
            continue
        if isinstance(value, list):
            value = [[str(v) for v in x] if isinstance(x, list) else str(x) for x in value]
        elif not isinstance(value, bool):
            value = str(value)
        out[key] = value
    return out


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(list(argv))
        payload, text = COMMANDS[ns.command](ns)
        if ns.command in ("mu-targets", "pipeline", "classify"):
            header_stems = _table(ns).to_json()
        else:
            header_stems = None
        if ns.json:
            doc = {"command": ns.command, "input": _echo(ns)}
            if header_stems is not None:
                doc["stem_table"] = header_stems
            doc["result"] = payload
            out.write(json.dumps(doc, indent=2) + "\n")
        else:
            if header_stems is not None:
                text = f"stem table: {header_stems['source']}\n" + text
            out.write(text + "\n")
    except WindowInconsistency as e:
        err.write(f"window inconsistency: {e}\n")
        return 2
    except (ValueError, KeyError, ArithmeticError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        err.write(f"error: {msg}\n")
        return 1
    if ns.command == "check" and any(not r["ok"] for r in payload["results"]):
        return 1
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
