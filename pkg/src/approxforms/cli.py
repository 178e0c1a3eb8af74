"""Command-line front end.

Exit codes: 0 for a passing or informational report, 1 when a
verification fails, 2 for malformed input (including argparse errors).
Structured output (``--output json``) has sorted keys and reals written
with 17 significant digits, so identical inputs and seeds give identical
bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

from .algebra import DEFAULT_SUBSET_LIMIT, DUAL, TAGS, check_axioms
from .boolinf import TruthTable, check_inf, exhaustive_verify, inf_synthesize
from .choice import (EXPECTED_CHOICE_TABLE, argmax_states, lefebvre_boolean, mix_evaluation, run_generalized,
                     choice_table, choice_table_diff)
from .decompose import decompose, pad_to_universal, verify_form
from .errors import ApproxFormsError, InputError
from .io import load_algebra, load_ensemble, load_map, load_poset
from .lefebvre import (EXACT_TOL, REALIST_AREA, EnsembleCharacteristic, equality_region_scan,
                       f_real, golden_ensemble, golden_section_root, marginals, pl_characteristic,
                       sample_ensemble)
from .randomized import CLAUSES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
VERDICTS = ("pass", "fail", "info")
EXAMPLES_PER_CLAUSE = 10


@dataclass
class Report:
    command: str
    verdict: str
    payload: dict
    diagnostics: list[str] = field(default_factory=list)
    text: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")

    @property
    def exit_code(self) -> int:
        return EXIT_FAIL if self.verdict == "fail" else EXIT_OK


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------- rendering

def _scalar(v: Any) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError(f"cannot serialize non-finite real {v!r}")
        return format(v, ".17g")
    if isinstance(v, str):
        return json.dumps(v, ensure_ascii=False)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def dump_structured(obj: Any, indent: int = 0) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {dump_structured(obj[k], indent + 1)}"
                 for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_scalar(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + dump_structured(v, indent + 1) for v in obj) + "\n" + pad + "]"
    return _scalar(obj)


def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> list[str]:
    cells = [[str(h) for h in headers]] + [[_cell(v) for v in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return lines


def _cell(v: Any) -> str:
    if isinstance(v, float):
        return format(v, ".12g")
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def _plain(payload: dict, indent: int = 0) -> list[str]:
    out = []
    for k in sorted(payload):
        v = payload[k]
        if isinstance(v, dict):
            out.append("  " * indent + f"{k}:")
            out.extend(_plain(v, indent + 1))
        elif isinstance(v, (list, tuple)) and v and any(isinstance(x, (dict, list, tuple)) for x in v):
            out.append("  " * indent + f"{k}: {dump_structured(v).replace(chr(10), ' ')}")
        elif isinstance(v, (list, tuple)):
            out.append("  " * indent + f"{k}: " + ", ".join(_cell(x) for x in v))
        else:
            out.append("  " * indent + f"{k}: {_cell(v)}")
    return out


def render_report(report: Report, mode: str = "text") -> str:
    if mode in ("json", "structured"):
        doc = {
            "command": report.command,
            "verdict": report.verdict,
            "payload": report.payload,
            "diagnostics": list(report.diagnostics),
        }
        return dump_structured(doc) + "\n"
    lines = [f"{report.command}: {report.verdict.upper()}", ""]
    lines.extend(report.text or _plain(report.payload))
    if report.diagnostics:
        lines += ["", "diagnostics:"] + [f"  - {d}" for d in report.diagnostics]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- commands

def _need_seed(args) -> int:
    seed = args.seed if args.seed is not None else args.global_seed
    if seed is None:
        name = " ".join(filter(None, (args.command, args.ensemble_command)))
        raise InputError(f"'{name}' is randomized and needs an explicit --seed")
    if seed < 0 or seed >= 2 ** 64:
        raise InputError("--seed must be an unsigned 64-bit integer")
    return seed


def _subset_limit(args) -> int:
    return args.limit_subsets if args.limit_subsets is not None else DEFAULT_SUBSET_LIMIT


def cmd_check_axioms(args) -> Report:
    system = load_algebra(args.algebra)
    rep = check_axioms(system, args.system, _subset_limit(args))
    payload = rep.to_dict()
    payload["polarity"] = system.polarity
    payload["codomain"] = list(system.codomain.elements)
    diags = [f"{v.axiom} fails at ({', '.join(map(str, v.args))}): {v.detail}" for v in rep.violations]
    text = [f"system {rep.system_tag} on {len(system.codomain)} elements ({system.polarity})"]
    if rep.vacuous:
        text.append("vacuous: " + ", ".join(rep.vacuous))
    text.append(f"violations: {len(rep.violations)}")
    return Report("check-axioms", _verdict(rep.passed), payload, diags, text)


def cmd_decompose(args) -> Report:
    M = load_poset(args.poset)
    L = load_poset(args.codomain)
    system = load_algebra(args.algebra, L)
    psi = load_map(args.function, M, L)
    polarity = DUAL if args.dual else system.polarity
    form, rep = decompose(psi, system, args.theorem, polarity, _subset_limit(args))
    D = M.layers.max_chain_length
    if args.pad:
        form = pad_to_universal(form, D)
        rep = verify_form(form, psi)
    payload = form.to_dict()
    payload.update(rep.to_dict())
    payload["nonmono_strictly_shrinks"] = rep.nonmono_strictly_shrinks
    payload["padded"] = bool(args.pad)
    headers = ["element"] + [f"phi{k}" for k in range(1, len(form.components) + 1)] + ["psi"]
    rows = [[x] + [c(x) for c in form.components] + [psi(x)] for x in M.elements]
    text = [f"theorem {form.theorem}, {form.polarity}: {form.dissociation_count} dissociations "
            f"(chain length {D})", ""]
    text += format_table(headers, rows)
    text += ["", "step  |n(psi_k)|  region"]
    text += [f"{k:<4}  {a:<10}  {b}" for k, (a, b) in enumerate(zip(rep.nonmono_sizes, rep.region_sizes))]
    return Report("decompose", _verdict(rep.verified), payload, list(rep.problems), text)


def cmd_inf(args) -> Report:
    if args.action == "verify":
        if args.table is not None:
            raise InputError("'inf verify' takes no --table")
        if not 0 <= args.arity <= 4:
            raise InputError("exhaustive verification is limited to arity 0..4")
        s = exhaustive_verify(args.arity)
        payload = {"arity": s.arity, "checked": s.checked, "failures": [list(f) for f in s.failures],
                   "max_k": s.max_k}
        text = [f"arity {s.arity}: {s.checked} functions, {len(s.failures)} failures, max k = {s.max_k}"]
        diags = [f"{bits}: {why}" for bits, why in s.failures]
        return Report("inf verify", _verdict(s.passed), payload, diags, text)
    if args.table is None:
        raise InputError("'inf' needs --table (or the 'verify' action)")
    try:
        f = TruthTable.from_string(args.arity, args.table)
    except (ValueError, ApproxFormsError) as exc:
        raise InputError(str(exc)) from None
    form = inf_synthesize(f)
    why = check_inf(f, form)
    names = [f"P{form.k - i}" for i in range(len(form.components))]
    payload = {
        "arity": f.arity,
        "table": str(f),
        "k": form.k,
        "components": {n: str(c) for n, c in zip(names, form.components)},
        "chain": form.render(),
        "equivalent": why is None,
    }
    text = [f"f = {f}  (arity {f.arity})", f"form: {form.render()}", ""]
    text += format_table(["component", "bits"], [[n, str(c)] for n, c in zip(names, form.components)])
    return Report("inf", _verdict(why is None), payload, [why] if why else [], text)


def _marginal_block(m) -> dict:
    return {"x1": m.x1, "x2": m.x2, "x3": m.x3, "z": m.z}


def _exact_block(P: EnsembleCharacteristic) -> dict:
    m = marginals(P)
    f = f_real(*(min(max(v, 0.0), 1.0) for v in (m.x1, m.x2, m.x3)))
    block = _marginal_block(m)
    block.update({"p": list(P.p), "f": f, "z_minus_f": m.z - f})
    return block


def cmd_ensemble(args) -> Report:
    which = args.ensemble_command
    if which == "marginals":
        P = load_ensemble(args.p)
        ex = _exact_block(P)
        return Report("ensemble marginals", "info", {"exact": ex}, [], _plain(ex))
    if which == "pure":
        P = pl_characteristic(args.x1, args.x2, args.x3)
        ex = _exact_block(P)
        errs = [abs(ex["x1"] - args.x1), abs(ex["x2"] - args.x2), abs(ex["x3"] - args.x3), abs(ex["z_minus_f"])]
        ok = max(errs) <= EXACT_TOL
        diags = [] if ok else [f"marginal or z deviates by {max(errs):.3g}"]
        return Report("ensemble pure", _verdict(ok), {"exact": ex, "max_error": max(errs)}, diags)
    if which == "golden":
        root = golden_section_root()
        P = golden_ensemble(root)
        m = marginals(P)
        outside = [k for k in P.support if k not in REALIST_AREA]
        checks = {
            "root_error": abs(root - (math.sqrt(5) - 1) / 2),
            "mass_error": abs(math.fsum(P.p) - 1.0),
            "x3_error": abs(m.x3 - root),
            "support_in_realist_area": not outside,
        }
        ok = (checks["root_error"] <= 1e-10 and checks["mass_error"] <= EXACT_TOL
              and checks["x3_error"] <= EXACT_TOL and not outside)
        payload = {"root": root, "p": list(P.p), "marginals": _marginal_block(m), "checks": checks}
        return Report("ensemble golden", _verdict(ok), payload)
    if which == "sample":
        seed = _need_seed(args)
        if args.n < 1:
            raise InputError("--n must be positive")
        P = load_ensemble(args.p)
        exact = marginals(P)
        emp = sample_ensemble(P, args.n, seed)
        rows, ok = [], True
        for name, e, g in zip(("x1", "x2", "x3", "z"), exact.as_tuple(), emp.as_tuple()):
            sigma = math.sqrt(max(e * (1 - e), 0.0) / args.n)
            within = abs(g - e) <= 3 * sigma + EXACT_TOL
            ok &= within
            rows.append([name, e, g, sigma, within])
        payload = {
            "exact": _exact_block(P),
            "empirical": {**_marginal_block(emp), "n": args.n, "seed": seed},
            "within_3_sigma": {r[0]: r[4] for r in rows},
        }
        text = format_table(["marginal", "exact", "empirical", "sigma", "within 3 sigma"], rows)
        return Report("ensemble sample", _verdict(ok), payload, [], text)
    seed = _need_seed(args)
    if args.samples < 0:
        raise InputError("--samples must be non-negative")
    r = equality_region_scan(args.x1, args.x2, args.x3, args.samples, seed)
    payload = {
        "x": list(r.x), "f": r.f, "z_min": r.z_min, "z_max": r.z_max,
        "worst_deviation": r.worst_deviation, "holds_for_all": r.holds_for_all,
        "counterexample": None if r.counterexample is None else list(r.counterexample),
        "vertices": r.vertices, "samples": r.samples, "seed": seed,
    }
    return Report("ensemble region", "info", payload)


def cmd_choice(args) -> Report:
    if args.action == "table":
        rows = choice_table()
        diff = choice_table_diff(rows)
        payload = {
            "rows": [{"intent": list(r.intent), "exact_state": r.exact_state, "F": r.F,
                      "approx_state": r.approx_state, "f": r.f} for r in rows],
            "expected": [{"intent": list(t), "exact_state": e[0], "F": e[1], "approx_state": e[2], "f": e[3]}
                         for t, e in sorted(EXPECTED_CHOICE_TABLE.items())],
            "diff": diff,
        }
        text = format_table(["x1", "x2", "x3", "z (exact)", "F", "z (approx)", "f"],
                            [list(r.intent) + [r.exact_state, r.F, r.approx_state, r.f] for r in rows])
        return Report("choice table", _verdict(not diff), payload, diff, text)
    bits = (args.x1, args.x2, args.x3)
    if None in bits:
        raise InputError("'choice' needs --x1, --x2 and --x3 (or the 'table' action)")
    trace = run_generalized(bits, algorithm=args.algorithm)
    psi = mix_evaluation(bits)
    payload = trace.to_dict()
    payload["mixed_evaluation"] = psi.as_dict()
    payload["argmax"] = list(argmax_states(psi))
    payload["formula_value"] = lefebvre_boolean(*bits)
    text = [f"intent {bits}, algorithm {args.algorithm}",
            "stages: " + " -> ".join(trace.stage_states),
            f"chosen: {trace.chosen} (value {trace.chosen_value})",
            f"(x3 -> x2) -> x1 = {payload['formula_value']}"]
    return Report("choice", "info", payload, [], text)


def cmd_verify_suite(args) -> Report:
    seed = _need_seed(args)
    if args.count < 1:
        raise InputError("--count must be positive")
    res = run_suite(args.count, seed)
    counts = {c: len(res.failures[c]) for c in CLAUSES}
    payload = {
        "count": res.count,
        "seed": seed,
        "instances_per_theorem": {str(k): v for k, v in res.by_theorem.items()},
        "errors": len(res.errors),
        "failures": counts,
        "examples": {c: [list(f) for f in res.failures[c][:EXAMPLES_PER_CLAUSE]] for c in CLAUSES},
    }
    ok = not res.errors and not any(counts.values())
    diags = [f"{c}: {n} failing instances" for c, n in counts.items() if n]
    diags += [f"instance {i} (theorem {t}): {msg}" for i, t, msg in res.errors]
    text = format_table(["clause", "failures"], [[c, counts[c]] for c in CLAUSES])
    return Report("verify-suite", _verdict(ok), payload, diags, text)


# ---------------------------------------------------------------- parsing

def _bit(text: str) -> int:
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError("expected 0 or 1")
    return int(text)


def _unit(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1]")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["text", "json", "structured"], default=argparse.SUPPRESS)
    common.add_argument("--limit-subsets", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="approxforms", parents=[common],
                                     description="Approximating forms, implicative normal forms and choice models.")
    parser.add_argument("--seed", dest="global_seed", type=int, default=None, metavar="SEED")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-axioms", parents=[common], help="check an operation system against A, B, A* or B*")
    p.add_argument("--algebra", required=True)
    p.add_argument("--system", required=True, choices=TAGS)
    p.set_defaults(run=cmd_check_axioms)

    p = sub.add_parser("decompose", parents=[common], help="decompose a poset map into monotone components")
    for name in ("--poset", "--codomain", "--function", "--algebra"):
        p.add_argument(name, required=True)
    p.add_argument("--theorem", type=int, choices=[1, 2, 3], default=1)
    p.add_argument("--dual", action="store_true")
    p.add_argument("--pad", action="store_true")
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("inf", parents=[common], help="implicative normal form of a truth table")
    p.add_argument("action", nargs="?", choices=["verify"])
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--table")
    p.set_defaults(run=cmd_inf)

    p = sub.add_parser("ensemble", parents=[common], help="ensembles of Lefebvre subjects")
    esub = p.add_subparsers(dest="ensemble_command", required=True)
    e = esub.add_parser("marginals", parents=[common])
    e.add_argument("--p", required=True)
    e = esub.add_parser("pure", parents=[common])
    for name in ("--x1", "--x2", "--x3"):
        e.add_argument(name, type=_unit, required=True)
    esub.add_parser("golden", parents=[common])
    e = esub.add_parser("sample", parents=[common])
    e.add_argument("--p", required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--seed", type=int)
    e = esub.add_parser("region", parents=[common])
    for name in ("--x1", "--x2", "--x3"):
        e.add_argument(name, type=_unit, required=True)
    e.add_argument("--samples", type=int, default=1000)
    e.add_argument("--seed", type=int)
    p.set_defaults(run=cmd_ensemble)

    p = sub.add_parser("choice", parents=[common], help="run a choice algorithm or reproduce the result table")
    p.add_argument("action", nargs="?", choices=["table"])
    for name in ("--x1", "--x2", "--x3"):
        p.add_argument(name, type=_bit)
    p.add_argument("--algorithm", choices=["exact", "approx"], default="approx")
    p.set_defaults(run=cmd_choice)

    p = sub.add_parser("verify-suite", parents=[common], help="randomized decomposition suite")
    p.add_argument("--count", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.set_defaults(run=cmd_verify_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("output", "text"), ("limit_subsets", None), ("seed", None),
                          ("ensemble_command", None), ("action", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    mode = "json" if args.output == "structured" else args.output
    try:
        report = args.run(args)
    except (ApproxFormsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(render_report(report, mode))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
