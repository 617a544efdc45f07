"""Command-line interface: ``maxmult <command> [options]``."""

from __future__ import annotations

import argparse
import json
import secrets
import sys
import time

from . import acceptance, corpus
from .groebner import Ideal, ResourceError, budget, load_ideal
from .invariants import hilbert_series, profile
from .linkage import find_ci_inside, link, unmixed_part
from .reduction import (
    DEFAULT_REPLICAS,
    DEFAULT_SEED,
    depth_of,
    s_invariant,
    serre_check,
    socle_type,
)
from .ring import DEFAULT_CHARACTERISTIC, PolyRing, is_prime
from .theorems import (
    char_construct,
    check_bound,
    ci_from_degrees,
    classify_decomposition,
    colon_structure,
    mprimary_decomposition,
    qg_construct,
)

SCHEMA = 1
EXIT_PASS, EXIT_FINDING, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
_U64 = (1 << 64) - 1


class UsageError(Exception):
    pass


# -- argument types --------------------------------------------------------------------


def _seed(text: str) -> int:
    if text == "random":
        return secrets.randbits(64)
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer or 'random'") from None
    if not 0 <= v <= _U64:
        raise argparse.ArgumentTypeError("seed out of 64-bit range")
    return v


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--char", type=_prime, default=None, metavar="P",
                   help="characteristic (overrides ideal files; default from file or 32003)")
    g.add_argument("--seed", type=_seed, default=DEFAULT_SEED, metavar="U64",
                   help=f"base seed, or 'random' (default {DEFAULT_SEED})")
    g.add_argument("--replicas", type=_positive, default=DEFAULT_REPLICAS,
                   help=f"seed replicas for generic choices (default {DEFAULT_REPLICAS})")
    g.add_argument("--json", action="store_true", help="print a JSON report")
    g.add_argument("--timing", action="store_true",
                   help="include wall-clock time in the JSON report (breaks byte-identical output)")
    g.add_argument("--budget-pairs", type=_positive, default=None, metavar="N",
                   help="maximum S-pairs per Groebner basis")
    g.add_argument("--budget-degree", type=_positive, default=None, metavar="N",
                   help="maximum S-pair degree")
    g.add_argument("--include-long-running", action="store_true",
                   help="also run long-running corpus entries and criteria")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="maxmult",
        description="Multiplicity bounds, maximal decompositions and linkage for homogeneous ideals.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    def cmd(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    for name, help_text in [("profile", "dimension, height, multiplicity and Hilbert series"),
                            ("s-invariant", "least socle degree of a general artinian reduction"),
                            ("cm", "Cohen-Macaulay test by artinian reduction length"),
                            ("depth", "depth and projective dimension"),
                            ("unmixed-part", "intersection of the minimal-height components")]:
        cmd(name, help_text).add_argument("ideal", help="ideal file")

    for name, help_text in [("check-bound", "check the multiplicity bound for I = J + (F)"),
                            ("classify", "depth classification of a maximal decomposition"),
                            ("colon-structure", "shape of J : F")]:
        p = cmd(name, help_text)
        p.add_argument("--J", required=True, dest="J", help="ideal file for J")
        p.add_argument("--F", required=True, dest="F", help="the form F")

    p = cmd("construct", "maximal decomposition from an almost linear complete intersection C'")
    p.add_argument("--I", required=True, dest="I", help="ideal file for I")
    p.add_argument("--Cprime", required=True, help="comma-separated generators of C'")

    p = cmd("mprimary", "decomposition J = (other generators) + F*m of an m-primary ideal")
    p.add_argument("--I", required=True, dest="I", help="ideal file for I")
    p.add_argument("--F", required=True, dest="F", help="a minimal generator of I")

    p = cmd("link", "link I by a complete intersection G")
    p.add_argument("--I", required=True, dest="I", help="ideal file for I")
    p.add_argument("--G", dest="G", help="ideal file for G (default: random CI inside I)")

    p = cmd("qg", "quasi-Gorenstein link Q = G : (G + (h))")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--G", dest="G", help="ideal file for the complete intersection G")
    src.add_argument("--degrees", help="comma-separated degrees d_i, G = (x_i^d_i)")
    p.add_argument("--vars", help="comma-separated variables when --degrees is used")
    p.add_argument("--h", required=True, dest="h", help="the form h")

    p = cmd("corpus", "named ideals with known invariants")
    csub = p.add_subparsers(dest="corpus_command", metavar="ACTION", required=True)
    csub.add_parser("list", parents=[common], help="list entry names")
    e = csub.add_parser("emit", parents=[common], help="write an entry as an ideal file")
    e.add_argument("name")
    e.add_argument("-o", "--output", help="output file (default stdout)")
    c = csub.add_parser("check", parents=[common], help="compare an entry with its expected values")
    c.add_argument("name")
    fq = csub.add_parser("four-quadrics", parents=[common], help="the six four-quadric ideals")
    grp = fq.add_mutually_exclusive_group(required=True)
    grp.add_argument("--all", action="store_true")
    grp.add_argument("--index", type=int, choices=range(1, 7))
    ct = csub.add_parser("catalecticant", parents=[common], help="Hankel 2-minor ideals")
    ct.add_argument("d", type=int)
    ct.add_argument("r", type=int)
    ct.add_argument("N", type=int)

    cmd("suite", "run every acceptance criterion")
    return parser


# -- helpers ---------------------------------------------------------------------------


def _load(path: str, args) -> Ideal:
    try:
        return load_ideal(path, args.char)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _parse(ring: PolyRing, text: str):
    return ring.parse(text)


def _input(path, I: Ideal) -> dict:
    return {"file": path, "key": I.key()}


def _gens(I: Ideal) -> list[str]:
    return [str(f) for f in I.generators]


# -- commands: each returns (inputs, result, status) -------------------------------------


def _profile(args):
    I = _load(args.ideal, args)
    hs = hilbert_series(I)
    res = profile(I).as_dict()
    res["hilbertNumerator"] = list(hs.numerator)
    return [_input(args.ideal, I)], res, "pass"


def _s_invariant(args):
    I = _load(args.ideal, args)
    s = s_invariant(I, args.seed, args.replicas)
    res = s.as_dict()
    res["socleType"] = socle_type(I, args.seed, args.replicas)
    return [_input(args.ideal, I)], res, "pass"


def _cm(args):
    I = _load(args.ideal, args)
    sc = serre_check(I, args.seed, args.replicas)
    res = {"cohenMacaulay": sc.is_cm, "multiplicity": sc.multiplicity,
           "reductionLengths": list(sc.lengths)}
    return [_input(args.ideal, I)], res, "pass"


def _depth(args):
    I = _load(args.ideal, args)
    d = depth_of(I, args.seed, args.replicas)
    pr = profile(I)
    res = {"depth": d, "dim": pr.dim, "pd": I.ring.n - d}
    return [_input(args.ideal, I)], res, "pass"


def _unmixed(args):
    I = _load(args.ideal, args)
    un = unmixed_part(I, seed=args.seed)
    res = {"unmixedPart": _gens(un), "e": profile(I).multiplicity}
    return [_input(args.ideal, I)], res, "pass"


def _status(findings) -> str:
    return "finding" if findings else "pass"


def _decomposition(args, fn):
    J = _load(args.J, args)
    F = _parse(J.ring, args.F)
    rep = fn(J, F, args.seed, args.replicas)
    return [_input(args.J, J)], rep.as_dict(), _status(rep.findings)


def _colon(args):
    J = _load(args.J, args)
    cs = colon_structure(J, _parse(J.ring, args.F))
    return [_input(args.J, J)], cs.as_dict(), "pass"


def _construct(args):
    I = _load(args.I, args)
    C = Ideal(I.ring, [_parse(I.ring, t) for t in args.Cprime.split(",") if t.strip()])
    con = char_construct(I, C, args.seed, args.replicas)
    findings = con.report.findings if con.report else []
    return [_input(args.I, I)], con.as_dict(), _status(findings)


def _mprimary(args):
    I = _load(args.I, args)
    rep = mprimary_decomposition(I, _parse(I.ring, args.F), args.seed, args.replicas)
    return [_input(args.I, I)], rep.as_dict(), _status(rep.findings)


def _link(args):
    I = _load(args.I, args)
    inputs = [_input(args.I, I)]
    if args.G:
        G = _load(args.G, args)
        if G.ring != I.ring:
            raise UsageError("G and I must be declared over the same ring")
        inputs.append(_input(args.G, G))
    else:
        G = find_ci_inside(I, args.seed)
    rec = link(G, I)
    return inputs, rec.as_dict(), "pass" if rec.identity_holds else "finding"


def _qg(args):
    if args.G:
        G = _load(args.G, args)
        inputs = [_input(args.G, G)]
    else:
        if not args.vars:
            raise UsageError("--degrees needs --vars")
        ring = PolyRing([v.strip() for v in args.vars.split(",") if v.strip()],
                        args.char or DEFAULT_CHARACTERISTIC)
        try:
            degrees = [int(d) for d in args.degrees.split(",")]
        except ValueError:
            raise UsageError("--degrees must be comma-separated integers") from None
        G = ci_from_degrees(ring, degrees)
        inputs = [{"degrees": degrees, "key": G.key()}]
    rep = qg_construct(G, _parse(G.ring, args.h), args.seed, args.replicas)
    return inputs, rep.as_dict(), _status(rep.findings)


def _check_entry(entry: corpus.CorpusEntry, args) -> dict:
    I = entry.ideal
    pr = profile(I)
    got = {"multiplicity": pr.multiplicity, "height": pr.height, "dim": pr.dim}
    exp = entry.expected
    if "depth" in exp or "pd" in exp:
        d = depth_of(I, args.seed, args.replicas)
        got.update({"depth": d, "pd": I.ring.n - d})
    if "cm" in exp:
        got["cm"] = serre_check(I, args.seed, args.replicas).is_cm
    if "s" in exp:
        got["s"] = s_invariant(I, args.seed, args.replicas).value
    if "degrees" in exp:
        got["degrees"] = [f.degree() for f in I.generators]
    if "maximal" in exp and "Cprime" in entry.extras:
        con = char_construct(I, entry.extras["Cprime"], args.seed, args.replicas)
        got["maximal"] = bool(con.report and con.report.is_maximal)
    mismatches = sorted(k for k in exp if k in got and got[k] != exp[k])
    return {"name": entry.name, "key": I.key(), "computed": got, "expected": exp,
            "sources": entry.sources, "mismatches": mismatches}


def _corpus(args):
    action = args.corpus_command
    p = args.char or DEFAULT_CHARACTERISTIC
    if action == "list":
        return [], {"entries": corpus.names(args.include_long_running)}, "pass"
    if action == "emit":
        entry = _entry(args.name, p)
        text = entry.emit()
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        return [], {"name": entry.name, "key": entry.ideal.key(), "ideal": text}, "pass"
    if action == "check":
        row = _check_entry(_entry(args.name, p), args)
        return [], row, "finding" if row["mismatches"] else "pass"
    if action == "four-quadrics":
        idx = range(1, 7) if args.all else [args.index]
        rows = [_check_entry(corpus.four_quadrics(i, p), args) for i in idx]
        rows.sort(key=lambda r: r["name"])
        bad = any(r["mismatches"] for r in rows)
        return [], {"rows": rows}, "finding" if bad else "pass"
    if action == "catalecticant":
        try:
            entry = corpus.catalecticant(args.d, args.r, args.N, characteristic=p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        row = _check_entry(entry, args)
        return [], row, "finding" if row["mismatches"] else "pass"
    raise UsageError(f"unknown corpus action {action}")


def _entry(name: str, p: int) -> corpus.CorpusEntry:
    try:
        return corpus.get(name, p)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _suite(args):
    echo = None if args.json else print
    results = acceptance.run_all(args.seed, args.replicas, args.include_long_running, echo=echo)
    ok = all(r.passed for r in results)
    return [], {"criteria": [r.as_dict() for r in results]}, "pass" if ok else "finding"


COMMANDS = {
    "profile": _profile,
    "s-invariant": _s_invariant,
    "cm": _cm,
    "depth": _depth,
    "unmixed-part": _unmixed,
    "check-bound": lambda a: _decomposition(a, check_bound),
    "classify": lambda a: _decomposition(a, classify_decomposition),
    "colon-structure": _colon,
    "construct": _construct,
    "mprimary": _mprimary,
    "link": _link,
    "qg": _qg,
    "corpus": _corpus,
    "suite": _suite,
}

EXIT = {"pass": EXIT_PASS, "finding": EXIT_FINDING, "error": EXIT_USAGE, "resource": EXIT_RESOURCE}


# -- output ------------------------------------------------------------------------------


def _config(args) -> dict:
    return {"characteristic": args.char, "seed": args.seed, "replicas": args.replicas,
            "budgetPairs": args.budget_pairs, "budgetDegree": args.budget_degree,
            "includeLongRunning": args.include_long_running}


def _text(value, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (str, int)) for x in v):
                lines.append(f"{pad}{k}:")
                lines += _text(v, indent + 1)
            elif isinstance(v, list):
                lines.append(f"{pad}{k}: " + ", ".join(map(str, v)))
            elif isinstance(v, dict):
                lines.append(f"{pad}{k}: " + ", ".join(f"{a}={b}" for a, b in v.items()))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, dict):
                lines += _text(item, indent)
                lines.append("")
            else:
                lines.append(f"{pad}- {item}")
    else:
        lines.append(f"{pad}{value}")
    return lines


def _table(rows) -> list[str]:
    out = [f"  {'entry':<22} {'e':>4} {'pd':>3}   {'expected':<10} match"]
    for r in rows:
        got, exp = r["computed"], r["expected"]
        want = f"({exp.get('multiplicity')},{exp.get('pd')})"
        mark = "yes" if not r["mismatches"] else "NO: " + ",".join(r["mismatches"])
        out.append(f"  {r['name']:<22} {got['multiplicity']:>4} {got.get('pd', '-'):>3}   {want:<10} {mark}")
    return out


def _render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(report, indent=2, sort_keys=True)
    result = report.get("result")
    if report["command"] == "corpus emit" and result is not None and "ideal" in result:
        return result["ideal"].rstrip("\n")
    lines = [f"{report['command']}: {report['status']}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")
    if result is not None and "rows" in result:
        lines += _table(result["rows"])
    elif result is not None:
        lines += _text(result, 1)
    if "elapsedMs" in report:
        lines.append(f"elapsed: {report['elapsedMs']} ms")
    return "\n".join(line.rstrip() for line in lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    command = args.command
    if command == "corpus":
        command = f"corpus {args.corpus_command}"
    report = {"schema": SCHEMA, "command": command, "config": _config(args), "inputs": []}
    start = time.perf_counter()
    try:
        with budget(args.budget_pairs, args.budget_degree):
            inputs, result, status = COMMANDS[args.command](args)
        report.update(inputs=inputs, result=result, status=status)
    except ResourceError as exc:
        report.update(status="resource", result=None, error=str(exc))
    except (UsageError, ValueError, ArithmeticError, RuntimeError) as exc:
        report.update(status="error", result=None, error=f"{type(exc).__name__}: {exc}")
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    if args.timing or not args.json:
        report["elapsedMs"] = elapsed_ms
    if args.command == "corpus" and args.corpus_command == "emit" and args.output and not args.json:
        report["result"] = {"name": report["result"]["name"], "written": args.output} \
            if report.get("result") else None
    out = _render(report, args.json)
    stream = sys.stderr if report["status"] in ("error", "resource") and not args.json else sys.stdout
    print(out, file=stream)
    return EXIT[report["status"]]


if __name__ == "__main__":
    sys.exit(main())
