"""Command-line front end.

Exit codes: 0 success or affirmative finding, 1 negative finding, 2 usage
error, 3 budget exhausted or unknown outcome.
"""

from __future__ import annotations

import argparse
import json
import sys

from mongen.core import Complex, ComplexParseError, parse_complex, serialize_complex
from mongen.genfunc import ResourceLimitError, function_selector
from mongen.language import Language, language_selector, mon
from mongen.prover.checker import check_trace_report
from mongen.prover.data import Budget, Conflict, Saturated
from mongen.prover.engine import Engine, saturate
from mongen.render import render_ascii, render_svg
from mongen.analysis.bounds import mu_bounds
from mongen.analysis.enumeration import ENUMERATION_BOUND, enumerate_minimal
from mongen.analysis.families import (
    classify, family_complex, family_members, parse_family_id,
)
from mongen.analysis.minimality import refute_complex
from mongen.analysis.scripts import MonScript, ScriptError, script_missing_five

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_UNKNOWN = 3


class UsageError(Exception):
    pass


def _complex_arg(text: str) -> Complex:
    try:
        return parse_complex(text)
    except ComplexParseError as exc:
        raise UsageError(f"bad complex: {exc}")


def _language_arg(text: str) -> Language:
    try:
        return language_selector(text)
    except (ValueError, OSError) as exc:
        raise UsageError(f"bad language selector: {exc}")


def _budget(args) -> Budget:
    return Budget(max_constraints=args.budget_constraints,
                  max_input_domain=args.budget_domain,
                  full_join=getattr(args, "full_join", False))


def cmd_render(args) -> int:
    k = _complex_arg(args.complex)
    if args.format == "svg":
        sys.stdout.write(render_svg(k))
    elif args.format == "json":
        sys.stdout.write(json.dumps({
            "n": k.n, "maximal": [list(s.vertices) for s in k.maximal]}) + "\n")
    else:
        sys.stdout.write(render_ascii(k))
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        f = function_selector(args.function)
    except (ValueError, OSError) as exc:
        raise UsageError(f"bad function selector: {exc}")
    lang = _language_arg(args.language)
    k = _complex_arg(args.complex)
    try:
        img = f.image()
        diagram = f.essential_windows()
        kf = f.comm_complex()
    except ResourceLimitError as exc:
        print(f"RESOURCE {exc}")
        return EXIT_UNKNOWN
    missing = sorted(lang.words - img.words) if img.n == lang.n else sorted(lang.words)
    extra = sorted(img.words - lang.words) if img.n == lang.n else sorted(img.words)
    fits = kf.n == k.n and all(k.member(s) for s in kf.maximal)
    print(f"image size: {len(img)}")
    if missing:
        print("missing words: " + " ".join(missing))
    if extra:
        print("extra words: " + " ".join(extra))
    print("visibility diagram:")
    print(diagram.render())
    print(f"communication complex: {serialize_complex(kf)}")
    print(f"fits target complex: {'yes' if fits else 'no'}")
    ok = not missing and not extra and fits
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_refute(args) -> int:
    k = _complex_arg(args.complex)
    lang = _language_arg(args.language)
    if lang.n != k.n:
        raise UsageError(f"dimension mismatch: complex n={k.n}, language n={lang.n}")
    budget = _budget(args)
    refutation_complex = k
    verdict = None
    if args.script == "none" or lang != mon(k.n):
        verdict = saturate(k, lang, budget)
    elif args.script == "lower-bound":
        from mongen.analysis.scripts import short_interval_bound
        from mongen.prover.engine import EngineOpError
        try:
            script = MonScript(k)
            kl = short_interval_bound(k.n)
            verdict = script.engine.conflict_verdict(
                script.gamma_short(2 * kl - k.n - 1, k.n, kl),
                script.gamma_short(kl - 1, 0, kl))
        except (ScriptError, EngineOpError) as exc:
            print(f"SCRIPT-FAILED {exc}")
            return EXIT_NEGATIVE
    elif args.script.startswith("missing-five"):
        try:
            i, j = (int(x) for x in args.script.split("=", 1)[1].split(","))
        except (IndexError, ValueError):
            raise UsageError("expected --script missing-five=I,J")
        try:
            verdict = script_missing_five(k, i, j).conflict
        except ScriptError as exc:
            print(f"SCRIPT-FAILED {exc}")
            return EXIT_NEGATIVE
    else:  # auto
        ref = refute_complex(k, allow_saturate=False)
        if ref is not None:
            refutation_complex = ref.complex
            verdict = ref.conflict
            if ref.symmetry is not None:
                print(f"note: refuting the image under shift={ref.symmetry.shift} "
                      f"reflect={int(ref.symmetry.reflect)}; the trace targets "
                      f"{serialize_complex(ref.complex)}", file=sys.stderr)
        else:
            verdict = saturate(k, lang, budget)
    if isinstance(verdict, Conflict):
        text = verdict.trace.render(refutation_complex)
        target_lang = lang if lang.n == refutation_complex.n else mon(refutation_complex.n)
        res = check_trace_report(text, refutation_complex, target_lang)
        if not res.ok:
            print(f"INTERNAL trace validation failed: {res.reason}", file=sys.stderr)
            return EXIT_UNKNOWN
        sys.stdout.write(text)
        return EXIT_OK
    if isinstance(verdict, Saturated):
        print(f"SATURATED count={verdict.constraints}")
        return EXIT_NEGATIVE
    print(f"BUDGET count={verdict.constraints} reason={verdict.reason}")
    return EXIT_UNKNOWN


def cmd_check_trace(args) -> int:
    k = _complex_arg(args.complex)
    lang = _language_arg(args.language)
    if args.trace == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.trace, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read trace: {exc}")
    res = check_trace_report(text, k, lang)
    if res.ok:
        print("VALID")
        return EXIT_OK
    where = f" at #{res.failed_node}" if res.failed_node >= 0 else ""
    print(f"INVALID{where}: {res.reason}")
    return EXIT_NEGATIVE


def cmd_mu(args) -> int:
    result = mu_bounds(args.n, certify=args.certify)
    exact = result.exact if result.exact is not None else "unknown"
    line = (f"n={result.n} lower={result.lower} upper={result.upper} "
            f"exact={exact} witness={serialize_complex(result.witness)}")
    if result.certificate is not None:
        ok = result.certificate.check()
        line += (f" certificate={'valid' if ok else 'INVALID'}"
                 f" nodes={len(result.certificate.trace.nodes)}")
        if not ok:
            print(line)
            return EXIT_UNKNOWN
    if args.format == "json":
        payload = {"n": result.n, "lower": result.lower, "upper": result.upper,
                   "exact": result.exact,
                   "witness": serialize_complex(result.witness),
                   "witness_family": result.witness_family}
        print(json.dumps(payload))
    else:
        print(line)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.n > ENUMERATION_BOUND:
        print(f"size {args.n} exceeds enumeration bound {ENUMERATION_BOUND}")
        return EXIT_UNKNOWN
    entries = enumerate_minimal(args.n, report_mode=args.report or None)
    unresolved = 0
    for e in entries:
        if not args.minimal_only or e.minimal == "YES":
            print(e.report_line())
        if "UNKNOWN" in (e.status, e.minimal):
            unresolved += 1
    return EXIT_UNKNOWN if unresolved else EXIT_OK


def cmd_families(args) -> int:
    if args.action == "list":
        for fid, member in family_members(args.arg_n):
            print(f"{fid} {serialize_complex(member)}")
        return EXIT_OK
    if args.action == "construct":
        try:
            fid = parse_family_id(args.argument)
            k = family_complex(fid)
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad family id: {exc}")
        print(serialize_complex(k))
        return EXIT_OK
    return _classify_text(args.argument)


def _classify_text(text: str) -> int:
    k = _complex_arg(text)
    res = classify(k)
    if res is None:
        print("-")
        return EXIT_NEGATIVE
    fid, g = res
    print(f"{fid} @ shift={g.shift},reflect={int(g.reflect)}")
    return EXIT_OK


def cmd_classify(args) -> int:
    return _classify_text(args.complex)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mongen",
        description="Local generation of monotone binary languages over "
                    "communication complexes.")
    parser.add_argument("--seedless", action="store_true",
                        help="assert that no randomness is used (always true)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", help="draw a complex")
    p.add_argument("complex")
    p.add_argument("--format", choices=("ascii", "svg", "json"), default="ascii")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("verify", help="check a generating function")
    p.add_argument("function", help="builtin:<k5|k7|k8>, k2:<n>,<a>,<b>, file:<path>")
    p.add_argument("language", help="mon:<n>, u:<n>, file:<path>")
    p.add_argument("complex")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("refute", help="search for a refutation trace")
    p.add_argument("complex")
    p.add_argument("language")
    p.add_argument("--budget-constraints", type=int, default=1_000_000)
    p.add_argument("--budget-domain", type=int, default=None)
    p.add_argument("--full-join", action="store_true")
    p.add_argument("--script", default="auto",
                   help="auto, lower-bound, missing-five=I,J, or none")
    p.set_defaults(fn=cmd_refute)

    p = sub.add_parser("check-trace", help="replay and validate a trace")
    p.add_argument("complex")
    p.add_argument("language")
    p.add_argument("trace", help="trace file, or - for stdin")
    p.set_defaults(fn=cmd_check_trace)

    p = sub.add_parser("mu", help="interval-length bounds")
    p.add_argument("n", type=int)
    p.add_argument("--certify", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=cmd_mu)

    p = sub.add_parser("enumerate", help="enumerate interval complexes")
    p.add_argument("n", type=int)
    p.add_argument("--report", action="store_true",
                   help="scripts-only decisions (default for n >= 6)")
    p.add_argument("--minimal-only", action="store_true")
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("families", help="list/construct/classify family members")
    fsub = p.add_subparsers(dest="action", required=True)
    fl = fsub.add_parser("list")
    fl.add_argument("arg_n", type=int, metavar="n")
    fc = fsub.add_parser("construct")
    fc.add_argument("argument", metavar="family-id")
    fy = fsub.add_parser("classify")
    fy.add_argument("argument", metavar="complex")
    p.set_defaults(fn=cmd_families)

    p = sub.add_parser("classify", help="match a complex against the families")
    p.add_argument("complex")
    p.set_defaults(fn=cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
