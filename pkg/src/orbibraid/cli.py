"""``orbibraid`` command line.

Exit codes: 0 success (Proven / Separated / suite green), 2 Unknown,
1 errors, refutations and failed checks.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import artin
from .acceptance import GRID, run_all
from .diagrams import render, word_to_diagram
from .freeprod import FreeProductLayout, nf_of_word
from .homs import NAMED_HOMS, Verdict, hom_q, standard_oracles, von_dyck_check
from .kernels import kernel_K, kernel_K_fixed, separation_check
from .presentations import FAMILY_BUILDERS, Presentation, build
from .prover import ProofTrace, SearchBudget, disprove_equal, prove_equal
from .words import GroupParams, WordError, parse

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2


class CliError(Exception):
    pass


def load_params(path: str) -> GroupParams:
    data = _load_json(path)
    if isinstance(data, list):
        raise CliError(f"{path}: expected a single params object")
    return GroupParams.from_json(data)


def load_params_list(path: str) -> list[GroupParams]:
    data = _load_json(path)
    return [GroupParams.from_json(d) for d in (data if isinstance(data, list) else [data])]


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: invalid JSON ({e})") from None


def load_schema(name: str) -> dict:
    """A shipped JSON schema, e.g. ``load_schema("trace")``."""
    return json.loads((resources.files("orbibraid") / "schemas" / f"{name}.schema.json").read_text())


def _budget(args) -> SearchBudget:
    b = SearchBudget()
    if getattr(args, "budget", None) is not None:
        b = SearchBudget(max_states=args.budget, max_word_length=b.max_word_length,
                         max_depth=b.max_depth, insert_cap=b.insert_cap)
    return b


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_present(args) -> int:
    pres = build(args.family, load_params(args.params), args.pc_depth)
    text = f"{pres.label}\ngenerators: {' '.join(pres.to_json()['alphabet'])}\n" \
        + "\n".join(f"  {r}" for r in pres.relators)
    _emit(args, pres.to_json(), text)
    return EXIT_OK


def cmd_reduce(args) -> int:
    w = parse(args.word)
    out = {"input": args.word, "reduced": str(w.reduced())}
    if args.params:
        nf = nf_of_word(w, FreeProductLayout.for_params(load_params(args.params)))
        out["normal_form"] = str(nf.to_word())
        out["syllables"] = len(nf.syllables)
    _emit(args, out, out.get("normal_form", out["reduced"]))
    return EXIT_OK


def _presentation_for(args) -> Presentation:
    if args.pres:
        return Presentation.from_json(_load_json(args.pres))
    if args.family and args.params:
        return build(args.family, load_params(args.params))
    raise CliError("prove needs --pres FILE or --family TAG --params FILE")


def cmd_prove(args) -> int:
    pres = _presentation_for(args)
    result = prove_equal(pres, args.lhs, args.rhs, _budget(args))
    if isinstance(result, ProofTrace):
        out = {"verdict": Verdict.PROVEN.value, "trace": result.to_json()}
        _emit(args, out, f"Proven in {result.moves} move(s), {result.states} states")
        return EXIT_OK
    out = {"verdict": Verdict.UNKNOWN.value, "reason": result.reason, "states": result.states}
    if pres.params is not None and not args.no_refute:
        cert = disprove_equal(args.lhs, args.rhs, standard_oracles(pres, pres.params))
        if not isinstance(cert, type(result)):
            out = {"verdict": Verdict.REFUTED.value, "certificate": cert.to_json()}
            _emit(args, out, f"Refuted by {cert.oracle}: {cert.image_lhs} != {cert.image_rhs}")
            return EXIT_ERROR
    _emit(args, out, f"Unknown ({result.reason}, {result.states} states)")
    return EXIT_UNKNOWN


def cmd_oracle(args) -> int:
    p = load_params(args.params)
    trivial = artin.is_trivial_ZLN(parse(args.word), p)
    verdict = "trivial" if trivial else "nontrivial"
    _emit(args, {"word": args.word, "params": p.to_json(), "oracle": "artin", "verdict": verdict}, verdict)
    return EXIT_OK


def cmd_check_hom(args) -> int:
    p = load_params(args.params)
    if args.name == "q":
        h = hom_q(p, args.theta, args.o)
    elif args.name in NAMED_HOMS:
        h = NAMED_HOMS[args.name](p)
    else:
        raise CliError(f"unknown homomorphism {args.name!r}; choose from {', '.join(sorted(NAMED_HOMS))}")
    report = von_dyck_check(h, _budget(args))
    lines = [f"{report.label}: {report.status.value}"] + \
        [f"  {v.verdict.value:8} {v.relator}" for v in report.verdicts]
    _emit(args, report.to_json(), "\n".join(lines))
    return {Verdict.PROVEN: EXIT_OK, Verdict.UNKNOWN: EXIT_UNKNOWN}.get(report.status, EXIT_ERROR)


def cmd_kernel(args) -> int:
    p = load_params(args.params)
    fam = (kernel_K_fixed if args.fixed else kernel_K)(p, args.depth)
    payload = fam.to_json()
    payload["fixed"] = args.fixed
    payload["certified"] = fam.certified()
    _emit(args, payload, "\n".join(str(e) for e in fam.elements))
    return EXIT_OK if fam.certified() else EXIT_ERROR


def cmd_separate(args) -> int:
    v = separation_check(load_params(args.params), args.theta, args.o, args.depth)
    _emit(args, v.to_json(), v.verdict)
    return EXIT_OK if v.separated else EXIT_UNKNOWN


def cmd_render(args) -> int:
    d = word_to_diagram(parse(args.word), load_params(args.params))
    body = render(d, "ascii" if args.ascii else "svg")
    if args.out:
        Path(args.out).write_text(body)
    else:
        sys.stdout.write(body)
    return EXIT_OK


def cmd_suite(args) -> int:
    grid = load_params_list(args.params) if args.params else list(GRID)
    only = [int(x) for x in args.only.split(",")] if args.only else None
    results = run_all(grid, only, args.seed)
    payload = {"grid": [p.to_json() for p in grid], "passed": all(r.passed for r in results),
               "criteria": [r.to_json() for r in results]}
    if args.format == "json":
        _emit(args, payload, "")
    else:
        for r in results:
            print(r.line())
            if args.verbose or not r.passed:
                for d in r.details:
                    print(f"    {d}")
    return EXIT_OK if payload["passed"] else EXIT_ERROR


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")

    parser = argparse.ArgumentParser(prog="orbibraid", description="Orbifold braid group computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("present", parents=[common], help="export a presentation")
    sp.add_argument("--family", required=True, choices=sorted(FAMILY_BUILDERS))
    sp.add_argument("--params", required=True)
    sp.add_argument("--pc-depth", type=int, default=1)
    sp.set_defaults(run=cmd_present)

    sp = sub.add_parser("reduce", parents=[common], help="free reduction, or normal form with --params")
    sp.add_argument("--word", required=True)
    sp.add_argument("--params")
    sp.set_defaults(run=cmd_reduce)

    sp = sub.add_parser("prove", parents=[common], help="search for a proof that lhs = rhs")
    sp.add_argument("--pres")
    sp.add_argument("--family", choices=sorted(FAMILY_BUILDERS))
    sp.add_argument("--params")
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--no-refute", action="store_true", help="skip the invariant oracles on failure")
    sp.set_defaults(run=cmd_prove)

    sp = sub.add_parser("oracle", parents=[common], help="triviality in the group without finite-order relations")
    sp.add_argument("--params", required=True)
    sp.add_argument("--word", required=True)
    sp.set_defaults(run=cmd_oracle)

    sp = sub.add_parser("check-hom", parents=[common], help="von Dyck check of a named map")
    sp.add_argument("--name", required=True)
    sp.add_argument("--params", required=True)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--theta", type=int, default=1)
    sp.add_argument("--o", type=int, default=1)
    sp.set_defaults(run=cmd_check_hom)

    sp = sub.add_parser("kernel", parents=[common], help="bounded kernel family")
    sp.add_argument("--params", required=True)
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--fixed", action="store_true")
    sp.set_defaults(run=cmd_kernel)

    sp = sub.add_parser("separate", parents=[common], help="separation of kernel families")
    sp.add_argument("--params", required=True)
    sp.add_argument("--theta", type=int, default=1)
    sp.add_argument("--o", type=int, default=1)
    sp.add_argument("--depth", type=int, default=3)
    sp.set_defaults(run=cmd_separate)

    sp = sub.add_parser("render", help="draw a braid word")
    sp.add_argument("--params", required=True)
    sp.add_argument("--word", required=True)
    sp.add_argument("--out")
    sp.add_argument("--ascii", action="store_true")
    sp.set_defaults(run=cmd_render)

    sp = sub.add_parser("suite", parents=[common], help="run the acceptance criteria")
    sp.add_argument("--params", help="params object or list replacing the default grid")
    sp.add_argument("--only", help="comma-separated criterion numbers")
    sp.add_argument("--seed", type=int, help="seed for the randomized diagram checks")
    sp.add_argument("-v", "--verbose", action="store_true")
    sp.set_defaults(run=cmd_suite)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    try:
        return args.run(args)
    except (CliError, WordError, ValueError, KeyError) as e:
        print(f"orbibraid {args.command}: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
