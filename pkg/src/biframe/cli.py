"""Batch front end: evaluate invariants, apply move scripts, run the check suites.

Exit codes: 0 success, 1 parse or validation failure (with file and line
diagnostics), 2 a checked law failed.  Output is deterministic for a fixed
seed; floating approximations are labelled and never feed back into
computation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .engine import minimal_data
from .errors import BiframeError, ParseError
from .fileformat import (
    parse_move_script,
    parse_presentation,
    parse_theory_config,
    render_presentation,
)
from .harness import (
    Budget,
    axiom_check,
    component_scale_mutant,
    functoriality_check,
    phase_twist_mutant,
)
from .presentation import Presentation
from .scalars import ExactScalar
from .theory import AbelianTheory, builtin_theories


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _load_theory(spec: str) -> AbelianTheory:
    path = Path(spec)
    if path.exists():
        try:
            return parse_theory_config(path.read_text(encoding="utf-8"))
        except ParseError as exc:
            raise ParseError(exc.line, f"{spec}: {exc.message}") from None
    builtins = builtin_theories()
    if spec in builtins:
        return builtins[spec]
    raise BiframeError(
        f"theory {spec!r} is neither a file nor a builtin "
        f"({', '.join(sorted(builtins))})"
    )


def _load_presentation(path: str) -> Presentation:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise BiframeError(f"cannot read {path}: {exc}") from None
    try:
        return parse_presentation(text)
    except ParseError as exc:
        raise ParseError(exc.line, f"{path}: {exc.message}") from None


def _scalar_payload(value: ExactScalar, group_order: int) -> dict:
    z = value.to_complex(group_order)
    return {
        "exact": value.to_json(),
        "approx": f"{z.real:.12g}{z.imag:+.12g}i",
    }


def _invariant_payload(theory: AbelianTheory, p: Presentation, corrected: bool) -> dict:
    n = theory.group_order
    payload: dict = {
        "signature": p.signature(),
        "first_homology": p.first_homology(),
    }
    if p.total_genus == 0:
        payload["invariant"] = _scalar_payload(theory.evaluate(p, ()), n)
        if corrected:
            payload["corrected"] = _scalar_payload(theory.corrected_invariant(p, ()), n)
    else:
        dim = n**p.total_genus
        if dim > 256:
            raise BiframeError(
                f"state space dimension {dim} too large to tabulate"
            )
        table = []
        for colors in theory.colorings(p.total_genus):
            entry = {
                "colors": [list(a) for a in colors],
                "value": _scalar_payload(theory.evaluate(p, colors), n),
            }
            if corrected:
                entry["corrected"] = _scalar_payload(
                    theory.corrected_invariant(p, colors), n
                )
            table.append(entry)
        payload["functional"] = table
    return payload


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, separators=(", ", ": ")))
        return
    for key, value in payload.items():
        if key == "functional":
            print("functional:")
            for entry in value:
                colors = ",".join("".join(map(str, a)) for a in entry["colors"])
                line = f"  [{colors}] exact={entry['value']['exact']} approx={entry['value']['approx']}"
                if "corrected" in entry:
                    line += f" corrected={entry['corrected']['approx']}"
                print(line)
        else:
            print(f"{key}: {value}")


def cmd_eval(args: argparse.Namespace) -> int:
    theory = _load_theory(args.theory)
    p = _load_presentation(args.presentation)
    payload = _invariant_payload(theory, p, args.corrected)
    _emit(payload, args.json)
    return 0


def cmd_homology(args: argparse.Namespace) -> int:
    p = _load_presentation(args.presentation)
    payload = {
        "signature": p.signature(),
        "first_homology": p.first_homology(),
        "surgery_circles": p.surgery_count,
        "handlebody_genera": list(p.genera),
    }
    _emit(payload, args.json)
    return 0


def cmd_moves(args: argparse.Namespace) -> int:
    theory = _load_theory(args.theory)
    p = _load_presentation(args.presentation)
    try:
        script_text = Path(args.script).read_text(encoding="utf-8")
    except OSError as exc:
        raise BiframeError(f"cannot read {args.script}: {exc}") from None
    try:
        script = parse_move_script(script_text)
    except ParseError as exc:
        raise ParseError(exc.line, f"{args.script}: {exc.message}") from None

    q = script.apply(p)
    n = theory.group_order
    gamma = theory.gauss_milgram()
    delta_sig = q.signature() - p.signature()
    law_ok = True
    for colors in theory.colorings(p.total_genus):
        before = theory.evaluate(p, colors)
        after = theory.evaluate(q, colors)
        if not after.equals(gamma**delta_sig * before, n):
            law_ok = False
            break
    payload = {
        "before": render_presentation(p),
        "after": render_presentation(q),
        "signature_before": p.signature(),
        "signature_after": q.signature(),
        "delta_signature": delta_sig,
        "anomaly_law_ok": law_ok,
    }
    if p.total_genus == 0:
        payload["invariant_before"] = _scalar_payload(theory.evaluate(p, ()), n)
        payload["invariant_after"] = _scalar_payload(theory.evaluate(q, ()), n)
    _emit(payload, args.json)
    return 0 if law_ok else 2


def _make_minimal_data(theory: AbelianTheory, mutation: str):
    if mutation == "none":
        return minimal_data(theory)
    if mutation == "phase-twist":
        return phase_twist_mutant(theory)
    if mutation == "component-scale":
        return component_scale_mutant(theory)
    raise BiframeError(f"unknown mutation {mutation!r}")


def cmd_axioms(args: argparse.Namespace) -> int:
    theory = _load_theory(args.theory)
    md = _make_minimal_data(theory, args.mutation)
    budget = Budget(seed=args.seed, random_instances=args.budget)
    report = axiom_check(md, budget)
    sys.stdout.write(report.to_jsonl())
    return 0 if report.all_passed else 2


def cmd_functor(args: argparse.Namespace) -> int:
    theory = _load_theory(args.theory)
    md = _make_minimal_data(theory, args.mutation)
    budget = Budget(seed=args.seed, random_instances=args.budget)
    report = functoriality_check(md, budget)
    sys.stdout.write(report.to_jsonl())
    return 0 if report.all_passed else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biframe",
        description="Exact invariants of 2-framed three-manifolds from surgery data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, theory: bool = True) -> None:
        if theory:
            p.add_argument("--theory", required=True, help="config file or builtin name")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p_eval = sub.add_parser("eval", help="evaluate the invariant of a presentation")
    common(p_eval)
    p_eval.add_argument("--presentation", required=True)
    p_eval.add_argument(
        "--corrected",
        action="store_true",
        help="also report the anomaly-corrected value gamma^(-signature) * F",
    )
    p_eval.set_defaults(fn=cmd_eval)

    p_hom = sub.add_parser("homology", help="signature and first homology only")
    common(p_hom, theory=False)
    p_hom.add_argument("--presentation", required=True)
    p_hom.set_defaults(fn=cmd_homology)

    p_moves = sub.add_parser("moves", help="apply a move script and compare invariants")
    common(p_moves)
    p_moves.add_argument("--presentation", required=True)
    p_moves.add_argument("--script", required=True)
    p_moves.set_defaults(fn=cmd_moves)

    for name, fn, blurb in (
        ("axioms", cmd_axioms, "run the four-axiom suite"),
        ("functor", cmd_functor, "run the functor-law suite"),
    ):
        p_check = sub.add_parser(name, help=blurb)
        common(p_check)
        p_check.add_argument("--seed", type=int, default=0)
        p_check.add_argument("--budget", type=int, default=25, help="random instances")
        p_check.add_argument(
            "--mutation",
            choices=["none", "phase-twist", "component-scale"],
            default="none",
            help="corrupt the oracle on purpose (for CI self-tests)",
        )
        p_check.set_defaults(fn=fn)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        return _fail(str(exc))
    except BiframeError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
