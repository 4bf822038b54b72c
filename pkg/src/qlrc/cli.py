"""Command-line front end.

Verbs: construct, verify, decompose, quantize, emit.  Exit status is 0 on
success, 2 for bad input or unmet preconditions, 3 when a search budget runs
out and 4 when an internal invariant breaks.  Reports go to stdout; stderr
only carries error messages.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .code import DistanceBudget, LinearCode, is_dual_containing, min_distance
from .errors import (
    DistanceTooSmall,
    InvalidParams,
    MalformedInput,
    NotQuadraticField,
    QlrcError,
    TooLarge,
    UncoveredCoordinate,
)
from .families import FamilyInstance, build_family, make_params
from .linalg import Matrix
from .locality import LocalityParams, certify_lrc, decompose, singleton_like_bound
from .quantum import induce_with_verdict, verify_optimal_quantum_lrc

EMIT_FORMATS = ("json", "text", "latex-matrix")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _budget(args) -> DistanceBudget:
    return DistanceBudget(args.max_codewords, args.max_subsets)


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from exc


def _load_code(path: str) -> tuple[LinearCode, LocalityParams | None, list | None]:
    """A code from a code file or a constructed instance (which also supplies
    its locality parameters and groups)."""
    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise MalformedInput("expected a JSON object")
    if "classical" in obj:
        inst = FamilyInstance.from_json(obj)
        return inst.classical, inst.locality, [list(g) for g in inst.groups]
    return LinearCode.from_json(obj), None, None


def _params(args, default: LocalityParams | None) -> LocalityParams:
    if args.r is None and args.delta is None and default is not None:
        return default
    if args.r is None or args.delta is None:
        raise InvalidParams(["both --r and --delta are required for this input"])
    return LocalityParams(args.r, args.delta)


def _form(args, C: LinearCode) -> str:
    if args.form == "auto":
        return "hermitian" if C.spec.is_quadratic else "euclidean"
    if args.form == "hermitian" and not C.spec.is_quadratic:
        raise NotQuadraticField(f"{C.spec!r} has no Hermitian form")
    return args.form


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------------------
# verbs


def cmd_construct(args) -> int:
    names = ("q", "u", "v", "t") if args.family == 1 else ("q", "s", "v", "t")
    raw = {n: getattr(args, n) for n in names}
    missing = [f"--{n} is required for family {args.family}" for n, val in raw.items() if val is None]
    if missing:
        raise InvalidParams(missing)
    inst = build_family(make_params(args.family, raw), _budget(args))
    text = canonical_json(inst.to_json())
    _write_out(text, args.out)
    if args.out:
        print(f"family {args.family} {tuple(raw.values())}: {_classical_label(inst)}, {inst.quantum.label}")
    if args.report:
        _instance_report(inst, Path(args.report))
    return 0


def _classical_label(inst: FamilyInstance) -> str:
    C = inst.classical
    return f"[{C.n},{C.k},{inst.distance}]_{C.spec.order} ({inst.locality.r},{inst.locality.delta})-optimal"


def _instance_report(inst: FamilyInstance, outdir: Path) -> None:
    from .report import plot_support, write_tsv

    outdir.mkdir(parents=True, exist_ok=True)
    C = inst.classical
    row = {
        "label": f"family{inst.family}" + "".join(f"_{v}" for v in vars(inst.params).values()),
        "field_order": C.spec.order,
        "n": C.n,
        "k": C.k,
        "d": inst.distance,
        "r": inst.locality.r,
        "delta": inst.locality.delta,
        "singleton_like_bound": singleton_like_bound(C.n, C.k, inst.locality.r, inst.locality.delta),
        "quantum": inst.quantum.label,
        "quantum_optimal": inst.verdict.optimal,
        "dual_containing": inst.verdict.dual_containing,
    }
    write_tsv([row], outdir / "summary.tsv")
    plot_support(C.H, inst.groups, outdir / "parity_support.png", title=f"{row['label']}: {inst.quantum.label}")


def cmd_verify(args) -> int:
    C, default, default_groups = _load_code(args.code)
    params = _params(args, default)
    budget = _budget(args)
    form = _form(args, C)
    groups = _read_json(args.groups) if args.groups else default_groups
    lines = [f"code: [{C.n},{C.k}] over {C.spec!r}, (r, delta) = ({params.r}, {params.delta})"]
    cert = None
    try:
        cert = certify_lrc(C, params, groups, budget)
        shown = " | ".join(",".join(map(str, g.support)) for g in cert.groups)
        lines.append(f"LRC: yes (repair groups {shown})")
    except (UncoveredCoordinate, TooLarge, DistanceTooSmall) as exc:
        lines.append(f"LRC: no ({exc})")
    d = min_distance(C, budget)
    bound = singleton_like_bound(C.n, C.k, params.r, params.delta)
    optimal = cert is not None and d == bound
    lines.append(f"optimal LRC: {_yes(optimal)} (d = {d}, Singleton-like bound = {bound})")
    contains = is_dual_containing(C, form)
    lines.append(f"dual-containing ({form}): {_yes(contains)}")
    verdict = verify_optimal_quantum_lrc(C, params, form, budget, cert)
    dual = verdict.dual_distance if verdict.dual_distance is not None else "not computed"
    lines.append(
        f"quantum-optimal: {_yes(verdict.optimal)} ([[{verdict.n},{verdict.k},{verdict.d}]]_{verdict.q}, "
        f"identity {verdict.identity_lhs} vs {verdict.identity_rhs}, dual distance {dual})"
    )
    for note in verdict.notes:
        lines.append(f"  note: {note}")
    if not contains:
        quantum = "not dual-containing"
    else:
        quantum = "optimal" if verdict.optimal else "not optimal"
    lines.append(f"optimal LRC: {_yes(optimal)}; quantum: {quantum}")
    print("\n".join(lines))
    return 0


def cmd_decompose(args) -> int:
    C, default, _ = _load_code(args.code)
    params = _params(args, default)
    budget = _budget(args)
    cert = certify_lrc(C, params, budget=budget)
    D = decompose(C, cert, budget)
    if args.out:
        Path(args.out).write_text(canonical_json(D.to_json()))
    if args.json:
        sys.stdout.write(canonical_json(D.to_json()))
    else:
        print(D.summary())
    return 0


def cmd_quantize(args) -> int:
    C, default, groups = _load_code(args.code)
    params = _params(args, default)
    budget = _budget(args)
    form = _form(args, C)
    cert = certify_lrc(C, params, groups, budget)
    quantum, verdict = induce_with_verdict(C, params, form, budget, cert)
    _write_out(canonical_json({"quantum": quantum.to_json(), "verdict": verdict.to_json()}), args.out)
    return 0


def cmd_emit(args) -> int:
    obj = _read_json(args.instance)
    if not isinstance(obj, dict):
        raise MalformedInput("expected a JSON object")
    if "classical" in obj:
        inst = FamilyInstance.from_json(obj)
        canonical, code = inst.to_json(), inst.classical
    else:
        code = LinearCode.from_json(obj)
        canonical = code.to_json()
        if "d" in obj:
            canonical["d"] = obj["d"]
    if args.format == "json":
        sys.stdout.write(canonical_json(canonical))
        return 0
    M: Matrix = code.H if args.matrix == "H" else code.G
    sys.stdout.write(M.to_text() if args.format == "text" else M.to_latex())
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlrc", description="Optimal quantum locally recoverable codes.")
    parser.add_argument("--version", action="version", version=f"qlrc {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-codewords", type=int, default=10**7, help="codeword enumeration cap (default 10^7)")
    common.add_argument("--max-subsets", type=int, default=10**6, help="column-subset search cap (default 10^6)")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("construct", parents=[common], help="build and certify a family instance")
    p.add_argument("--family", type=int, choices=(1, 2, 3), required=True)
    for name in ("q", "u", "s", "v", "t"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--out", help="write the instance JSON here instead of stdout")
    p.add_argument("--report", metavar="DIR", help="also write summary.tsv and parity_support.png into DIR")
    p.set_defaults(func=cmd_construct)

    def code_verb(name: str, helptext: str):
        q = sub.add_parser(name, parents=[common], help=helptext)
        q.add_argument("code", help="code or instance JSON file ('-' for stdin)")
        q.add_argument("--r", type=int)
        q.add_argument("--delta", type=int)
        return q

    p = code_verb("verify", "report locality, optimality and the quantum verdict")
    p.add_argument("--form", choices=("auto", "hermitian", "euclidean"), default="auto")
    p.add_argument("--groups", help="JSON list of repair groups to check instead of searching")
    p.set_defaults(func=cmd_verify)

    p = code_verb("decompose", "split an optimal LRC into Case I or Case II")
    p.add_argument("--out", help="write the decomposition JSON here")
    p.add_argument("--json", action="store_true", help="print JSON instead of the summary")
    p.set_defaults(func=cmd_decompose)

    p = code_verb("quantize", "parameters of the induced quantum code")
    p.add_argument("--form", choices=("auto", "hermitian", "euclidean"), default="auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_quantize)

    p = sub.add_parser("emit", help="render a stored code or instance")
    p.add_argument("instance")
    p.add_argument("--format", choices=EMIT_FORMATS, default="json")
    p.add_argument("--matrix", choices=("H", "G"), default="H")
    p.set_defaults(func=cmd_emit)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InvalidParams as exc:
        for v in exc.violations:
            print(f"error: {v}", file=sys.stderr)
        return exc.exit_code
    except QlrcError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
