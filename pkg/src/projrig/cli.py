"""Command-line interface: ``projrig <command> ...``.

Exit status is 0 on success and 2 on any validation problem (bad file,
unknown id, configuration outside the affine chart, ...).
"""

from __future__ import annotations

import argparse
import sys
from typing import Dict, List, Optional, Sequence

from . import analysis, constructions, fileio, linalg
from .errors import ChartError, ProjrigError
from .geometry import Configuration, dualize, format_rational, normalize_to_chart, parse_rational
from .rigidity import (
    FlexVector,
    PinningSystem,
    StressVector,
    assemble,
    exact_rank_kernel_cokernel,
)
from .svg import SvgOptions, render_svg


class CliError(Exception):
    pass


def _ids(text: Optional[str]) -> List[str]:
    if not text:
        return []
    return [t.strip() for t in text.split(",") if t.strip()]


def _pair(text: str, what: str):
    parts = _ids(text)
    if len(parts) != 2:
        raise CliError(f"{what} expects two comma-separated ids, got {text!r}")
    return parts[0], parts[1]


def _load(args) -> fileio.ConfigurationFile:
    return fileio.read(args.file)


def _matrix_ready(args) -> fileio.ConfigurationFile:
    """Load and, if requested, move the configuration into the chart."""
    cf = _load(args)
    seed = getattr(args, "normalize_seed", None)
    if seed is not None:
        cf.config = normalize_to_chart(cf.config, seed=seed)
    elif not cf.config.chart_valid:
        bad = cf.config.chart_blockers()[0]
        raise ChartError(f"{bad!r} blocks the affine chart; rerun with --normalize-seed N", entity=bad)
    return cf


def _pins(args, cf: fileio.ConfigurationFile) -> PinningSystem:
    pts, lns = _ids(getattr(args, "pin", None)), _ids(getattr(args, "pin_lines", None))
    if not pts and not lns:
        return cf.pins
    unknown = [p for p in pts if p not in cf.config.point_coords] + [l for l in lns if l not in cf.config.line_coords]
    if unknown:
        raise CliError(f"unknown ids in pins: {', '.join(unknown)}")
    return PinningSystem(pts, lns)


def _emit(args, report: Dict, lines: Sequence[str]) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(fileio.dump_report(report))
    else:
        for ln in lines:
            print(ln)


def _stress_json(config: Configuration, w: StressVector) -> List[Dict[str, str]]:
    return [{"point": p, "line": l, "value": format_rational(w[(p, l)])} for p, l in config.incidences]


def _flex_json(config: Configuration, v: FlexVector) -> Dict[str, Dict[str, List[str]]]:
    return {
        "points": {p: [format_rational(c) for c in v.point_velocity[p]] for p in config.points},
        "lines": {l: [format_rational(c) for c in v.line_velocity[l]] for l in config.lines},
    }


def _flex_text(config: Configuration, v: FlexVector) -> str:
    parts = [f"{p}:({format_rational(a)},{format_rational(b)})" for p, (a, b) in v.point_velocity.items() if a or b]
    parts += [f"{l}:({format_rational(a)},{format_rational(b)})" for l, (a, b) in v.line_velocity.items() if a or b]
    return " ".join(parts) or "0"


# --- subcommands -----------------------------------------------------------

def cmd_generate(args) -> int:
    cfg, pins, meta = constructions.generate(
        args.name, level=args.level, mode=args.mode, paper_coords=args.paper_coords, seed=args.seed,
        n_points=args.points, n_lines=args.lines, incidences=args.incidences,
    )
    fileio.save(cfg, args.output, pins, meta)
    n_p, n_l, n_i = cfg.counts
    print(f"wrote {args.output}: {n_p} points, {n_l} lines, {n_i} incidences")
    return 0


def cmd_analyze(args) -> int:
    cf = _matrix_ready(args)
    pins = _pins(args, cf)
    rep = analysis.analyze(cf.config, pins or None, mode=analysis.NUMERIC if args.numeric else analysis.EXACT)
    d = rep.to_dict()
    lines = [
        f"points {rep.n_points}  lines {rep.n_lines}  incidences {rep.n_incidences}",
        f"dof budget {rep.dof_budget}",
        f"rank {rep.rank}  nullity {rep.nullity}  trivial {rep.trivial_dim}",
        f"nontrivial flex dim {rep.nontrivial_flex_dim}  stress dim {rep.stress_dim}",
        f"{rep.independence}, {rep.rigidity} ({rep.arithmetic_mode})",
    ]
    if rep.pinned_nullity is not None:
        lines.append(f"pinned nullity {rep.pinned_nullity}")
    _emit(args, fileio.make_report("analyze", args.file, normalizeSeed=args.normalize_seed, analysis=d), lines)
    return 0


def cmd_stress(args) -> int:
    cf = _matrix_ready(args)
    cfg = cf.config
    res = exact_rank_kernel_cokernel(assemble(cfg))
    basis = res.cokernel
    lines = [f"stress dim {len(basis)}"]
    section: Dict = {"stressDim": len(basis), "basis": []}
    if args.basis or args.json:
        section["basis"] = [_stress_json(cfg, w) for w in basis]
    if args.basis:
        for i, w in enumerate(basis):
            lines.append(f"stress {i}:")
            lines += [f"  {p} {l} {format_rational(w[(p, l)])}" for p, l in cfg.incidences if w[(p, l)]]
    if args.verify_balance:
        reports = [analysis.verify_three_fold_balance(cfg, w) for w in basis]
        section["balance"] = [r.to_dict() for r in reports]
        ok = all(r.overall for r in reports)
        lines.append(f"balanced: {'true' if ok else 'false'}")
    _emit(args, fileio.make_report("stress", args.file, normalizeSeed=args.normalize_seed, stresses=section), lines)
    return 0


def cmd_flex(args) -> int:
    cf = _matrix_ready(args)
    cfg = cf.config
    pins = _pins(args, cf)
    if args.nontrivial_only:
        basis = analysis.nontrivial_flex_basis(cfg)
        M = assemble(cfg)
        nullity = M.ncols - linalg.rank(M.rows, M.ncols)
    else:
        res = exact_rank_kernel_cokernel(assemble(cfg, pins or None))
        basis, nullity = res.kernel, res.nullity
    lines = [f"nullity {nullity}; listing {len(basis)} flex vector(s)"]
    lines += [f"flex {i}: {_flex_text(cfg, v)}" for i, v in enumerate(basis)]
    section = {"nullity": nullity, "nontrivialOnly": bool(args.nontrivial_only),
               "basis": [_flex_json(cfg, v) for v in basis]}
    _emit(args, fileio.make_report("flex", args.file, normalizeSeed=args.normalize_seed, flexes=section), lines)
    return 0


def cmd_second_order(args) -> int:
    cf = _matrix_ready(args)
    cfg = cf.config
    pins = _pins(args, cf)
    if not pins:
        raise CliError("second-order needs pins (--pin/--pin-lines or a pins entry in the file)")
    res = exact_rank_kernel_cokernel(assemble(cfg, pins))
    verdict = analysis.second_order_rigidity_verdict(cfg, pins)
    section: Dict = {"pinnedNullity": res.nullity, "verdict": verdict}
    lines = [f"pinned nullity {res.nullity}", f"verdict: {verdict}"]
    if res.nullity == 1:
        so = analysis.second_order_extension_test(cfg, pins, res.kernel[0])
        section["outcome"] = so.outcome
        section["flex"] = _flex_json(cfg, so.flex)
        lines.append(f"extension: {so.outcome}")
        if so.extendable:
            section["acceleration"] = _flex_json(cfg, so.acceleration)
        else:
            section["certificateRow"] = so.certificate_row
            section["certificateLabel"] = list(so.certificate_label)
            lines.append(f"inconsistent row {so.certificate_row}: {' '.join(so.certificate_label)}")
    _emit(args, fileio.make_report("second-order", args.file, normalizeSeed=args.normalize_seed,
                                   secondOrder=section), lines)
    return 0


def cmd_svg(args) -> int:
    cf = _matrix_ready(args) if (args.stress or args.flex) else _load(args)
    cfg = cf.config
    pins = _pins(args, cf)
    opts = SvgOptions(pins=pins, scale=args.scale)
    if args.stress:
        basis = exact_rank_kernel_cokernel(assemble(cfg)).cokernel
        if not basis:
            raise CliError("configuration carries no self-stress")
        if not 0 <= args.stress_index < len(basis):
            raise CliError(f"--stress-index must be below {len(basis)}")
        opts.stress = basis[args.stress_index]
        if args.anchor:
            opts.stress_anchor = _pair(args.anchor, "--anchor")
            opts.anchor_value = parse_rational(args.anchor_value)
    if args.flex:
        if pins:
            basis = exact_rank_kernel_cokernel(assemble(cfg, pins)).kernel
        else:
            basis = analysis.nontrivial_flex_basis(cfg)
        if not basis:
            raise CliError("configuration has no flex to draw")
        if not 0 <= args.flex_index < len(basis):
            raise CliError(f"--flex-index must be below {len(basis)}")
        opts.flex = basis[args.flex_index]
    fileio.atomic_write(args.output, render_svg(cfg, opts))
    print(f"wrote {args.output}")
    return 0


def cmd_dualize(args) -> int:
    cf = _load(args)
    pins = PinningSystem(cf.pins.lines, cf.pins.points)
    fileio.save(dualize(cf.config), args.output, pins, cf.metadata)
    print(f"wrote {args.output}")
    return 0


def cmd_extend(args) -> int:
    cf = _load(args)
    if bool(args.add_line) == bool(args.add_point):
        raise CliError("give exactly one of --add-line or --add-point")
    if args.add_line:
        p, q = _pair(args.add_line, "--add-line")
        cfg = constructions.zero_extension_add_line(cf.config, p, q, args.id)
    else:
        l, m = _pair(args.add_point, "--add-point")
        cfg = constructions.zero_extension_add_point(cf.config, l, m, args.id)
    fileio.save(cfg, args.output, cf.pins, cf.metadata)
    print(f"wrote {args.output}")
    return 0


# --- parser -------------------------------------------------------------------

def _add_normalize(sp) -> None:
    sp.add_argument("--normalize-seed", type=int, default=None,
                    help="apply a seeded projective transform to reach the affine chart")


def _add_pins(sp) -> None:
    sp.add_argument("--pin", help="comma-separated point ids to pin")
    sp.add_argument("--pin-lines", help="comma-separated line ids to pin")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="projrig", description="Projective rigidity of point-line configurations.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("generate", help="write a canonical configuration")
    sp.add_argument("name", choices=constructions.GENERATORS)
    sp.add_argument("--level", type=int, default=0)
    sp.add_argument("--mode", choices=("tangent", "secant", "miss"), default="tangent")
    sp.add_argument("--paper-coords", action="store_true", help="use the reference placement (Pappus, Desargues)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--points", type=int, default=6)
    sp.add_argument("--lines", type=int, default=6)
    sp.add_argument("--incidences", type=int, default=12)
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("analyze", help="rank, flexes and stresses summary")
    sp.add_argument("file")
    _add_pins(sp)
    sp.add_argument("--numeric", action="store_true", help="floating-point SVD rank instead of exact")
    sp.add_argument("--json", action="store_true")
    _add_normalize(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("stress", help="self-stresses (cokernel)")
    sp.add_argument("file")
    sp.add_argument("--basis", action="store_true")
    sp.add_argument("--verify-balance", action="store_true")
    sp.add_argument("--json", action="store_true")
    _add_normalize(sp)
    sp.set_defaults(func=cmd_stress)

    sp = sub.add_parser("flex", help="infinitesimal flexes (kernel)")
    sp.add_argument("file")
    sp.add_argument("--nontrivial-only", action="store_true")
    _add_pins(sp)
    sp.add_argument("--json", action="store_true")
    _add_normalize(sp)
    sp.set_defaults(func=cmd_flex)

    sp = sub.add_parser("second-order", help="second-order rigidity verdict")
    sp.add_argument("file")
    _add_pins(sp)
    sp.add_argument("--json", action="store_true")
    _add_normalize(sp)
    sp.set_defaults(func=cmd_second_order)

    sp = sub.add_parser("svg", help="draw the configuration")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--stress", action="store_true")
    sp.add_argument("--stress-index", type=int, default=0)
    sp.add_argument("--anchor", help="incidence 'point,line' used to scale stress labels")
    sp.add_argument("--anchor-value", default="1")
    sp.add_argument("--flex", action="store_true")
    sp.add_argument("--flex-index", type=int, default=0)
    sp.add_argument("--scale", type=float, default=1.0, help="display factor for flex arrows")
    _add_pins(sp)
    _add_normalize(sp)
    sp.set_defaults(func=cmd_svg)

    sp = sub.add_parser("dualize", help="swap points and lines")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_dualize)

    sp = sub.add_parser("extend", help="0-extension by one line or one point")
    sp.add_argument("file")
    sp.add_argument("--add-line", help="two point ids")
    sp.add_argument("--add-point", help="two line ids")
    sp.add_argument("--id", default=None, help="id of the new element")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_extend)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ProjrigError, CliError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
