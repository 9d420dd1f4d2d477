"""Command line driver: fan file in, deterministic report out.

    qdm <cohomology|ifunction|operators|loop-model> fan.json [options]

Exit status: 0 when every requested verification passed, 1 when a
verification failed, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import dmodule, ifunction, loop_model, serialize, toric
from .cohomology import build_ring
from .dmodule import EmptyWindowError
from .ifunction import StrictSignError
from .loop_model import ComponentAbsentError
from .toric import FanError, NefBasisError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdm",
        description="Exact quantum cohomology D-module computations for "
                    "smooth complete toric varieties.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
            ("cohomology", "ring dimensions, bases and pairing matrices"),
            ("ifunction", "the Euler-ratio series and its components"),
            ("operators", "annihilating operators and quantum relations"),
            ("loop-model", "finite-mode critical data and stabilization")):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("fan", help="path to a fan JSON file")
        cmd.add_argument("--max-degree", type=int, default=6, metavar="B",
                         help="truncate at anticanonical degree B (default 6)")
        cmd.add_argument("--theta-order", type=int, default=None, metavar="T",
                         help="ansatz bound on theta order (default dim+1)")
        cmd.add_argument("--q-degree", type=int, default=1, metavar="Q",
                         help="ansatz bound on q degree (default 1)")
        cmd.add_argument("--hbar-order", type=int, default=None, metavar="H",
                         help="ansatz bound on hbar degree (default dim+1)")
        cmd.add_argument("--modes", default=None, metavar="N0..N1",
                         help="mode cutoff range for the loop model")
        cmd.add_argument("--degree", action="append", default=None, metavar="d1,d2,...",
                         help="curve degree (repeatable)")
        cmd.add_argument("--components", default=None, metavar="b1,b2,...",
                         help="basis indices of series components to expand")
        cmd.add_argument("--log-order", type=int, default=None, metavar="L",
                         help="log-monomial order kept in components (default dim)")
        cmd.add_argument("--allow-general-sign", action="store_true",
                         help="permit degrees pairing negatively with some divisor")
        cmd.add_argument("--format", choices=("json", "text"), default="json")
        cmd.add_argument("--out", default=None, metavar="PATH",
                         help="write the report to PATH instead of stdout")
    return parser


def _load(args):
    with open(args.fan, "r", encoding="utf-8") as fh:
        fan = toric.parse_fan(fh.read())
    cm = toric.charge_matrix(fan)
    ring = build_ring(fan, cm)
    return fan, cm, ring


def _parse_degrees(args, cm):
    if args.degree is None:
        return None
    out = []
    for raw in args.degree:
        parts = [p for p in raw.split(",") if p != ""]
        try:
            d = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError("bad --degree value %r" % raw) from None
        if len(d) != cm.l:
            raise ValueError("--degree needs %d comma-separated integers" % cm.l)
        out.append(d)
    return out


def _parse_modes(raw):
    if raw is None:
        return None
    text = raw.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            lo, hi = int(lo), int(hi)
        except ValueError:
            raise ValueError("bad --modes value %r" % raw) from None
    else:
        try:
            lo = hi = int(text)
        except ValueError:
            raise ValueError("bad --modes value %r" % raw) from None
    if hi < lo:
        raise ValueError("--modes range is empty")
    return list(range(lo, hi + 1))


def cmd_cohomology(args) -> tuple[dict, bool]:
    fan, cm, ring = _load(args)
    gens = toric.mori_generators(fan, cm)
    duals = ring.dual_basis()[1]
    pairing_blocks = {}
    for deg in range(ring.top + 1):
        rows = ring.basis_by_degree[deg]
        cols = ring.basis_by_degree[ring.top - deg]
        block = [[serialize.frac_str(ring.integrate(
            ring.monomial_class(a) * ring.monomial_class(b))) for b in cols]
            for a in rows]
        pairing_blocks["%d,%d" % (deg, ring.top - deg)] = block
    report = {
        "rays": [list(r) for r in fan.rays],
        "charge_matrix": [list(r) for r in cm.m],
        "mori_generators": [list(g) for g in gens],
        "dimensions": list(ring.dims),
        "total_dimension": sum(ring.dims),
        "basis": {str(d): [serialize.mono_str(m) for m in ring.basis_by_degree[d]]
                  for d in range(ring.top + 1)},
        "dual_basis": [serialize.class_json(c) for c in duals],
        "pairing": pairing_blocks,
        "ok": True,
    }
    return report, True


def cmd_ifunction(args) -> tuple[dict, bool]:
    fan, cm, ring = _load(args)
    gens = toric.mori_generators(fan, cm)
    series = ifunction.build_f(ring, cm, gens, args.max_degree,
                               allow_general_sign=args.allow_general_sign)
    homogeneous = all(
        series.coefficients[d].is_homogeneous(-2 * cm.c1_degree(d))
        for d in series.degrees)
    report = {
        "charge_matrix": [list(r) for r in cm.m],
        "max_degree": args.max_degree,
        "prefactor": "exp((t.omega)/hbar), kept symbolic",
        "series": serialize.series_json(series),
        "homogeneous": homogeneous,
    }
    if args.components is not None:
        log_order = ring.top if args.log_order is None else args.log_order
        comps = {}
        for part in args.components.split(","):
            beta = int(part)
            comp = ifunction.component(series, beta, log_order)
            comps[str(beta)] = serialize.component_json(comp, cm)
        report["components"] = comps
    report["ok"] = homogeneous
    return report, homogeneous


def cmd_operators(args) -> tuple[dict, bool]:
    fan, cm, ring = _load(args)
    gens = toric.mori_generators(fan, cm)
    series = ifunction.build_f(ring, cm, gens, args.max_degree,
                               allow_general_sign=args.allow_general_sign)
    theta_order = (ring.top + 1) if args.theta_order is None else args.theta_order
    hbar_order = (ring.top + 1) if args.hbar_order is None else args.hbar_order
    degrees = _parse_degrees(args, cm)
    if degrees is None:
        degrees = gens
    ok = True
    gkz_entries = []
    for d in degrees:
        op = dmodule.gkz_operator(cm, d)
        applied = dmodule.apply(op, series)
        annihilates = applied.is_zero()
        ok = ok and annihilates
        rel = dmodule.semiclassical(op)
        classical = rel.classical_value(ring)
        gkz_entries.append({
            "degree": list(d),
            "operator": serialize.op_json(op),
            "text": serialize.op_str(op),
            "annihilates_series": annihilates,
            "relation": serialize.relation_str(rel),
            "relation_classical_at_q0": serialize.class_json(classical),
            "classical_check": classical.is_zero(),
        })
        ok = ok and classical.is_zero()
    anns = dmodule.find_annihilators(series, theta_order, args.q_degree, hbar_order)
    ann_entries = []
    for op in anns:
        applied = dmodule.apply(op, series)
        verified = applied.is_zero()
        ok = ok and verified
        rel = dmodule.semiclassical(op)
        entry = {
            "operator": serialize.op_json(op),
            "text": serialize.op_str(op),
            "verified": verified,
        }
        if not rel.is_zero():
            entry["relation"] = serialize.relation_str(rel)
            classical = rel.classical_value(ring)
            entry["classical_check"] = classical.is_zero()
            ok = ok and classical.is_zero()
        ann_entries.append(entry)
    report = {
        "charge_matrix": [list(r) for r in cm.m],
        "max_degree": args.max_degree,
        "ansatz": {"theta_order": theta_order, "q_degree": args.q_degree,
                   "hbar_order": hbar_order},
        "gkz": gkz_entries,
        "annihilators": ann_entries,
        "ok": ok,
    }
    return report, ok


def cmd_loop_model(args) -> tuple[dict, bool]:
    fan, cm, ring = _load(args)
    gens = toric.mori_generators(fan, cm)
    degrees = _parse_degrees(args, cm)
    if degrees is None:
        degrees = toric.enumerate_degrees(gens, cm, args.max_degree)
        degrees = [d for d in degrees if any(d)]
    modes = _parse_modes(args.modes)
    ok = True
    reports = []
    for d in degrees:
        n_min = loop_model.min_modes(cm, d)
        wanted = modes if modes is not None else list(range(n_min, n_min + 4))
        usable = [n for n in wanted if n >= n_min]
        skipped = [n for n in wanted if n < n_min]
        if not usable:
            reports.append({"degree": list(d), "min_modes": n_min,
                            "skipped_modes": skipped, "stable": False,
                            "error": "all requested cutoffs below N(d)"})
            ok = False
            continue
        rep = loop_model.check_stabilization(ring, cm, d, usable, fan=fan)
        if skipped:
            rep["skipped_modes"] = skipped
        reports.append(rep)
        ok = ok and rep["stable"]
    report = {"charge_matrix": [list(r) for r in cm.m],
              "reports": reports, "ok": ok}
    return report, ok


_COMMANDS = {
    "cohomology": cmd_cohomology,
    "ifunction": cmd_ifunction,
    "operators": cmd_operators,
    "loop-model": cmd_loop_model,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, ok = _COMMANDS[args.command](args)
    except (FanError, NefBasisError, StrictSignError, EmptyWindowError,
            ComponentAbsentError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    else:
        text = serialize.render_text(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
