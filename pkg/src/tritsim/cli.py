"""Command line front end.

Subcommands: truth-table (arithmetic or simulated adder tables), device
(chirality report), simulate (steady state or waveform dump), sweep
(delay/power/PDP benchmarks), verify (netlist against the logic model).

Exit codes: 0 success, 1 a verification or table mismatch, 2 usage or
configuration problems (including netlist errors), 3 a simulation that
failed to settle.
"""

from __future__ import annotations

import argparse
import itertools
import sys

from .bench import BOTH_VARIANTS, SweepSpec, run_sweep, sweep_csv
from .builders import BuildConfig, build_design
from .cells import DesignVariant, TernaryCellKind, cell_eval
from .cnfet import Chirality, DeviceParams, cnt_diameter, gate_width, \
    is_semiconducting, threshold_voltage
from .errors import ConfigError, NonConvergent, TritsimError, Unresolvable
from .netlist import parse
from .sim import SimConfig, steady_state, transient, waveform_csv, waveform_vcd
from .trits import VoltageMap, full_add, truth_table_csv, voltage_to_trit

OK = 0
MISMATCH = 1
USAGE = 2
NO_FIXPOINT = 3


def _variants(arg: str) -> tuple[DesignVariant, ...]:
    if arg == "both":
        return BOTH_VARIANTS
    return (DesignVariant.DESIGN1,) if arg == "1" else (DesignVariant.DESIGN2,)


def _trit_symbol(level: float | str, cfg: SimConfig) -> str:
    if isinstance(level, str):
        return level
    try:
        return str(int(voltage_to_trit(level, cfg.vmap(), cfg.tol())))
    except Unresolvable:
        return "x"


def _load_netlist(args) -> object:
    if (args.netlist is None) == (args.design is None):
        raise ConfigError("pass exactly one of a netlist file or --design")
    if args.netlist is not None:
        with open(args.netlist) as fh:
            return parse(fh.read())
    variant = DesignVariant.DESIGN1 if args.design == "1" else DesignVariant.DESIGN2
    return build_design(variant, BuildConfig(vdd=args.vdd))


def _parse_inputs(spec: str, vdd: float) -> dict[str, float]:
    """node=value pairs, comma separated.  Bare 0/1/2 are trit levels; a
    value with a decimal point or exponent is taken as volts."""
    levels = VoltageMap(vdd).levels()
    out: dict[str, float] = {}
    for item in spec.split(","):
        if "=" not in item:
            raise ConfigError(f"malformed input assignment {item!r}, expected node=value")
        node, _, value = item.partition("=")
        node = node.strip()
        value = value.strip()
        if not node or not value:
            raise ConfigError(f"malformed input assignment {item!r}, expected node=value")
        if value in ("0", "1", "2"):
            out[node] = levels[int(value)]
            continue
        try:
            out[node] = float(value)
        except ValueError:
            raise ConfigError(
                f"input value {value!r} is neither a trit (0/1/2) nor a voltage") from None
    return out


def _exhaustive_stimulus(nodes: list[str], vdd: float,
                         period: float) -> list[tuple[float, dict[str, float]]]:
    if not nodes:
        raise ConfigError("netlist declares no input nodes; pass --inputs instead")
    if len(nodes) > 6:
        raise ConfigError("too many inputs for an exhaustive waveform; pass --inputs")
    levels = VoltageMap(vdd).levels()
    out = []
    for k, combo in enumerate(itertools.product(range(3), repeat=len(nodes))):
        out.append((k * period, {n: levels[t] for n, t in zip(nodes, combo)}))
    return out


def cmd_truth_table(args) -> int:
    if args.design is None:
        sys.stdout.write(truth_table_csv())
        return OK
    cfg = SimConfig(vdd=args.vdd)
    levels = cfg.vmap().levels()
    lines = ["design,a,b,cin,sum,cout"]
    mismatches = []
    for variant in _variants(args.design):
        net = build_design(variant, BuildConfig(vdd=args.vdd))
        for a, b, c in itertools.product(range(3), repeat=3):
            sigs = steady_state(net, {"a": levels[a], "b": levels[b], "cin": levels[c]}, cfg)
            got_sum = _trit_symbol(sigs["sum"].level, cfg)
            got_cout = _trit_symbol(sigs["cout"].level, cfg)
            want_sum, want_cout = full_add(a, b, c)
            if got_sum != str(int(want_sum)) or got_cout != str(int(want_cout)):
                mismatches.append(
                    f"{variant.value} a={a} b={b} cin={c}: sum={got_sum} "
                    f"cout={got_cout}, want sum={int(want_sum)} cout={int(want_cout)}")
            lines.append(f"{variant.value},{a},{b},{c},{got_sum},{got_cout}")
    sys.stdout.write("\n".join(lines) + "\n")
    if mismatches:
        for m in mismatches:
            print(m, file=sys.stderr)
        return MISMATCH
    return OK


def cmd_device(args) -> int:
    c = Chirality(args.n1, args.n2)
    semiconducting = is_semiconducting(c)
    if args.vth:
        if not semiconducting:
            print(f"error: ({c.n1}, {c.n2}) is metallic, no threshold voltage exists",
                  file=sys.stderr)
            return USAGE
        print(repr(threshold_voltage(c)))
        return OK
    params = DeviceParams()
    lines = [
        f"chirality: ({c.n1}, {c.n2})",
        f"diameter_nm: {cnt_diameter(c)!r}",
        f"semiconducting: {'yes' if semiconducting else 'no'}",
    ]
    if semiconducting:
        lines.append(f"vth_v: {threshold_voltage(c)!r}")
    modes = [args.width_mode.replace("-", "_")] if args.width_mode \
        else ["as_published", "corrected"]
    for mode in modes:
        lines.append(f"width_nm_{mode}: {gate_width(args.tubes, params, mode)!r}")
    sys.stdout.write("\n".join(lines) + "\n")
    return OK


def cmd_simulate(args) -> int:
    net = _load_netlist(args)
    cfg = SimConfig(vdd=args.vdd, c_out_load=args.load)
    if args.inputs:
        sigs = steady_state(net, _parse_inputs(args.inputs, args.vdd), cfg)
        lines = ["node,level_v,strength"]
        for node in sorted(sigs):
            sig = sigs[node]
            level = sig.level if isinstance(sig.level, str) else repr(sig.level)
            strength = sig.strength.name.lower() if sig.strength is not None else "floating"
            lines.append(f"{node},{level},{strength}")
        sys.stdout.write("\n".join(lines) + "\n")
        return OK
    stimulus = _exhaustive_stimulus(sorted(net.inputs), args.vdd, 1.0 / args.freq)
    wave = transient(net, stimulus, cfg)
    if args.format == "vcd":
        sys.stdout.write(waveform_vcd(wave, cfg, name=net.name))
    else:
        sys.stdout.write(waveform_csv(wave))
    return OK


def cmd_sweep(args) -> int:
    spec = SweepSpec(axis=args.axis, values=tuple(args.values or ()),
                     variants=_variants(args.design), vdd=args.vdd,
                     load=args.load, frequency=args.freq)
    sys.stdout.write(sweep_csv(run_sweep(spec)))
    return OK


def cmd_verify(args) -> int:
    with open(args.netlist) as fh:
        net = parse(fh.read())
    cfg = SimConfig(vdd=args.vdd)
    levels = cfg.vmap().levels()
    nodes = net.node_ids()
    mismatches = []
    if args.cell:
        kind = TernaryCellKind(args.cell.upper())
        missing = sorted({"in", "out"} - nodes)
        if missing:
            raise ConfigError(f"netlist lacks required nodes: {', '.join(missing)}")
        rows = 3
        for x in range(3):
            sigs = steady_state(net, {"in": levels[x]}, cfg)
            got = _trit_symbol(sigs["out"].level, cfg)
            want = str(int(cell_eval(kind, x)))
            if got != want:
                mismatches.append(f"in={x}: out={got}, want {want}")
    else:
        missing = sorted({"a", "b", "cin", "sum", "cout"} - nodes)
        if missing:
            raise ConfigError(f"netlist lacks required nodes: {', '.join(missing)}")
        rows = 27
        for a, b, c in itertools.product(range(3), repeat=3):
            sigs = steady_state(net, {"a": levels[a], "b": levels[b], "cin": levels[c]}, cfg)
            got_sum = _trit_symbol(sigs["sum"].level, cfg)
            got_cout = _trit_symbol(sigs["cout"].level, cfg)
            want_sum, want_cout = full_add(a, b, c)
            if got_sum != str(int(want_sum)) or got_cout != str(int(want_cout)):
                mismatches.append(
                    f"a={a} b={b} cin={c}: sum={got_sum} cout={got_cout}, "
                    f"want sum={int(want_sum)} cout={int(want_cout)}")
    if mismatches:
        for m in mismatches:
            print(f"FAIL {m}")
        print(f"{len(mismatches)} of {rows} rows disagree")
        return MISMATCH
    print(f"ok: {rows} rows match")
    return OK


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tritsim",
        description="Ternary CNFET adder toolkit: tables, devices, waveforms, sweeps.")
    sub = p.add_subparsers(dest="command", required=True)

    tt = sub.add_parser("truth-table",
                        help="ternary addition table, arithmetic or simulated")
    tt.add_argument("--design", choices=["1", "2", "both"],
                    help="simulate this structural variant instead of printing arithmetic")
    tt.add_argument("--vdd", type=float, default=0.9)
    tt.set_defaults(func=cmd_truth_table)

    dev = sub.add_parser("device", help="report one chirality's device parameters")
    dev.add_argument("n1", type=int)
    dev.add_argument("n2", type=int, nargs="?", default=0)
    dev.add_argument("tubes", type=int, nargs="?", default=1,
                     help="parallel tubes for the width lines")
    dev.add_argument("--width-mode", choices=["as-published", "corrected"],
                     help="print a single gate-width convention instead of both")
    dev.add_argument("--vth", action="store_true",
                     help="print only the threshold voltage; metallic tubes fail")
    dev.set_defaults(func=cmd_device)

    sim = sub.add_parser("simulate", help="steady state or exhaustive waveform")
    sim.add_argument("netlist", nargs="?", metavar="FILE",
                     help=".tnl netlist to simulate (or pass --design)")
    sim.add_argument("--design", choices=["1", "2"],
                     help="simulate a built-in adder instead of a file")
    sim.add_argument("--vdd", type=float, default=0.9)
    sim.add_argument("--load", type=float, default=1e-15, help="probe load in farads")
    sim.add_argument("--freq", type=float, default=250e6, help="stimulus rate in hertz")
    sim.add_argument("--format", choices=["csv", "vcd"], default="csv")
    sim.add_argument("--inputs", metavar="N=V,...",
                     help="single steady state for these assignments instead of a waveform")
    sim.set_defaults(func=cmd_simulate)

    sw = sub.add_parser("sweep", help="delay/power/PDP across an operating axis")
    sw.add_argument("--axis", choices=["vdd", "load", "frequency", "temperature"],
                    default="load")
    sw.add_argument("--values", type=float, nargs="*",
                    help="axis points; omit for the default grid")
    sw.add_argument("--design", choices=["1", "2", "both"], default="both")
    sw.add_argument("--vdd", type=float, default=0.9)
    sw.add_argument("--load", type=float, default=1e-15)
    sw.add_argument("--freq", type=float, default=250e6)
    sw.set_defaults(func=cmd_sweep)

    ver = sub.add_parser("verify", help="check a netlist against the logic model")
    ver.add_argument("netlist", metavar="FILE")
    ver.add_argument("--cell", choices=["sti", "nti", "pti", "stb"],
                     help="verify a one-input cell on nodes in/out instead of an adder")
    ver.add_argument("--vdd", type=float, default=0.9)
    ver.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NonConvergent as e:
        print(f"error: {e}", file=sys.stderr)
        return NO_FIXPOINT
    except TritsimError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
