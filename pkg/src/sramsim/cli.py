"""Command-line driver.

    sramsim run bench.stim --vcd out.vcd [--report json-lines] [--figures DIR]
    sramsim check bench.stim
    sramsim table

Exit codes: 0 clean run, 2 timing violations detected, 1 usage or
input errors. Device geometry and timing default to the 16x2 part;
initial contents are set per output bit with --init-0, --init-1, ...
"""

import argparse
import json
import os
import re
import sys

from .driver import device_signals, simulate, validate_for_device
from .logic import BitVector
from .sram import SramConfig
from .stimulus import StimulusError, parse

_INIT_FLAG = re.compile(r"--init-(\d+)(?:=(.*))?$")


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _ns(ps: int) -> str:
    return f"{ps / 1000:.3f}ns"


def _extract_init_flags(argv):
    """Pull --init-<n> flags out of argv before argparse sees them."""
    inits = {}
    remaining = []
    i = 0
    while i < len(argv):
        m = _INIT_FLAG.match(argv[i])
        if not m:
            remaining.append(argv[i])
            i += 1
            continue
        column = int(m.group(1))
        if m.group(2) is not None:
            value = m.group(2)
        else:
            if i + 1 >= len(argv):
                raise CliError(f"{argv[i]} needs a value")
            value = argv[i + 1]
            i += 1
        if column in inits:
            raise CliError(f"--init-{column} given twice")
        inits[column] = value
        i += 1
    return inits, remaining


def _add_device_flags(p):
    p.add_argument("--words", type=int, default=16,
                   help="word count, power of two (default 16)")
    p.add_argument("--bits", type=int, default=2,
                   help="data width in bits (default 2)")
    p.add_argument("--active-low", action="store_true",
                   help="write on the falling clock edge")
    p.add_argument("--t-setup", type=int, default=1000, metavar="PS")
    p.add_argument("--t-hold", type=int, default=500, metavar="PS")
    p.add_argument("--t-ac", type=int, default=3000, metavar="PS",
                   help="address-to-output access time")
    p.add_argument("--t-cko", type=int, default=None, metavar="PS",
                   help="clock-to-output delay (default: t-ac)")
    p.add_argument("--t-ibuf", type=int, default=0, metavar="PS")
    p.add_argument("--t-obuf", type=int, default=0, metavar="PS")


def build_config(args, inits) -> SramConfig:
    init = None
    if inits:
        vectors = [BitVector.zeros(args.words) for _ in range(args.bits)]
        for column, literal in inits.items():
            if not 0 <= column < args.bits:
                raise CliError(
                    f"--init-{column}: no such output bit (bits={args.bits})")
            try:
                vectors[column] = BitVector.from_text(literal, args.words)
            except ValueError as exc:
                raise CliError(f"--init-{column}: {exc}") from None
        init = tuple(vectors)
    try:
        return SramConfig(
            words=args.words, data_bits=args.bits,
            clock_active_rising=not args.active_low, init=init,
            t_setup=args.t_setup, t_hold=args.t_hold, t_ac=args.t_ac,
            t_cko=args.t_cko, t_ibuf=args.t_ibuf, t_obuf=args.t_obuf)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _load_stimulus(path):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    return parse(text)


def _summary_stats(measurements):
    if not measurements:
        return None, None, None
    latencies = [m.latency for m in measurements]
    return min(latencies), sum(latencies) / len(latencies), max(latencies)


def render_text_report(report) -> list:
    lines = [
        f"events: {report.events_processed}",
        f"writes: {report.writes_committed}",
        f"violations: {len(report.violations)}",
    ]
    lo, avg, hi = _summary_stats(report.measurements)
    if lo is None:
        lines.append("access_time: none")
    else:
        lines.append(
            f"access_time: min={_ns(lo)} avg={_ns(avg)} max={_ns(hi)}")
    for v in report.violations:
        lines.append(
            f"VIOLATION {v.kind} signal={v.signal} edge={v.edge_time}ps "
            f"stable={v.actual_stable}ps required={v.required}ps")
    for m in report.measurements:
        lines.append(
            f"MEASURE cause={m.cause} trigger={m.trigger_time}ps "
            f"settle={m.settle_time}ps latency={_ns(m.latency)}")
    for message in report.diagnostics:
        lines.append(f"DIAGNOSTIC {message}")
    return lines


def render_json_report(report) -> list:
    lo, avg, hi = _summary_stats(report.measurements)
    records = [{
        "type": "summary",
        "events": report.events_processed,
        "writes": report.writes_committed,
        "violations": len(report.violations),
        "access_min_ps": lo,
        "access_avg_ps": avg,
        "access_max_ps": hi,
    }]
    for v in report.violations:
        records.append({
            "type": "violation", "kind": v.kind, "signal": v.signal,
            "edge_time": v.edge_time, "actual_stable": v.actual_stable,
            "required": v.required,
        })
    for m in report.measurements:
        records.append({
            "type": "measurement", "cause": m.cause,
            "trigger_time": m.trigger_time, "settle_time": m.settle_time,
            "latency": m.latency,
        })
    for message in report.diagnostics:
        records.append({"type": "diagnostic", "message": message})
    return [json.dumps(r) for r in records]


def mode_table(config) -> str:
    b = config.data_bits
    d = f"D{b - 1}:D0" if b > 1 else "D"
    o = f"O{b - 1}:O0" if b > 1 else "O"
    a = f"A{config.addr_bits - 1}:A0" if config.addr_bits > 1 else "A0"
    write_edge, other_edge = ("↑", "↓")
    if not config.clock_active_rising:
        write_edge, other_edge = other_edge, write_edge
    rows = [
        ("WE (mode)", "WCLK", d, o),
        ("0 (read)", "x", "x", "data"),
        ("1 (read)", "0", "x", "data"),
        ("1 (read)", "1", "x", "data"),
        ("1 (write)", write_edge, d, d),
        ("1 (read)", other_edge, "x", "data"),
    ]
    widths = [max(len(r[c]) for r in rows) for c in range(4)]
    out = []
    for i, row in enumerate(rows):
        out.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
        if i == 0:
            out.append("  ".join("-" * w for w in widths))
    out.append("")
    out.append(f"data = word addressed by {a}")
    return "\n".join(out)


def cmd_run(args, config) -> int:
    stim = _load_stimulus(args.stimulus)
    report, vcd_text, _ = simulate(config, stim)
    vcd_path = args.vcd
    if vcd_path is None:
        vcd_path = os.path.splitext(args.stimulus)[0] + ".vcd"
    with open(vcd_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(vcd_text)
    figure_paths = []
    if args.figures:
        from . import figures
        os.makedirs(args.figures, exist_ok=True)
        wave_path = os.path.join(args.figures, "waveform.png")
        access_path = os.path.join(args.figures, "access_time.png")
        figures.save_waveform_figure(report.changes, device_signals(config),
                                     stim.run_until, wave_path)
        figures.save_access_figure(report.measurements, access_path)
        figure_paths = [wave_path, access_path]
    if args.report == "json-lines":
        lines = render_json_report(report)
        lines.extend(json.dumps({"type": "figure", "path": p})
                     for p in figure_paths)
    else:
        lines = render_text_report(report)
        lines.extend(f"figure: {p}" for p in figure_paths)
    print("\n".join(lines))
    return 2 if report.violations else 0


def cmd_check(args, config) -> int:
    stim = _load_stimulus(args.stimulus)
    validate_for_device(stim, config)
    print(f"ok: {len(stim.declarations)} signals, {len(stim.events)} events, "
          f"{len(stim.clocks)} clocks, run {stim.run_until}ps")
    return 0


def cmd_table(args, config) -> int:
    print(mode_table(config))
    return 0


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        inits, argv = _extract_init_flags(list(argv))
        parser = _Parser(prog="sramsim", description=__doc__)
        sub = parser.add_subparsers(dest="command", required=True)

        p_run = sub.add_parser("run", help="simulate a stimulus file")
        p_run.add_argument("stimulus")
        p_run.add_argument("--vcd", metavar="PATH",
                           help="waveform output (default: <stimulus>.vcd)")
        p_run.add_argument("--report", choices=("text", "json-lines"),
                           default="text")
        p_run.add_argument("--figures", metavar="DIR",
                           help="also render waveform/access-time figures")
        _add_device_flags(p_run)

        p_check = sub.add_parser("check", help="validate a stimulus file")
        p_check.add_argument("stimulus")
        _add_device_flags(p_check)

        p_table = sub.add_parser("table", help="print the operating-mode table")
        _add_device_flags(p_table)

        args = parser.parse_args(argv)
        config = build_config(args, inits)
        handler = {"run": cmd_run, "check": cmd_check, "table": cmd_table}
        return handler[args.command](args, config)
    except (CliError, StimulusError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
