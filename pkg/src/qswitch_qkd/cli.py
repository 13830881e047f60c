"""Command-line interface: parameter sweeps, state dumps, self-verification, plots.

Subcommands
-----------
``sweep``   evaluate every metric on a phi grid and write one CSV row per point
``state``   print a scenario's tripartite state and its two-qubit reductions
``verify``  run the built-in verification suites (exit code 2 on failure)
``plot``    render columns of a sweep CSV to a standalone SVG line chart

Angles are radians unless ``--degrees`` is given.  Exit codes: 0 success,
1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .metrics import MetricsRow, evaluate_row
from .scenarios import AttackScenario, reduced_pair, scenario_pure_state, scenario_state
from .svgchart import render_line_chart

__all__ = [
    "CSV_HEADER",
    "METRIC_GROUPS",
    "SweepConfig",
    "CliError",
    "render_sweep_csv",
    "main",
]

CSV_HEADER = "phi,i_ab,i_ae,i_be,min_eve,gain,bell_ab,bell_ae,bell_be,qber,secure"
METRIC_GROUPS = ("mi", "gain", "bell", "qber", "secure")

_SCENARIO_FLAGS = {
    "sg": "SG",
    "switch": "SWITCH",
    "symmetric-cnot": "SYMMETRIC_CNOT",
    "draft-switch": "DRAFT_SWITCH",
}
_PARTNER_FLAGS = {
    "xz": "XZ",
    "swap": "SWAP",
    "cnot": "CNOT",
    "usg": "U_SG",
    "vdraft": "V_DRAFT",
}


class CliError(Exception):
    """Usage or input error; reported on stderr with exit code 1."""


@dataclass(frozen=True)
class SweepConfig:
    """One sweep request: scenario, phi grid, metric selection, output path."""

    kind: str
    partner: str | None
    phi1: float | None
    phi_start: float
    phi_end: float
    steps: int
    metrics: tuple[str, ...]
    output_path: Path | None

    def __post_init__(self):
        if self.phi_start > self.phi_end:
            raise CliError(
                f"phi-start ({self.phi_start}) must not exceed phi-end ({self.phi_end})"
            )
        if self.steps < 2:
            raise CliError(f"steps must be at least 2, got {self.steps}")
        metrics = tuple(self.metrics)
        if not metrics:
            raise CliError("at least one metric must be requested")
        unknown = [m for m in metrics if m not in METRIC_GROUPS]
        if unknown:
            raise CliError(
                f"unknown metrics {unknown}; available: {', '.join(METRIC_GROUPS)}"
            )
        object.__setattr__(self, "metrics", metrics)

    def grid(self) -> np.ndarray:
        return np.linspace(self.phi_start, self.phi_end, self.steps)

    def scenario_at(self, phi: float) -> AttackScenario:
        return AttackScenario(self.kind, phi, self.partner, self.phi1)


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def _row_to_csv(row: MetricsRow) -> str:
    cells = [
        _fmt(row.phi),
        _fmt(row.i_ab),
        _fmt(row.i_ae),
        _fmt(row.i_be),
        _fmt(row.min_eve),
        _fmt(row.gain),
        _fmt(row.bell_ab),
        _fmt(row.bell_ae),
        _fmt(row.bell_be),
        _fmt(row.qber),
        "true" if row.secure else "false",
    ]
    return ",".join(cells)


def compute_sweep(config: SweepConfig) -> list[MetricsRow]:
    """All metric rows of the sweep, in ascending phi order."""
    return [evaluate_row(config.scenario_at(float(phi))) for phi in config.grid()]


def render_sweep_csv(config: SweepConfig, rows: list[MetricsRow] | None = None) -> str:
    if rows is None:
        rows = compute_sweep(config)
    lines = [CSV_HEADER]
    lines.extend(_row_to_csv(r) for r in rows)
    return "\n".join(lines) + "\n"


def _summary_line(config: SweepConfig, rows: list[MetricsRow], dest: str) -> str:
    parts = [
        f"sweep {config.kind.lower()}"
        + (f"/{config.partner.lower()}" if config.partner else ""),
        f"{len(rows)} rows",
        f"phi [{_fmt(rows[0].phi)}, {_fmt(rows[-1].phi)}] -> {dest}",
    ]
    if "mi" in config.metrics:
        parts.append(
            f"i_ab [{_fmt(min(r.i_ab for r in rows))}, {_fmt(max(r.i_ab for r in rows))}]"
        )
        parts.append(
            f"min_eve [{_fmt(min(r.min_eve for r in rows))}, {_fmt(max(r.min_eve for r in rows))}]"
        )
    if "gain" in config.metrics:
        parts.append(
            f"gain [{_fmt(min(r.gain for r in rows))}, {_fmt(max(r.gain for r in rows))}]"
        )
    if "bell" in config.metrics:
        parts.append(
            f"bell_ae [{_fmt(min(r.bell_ae for r in rows))}, {_fmt(max(r.bell_ae for r in rows))}]"
        )
    if "qber" in config.metrics:
        parts.append(
            f"qber [{_fmt(min(r.qber for r in rows))}, {_fmt(max(r.qber for r in rows))}]"
        )
    if "secure" in config.metrics:
        n_true = sum(1 for r in rows if r.secure)
        flips = [
            _fmt(rows[i + 1].phi)
            for i in range(len(rows) - 1)
            if rows[i].secure != rows[i + 1].secure
        ]
        flip_note = f", flips before phi={'; '.join(flips)}" if flips else ""
        parts.append(f"secure {n_true}/{len(rows)}{flip_note}")
    return " | ".join(parts)


def cmd_sweep(config: SweepConfig) -> int:
    rows = compute_sweep(config)
    text = render_sweep_csv(config, rows)
    if config.output_path is None:
        raise CliError("sweep requires an output path (--out)")
    try:
        config.output_path.write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {config.output_path}: {exc}") from exc
    print(_summary_line(config, rows, str(config.output_path)))
    return 0


def _fmt_complex(z: complex) -> str:
    return f"{z.real:+10.6f}{z.imag:+10.6f}i"


def _canonical_phase(amps: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(amps)))
    phase = amps[k] / abs(amps[k]) if abs(amps[k]) > 0 else 1.0
    fixed = amps * np.conj(phase)
    return fixed


def cmd_state(scenario: AttackScenario) -> int:
    rho = scenario_state(scenario)
    label = scenario.kind.lower() + (f"/{scenario.partner.lower()}" if scenario.partner else "")
    angles = f"phi={scenario.phi:.6f}" + (
        f" phi1={scenario.phi1:.6f}" if scenario.phi1 is not None else ""
    )
    print(f"scenario {label} {angles}")
    if rho.purity() > 1.0 - 1e-9:
        amps = _canonical_phase(scenario_pure_state(scenario).amplitudes)
        print("pure state amplitudes (A,B,E):")
        for idx, amp in enumerate(amps):
            print(f"  |{idx:03b}>  {_fmt_complex(complex(amp))}")
    else:
        print("density matrix (A,B,E):")
        for row in rho.mat:
            print("  " + "  ".join(_fmt_complex(complex(z)) for z in row))
    for pair in ("AB", "AE", "BE"):
        print(f"reduced {pair}:")
        for row in reduced_pair(rho, pair).mat:
            print("  " + "  ".join(_fmt_complex(complex(z)) for z in row))
    return 0


def cmd_verify(seed: int = 0) -> int:
    from .selfcheck import run_all

    results = run_all(seed)
    failures = 0
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"[{tag}] {res.name}: {res.detail}")
        failures += 0 if res.passed else 1
    print(f"{len(results) - failures}/{len(results)} suites passed")
    return 0 if failures == 0 else 2


def _read_csv(path: Path) -> tuple[list[str], list[dict[str, float]]]:
    try:
        text = path.read_text()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        raise CliError(f"{path} is empty")
    rows = []
    for raw in reader:
        parsed = {}
        for key, val in raw.items():
            if val is None:
                raise CliError(f"{path} has a short row: {raw}")
            if val == "true":
                parsed[key] = 1.0
            elif val == "false":
                parsed[key] = 0.0
            else:
                try:
                    parsed[key] = float(val)
                except ValueError as exc:
                    raise CliError(f"column {key!r} has non-numeric value {val!r}") from exc
        rows.append(parsed)
    return list(reader.fieldnames), rows


def cmd_plot(csv_path: Path, columns: list[str], out_path: Path) -> int:
    header, rows = _read_csv(csv_path)
    if not rows:
        raise CliError(f"{csv_path} contains no data rows; nothing to plot")
    missing = [c for c in columns if c not in header]
    if missing:
        raise CliError(
            f"column(s) {', '.join(missing)} not found; available: {', '.join(header)}"
        )
    if "phi" not in header:
        raise CliError(f"{csv_path} has no 'phi' column; available: {', '.join(header)}")
    xs = [r["phi"] for r in rows]
    series = [(c, xs, [r[c] for r in rows]) for c in columns]
    svg = render_line_chart(series, xlabel="phi", ylabel="value")
    try:
        out_path.write_text(svg)
    except OSError as exc:
        raise CliError(f"cannot write {out_path}: {exc}") from exc
    print(f"plot {', '.join(columns)} from {csv_path} -> {out_path}")
    return 0


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on bad usage; this CLI reserves 2 for
    # verification failures, so remap usage problems to exit code 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="qswitch-qkd",
        description="Quantum-switch eavesdropping attacks on QKD: sweeps, states, checks, plots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scenario_args(p, with_grid: bool):
        p.add_argument("--scenario", required=True, choices=sorted(_SCENARIO_FLAGS))
        p.add_argument("--partner", choices=sorted(_PARTNER_FLAGS))
        p.add_argument("--phi1", type=float, help="second angle for usg/vdraft partners")
        p.add_argument("--degrees", action="store_true", help="interpret angles in degrees")
        if with_grid:
            p.add_argument("--phi-start", type=float, default=0.0)
            p.add_argument("--phi-end", type=float, default=math.pi / 2)
            p.add_argument("--steps", type=int, default=101)
        else:
            p.add_argument("--phi", type=float, required=True)

    p_sweep = sub.add_parser("sweep", help="write metric rows over a phi grid as CSV")
    add_scenario_args(p_sweep, with_grid=True)
    p_sweep.add_argument("--metrics", default=",".join(METRIC_GROUPS),
                         help="comma-separated subset of mi,gain,bell,qber,secure "
                              "summarized after the run (the CSV always carries all columns)")
    p_sweep.add_argument("--out", required=True, type=Path)
    p_sweep.add_argument("--seed", type=int, default=0,
                         help="reserved for randomized searches; sweeps are deterministic")

    p_state = sub.add_parser("state", help="print a scenario state and its reductions")
    add_scenario_args(p_state, with_grid=False)

    p_verify = sub.add_parser("verify", help="run the built-in verification suites")
    p_verify.add_argument("--seed", type=int, default=0)

    p_plot = sub.add_parser("plot", help="render sweep CSV columns to an SVG chart")
    p_plot.add_argument("csv", type=Path)
    p_plot.add_argument("--columns", required=True,
                        help="comma-separated CSV column names to draw")
    p_plot.add_argument("--out", required=True, type=Path)

    return parser


def _angle(value: float | None, degrees: bool) -> float | None:
    if value is None:
        return None
    return math.radians(value) if degrees else value


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        if args.command == "sweep":
            config = SweepConfig(
                kind=_SCENARIO_FLAGS[args.scenario],
                partner=_PARTNER_FLAGS[args.partner] if args.partner else None,
                phi1=_angle(args.phi1, args.degrees),
                phi_start=_angle(args.phi_start, args.degrees),
                phi_end=_angle(args.phi_end, args.degrees),
                steps=args.steps,
                metrics=tuple(m.strip() for m in args.metrics.split(",") if m.strip()),
                output_path=args.out,
            )
            return cmd_sweep(config)
        if args.command == "state":
            scenario = AttackScenario(
                _SCENARIO_FLAGS[args.scenario],
                _angle(args.phi, args.degrees),
                _PARTNER_FLAGS[args.partner] if args.partner else None,
                _angle(args.phi1, args.degrees),
            )
            return cmd_state(scenario)
        if args.command == "verify":
            return cmd_verify(args.seed)
        if args.command == "plot":
            columns = [c.strip() for c in args.columns.split(",") if c.strip()]
            if not columns:
                raise CliError("--columns must name at least one column")
            return cmd_plot(args.csv, columns, args.out)
        raise CliError(f"unknown command {args.command!r}")
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
