"""Command-line interface: sweeps, point values, level tables, identity checks.

Subcommands
    barrier  coefficient sweep over E/V0 for the rectangular barrier
    step     coefficient sweep for the potential step
    well     quantized levels of the periodic symmetric well
    pauli    grid convergence table for the minimal-coupling identities
    check    full identity and property suite (exit 0 iff everything passes)
    point    both solvers at a single (E/V0, V0, L) point

Exit codes: 0 success, 1 property failure, 2 sweep finished with flagged
rows, 64 usage error.  All output is deterministic given flags and --seed.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import boundstates, clifford, pauligauge, scattering, spinors, waveop
from .waveop import PhysicalConstants

USAGE_EXIT = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_EXIT, f"{self.prog}: error: {message}\n")


def _load_config(path):
    """key=value lines; unknown keys rejected."""
    values = {}
    allowed = {"hbar_c", "mass_c2", "precision", "seed"}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in allowed:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            values[key] = val.strip()
    return values


def _fmt(v: float, precision: int) -> str:
    return f"{v:.{precision - 1}e}"


def _emit(text: str, output_path):
    if output_path:
        with open(output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table_text(table: scattering.SweepTable, fmt: str, precision: int) -> str:
    if fmt == "json":
        records = table.to_records(precision)
        if table.incident_spin == spinors.DOWN:
            records = [{**rec, "incident_spin": "down_extrapolation"} for rec in records]
        return json.dumps(records) + "\n"
    text = table.to_csv(precision)
    if table.incident_spin == spinors.DOWN:
        text = "# incident_spin=down: extrapolation, only spin-up incidence is validated\n" + text
    return text


def _add_common(parser):
    parser.add_argument("--config", help="key=value file for constants")
    parser.add_argument("--output", help="write the table here instead of stdout")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--precision", type=int, default=None, help="significant digits (6..17)")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--hbar-c", type=float, default=None, help="eV nm")
    parser.add_argument("--mass", type=float, default=None, help="particle rest energy, eV")


def _resolve(parser, args):
    """Merge config file and flags; flags win.  Returns (constants, mass,
    precision, seed)."""
    conf = {}
    if args.config:
        try:
            conf = _load_config(args.config)
        except (OSError, ValueError) as exc:
            parser.error(str(exc))
    try:
        hbar_c = args.hbar_c if args.hbar_c is not None else float(conf.get("hbar_c", 197.0))
        mass = args.mass if args.mass is not None else float(conf.get("mass_c2", 0.5e6))
        precision = (
            args.precision if args.precision is not None else int(conf.get("precision", 12))
        )
        seed = args.seed if args.seed is not None else int(conf.get("seed", 0))
    except ValueError as exc:
        parser.error(f"bad config value: {exc}")
    if not 6 <= precision <= 17:
        parser.error(f"precision must be in [6, 17], got {precision}")
    if hbar_c <= 0 or mass <= 0:
        parser.error("hbar_c and mass must be positive")
    return PhysicalConstants(hbar_c=hbar_c, mass_c2=mass), mass, precision, seed


def cmd_barrier(parser, args) -> int:
    constants, mass, precision, _ = _resolve(parser, args)
    if args.v0 <= 0 or args.length <= 0:
        parser.error("--v0 and --length must be positive")
    if args.steps < 1:
        parser.error("--steps must be at least 1")
    if args.emin <= 0 or args.emax < args.emin:
        parser.error("need 0 < emin <= emax")
    ratios = np.linspace(args.emin, args.emax, args.steps)
    template = scattering.BarrierProblem(
        e_energy=args.v0,
        v0=args.v0,
        length=args.length,
        m=mass,
        incident_spin=args.spin,
        constants=constants,
    )
    table = scattering.sweep(template, ratios * args.v0, args.method)
    _emit(_table_text(table, args.format, precision), args.output)
    return 2 if table.flagged else 0


def cmd_step(parser, args) -> int:
    constants, mass, precision, _ = _resolve(parser, args)
    if args.v0 <= 0:
        parser.error("--v0 must be positive")
    if args.steps < 1:
        parser.error("--steps must be at least 1")
    if args.emin <= 0 or args.emax < args.emin:
        parser.error("need 0 < emin <= emax")
    rows = []
    for ratio in np.linspace(args.emin, args.emax, args.steps):
        try:
            coeffs = scattering.solve_step(
                ratio * args.v0, args.v0, mass, args.spin, constants
            )
            rows.append(scattering.SweepRow(float(ratio), coeffs, None, None))
        except (ValueError, scattering.DegenerateConfigurationError) as exc:
            rows.append(
                scattering.SweepRow(float(ratio), None, None, f"{type(exc).__name__}: {exc}")
            )
    table = scattering.SweepTable(rows, "numeric", args.spin)
    _emit(_table_text(table, args.format, precision), args.output)
    return 2 if table.flagged else 0


def cmd_well(parser, args) -> int:
    constants, mass, precision, _ = _resolve(parser, args)
    if args.nmax < 1:
        parser.error("--nmax must be a positive integer")
    if args.length <= 0:
        parser.error("--length must be positive")
    w = boundstates.WellProblem(args.length, mass, args.nmax, constants)
    analytic = boundstates.energy_levels(w)
    numeric = None
    if args.numeric:
        e_hi = boundstates.level_energy(args.nmax, w.length, w.m, constants) * (
            1.0 + 1.0 / (2.0 * args.nmax)
        )
        numeric = dict(boundstates.find_levels_numerically(w, e_hi).levels)
    header = ["n", "E_n_eV", "residual"]
    if args.numeric:
        header += ["E_n_numeric", "rel_deviation"]
    records = []
    for n, e_n in analytic.levels:
        rec = {
            "n": n,
            "E_n_eV": float(_fmt(e_n, precision)),
            "residual": float(_fmt(boundstates.periodic_residual(e_n, w), precision)),
        }
        if args.numeric:
            e_num = numeric.get(n, float("nan"))
            rec["E_n_numeric"] = float(_fmt(e_num, precision))
            rec["rel_deviation"] = float(_fmt(abs(e_num - e_n) / e_n, precision))
        records.append(rec)
    if args.format == "json":
        _emit(json.dumps(records) + "\n", args.output)
    else:
        lines = [",".join(header)]
        for rec in records:
            lines.append(",".join(str(rec[h]) if h == "n" else _fmt(rec[h], precision) for h in header))
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_pauli(parser, args) -> int:
    _, _, precision, _ = _resolve(parser, args)
    if args.base_size < 8:
        parser.error("--base-size must be at least 8")
    if args.levels < 1:
        parser.error("--levels must be at least 1")
    sizes = [args.base_size * 2**i for i in range(args.levels)]
    rows = pauligauge.convergence_table(sizes, extent=args.extent, bz=args.bz)
    header = ["h_nm", "identity_residual", "gauge_residual", "commutator_residual"]
    if args.format == "json":
        records = [dict(zip(header, (float(_fmt(v, precision)) for v in row))) for row in rows]
        _emit(json.dumps(records) + "\n", args.output)
    else:
        lines = [",".join(header)]
        for row in rows:
            lines.append(",".join(_fmt(v, precision) for v in row))
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def cmd_point(parser, args) -> int:
    constants, mass, precision, _ = _resolve(parser, args)
    if args.v0 <= 0 or args.length <= 0 or args.e_over_v0 <= 0:
        parser.error("--v0, --length and --e-over-v0 must be positive")
    prob = scattering.BarrierProblem(
        e_energy=args.e_over_v0 * args.v0,
        v0=args.v0,
        length=args.length,
        m=mass,
        incident_spin=args.spin,
        constants=constants,
    )
    try:
        _, numeric = scattering.solve_barrier(prob)
    except scattering.CriticalBandError:
        numeric = scattering.closed_form(prob)
    closed = scattering.closed_form(prob)
    header = ["method", "T1", "T2", "R1", "R2", "T_qm", "R_qm", "sum"]
    rows = [("numeric", numeric), ("closed", closed)]
    if args.format == "json":
        records = [
            {
                "method": name,
                **{
                    k: float(_fmt(v, precision))
                    for k, v in zip(
                        header[1:],
                        (c.t1, c.t2, c.r1, c.r2, c.t_qm, c.r_qm, c.total),
                    )
                },
            }
            for name, c in rows
        ]
        _emit(json.dumps(records) + "\n", args.output)
    else:
        lines = [",".join(header)]
        for name, c in rows:
            vals = (c.t1, c.t2, c.r1, c.r2, c.t_qm, c.r_qm, c.total)
            lines.append(name + "," + ",".join(_fmt(v, precision) for v in vals))
        _emit("\n".join(lines) + "\n", args.output)
    return 0


def _corrupted_eta(e_set):
    bad = e_set.eta.copy()
    bad[0, 2] = -bad[0, 2]  # breaks nilpotency
    return clifford.EtaSet(eta=bad, eta_dagger=bad.conj().T)


def _run_check(seed: int, fault: str | None, out) -> int:
    rng = np.random.default_rng(seed)
    lines = []
    failed = []

    def record(name, value, tol):
        ok = value <= tol
        lines.append(f"{'PASS' if ok else 'FAIL'} {name} max_dev={value:.3e} tol={tol:.1e}")
        if not ok:
            failed.append(name)

    g = clifford.build_standard_gammas()
    e_set = clifford.build_eta(g)
    if fault == "eta-sign":
        e_set = _corrupted_eta(e_set)
    rep = clifford.identity_suite(g, e_set)
    for name, dev, ok in rep.entries:
        record(f"clifford.{name}", dev, clifford.IDENTITY_TOL)
    record("clifford.footnote_equivalence", clifford.footnote_equivalence_check(g), 1e-14)

    u = clifford.random_householder_unitary(rng)
    g_conj = clifford.conjugate_gammas(g, u)
    rep_conj = clifford.identity_suite(g_conj, clifford.build_eta(g_conj))
    record("clifford.conjugated_representation", rep_conj.max_deviation, 1e-13)

    worst = 0.0
    for _ in range(8):
        e_energy = float(rng.uniform(0.5, 2.0e5))
        v = float(rng.uniform(0.0, 3.0e5))
        m = float(rng.uniform(1.0e3, 1.0e6))
        op = waveop.momentum_operator(e_energy, v, m, clifford.build_eta(g))
        target = 2.0 * m * (e_energy - v) * np.eye(4)
        dev = float(np.max(np.abs(op.matrix @ op.matrix - target)))
        worst = max(worst, dev / max(abs(2.0 * m * (e_energy - v)), 1.0))
    record("waveop.squared_dispersion", worst, 1e-12)
    worst = max(
        waveop.general_a_check(a, 3.0, 1.5)
        / max((3.0 / a) ** 2, (a * 1.5) ** 2, 2.0 * 1.5 * 3.0)
        for a in np.concatenate([np.logspace(-3, 3, 7), -np.logspace(-3, 3, 7)])
    )
    record("waveop.a_independence", worst, 1e-12)
    worst = 0.0
    for _ in range(6):
        ek = float(rng.uniform(1e-6, 1.0))
        m = 1.0
        res = waveop.nonrel_limit_residual(ek, m)
        if res > ek / (2.0 * m):
            worst = max(worst, res - ek / (2.0 * m))
    record("waveop.nonrel_envelope", worst, 0.0)

    try:
        _, res = spinors.reconstruct_eta_1d(
            spinors.convention_samples((1.0, 2.5, 7.0), 1.0)
        )
        record("spinors.reconstruction_residual", res, spinors.RECONSTRUCTION_TOL)
    except spinors.ConventionInconsistencyError:
        record("spinors.reconstruction_residual", float("inf"), spinors.RECONSTRUCTION_TOL)
    eta_ref = spinors.eta_1d_reference()
    worst = 0.0
    for _ in range(6):
        e_energy = float(rng.uniform(0.5, 10.0))
        v = float(rng.uniform(0.0, 20.0))
        m = float(rng.uniform(0.5, 5.0))
        if abs(e_energy - v) < 1e-3 or abs(abs(e_energy - v) - m) < 1e-3 * m:
            continue
        if e_energy > v:
            modes = [
                spinors.basis_propagating(e_energy, v, m, s, d)
                for s in (spinors.UP, spinors.DOWN)
                for d in (spinors.FORWARD, spinors.BACKWARD)
            ]
        else:
            modes = [
                spinors.basis_evanescent(e_energy, v, m, s, d)
                for s in (spinors.UP, spinors.DOWN)
                for d in (spinors.DECAYING, spinors.GROWING)
            ]
        op = waveop.momentum_operator(e_energy, v, m, clifford.build_eta(g))
        for s in modes:
            dev = spinors.eigen_consistency(op, s, eta_ref) / max(e_energy, m)
            worst = max(worst, dev)
    record("spinors.eigen_consistency", worst, 1e-10)

    worst_sum = 0.0
    worst_delta = 0.0
    worst_t2 = 0.0
    n_points = 400
    for regime_hi in (True, False):
        for _ in range(n_points):
            v0 = float(rng.uniform(0.5, 50.0))
            ratio = float(rng.uniform(1.001, 4.0)) if regime_hi else float(rng.uniform(0.05, 0.999))
            length = float(rng.uniform(0.05, 12.0))
            m = float(rng.uniform(1e4, 1e6))
            prob = scattering.BarrierProblem(ratio * v0, v0, length, m)
            try:
                _, numeric = scattering.solve_barrier(prob)
            except scattering.CriticalBandError:
                continue
            closed = scattering.closed_form(prob)
            worst_sum = max(worst_sum, abs(numeric.total - 1.0), abs(closed.total - 1.0))
            worst_delta = max(worst_delta, scattering.coefficient_delta(numeric, closed))
            worst_t2 = max(worst_t2, numeric.t2, closed.t2)
    record("scattering.conservation", worst_sum, 1e-10)
    record("scattering.numeric_vs_closed", worst_delta, 1e-10)
    record("scattering.spin_down_transmission", worst_t2, 1e-10)
    worst = 0.0
    for _ in range(50):
        v0 = float(rng.uniform(0.5, 50.0))
        ratio = float(rng.uniform(0.05, 3.0))
        if abs(ratio - 1.0) < 1e-6:
            continue
        coeffs = scattering.solve_step(ratio * v0, v0, float(rng.uniform(1e4, 1e6)))
        worst = max(worst, abs(coeffs.total - 1.0))
    record("scattering.step_conservation", worst, 1e-10)

    w = boundstates.WellProblem(10.0, 0.5e6, 12)
    analytic = boundstates.energy_levels(w)
    e_hi = boundstates.level_energy(12, 10.0, 0.5e6, w.constants) * 1.04
    numeric = dict(boundstates.find_levels_numerically(w, e_hi).levels)
    worst = max(
        abs(numeric[n] - e_n) / e_n for n, e_n in analytic.levels
    )
    record("boundstates.levels", worst, 1e-10)

    rows = pauligauge.convergence_table((32, 64))
    identity_order = pauligauge.convergence_orders([r[1] for r in rows])[0]
    gauge_order = pauligauge.convergence_orders([r[2] for r in rows])[0]
    commutator_order = pauligauge.convergence_orders([r[3] for r in rows])[0]
    record("pauligauge.identity_order", max(0.0, 1.9 - identity_order), 0.0)
    record("pauligauge.gauge_order", max(0.0, 1.9 - gauge_order), 0.0)
    record("pauligauge.commutator_order", max(0.0, 1.9 - commutator_order), 0.0)

    out.write("\n".join(lines) + "\n")
    if failed:
        out.write(f"FAILED first={failed[0]} total={len(failed)}\n")
        return 1
    out.write("OK all identities and properties hold\n")
    return 0


def cmd_check(parser, args) -> int:
    _, _, _, seed = _resolve(parser, args)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            return _run_check(seed, args.fault, fh)
    return _run_check(seed, args.fault, sys.stdout)


def build_parser() -> _Parser:
    parser = _Parser(prog="etawave", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_barrier = sub.add_parser("barrier", help="rectangular barrier sweep")
    p_barrier.add_argument("--v0", type=float, required=True, help="barrier height, eV")
    p_barrier.add_argument("--length", type=float, required=True, help="barrier width, nm")
    p_barrier.add_argument("--emin", type=float, default=1.01, help="lowest E/V0")
    p_barrier.add_argument("--emax", type=float, default=3.0, help="highest E/V0")
    p_barrier.add_argument("--steps", type=int, default=200)
    p_barrier.add_argument("--method", choices=("numeric", "closed", "both"), default="numeric")
    p_barrier.add_argument("--spin", choices=(spinors.UP, spinors.DOWN), default=spinors.UP)
    _add_common(p_barrier)

    p_step = sub.add_parser("step", help="potential step sweep")
    p_step.add_argument("--v0", type=float, required=True)
    p_step.add_argument("--emin", type=float, default=0.05)
    p_step.add_argument("--emax", type=float, default=3.0)
    p_step.add_argument("--steps", type=int, default=200)
    p_step.add_argument("--spin", choices=(spinors.UP, spinors.DOWN), default=spinors.UP)
    _add_common(p_step)

    p_well = sub.add_parser("well", help="periodic well levels")
    p_well.add_argument("--length", type=float, required=True, help="half-width L, nm")
    p_well.add_argument("--nmax", type=int, default=10)
    p_well.add_argument("--numeric", action="store_true", help="also root-find the levels")
    _add_common(p_well)

    p_pauli = sub.add_parser("pauli", help="grid identity convergence table")
    p_pauli.add_argument("--base-size", type=int, default=32)
    p_pauli.add_argument("--levels", type=int, default=3)
    p_pauli.add_argument("--extent", type=float, default=8.0)
    p_pauli.add_argument("--bz", type=float, default=0.3)
    _add_common(p_pauli)

    p_check = sub.add_parser("check", help="identity and property suite")
    p_check.add_argument("--fault", choices=("eta-sign",), default=None, help=argparse.SUPPRESS)
    _add_common(p_check)

    p_point = sub.add_parser("point", help="both solvers at one energy")
    p_point.add_argument("--v0", type=float, required=True)
    p_point.add_argument("--length", type=float, required=True)
    p_point.add_argument("--e-over-v0", type=float, required=True)
    p_point.add_argument("--spin", choices=(spinors.UP, spinors.DOWN), default=spinors.UP)
    _add_common(p_point)

    return parser


_DISPATCH = {
    "barrier": cmd_barrier,
    "step": cmd_step,
    "well": cmd_well,
    "pauli": cmd_pauli,
    "check": cmd_check,
    "point": cmd_point,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return _DISPATCH[args.command](parser, args)


if __name__ == "__main__":
    sys.exit(main())
