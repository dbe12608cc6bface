"""Batch front end: trajectory runs, equilibrium reports, parameter sweeps,
and the self-check suites.

Exit codes: 0 ok, 1 configuration error, 2 integration accuracy failure,
3 closed form not applicable (without --numeric-only), 4 self-check failure.
"""

import argparse
import json
import sys

import numpy as np

from . import selfcheck
from .bath import BathValidityError, make_bath
from .config import (ConfigError, build_block, build_initial, load_config,
                     werner_state)
from .entanglement import concurrence, concurrence_closed
from .generator import IntegrationAccuracyError, evolve
from .pauli_algebra import PauliCoefficients, convert, tau_of
from .steady_state import (ClosedFormNotApplicable, equilibrium_components,
                           liouvillian_null_space, stationary_family)

COEFF_COLUMNS = [f"r{a}{b}" for a in range(4) for b in range(4) if (a, b) != (0, 0)]
TRAJECTORY_HEADER = "t,tau,trace_err,min_pt_eig,concurrence," + ",".join(COEFF_COLUMNS)
COEFF_COMMENT = ("# r{a}{b} = coefficient of sigma_a x sigma_b "
                 "(sigma_0 = identity), ordered (0,1),(0,2),...,(3,3)")
SWEEP_HEADER = "value,c_closed,c_evolved,delta_c"


def _fmt(x):
    return f"{x:.15g}"


def _coeff_row(coeffs):
    vals = []
    for a in range(4):
        for b in range(4):
            if (a, b) == (0, 0):
                continue
            if a == 0:
                vals.append(coeffs.r0i[b - 1])
            elif b == 0:
                vals.append(coeffs.ri0[a - 1])
            else:
                vals.append(coeffs.rij[a - 1, b - 1])
    return vals


def cmd_evolve(config_path, out_path):
    """Integrate the configured run and write the trajectory CSV."""
    cfg = load_config(config_path)
    block = build_block(cfg)
    initial = build_initial(cfg)
    tr = evolve(initial, block,
                t_end=cfg.integrator["t_end"], dt=cfg.integrator["dt"],
                sample_every=cfg.integrator["sample_every"])
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(COEFF_COMMENT + "\n")
        fh.write(TRAJECTORY_HEADER + "\n")
        for k in range(len(tr.times)):
            row = [tr.times[k], tr.tau[k], tr.trace_err[k],
                   tr.min_pt_eig[k], tr.concurrence[k]] + _coeff_row(tr.states[k])
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    return 0


def _tau_line_member(block, tau):
    """Stationary state at correlation trace tau from the numerical oracle."""
    sol = liouvillian_null_space(block)
    if sol["dimension"] != 1 or sol["full_rank_member"] is None:
        return None, sol
    d = sol["basis"][0]
    tau_d = d[6] + d[10] + d[14]
    if abs(tau_d) < 1e-8:
        return None, sol
    base = convert(sol["full_rank_member"])
    vec = base.as_vector() + (tau - tau_of(base)) / tau_d * d
    return convert(PauliCoefficients.from_vector(vec)), sol


def cmd_steady(config_path, numeric_only=False):
    """Print the equilibrium report for the configured bath and initial state."""
    cfg = load_config(config_path)
    block = build_block(cfg)
    tau0 = tau_of(build_initial(cfg))

    try:
        fam = stationary_family(block)
    except ClosedFormNotApplicable:
        if not numeric_only:
            raise
        member, sol = _tau_line_member(block, tau0)
        report = {"closed_form_applicable": False,
                  "tau": tau0,
                  "nullspace": {"dimension": sol["dimension"],
                                "full_rank_found": sol["full_rank_member"] is not None},
                  "concurrence_numeric":
                      None if member is None else concurrence(member)}
        print(json.dumps(report, indent=2))
        return 0

    closed = concurrence_closed(fam.M, fam.R, tau0)
    eq = equilibrium_components(tau0, fam)
    member, sol = _tau_line_member(block, tau0)
    residual = (None if member is None
                else float(np.abs(member - eq.state).max()))
    report = {"closed_form_applicable": True,
              "M": fam.M, "N": fam.N, "R": fam.R,
              "Delta": closed["Delta"], "threshold": closed["threshold"],
              "tau": tau0,
              "components": eq.components,
              "concurrence_closed": closed["C"],
              "nullspace": {"dimension": sol["dimension"],
                            "full_rank_found": sol["full_rank_member"] is not None,
                            "agreement_residual": residual},
              "boundary": block.boundary}
    print(json.dumps(report, indent=2))
    return 0


def _sweep_rows(cfg, param, values):
    base_block = build_block(cfg)
    initial_key = next(iter(cfg.initial))

    for value in values:
        block, initial, s_here = base_block, None, None
        if param == "tau":
            if not -3.0 <= value <= 1.0:
                raise ConfigError(f"sweep tau value {value} outside [-3, 1]")
            # canonical representative of the tau class: singlet/triplet mix
            initial = PauliCoefficients(np.zeros(3), np.zeros(3),
                                        np.diag([value / 3.0] * 3))
        elif param == "s":
            if initial_key != "werner":
                raise ConfigError("sweep parameter 's' needs a werner initial state")
            initial = werner_state(value)  # validates range
            s_here = value
        elif param == "B":
            B0 = np.asarray(cfg.bath["B"], dtype=float)
            norm = np.linalg.norm(B0)
            direction = B0 / norm if norm > 0 else np.array([0.0, 0.0, 1.0])
            A = (np.diag(cfg.bath["lambda"]) if "lambda" in cfg.bath
                 else np.asarray(cfg.bath["A"], dtype=float))
            try:
                block = make_bath(A, value * direction)
            except BathValidityError as exc:
                raise ConfigError(f"sweep B value {value}: {exc}") from None
        elif param.startswith("lambda_"):
            if "lambda" not in cfg.bath:
                raise ConfigError(f"sweep parameter '{param}' needs a bath "
                                  "given by rates, not a full matrix")
            idx = int(param[-1]) - 1
            lam = list(cfg.bath["lambda"])
            lam[idx] = value
            try:
                block = make_bath(np.diag(lam), np.asarray(cfg.bath["B"], dtype=float))
            except BathValidityError as exc:
                raise ConfigError(f"sweep {param} value {value}: {exc}") from None
        else:
            raise ConfigError(f"unknown sweep parameter {param!r}")

        if initial is None:
            # this row runs the configured initial state; the enhancement
            # prediction applies only when that state is in the werner family
            initial = build_initial(cfg)
            if initial_key == "werner":
                s_here = cfg.initial["werner"]["s"]

        fam = stationary_family(block)
        tau0 = tau_of(initial)
        closed = concurrence_closed(fam.M, fam.R, tau0)
        tr = evolve(initial, block,
                    t_end=cfg.integrator["t_end"], dt=cfg.integrator["dt"],
                    sample_every=max(cfg.integrator["sample_every"], 100))
        c_evolved = tr.concurrence[-1]
        if s_here is not None:
            delta_c = 2 * s_here * (1 - (2 + closed["Delta"]) / (3 + 2 * fam.R))
            delta_str = _fmt(delta_c)
        else:
            delta_str = ""
        yield value, closed["C"], c_evolved, delta_str


def cmd_sweep(config_path, param, values, out_path):
    """One asymptotic-concurrence row per swept value."""
    cfg = load_config(config_path)
    rows = list(_sweep_rows(cfg, param, values))
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write(f"# sweep parameter: {param}\n")
        fh.write(SWEEP_HEADER + "\n")
        for value, c_closed, c_evolved, delta_str in rows:
            fh.write(",".join([_fmt(value), _fmt(c_closed),
                               _fmt(c_evolved), delta_str]) + "\n")
    return 0


def cmd_check():
    """Run every invariant suite; report one PASS/FAIL line each."""
    results = selfcheck.run_all()
    first_fail = None
    for name, ok, detail in results:
        print(f"{'PASS' if ok else 'FAIL'} {name} ({detail})")
        if not ok and first_fail is None:
            first_fail = name
    if first_fail is not None:
        print(f"self-check failed: {first_fail}", file=sys.stderr)
        return 4
    return 0


def _parse_values(text):
    try:
        return [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise ConfigError(f"values: expected a comma-separated list of "
                          f"numbers, got {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pairbath",
        description="Two qubits in a common Markovian bath: trajectories, "
                    "equilibria, sweeps, self-checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="integrate a trajectory to CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("steady", help="equilibrium report for a config")
    p.add_argument("--config", required=True)
    p.add_argument("--numeric-only", action="store_true",
                   help="allow baths outside the closed-form family")

    p = sub.add_parser("sweep", help="asymptotic concurrence over a parameter")
    p.add_argument("--config", required=True)
    p.add_argument("--param", required=True,
                   choices=["tau", "B", "s", "lambda_1", "lambda_2", "lambda_3"])
    p.add_argument("--values", required=True,
                   help="comma-separated list of parameter values")
    p.add_argument("--out", required=True)

    sub.add_parser("check", help="run the invariant suites")
    return parser


def _join_values_flag(argv):
    """Fold `--values <list>` into `--values=<list>` so that lists starting
    with a negative number (tau sweeps) survive option parsing."""
    out, k = [], 0
    while k < len(argv):
        if argv[k] == "--values" and k + 1 < len(argv):
            out.append(f"--values={argv[k + 1]}")
            k += 2
        else:
            out.append(argv[k])
            k += 1
    return out


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_values_flag(argv))
    try:
        if args.command == "evolve":
            return cmd_evolve(args.config, args.out)
        if args.command == "steady":
            return cmd_steady(args.config, numeric_only=args.numeric_only)
        if args.command == "sweep":
            return cmd_sweep(args.config, args.param,
                             _parse_values(args.values), args.out)
        return cmd_check()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except IntegrationAccuracyError as exc:
        print(f"integration failure: {exc}", file=sys.stderr)
        return 2
    except ClosedFormNotApplicable as exc:
        print(f"closed form not applicable: {exc} "
              f"(use 'steady --numeric-only')", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
