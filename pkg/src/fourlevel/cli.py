"""Scenario-driven command line front end.

    fourlevel <solve|simulate|qomap|verify> --scenario FILE --out DIR
              [--steps N] [--seed N]

solve     write the boundary angles and residuals (angles.json)
simulate  write coupling and population/phase traces (couplings.csv,
          populations.csv) from a full Schrodinger propagation
qomap     write the quantum-optics mapping of a diamond scenario
          (qomap.json, rabi.csv)
verify    run the scenario's invariant checks and report pass/fail

Exit codes: 0 success, 1 validation failure, 2 solver failure,
3 accuracy failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .hamiltonian import analytic_evolution, phase_operator, total_hamiltonian
from .propagator import AccuracyError, compare_with_analytic, fidelity, propagate
from .qo import check_resonance, engineered_to_qo
from .rotation import hr_analytic, hr_numeric
from .scenario import Scenario, ScenarioError, load_scenario
from .solvers import (
    FORBIDDEN,
    LevelConfig,
    SolvedAngles,
    SolverError,
    solve_diamond,
    solve_ntype,
    solve_tripod,
)

EXIT_VALIDATION = 1
EXIT_SOLVER = 2
EXIT_ACCURACY = 3

PSI0 = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)


def _solve(sc: Scenario, seed: int) -> SolvedAngles:
    if sc.config is LevelConfig.INVERSE_TRIPOD:
        return solve_tripod(sc.target, sc.T)
    if sc.config is LevelConfig.DIAMOND:
        return solve_diamond(sc.target, sc.T)
    return solve_ntype(sc.target, sc.T, initial_guess=sc.initial_guess, seed=seed)


def _couplings_of_t(solved: SolvedAngles):
    sched = solved.schedule

    def couplings(t: float):
        return hr_analytic(sched.value(t), sched.rate(t))

    return couplings


def _hamiltonian_of_t(solved: SolvedAngles, sc: Scenario):
    couplings = _couplings_of_t(solved)

    def h(t: float):
        return total_hamiltonian(couplings(t), sc.phases, t)

    return h


def _expected_final(sc: Scenario) -> np.ndarray:
    return phase_operator(sc.phases, sc.T) @ sc.target.b.astype(complex)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _write_csv(path: Path, header: list[str], rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", newline="\n")


def _boundary_dict(solved: SolvedAngles) -> dict:
    b = solved.boundary
    return {
        "gamma1": float(b.gamma1),
        "theta1": float(b.theta1),
        "phi1": float(b.phi1),
        "gamma2": float(b.gamma2),
        "theta2": float(b.theta2),
        "phi2": float(b.phi2),
    }


def cmd_solve(sc: Scenario, out: Path, seed: int) -> int:
    solved = _solve(sc, seed)
    from .rotation import ur_of_angles

    final_residual = float(
        np.linalg.norm(ur_of_angles(solved.boundary) @ PSI0.real - sc.target.b)
    )
    payload = {
        "config": sc.config.value,
        "boundary_angles": _boundary_dict(solved),
        "constraint_residual": float(solved.constraint_residual),
        "final_state_residual": final_residual,
        "within_canonical_ranges": bool(solved.within_canonical_ranges),
    }
    (out / "angles.json").write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {out / 'angles.json'}")
    return 0


def cmd_simulate(sc: Scenario, out: Path, seed: int) -> int:
    solved = _solve(sc, seed)
    couplings = _couplings_of_t(solved)
    traj = propagate(_hamiltonian_of_t(solved, sc), PSI0, sc.T, sc.steps)

    rows = []
    for t in traj.times:
        rows.append([t, *couplings(t).as_array()])
    _write_csv(
        out / "couplings.csv",
        ["t", "omega12", "omega13", "omega14", "omega23", "omega24", "omega34"],
        rows,
    )
    rows = [
        [t, *pops, *phis]
        for t, pops, phis in zip(traj.times, traj.populations, traj.phases)
    ]
    _write_csv(
        out / "populations.csv",
        ["t", "p1", "p2", "p3", "p4", "phi2", "phi3", "phi4"],
        rows,
    )
    print(f"wrote {out / 'couplings.csv'} and {out / 'populations.csv'}")

    fid = fidelity(traj.final_state, _expected_final(sc))
    if fid < 1.0 - 1e-6:
        print(f"accuracy failure: final-state fidelity {fid:.9f} < 1 - 1e-6")
        return EXIT_ACCURACY
    print(f"final-state fidelity {fid:.9f}, norm drift {traj.norm_drift:.3e}")
    return 0


def cmd_qomap(sc: Scenario, out: Path, seed: int) -> int:
    if sc.config is not LevelConfig.DIAMOND:
        print("validation failure: qomap requires a diamond scenario")
        return EXIT_VALIDATION
    if sc.omega_levels is None:
        print("validation failure: qomap requires qo.omega_levels in the scenario")
        return EXIT_VALIDATION
    solved = _solve(sc, seed)
    qo = engineered_to_qo(_couplings_of_t(solved), sc.phases, sc.omega_levels)
    payload = {
        "omega_levels": list(qo.omega_levels),
        "laser_frequencies": qo.omega_fields,
        "field_phases": qo.field_phases,
        "rwa_detunings": {
            "delta2": 2.0 * (qo.omega_levels[0] - qo.omega_fields["12"]),
            "delta3": 2.0 * (qo.omega_levels[1] - qo.omega_fields["13"]),
            "delta4": 2.0
            * (qo.omega_levels[2] - qo.omega_fields["12"] - qo.omega_fields["24"]),
        },
        "resonance_residual": check_resonance(qo),
    }
    (out / "qomap.json").write_text(json.dumps(payload, indent=2) + "\n")

    times = np.linspace(0.0, sc.T, sc.steps + 1)
    rows = []
    for t in times:
        row = [t]
        for key in ("12", "13", "24", "34"):
            re, im = qo.rabi[key](t)
            row.extend([re, im])
        rows.append(row)
    _write_csv(
        out / "rabi.csv",
        ["t", "re12", "im12", "re13", "im13", "re24", "im24", "re34", "im34"],
        rows,
    )
    print(f"wrote {out / 'qomap.json'} and {out / 'rabi.csv'}")
    return 0


def cmd_verify(sc: Scenario, out: Path, seed: int) -> int:
    from .rotation import ur_of_angles

    solved = _solve(sc, seed)
    checks: list[tuple[str, float, float]] = []  # (name, value, threshold)

    grid = np.linspace(1e-6 * sc.T, sc.T * (1 - 1e-6), 200)
    forbidden = FORBIDDEN[sc.config]
    worst = max(
        max(abs(getattr(hr_numeric(solved.schedule, t, h=1e-6 * sc.T), n)) for n in forbidden)
        for t in grid
    )
    checks.append(("forbidden_couplings_max", worst, 1e-8))

    round_trip = float(
        np.linalg.norm(ur_of_angles(solved.boundary) @ PSI0.real - sc.target.b)
    )
    checks.append(("target_round_trip_residual", round_trip, 1e-8))

    try:
        traj = propagate(_hamiltonian_of_t(solved, sc), PSI0, sc.T, sc.steps)
    except AccuracyError as exc:
        print(f"FAIL propagation ({exc})")
        return EXIT_ACCURACY
    checks.append(("norm_drift", traj.norm_drift, 1e-8))
    checks.append(
        ("analytic_vs_numeric_max", compare_with_analytic(traj, solved, sc.phases), 1e-6)
    )
    checks.append(
        (
            "final_state_infidelity",
            1.0 - fidelity(traj.final_state, _expected_final(sc)),
            1e-6,
        )
    )

    failed = False
    for name, value, threshold in checks:
        ok = value < threshold
        failed |= not ok
        print(f"{'PASS' if ok else 'FAIL'} {name} = {value:.3e} (< {threshold:.0e})")
    return EXIT_ACCURACY if failed else 0


COMMANDS = {
    "solve": cmd_solve,
    "simulate": cmd_simulate,
    "qomap": cmd_qomap,
    "verify": cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="fourlevel",
        description="Inverse-engineer and simulate four-level state-preparation pulses.",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--scenario", required=True, type=Path)
    parser.add_argument("--out", required=True, type=Path)
    parser.add_argument("--steps", type=int, default=None, help="override scenario steps")
    parser.add_argument("--seed", type=int, default=0, help="multi-start RNG seed")
    args = parser.parse_args(argv)

    try:
        sc = load_scenario(args.scenario)
        if args.steps is not None:
            sc = Scenario(
                config=sc.config,
                target=sc.target,
                T=sc.T,
                phases=sc.phases,
                ansatz=sc.ansatz,
                steps=args.steps,
                initial_guess=sc.initial_guess,
                omega_levels=sc.omega_levels,
            )
            sc.validate()
    except ScenarioError as exc:
        print(f"validation failure: {exc}")
        return EXIT_VALIDATION

    args.out.mkdir(parents=True, exist_ok=True)
    try:
        return COMMANDS[args.command](sc, args.out, args.seed)
    except SolverError as exc:
        print(f"solver failure: {exc}")
        return EXIT_SOLVER
    except AccuracyError as exc:
        print(f"accuracy failure: {exc}")
        return EXIT_ACCURACY


if __name__ == "__main__":
    sys.exit(main())
