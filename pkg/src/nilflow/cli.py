"""Command-line front end: curvature reports, flow runs, verification, spectra.

Subcommands: curvature, flow, verify, spectrum, sweep.  Output is CSV for
trajectories and JSON elsewhere; floats are printed with 17 significant
digits so files round-trip exactly.  Exit codes: 0 ok, 1 verification
failure, 2 invalid parameters, 3 early termination under --strict.
"""
from __future__ import annotations

import argparse
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .algebra import Family, MetricState, build_group, family_dim
from .curvature import (
    literal_discrepancy,
    ricci_general,
    ricci_specialized_diag,
    scalar_curvature,
    scalar_specialized,
    sigma_heisenberg,
    sigma_quaternion,
)
from .errors import NilflowError
from .flow import (
    FlowParams,
    TerminationReason,
    closed_form,
    closed_form_coeffs,
    conserved_quantities,
    integrate,
    rhs_diagonal,
)
from .joperator import classify, spectrum, theoretical_p_factor, verify_p8
from .spectrum import central_periods, length_scaling_factors, length_spectrum_witness

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# serialization: JSON with floats at 17 significant digits

def _json_dumps(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = ",\n".join(
            f'{pad}  "{k}": {_json_dumps(v, indent + 1)}' for k, v in obj.items()
        )
        return "{\n" + items + "\n" + pad + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        items = ",\n".join(f"{pad}  {_json_dumps(v, indent + 1)}" for v in seq)
        return "[\n" + items + "\n" + pad + "]"
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format(float(obj), ".17g")
    if obj is None:
        return "null"
    return '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _envelope(config: dict, result: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "config": config, "result": result}


# ---------------------------------------------------------------------------
# argument handling

def _parse_g0(text: str, dim: int) -> np.ndarray:
    if text == "identity":
        return np.ones(dim)
    values = np.array([float(x) for x in text.split(",")])
    if values.shape != (dim,):
        raise NilflowError(f"--g0 needs {dim} comma-separated values, got {len(values)}")
    if not np.isfinite(values).all():
        raise NilflowError("--g0 entries must be finite")
    return values


def _parse_rho_list(text: str) -> list[float]:
    values = [float(x) for x in text.split(",")]
    if not all(np.isfinite(values)):
        raise NilflowError("--rho values must be finite")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nilflow",
        description="Ricci-Bourguignon flow on Heisenberg and quaternion Lie groups",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, rho_list=False):
        p.add_argument("--family", required=True, choices=[f.value for f in Family])
        p.add_argument("--n", required=True, type=int)
        p.add_argument("--rho", default="0",
                       help="coupling constant" + (" (comma-separated list)" if rho_list else ""))
        p.add_argument("--g0", default="identity",
                       help="comma-separated diagonal entries or 'identity'")
        p.add_argument("--output", default="-", metavar="PATH",
                       help="output path, '-' for stdout")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("curvature", help="curvature report for a diagonal metric")
    common(p)

    p = sub.add_parser("flow", help="integrate the flow, write a trajectory CSV")
    common(p)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--record-every", type=int, default=10)
    p.add_argument("--strict", action="store_true",
                   help="exit 3 if the run terminates before t-end")
    p.add_argument("--ledger", default=None, metavar="PATH",
                   help="invariant-ledger JSON sidecar (default: <output>.ledger.json)")

    p = sub.add_parser("verify", help="run the invariant suite; exit 0 only if all pass")
    common(p)

    p = sub.add_parser("spectrum", help="spectral report of j(Z)^2 and period sets")
    common(p)
    p.add_argument("--t", type=float, default=0.0, help="flow time of the metric")

    p = sub.add_parser("sweep", help="run 'flow' across a rho list")
    common(p, rho_list=True)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--record-every", type=int, default=10)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--output-dir", default=".", help="directory for per-rho CSVs")

    return parser


# ---------------------------------------------------------------------------
# subcommands

def _cmd_curvature(args, config) -> int:
    family = Family(args.family)
    g0 = _parse_g0(args.g0, family_dim(family, args.n))
    spec = build_group(family, args.n)
    metric = MetricState.from_diag(g0)
    ric = ricci_general(spec, metric)
    r_dev, ric_dev, flagged = literal_discrepancy(spec, metric)
    result = {
        "ricci_diag": np.diag(ric),
        "ricci_offdiag_max": float(np.abs(ric - np.diag(np.diag(ric))).max()),
        "ricci_specialized_diag": ricci_specialized_diag(family, g0, args.n),
        "scalar": scalar_curvature(spec, metric),
        "scalar_specialized": scalar_specialized(family, g0, args.n),
        "literal_formula_deviation": {"riemann": r_dev, "ricci": ric_dev,
                                      "flagged": flagged},
    }
    if family is Family.HEISENBERG:
        result["sigma"] = sigma_heisenberg(g0, args.n)
    else:
        sp, s1, s2, s3 = sigma_quaternion(g0, args.n)
        result["sigma_prime"] = sp
        result["sigma_123"] = [s1, s2, s3]
    _write(args.output, _json_dumps(_envelope(config, result)) + "\n")
    return 0


def _run_flow(family, n, rho, g0, args):
    params = FlowParams(family=family, n=n, rho=rho, dt=args.dt,
                        t_end=args.t_end, record_every=args.record_every)
    return integrate(params, g0)


def _cmd_flow(args, config) -> int:
    family = Family(args.family)
    rho = float(args.rho)
    g0 = _parse_g0(args.g0, family_dim(family, args.n))
    traj = _run_flow(family, args.n, rho, g0, args)
    _write(args.output, traj.to_csv())
    ledger = {
        "terminated_reason": traj.terminated_reason.value,
        "t_final": float(traj.times[-1]),
        "invariant_drift": traj.invariant_ledger,
    }
    ledger_path = args.ledger
    if ledger_path is None:
        ledger_path = "-" if args.output == "-" else args.output + ".ledger.json"
    _write(ledger_path, _json_dumps(_envelope(config, ledger)) + "\n")
    if args.strict and traj.terminated_reason is not TerminationReason.HORIZON:
        return 3
    return 0


def _cmd_sweep(args, config) -> int:
    family = Family(args.family)
    rhos = _parse_rho_list(args.rho)
    g0 = _parse_g0(args.g0, family_dim(family, args.n))
    os.makedirs(args.output_dir, exist_ok=True)
    max_workers = int(os.environ.get("NILFLOW_THREADS", "0")) or min(len(rhos), 8)

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        trajs = list(pool.map(lambda r: _run_flow(family, args.n, r, g0, args), rhos))

    summary = []
    status = 0
    for rho, traj in zip(rhos, trajs):
        path = os.path.join(args.output_dir,
                            f"{family.short}{args.n}_rho{rho:g}.csv")
        _write(path, traj.to_csv())
        summary.append({
            "rho": rho,
            "csv": path,
            "terminated_reason": traj.terminated_reason.value,
            "t_final": float(traj.times[-1]),
            "final_state": traj.final_state(),
            "invariant_drift": traj.invariant_ledger,
        })
        if args.strict and traj.terminated_reason is not TerminationReason.HORIZON:
            status = 3
    _write(args.output, _json_dumps(_envelope(config, {"runs": summary})) + "\n")
    return status


def _cmd_spectrum(args, config) -> int:
    family = Family(args.family)
    rho = float(args.rho)
    g0 = _parse_g0(args.g0, family_dim(family, args.n))
    spec = build_group(family, args.n)
    g_t = closed_form(family, g0, args.n, rho, args.t) if args.t > 0.0 else g0
    metric = MetricState.from_diag(g_t, t=args.t)
    z = np.zeros(spec.dim)
    z[spec.center_indices[0]] = 1.0
    report = spectrum(spec, metric, z)
    z_norm = float(np.sqrt(g_t[spec.center_indices[0]]))
    periods = central_periods(z_norm)
    result = {
        "mu": report.mu,
        "thetas": list(report.thetas),
        "subspace_dims": list(report.subspace_dims),
        "verdict": report.verdict.value,
        "p_factor_observed": report.p_factor_observed,
        "p_factor_theoretical": theoretical_p_factor(family, args.n, rho, args.t),
        "classification": classify(spec, metric, seed=args.seed).value,
        "central_periods": {"z_norm": z_norm,
                            "values": list(periods.values),
                            "set": list(periods.as_set)},
    }
    _write(args.output, _json_dumps(_envelope(config, result)) + "\n")
    return 0


def _cmd_verify(args, config) -> int:
    family = Family(args.family)
    n = args.n
    rho = float(args.rho)
    dim = family_dim(family, n)
    g0 = _parse_g0(args.g0, dim)
    spec = build_group(family, n)
    rng = np.random.default_rng(args.seed)
    checks: list[tuple[str, bool, float]] = []

    def add(name, tol, value):
        checks.append((name, bool(value <= tol), float(value)))

    # oracle equivalence on random diagonal metrics
    dev = 0.0
    for _ in range(25):
        d = rng.uniform(0.5, 2.0, dim)
        m = MetricState.from_diag(d)
        ric = ricci_general(spec, m)
        dev = max(dev, float(np.abs(np.diag(ric) - ricci_specialized_diag(family, d, n)).max()))
        dev = max(dev, float(np.abs(ric - np.diag(np.diag(ric))).max()))
        dev = max(dev, abs(scalar_curvature(spec, m) - scalar_specialized(family, d, n)))
    add("ricci_oracle_equivalence", 1e-12, dev)

    # closed form vs integrator (identity initial data is always admissible)
    ones = np.ones(dim)
    params = FlowParams(family=family, n=n, rho=rho, dt=1e-3, t_end=2.0)
    traj = integrate(params, ones)
    err = max(
        float(np.abs(traj.states[i] / closed_form(family, ones, n, rho, t) - 1.0).max())
        for i, t in enumerate(traj.times)
    )
    add("closed_form_agreement", 1e-6, err)
    add("invariant_drift", 1e-8, max(traj.invariant_ledger.values()))

    # rho = 0 reduction is exact
    red = float(np.abs(
        rhs_diagonal(family, ones * 1.3, n, 0.0)
        + 2.0 * ricci_specialized_diag(family, ones * 1.3, n)
    ).max())
    add("ricci_flow_reduction", 0.0, red)

    # spectral degradation + p8 identities at a few times
    spec_dev = 0.0
    p8_dev = 0.0
    for t in (0.0, 0.5, 1.0, 2.0):
        g_t = closed_form(family, ones, n, rho, t)
        m_t = MetricState.from_diag(g_t, t=t)
        p_t = theoretical_p_factor(family, n, rho, t)
        z = np.zeros(dim)
        z[spec.center_indices[0]] = 1.0
        rep = spectrum(spec, m_t, z)
        z_norm2 = g_t[spec.center_indices[0]]
        spec_dev = max(spec_dev, max(
            abs(ev + p_t * z_norm2) / (p_t * z_norm2) for ev in rep.eigenvalues
        ))
        p8_dev = max(p8_dev, verify_p8(spec, m_t, p_t, samples=50,
                                       seed=args.seed)["max_residual"])
    add("spectral_degradation", 1e-9, spec_dev)
    add("p8_identities", 1e-10, p8_dev)

    # period examples and length-spectrum witness
    pset = central_periods(4 * np.pi)
    per_dev = max(
        abs(sorted(pset.as_set)[0] - 2.0 * np.sqrt(3.0) * np.pi),
        abs(sorted(pset.as_set)[1] - 4.0 * np.pi),
        abs(central_periods(np.pi).as_set[0] - np.pi),
    )
    add("central_periods", 1e-12, per_dev)
    wit_dev = 0.0
    for t in (0.5, 1.0, 2.0):
        v = rng.standard_normal(dim - len(spec.center_indices))
        wit_dev = max(wit_dev, length_spectrum_witness(family, n, rho, ones, t, v)["abs_error"])
    add("length_spectrum_witness", 1e-12, wit_dev)

    failed = [c for c in checks if not c[1]]
    result = {
        "checks": [{"name": nm, "pass": ok, "value": v} for nm, ok, v in checks],
        "all_pass": not failed,
    }
    _write(args.output, _json_dumps(_envelope(config, result)) + "\n")
    return 0 if not failed else 1


_DISPATCH = {
    "curvature": _cmd_curvature,
    "flow": _cmd_flow,
    "verify": _cmd_verify,
    "spectrum": _cmd_spectrum,
    "sweep": _cmd_sweep,
}


def dispatch(args: argparse.Namespace) -> int:
    config = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return _DISPATCH[args.subcommand](args, config)
    except (NilflowError, ValueError) as exc:
        print(f"nilflow: error: {exc}", file=sys.stderr)
        return 2


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage already; propagate its code
        return int(exc.code or 0)
    return dispatch(args)


if __name__ == "__main__":
    sys.exit(main())
