"""Command-line entry point: configuration, simulation, verification, sweeps.

Commands
--------
validate    emit the regime report; exit 0 iff the parameter set is accepted
spectrum    emit the closed-form spectrum
simulate    emit the trajectory with power/energy columns plus plot data
verify      run the full identity suite; exit 0 iff all asserted checks pass
adjoint     simulate the adjoint system and emit the identification residuals
h0          emit the trivial diagonal-system trajectories
heisenberg  emit the number-operator norm series and the growth-bound report
sweep       grid over (mu, gamma); regime + gain/loss report rows in one CSV

Exit codes: 0 success, 1 failed asserted checks, 2 configuration errors,
3 regime rejection where the command requires acceptance.  All outputs are
deterministic: fixed float formatting, fixed key and row ordering.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import basis as basis_mod
from . import dynamics as dyn
from . import heisenberg as heis
from . import linalg
from . import observables as obs
from .dynamics import format_float as _fmt
from .errors import (
    CouplingOutOfRange,
    GaugeDegenerate,
    NearDegenerate,
    NonPositiveParameter,
    RegimeRejected,
    ZeroCoupling,
)
from .liouvillian import build_liouvillian, spectrum
from .params import CircuitParams, derive, normalized, validate
from .pfalgebra import Gauge, VerificationReport, build_T, build_pf, pf_verify

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_REGIME = 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    """Resolved run configuration; see the JSON schema in the module docstring."""

    mode: str = "normalized"
    mu: float | None = None
    gamma: float | None = None
    L: float | None = None
    C: float | None = None
    R: float | None = None
    M: float | None = None
    i1: float = 1.0
    gauge: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    tau_max: float = 5.0
    samples: int = 1001
    rk4_step: float = 1e-3
    output_dir: str = "."
    format: str = "csv"
    mu_range: tuple[float, float, int] | None = None
    gamma_range: tuple[float, float, int] | None = None

    def check(self) -> None:
        if self.mode not in ("normalized", "physical"):
            raise ConfigError(f"mode must be 'normalized' or 'physical', got {self.mode!r}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got {self.format!r}")
        if self.samples < 2:
            raise ConfigError(f"samples must be >= 2, got {self.samples}")
        if not self.tau_max > 0.0:
            raise ConfigError(f"tau_max must be > 0, got {self.tau_max}")
        if not self.rk4_step > 0.0:
            raise ConfigError(f"rk4_step must be > 0, got {self.rk4_step}")
        sweep_style = self.mu_range is not None and self.gamma_range is not None
        if self.mode == "normalized":
            if (self.mu is None or self.gamma is None) and not sweep_style:
                raise ConfigError("normalized mode requires mu and gamma")
            if any(v is not None for v in (self.L, self.C, self.R, self.M)):
                raise ConfigError("normalized mode does not accept L/C/R/M")
        else:
            if any(v is None for v in (self.L, self.C, self.R, self.M)):
                raise ConfigError("physical mode requires L, C, R, and M")
            if self.mu is not None or self.gamma is not None:
                raise ConfigError("physical mode does not accept mu/gamma")


def _parse_triple(text: str, name: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{name} must look like MIN:MAX:STEPS, got {text!r}")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"could not parse {name}: {exc}") from exc
    if steps < 1:
        raise ConfigError(f"{name} steps must be >= 1")
    return lo, hi, steps


def _load_config_file(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


_CONFIG_FIELDS = {
    "mode", "mu", "gamma", "L", "C", "R", "M", "i1", "gauge",
    "tau_max", "samples", "rk4_step", "output_dir", "format",
    "mu_range", "gamma_range",
}


def build_config(args: argparse.Namespace) -> RunConfig:
    """Merge defaults, config file, and command-line flags (flags win)."""
    cfg = RunConfig()
    if getattr(args, "config", None):
        data = _load_config_file(args.config)
        unknown = set(data) - _CONFIG_FIELDS
        if unknown:
            raise ConfigError(f"unknown config fields: {sorted(unknown)}")
        if "gauge" in data:
            gauge = data["gauge"]
            if not (isinstance(gauge, (list, tuple)) and len(gauge) == 4):
                raise ConfigError("gauge must be a list of four numbers")
            data["gauge"] = tuple(float(g) for g in gauge)
        for key in ("mu_range", "gamma_range"):
            if key in data and data[key] is not None:
                rng = data[key]
                if not (isinstance(rng, (list, tuple)) and len(rng) == 3):
                    raise ConfigError(f"{key} must be [min, max, steps]")
                data[key] = (float(rng[0]), float(rng[1]), int(rng[2]))
        cfg = replace(cfg, **data)
    overrides = {}
    for name in ("mode", "mu", "gamma", "L", "C", "R", "M", "i1",
                 "tau_max", "samples", "rk4_step", "format"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "output", None) is not None:
        overrides["output_dir"] = args.output
    if getattr(args, "gauge", None) is not None:
        parts = args.gauge.split(",")
        if len(parts) != 4:
            raise ConfigError("--gauge expects four comma-separated numbers")
        overrides["gauge"] = tuple(float(p) for p in parts)
    if getattr(args, "mu_range", None) is not None:
        overrides["mu_range"] = _parse_triple(args.mu_range, "--mu-range")
    if getattr(args, "gamma_range", None) is not None:
        overrides["gamma_range"] = _parse_triple(args.gamma_range, "--gamma-range")
    cfg = replace(cfg, **overrides)
    cfg.check()
    return cfg


def _resolve_params(cfg: RunConfig) -> CircuitParams:
    try:
        if cfg.mode == "normalized":
            return normalized(cfg.mu, cfg.gamma, i1=cfg.i1)
        return CircuitParams(L=cfg.L, C=cfg.C, R=cfg.R, M=cfg.M, i1=cfg.i1)
    except (NonPositiveParameter, CouplingOutOfRange) as exc:
        raise ConfigError(str(exc)) from exc


def _tau_grid(cfg: RunConfig) -> np.ndarray:
    return np.linspace(0.0, cfg.tau_max, cfg.samples)


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as handle:
        handle.write(text)
    print(f"wrote {path}")


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(cfg: RunConfig) -> int:
    derived = derive(_resolve_params(cfg))
    report = validate(derived)
    _write(Path(cfg.output_dir) / "regime.json", _json_text(report.to_dict()))
    print(f"accepted: {report.accepted} (rho={report.rho:.12g})")
    return EXIT_OK if report.accepted else EXIT_REGIME


def cmd_spectrum(cfg: RunConfig) -> int:
    derived = derive(_resolve_params(cfg))
    spec = spectrum(derived)
    _write(Path(cfg.output_dir) / "spectrum.json", _json_text(spec.to_dict()))
    print(f"l3={spec.l3:.12g} < l1={spec.l1:.12g} < 0 < l2={spec.l2:.12g} < l4={spec.l4:.12g}")
    return EXIT_OK


def _simulation_stack(cfg: RunConfig):
    params = _resolve_params(cfg)
    derived = derive(params)
    spec = spectrum(derived)
    gen = build_liouvillian(derived)
    gauge = Gauge(*cfg.gauge)
    T, _ = build_T(spec, derived, gauge)
    pair = basis_mod.build_bases(T, spec)
    psi0 = dyn.initial_state(params.i1, params.C, derived.omega0)
    coeffs = dyn.coefficients(psi0, pair)
    return params, derived, spec, gen, gauge, T, pair, psi0, coeffs


def _plot_data_text(columns: dict[str, np.ndarray], tau: np.ndarray) -> str:
    blocks = []
    for name, series in columns.items():
        if name == "tau":
            continue
        lines = [f"# series {name}", f"tau,{name}"]
        lines.extend(f"{_fmt(float(t))},{_fmt(float(v))}" for t, v in zip(tau, series))
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def cmd_simulate(cfg: RunConfig) -> int:
    params, derived, spec, _, _, _, pair, psi0, coeffs = _simulation_stack(cfg)
    traj = dyn.evolve_closed(coeffs, pair, spec, _tau_grid(cfg), params, derived, psi0=psi0)
    pw = obs.power(traj, params, derived)
    en = obs.energy(traj, params)
    out = Path(cfg.output_dir)
    if cfg.format == "csv":
        _write(out / "trajectory.csv", dyn.trajectory_to_csv(traj, pw, en))
    else:
        _write(out / "trajectory.json", dyn.trajectory_to_json(traj, pw, en))
    columns = {
        "tau": traj.tau, "V1": traj.V1, "V2": traj.V2,
        "V1p": traj.V1p, "V2p": traj.V2p, "I1": traj.I1, "I2": traj.I2,
        "P1": pw.p1, "P2": pw.p2, "E1": en.e1, "E2": en.e2,
    }
    _write(out / "plot_data.dat", _plot_data_text(columns, traj.tau))
    print(f"simulated {cfg.samples} samples on tau in [0, {cfg.tau_max}]")
    return EXIT_OK


def cmd_adjoint(cfg: RunConfig) -> int:
    params, derived, spec, _, _, _, pair, psi0, coeffs = _simulation_stack(cfg)
    tau = _tau_grid(cfg)
    x0 = linalg.inverse(pair.phi @ pair.phi.T) @ psi0  # S_phi^{-1} Psi(0)
    xtraj = dyn.evolve_adjoint(x0, pair, spec, tau)
    strict = params.L == 1.0 and params.C == 1.0
    report = dyn.adjoint_circuit_map(xtraj, params, derived, strict=strict)
    # metric route: the adjoint solution must track S_phi^{-1} Psi(tau)
    psi_traj = dyn.evolve_closed(coeffs, pair, spec, tau, params, derived, psi0=psi0)
    s_phi = pair.phi @ pair.phi.T
    mapped = np.linalg.solve(s_phi, psi_traj.states.T).T
    metric_res = float(np.max(
        np.linalg.norm(xtraj.states - mapped, axis=1)
        / np.maximum(np.linalg.norm(mapped, axis=1), 1e-300)
    ))
    lines = ["tau,x1,x2,x3,x4"]
    for idx in range(tau.size):
        row = [tau[idx], *xtraj.states[idx]]
        lines.append(",".join(_fmt(float(v)) for v in row))
    out = Path(cfg.output_dir)
    _write(out / "adjoint.csv", "\n".join(lines) + "\n")
    payload = {
        "identification": "strict (x -> I1, I2, -V1, -V2)" if strict
        else "extended (voltage components scaled by C*omega0)",
        "max_identification_residual": report.max_residual,
        "paper_literal_map_max_residual": report.paper_literal_map_max_residual,
        "metric_route_max_residual": metric_res,
    }
    _write(out / "adjoint_report.json", _json_text(payload))
    print(f"adjoint identification residual {report.max_residual:.3e}, "
          f"metric route {metric_res:.3e}")
    return EXIT_OK


def cmd_h0(cfg: RunConfig) -> int:
    derived = derive(_resolve_params(cfg))
    spec = spectrum(derived)
    tau = _tau_grid(cfg)
    y0 = np.ones(4)
    traj = dyn.evolve_h0(spec, y0, tau)
    lines = ["tau,y1,y2,y3,y4"]
    for idx in range(tau.size):
        row = [tau[idx], *traj.states[idx]]
        lines.append(",".join(_fmt(float(v)) for v in row))
    _write(Path(cfg.output_dir) / "h0.csv", "\n".join(lines) + "\n")
    print(f"diagonal-system rates: {', '.join(_fmt(r) for r in spec.shifted_eigenvalues)}")
    return EXIT_OK


def cmd_heisenberg(cfg: RunConfig) -> int:
    params, derived, spec, gen, _, T, _, _, _ = _simulation_stack(cfg)
    pf = build_pf(T, spec, liouvillian=gen)
    tau = np.linspace(0.0, min(cfg.tau_max, 3.0), min(cfg.samples, 61))
    evo1 = heis.number_evolution(1, pf, spec, tau)
    evo2 = heis.number_evolution(2, pf, spec, tau)
    bound = heis.growth_bound_report((evo1.generic, evo2.generic), spec)
    out = Path(cfg.output_dir)
    _write(out / "heisenberg.csv", heis.norm_series_csv((evo1.generic, evo2.generic), spec))
    payload = dict(bound.to_dict())
    payload["two_path_deviation_N1"] = evo1.max_relative_deviation
    payload["two_path_deviation_N2"] = evo2.max_relative_deviation
    payload["printed_order_deviation_N1"] = evo1.printed_order_max_relative_deviation
    payload["printed_order_deviation_N2"] = evo2.printed_order_max_relative_deviation
    _write(out / "heisenberg_report.json", _json_text(payload))
    print(f"growth constants: {bound.bound_constant_1:.6g}, {bound.bound_constant_2:.6g}")
    return EXIT_OK


def run_verification_suite(cfg: RunConfig, seed: int = 20260810) -> VerificationReport:
    """Every asserted identity across the package, plus the reported channels."""
    params, derived, spec, gen, gauge, T, pair, psi0, coeffs = _simulation_stack(cfg)
    pf = build_pf(T, spec, liouvillian=gen)
    report = VerificationReport()
    report.merge(pf_verify(pf, liouvillian=gen), prefix="pfalgebra/")

    # --- basis ---
    report.add("basis/gram_identity", basis_mod.gram_residual(pair), 1e-10)
    r1, r2 = basis_mod.resolution_residuals(pair)
    report.add("basis/resolution_phi_psi", r1, 1e-10)
    report.add("basis/resolution_psi_phi", r2, 1e-10)
    report.add("basis/eigen_relations_max", float(np.max(basis_mod.eigen_check(pair, gen))), 1e-9)
    report.add("basis/metric_maps_max",
               float(np.max(basis_mod.metric_map_check(pair, pf.S_phi))), 1e-9)
    frame = basis_mod.frame_bounds(pair, pf.S_phi, seed=seed)
    report.add("basis/frame_bounds_within", 0.0 if frame["within_bounds"] else 1.0, 0.0)
    rng = np.random.default_rng(seed)
    recon_res = 0.0
    for _ in range(10):
        v = rng.standard_normal(4)
        w = basis_mod.expand(pair, v)
        recon_res = max(recon_res,
                        float(np.linalg.norm(basis_mod.reconstruct(pair, w) - v)
                              / np.linalg.norm(v)))
    report.add("basis/expansion_identity", recon_res, 1e-10)

    # --- dynamics ---
    tau = _tau_grid(cfg)
    closed = dyn.evolve_closed(coeffs, pair, spec, tau, params, derived, psi0=psi0)
    report.add(
        "dynamics/initial_state_reconstruction",
        float(np.linalg.norm(closed.states[0] - psi0)
              / max(1.0, np.linalg.norm(psi0))), 1e-12)
    substeps = max(1, round((tau[1] - tau[0]) / cfg.rk4_step))
    rk4 = dyn.evolve_rk4(gen, psi0, tau, substeps=substeps, params=params, derived=derived)
    rel = np.linalg.norm(closed.states - rk4.states, axis=1) / np.maximum(
        1.0, np.linalg.norm(closed.states, axis=1))
    report.add("dynamics/closed_vs_rk4_max_rel", float(np.max(rel)), 1e-6)

    alt_gauge = Gauge(2.0, 0.5, 3.0, 1.0)
    T2, _ = build_T(spec, derived, alt_gauge)
    pair2 = basis_mod.build_bases(T2, spec)
    coeffs2 = dyn.coefficients(psi0, pair2)
    closed2 = dyn.evolve_closed(coeffs2, pair2, spec, tau, params, derived)
    gauge_dev = np.linalg.norm(closed.states - closed2.states, axis=1) / np.maximum(
        1.0, np.linalg.norm(closed.states, axis=1))
    report.add("dynamics/gauge_invariance", float(np.max(gauge_dev)), 1e-10)

    report.add("dynamics/quartic_residual_max",
               float(np.max(dyn.quartic_residual(closed, derived))), 1e-8)

    x0 = np.linalg.solve(pf.S_phi, psi0)
    xtraj = dyn.evolve_adjoint(x0, pair, spec, tau)
    mapped = np.linalg.solve(pf.S_phi, closed.states.T).T
    metric_res = float(np.max(
        np.linalg.norm(xtraj.states - mapped, axis=1)
        / np.maximum(np.linalg.norm(mapped, axis=1), 1e-300)))
    report.add("dynamics/adjoint_metric_route", metric_res, 1e-8)
    strict = params.L == 1.0 and params.C == 1.0
    adj = dyn.adjoint_circuit_map(xtraj, params, derived, strict=strict)
    report.add("dynamics/adjoint_identification_max", adj.max_residual, 1e-8)
    if adj.paper_literal_map_max_residual is not None:
        report.add("dynamics/reported_paper_literal_adjoint_map",
                   adj.paper_literal_map_max_residual, None)

    y0 = np.ones(4)
    h0_traj = dyn.evolve_h0(spec, y0, tau[:11])
    h0_dev = 0.0
    h0_matrix = pf.H0
    for idx, t in enumerate(h0_traj.tau):
        reference = linalg.expm(h0_matrix, t) @ y0
        h0_dev = max(h0_dev, float(np.max(np.abs(h0_traj.states[idx] - reference))
                                   / max(1.0, np.max(np.abs(reference)))))
    report.add("dynamics/h0_vs_diagonal_expm", h0_dev, 1e-12)

    half = dyn.evolve_closed(coeffs, pair, spec, np.array([0.0, 1.3]), params, derived)
    coeffs_half = dyn.coefficients(half.states[1], pair)
    two_step = dyn.evolve_closed(coeffs_half, pair, spec, np.array([0.0, 0.9]), params, derived)
    direct = dyn.evolve_closed(coeffs, pair, spec, np.array([0.0, 2.2]), params, derived)
    semigroup = float(np.linalg.norm(two_step.states[1] - direct.states[1])
                      / np.linalg.norm(direct.states[1]))
    report.add("dynamics/semigroup", semigroup, 1e-9)

    display = dyn.display_series(coeffs, spec, derived, params, gauge, tau)
    disp_dev = 0.0
    for name, series in (("V1", closed.V1), ("V2", closed.V2),
                         ("I1", closed.I1), ("I2", closed.I2)):
        scale = np.maximum(np.abs(series), 1.0)
        disp_dev = max(disp_dev, float(np.max(np.abs(display[name] - series) / scale)))
    report.add("dynamics/display_extraction_agreement", disp_dev, 1e-9)

    comparison = dyn.coefficients_paper(derived, spec, gauge, params.i1, params.C)
    report.add("dynamics/reported_paper_coefficient_deviation",
               comparison.max_relative_deviation, None)
    report.add("dynamics/reported_paper_sigma", comparison.sigma, None)

    # --- observables ---
    pw = obs.power(closed, params, derived)
    report.add("observables/power_two_path_max", pw.max_relative_deviation, 1e-10)
    en = obs.energy(closed, params)
    report.add("observables/energy_nonnegative",
               max(0.0, -float(min(np.min(en.e1), np.min(en.e2)))), 1e-12)
    gl = obs.classify_asymptotics(spec, derived, params, power_series=pw, coeffs=coeffs)
    if gl.measurement_consistent is not None:
        report.add("observables/power_tail_signs_match_prediction",
                   0.0 if gl.measurement_consistent else 1.0, 0.0)
    tail = tau >= 0.8 * tau[-1]
    if abs(coeffs.c11) > obs.C11_THRESHOLD:
        slope_p1 = np.polyfit(tau[tail], np.log(np.abs(pw.p1[tail])), 1)[0]
        slope_e1 = np.polyfit(tau[tail], np.log(np.maximum(en.e1[tail], 1e-300)), 1)[0]
        report.add("observables/power_log_slope_error",
                   abs(slope_p1 - 2.0 * spec.l4), 1e-2)
        report.add("observables/energy_log_slope_error",
                   abs(slope_e1 - 2.0 * spec.l4), 1e-2)
    report.add("observables/reported_energy_rewrite_deviation",
               en.rewrite_max_relative_deviation, None)

    # --- heisenberg ---
    tau_h = np.linspace(0.0, 3.0, 31)
    evo1 = heis.number_evolution(1, pf, spec, tau_h)
    evo2 = heis.number_evolution(2, pf, spec, tau_h)
    report.add("heisenberg/number_two_path_N1", evo1.max_relative_deviation, 1e-8)
    report.add("heisenberg/number_two_path_N2", evo2.max_relative_deviation, 1e-8)
    report.add("heisenberg/reported_printed_order_deviation_N1",
               evo1.printed_order_max_relative_deviation, None)
    report.add("heisenberg/reported_printed_order_deviation_N2",
               evo2.printed_order_max_relative_deviation, None)
    prod_res = max(heis.product_formula_residual(pf, spec, t) for t in (0.5, 1.3, 2.7))
    report.add("heisenberg/product_formula", prod_res, 1e-9)
    rng = np.random.default_rng(seed + 1)
    expectation = 0.0
    for _ in range(20):
        x_random = rng.standard_normal((4, 4))
        state = rng.standard_normal(4)
        t = float(rng.uniform(0.0, 3.0))
        expectation = max(expectation, heis.expectation_consistency_residual(
            x_random, state, pf, spec, t))
    report.add("heisenberg/expectation_consistency_max", expectation, 1e-8)
    bound = heis.growth_bound_report((evo1.generic, evo2.generic), spec)
    finite = np.isfinite(bound.bound_constant_1) and np.isfinite(bound.bound_constant_2)
    report.add("heisenberg/growth_ratio_finite", 0.0 if finite else float("inf"), 0.0)
    report.add("heisenberg/reported_growth_constant_N1", bound.bound_constant_1, None)
    report.add("heisenberg/reported_growth_constant_N2", bound.bound_constant_2, None)
    report.add("heisenberg/reported_norm_N1_initial", bound.norm_n1_initial, None)
    report.add("heisenberg/reported_norm_N2_initial", bound.norm_n2_initial, None)
    report.add("heisenberg/effective_hamiltonian_route",
               heis.effective_hamiltonian_route_residual(gen, np.diag([1.0, 2.0, -1.0, 0.5]), 0.9),
               1e-9)
    return report


def cmd_verify(cfg: RunConfig) -> int:
    report = run_verification_suite(cfg)
    _write(Path(cfg.output_dir) / "verify_report.json", report.to_json() + "\n")
    n_asserted = sum(1 for c in report.checks.values() if c.passed is not None)
    failed = report.failed()
    print(f"{n_asserted} asserted checks, {len(failed)} failed")
    for name in failed:
        check = report.checks[name]
        print(f"  FAIL {name}: residual {check.residual:.3e} > {check.tolerance:.3e}")
    return EXIT_OK if report.all_passed else EXIT_CHECK_FAILED


def cmd_sweep(cfg: RunConfig) -> int:
    if cfg.mu_range is None or cfg.gamma_range is None:
        raise ConfigError("sweep requires --mu-range and --gamma-range")
    mu_lo, mu_hi, mu_n = cfg.mu_range
    ga_lo, ga_hi, ga_n = cfg.gamma_range
    mus = np.linspace(mu_lo, mu_hi, mu_n)
    gammas = np.linspace(ga_lo, ga_hi, ga_n)
    header = ("mu,gamma,rho,condition_rho_positive,condition_gamma_sq_gt_2alpha,"
              "condition_mu_sq_lt_1,coupling_nonzero,accepted,l4,power_window_ok,"
              "energy_lower,energy_upper,energy_window_ok,p1_diverges_to,p2_diverges_to")
    lines = [header]
    for mu in mus:
        for gamma in gammas:
            row = [_fmt(float(mu)), _fmt(float(gamma))]
            try:
                derived = derive(normalized(float(mu), float(gamma)))
            except (NonPositiveParameter, CouplingOutOfRange):
                lines.append(",".join(row + ["", "False", "False", "False", "False",
                                             "False", "", "", "", "", "", "", ""]))
                continue
            regime = validate(derived)
            row += [
                _fmt(regime.rho),
                str(regime.condition_rho_positive),
                str(regime.condition_gamma_sq_gt_2alpha),
                str(regime.condition_mu_sq_lt_1),
                str(regime.coupling_nonzero),
                str(regime.accepted),
            ]
            if regime.accepted:
                spec = spectrum(derived)
                params = normalized(float(mu), float(gamma))
                gl = obs.classify_asymptotics(spec, derived, params)
                row += [
                    _fmt(gl.l4), str(gl.power_window_ok),
                    "imaginary" if gl.energy_lower is None else _fmt(gl.energy_lower),
                    _fmt(gl.energy_upper), str(gl.energy_window_ok),
                    gl.p1_diverges_to, gl.p2_diverges_to,
                ]
            else:
                row += [""] * 7
            lines.append(",".join(row))
    _write(Path(cfg.output_dir) / "sweep.csv", "\n".join(lines) + "\n")
    print(f"swept {mu_n}x{ga_n} grid")
    return EXIT_OK


_COMMANDS = {
    "validate": cmd_validate,
    "spectrum": cmd_spectrum,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "adjoint": cmd_adjoint,
    "h0": cmd_h0,
    "heisenberg": cmd_heisenberg,
    "sweep": cmd_sweep,
}


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfcircuit",
        description="Loss-gain circuit simulator and identity-verification toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--mode", choices=["normalized", "physical"])
        p.add_argument("--mu", type=float)
        p.add_argument("--gamma", type=float)
        p.add_argument("--L", type=float)
        p.add_argument("--C", type=float)
        p.add_argument("--R", type=float)
        p.add_argument("--M", type=float)
        p.add_argument("--i1", type=float)
        p.add_argument("--gauge", help="four comma-separated column scales")
        p.add_argument("--tau-max", dest="tau_max", type=float)
        p.add_argument("--samples", type=int)
        p.add_argument("--rk4-step", dest="rk4_step", type=float)
        p.add_argument("--output", help="output directory")
        p.add_argument("--format", choices=["csv", "json"])
        if name == "sweep":
            p.add_argument("--mu-range", dest="mu_range", help="MIN:MAX:STEPS")
            p.add_argument("--gamma-range", dest="gamma_range", help="MIN:MAX:STEPS")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _make_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        return _COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (RegimeRejected, NearDegenerate, ZeroCoupling, GaugeDegenerate) as exc:
        print(f"regime rejected: {exc}", file=sys.stderr)
        return EXIT_REGIME


if __name__ == "__main__":
    sys.exit(main())
