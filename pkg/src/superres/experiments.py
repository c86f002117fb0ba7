"""Scene generators and sweep drivers for the numerical studies.

Three sweeps mirror the core experiments: the minimum-singular-value power
law for clump scenes, the worst-case grid constants against the consecutive
configuration, and the MUSIC phase transition over (SRF, sigma) cells.
Every sweep is deterministic given its seed; Monte-Carlo cells derive
per-(cell, trial) seeds with a 64-bit mix so results are order-independent.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .bounds import (
    BoundReport,
    clump2_lower,
    constant_B,
    demanet_sandwich_check,
    theta_bruteforce,
    theta_lower,
    theta_star,
)
from .certificates import certificate_I, clump_separation_report, duality_lower_bound
from .exceptions import SceneOverflowError, SingularFitError
from .music import MusicConfig, recover, support_error
from .seeds import derive_seed, float_key
from .torus import (
    SupportSet,
    bottleneck_distance,
    bottleneck_distance_exhaustive,
    complexity,
    decompose_clumps,
)
from .vandermonde import (
    Measurements,
    SpikeSignal,
    below_numerical_floor,
    sigma_extremes,
    synthesize,
    vandermonde,
)

THREAD_ENV_VAR = "SUPERRES_THREADS"


def _worker_count() -> int:
    raw = os.environ.get(THREAD_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass(frozen=True)
class ClumpSceneConfig:
    """A clumps of lam nodes spaced alpha/M apart, clump gaps beta/M."""

    a: int
    lam: int
    alpha: float
    m: int
    beta: float | None = None   # defaults to the separation-guarantee value
    seed: int = 0
    start: float = 0.0

    @property
    def s(self) -> int:
        return self.a * self.lam

    def resolved_beta(self) -> float:
        if self.beta is not None:
            return self.beta
        return 20.0 * math.sqrt(self.s) * self.lam**2.5 * self.alpha**-0.5


def scene_support(cfg: ClumpSceneConfig) -> SupportSet:
    """Deterministic node set for the scene; raises when it cannot fit."""
    beta = cfg.resolved_beta()
    span = (cfg.a * (cfg.lam - 1) * cfg.alpha + (cfg.a - 1) * beta) / cfg.m
    if span >= 1.0:
        raise SceneOverflowError(
            f"scene span {span:.3g} does not fit in the torus "
            f"(A={cfg.a}, lambda={cfg.lam}, alpha={cfg.alpha}, beta={beta:.3g}, M={cfg.m})"
        )
    nodes = []
    pos = cfg.start
    for _ in range(cfg.a):
        for k in range(cfg.lam):
            nodes.append(pos + k * cfg.alpha / cfg.m)
        pos = nodes[-1] + beta / cfg.m
    return SupportSet(nodes)


def generate_clump_scene(cfg: ClumpSceneConfig) -> SpikeSignal:
    """Scene with unit-modulus amplitudes and seeded uniform random phases."""
    support = scene_support(cfg)
    rng = np.random.default_rng(cfg.seed)
    phases = rng.uniform(0.0, 2.0 * np.pi, support.size)
    return SpikeSignal(support=support, amplitudes=np.exp(1j * phases))


def fit_slope(xs, ys) -> tuple[float, float, float]:
    """Ordinary least squares line fit; returns (slope, intercept, r^2)."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size < 2 or np.ptp(x) == 0.0:
        raise SingularFitError("need at least 2 distinct x values")
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    sxy = float(np.sum((x - xm) * (y - ym)))
    slope = sxy / sxx
    intercept = ym - slope * xm
    residual = y - (slope * x + intercept)
    ss_res = float(np.sum(residual**2))
    ss_tot = float(np.sum((y - ym) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return slope, intercept, r2


def format_hypothesis_log(report: BoundReport) -> str:
    """Compact single-cell rendering of a bound's hypothesis log."""
    parts = []
    for h in report.hypothesis_log:
        verdict = "ok" if h.satisfied else "FAIL"
        parts.append(f"{h.condition}: {h.lhs:.6g} vs {h.rhs:.6g} -> {verdict}")
    return "; ".join(parts)


@dataclass(frozen=True)
class SweepResult:
    """Uniform sweep output: ordered columns, row dicts, and summary values."""

    columns: tuple[str, ...]
    rows: tuple[dict, ...]
    summary: dict


def log_spaced(lo: float, hi: float, points: int) -> list[float]:
    return [float(x) for x in np.logspace(math.log10(lo), math.log10(hi), points)]


SIGMA_MIN_COLUMNS = (
    "a", "lam", "m", "srf", "alpha", "beta", "zeta", "xi", "ratio",
    "floor_flagged", "hypotheses_satisfied", "hypothesis_log",
    "slope_zeta", "slope_ratio",
)


def sweep_sigma_min(
    a_values,
    lambda_values,
    m: int = 4096,
    srf_min: float | None = None,
    srf_max: float = 8.0,
    srf_points: int = 20,
) -> SweepResult:
    """Measured sigma_min (zeta) against the clump lower bound (xi).

    The SRF grid for clump size lam starts at max(srf_min, lam) so the
    spacing hypothesis max(lam)-1 < SRF holds everywhere.
    """
    rows = []
    slopes = {}
    for a in a_values:
        for lam in lambda_values:
            lo = max(float(lam), srf_min) if srf_min is not None else float(lam)
            srf_grid = log_spaced(lo, srf_max, srf_points)
            series = []
            for srf in srf_grid:
                alpha = 1.0 / srf
                cfg = ClumpSceneConfig(a=a, lam=lam, alpha=alpha, m=m)
                support = scene_support(cfg)
                smin, smax = sigma_extremes(vandermonde(support, m))
                beta = cfg.resolved_beta()
                bound = clump2_lower(
                    [lam] * a, alpha, m,
                    interclump_dist=beta / m if a > 1 else None,
                )
                series.append(
                    {
                        "a": a,
                        "lam": lam,
                        "m": m,
                        "srf": float(srf),
                        "alpha": alpha,
                        "beta": beta,
                        "zeta": smin,
                        "xi": bound.value,
                        "ratio": smin / bound.value,
                        "floor_flagged": below_numerical_floor(smin, smax),
                        "hypotheses_satisfied": bound.hypotheses_satisfied,
                        "hypothesis_log": format_hypothesis_log(bound),
                    }
                )
            slope_zeta, _, _ = fit_slope(
                np.log10([r["srf"] for r in series]),
                np.log10([r["zeta"] for r in series]),
            )
            slope_ratio, _, _ = fit_slope(
                np.log10([r["srf"] for r in series]),
                np.log10([r["ratio"] for r in series]),
            )
            for r in series:
                r["slope_zeta"] = slope_zeta
                r["slope_ratio"] = slope_ratio
            slopes[(a, lam)] = {"zeta": slope_zeta, "ratio": slope_ratio}
            rows.extend(series)
    summary = {
        "slopes": [
            {"a": a, "lam": lam, "slope_zeta": v["zeta"], "slope_ratio": v["ratio"]}
            for (a, lam), v in sorted(slopes.items())
        ]
    }
    return SweepResult(columns=SIGMA_MIN_COLUMNS, rows=tuple(rows), summary=summary)


THETA_COLUMNS = (
    "s", "m", "srf", "n", "theta", "theta_star", "ratio",
    "hypotheses_satisfied", "hypothesis_log", "slope_theta_star", "slope_ratio",
)


def sweep_theta(
    s_values,
    m: int = 50,
    srf_min: float = 2.0,
    srf_max: float = 20.0,
    srf_points: int = 20,
) -> SweepResult:
    """Worst-case-grid lower bound theta against the consecutive-node value."""
    rows = []
    slopes = {}
    for s in s_values:
        srf_grid = log_spaced(srf_min, srf_max, srf_points)
        series = []
        for srf in srf_grid:
            n = int(round(srf * m))
            bound = theta_lower(m, n, s)
            star = theta_star(m, n, s)
            series.append(
                {
                    "s": s,
                    "m": m,
                    "srf": n / m,
                    "n": n,
                    "theta": bound.value,
                    "theta_star": star,
                    "ratio": star / bound.value,
                    "hypotheses_satisfied": bound.hypotheses_satisfied,
                    "hypothesis_log": format_hypothesis_log(bound),
                }
            )
        slope_star, _, _ = fit_slope(
            np.log10([r["srf"] for r in series]),
            np.log10([r["theta_star"] for r in series]),
        )
        valid = [r for r in series if r["srf"] >= math.pi * s]
        if len(valid) >= 2:
            slope_ratio, _, _ = fit_slope(
                np.log10([r["srf"] for r in valid]),
                np.log10([r["ratio"] for r in valid]),
            )
        else:
            slope_ratio = float("nan")
        for r in series:
            r["slope_theta_star"] = slope_star
            r["slope_ratio"] = slope_ratio
        slopes[s] = {"theta_star": slope_star, "ratio": slope_ratio}
        rows.extend(series)
    summary = {
        "slopes": [
            {"s": s, "slope_theta_star": v["theta_star"], "slope_ratio": v["ratio"]}
            for s, v in sorted(slopes.items())
        ]
    }
    return SweepResult(columns=THETA_COLUMNS, rows=tuple(rows), summary=summary)


PHASE_COLUMNS = (
    "a", "lam", "m", "s", "srf", "alpha", "delta", "sigma", "trials",
    "mean_dist_b", "mean_log2_ratio", "success", "degenerate_trials",
    "sigma_star", "q",
)


def _phase_cell(args):
    support, amp_seeds, noise_seeds, m, s, sigma, refine, grid_size = args
    cfg = MusicConfig(s=s, l=m // 2, grid_size=grid_size, refine=refine)
    dists = []
    degenerate = 0
    for amp_seed, noise_seed in zip(amp_seeds, noise_seeds):
        rng = np.random.default_rng(amp_seed)
        phases = rng.uniform(0.0, 2.0 * np.pi, s)
        signal = SpikeSignal(support=support, amplitudes=np.exp(1j * phases))
        y = synthesize(signal, m, sigma, noise_seed)
        result = recover(y, cfg)
        if result.degenerate:
            degenerate += 1
        dists.append(support_error(support, result.recovered))
    return dists, degenerate


def _phase_grid_size(m: int, srf: float) -> int:
    """Evaluation grid dense enough to separate peaks Delta = 1/(M*SRF) apart:
    at least 16M points and at least 4 cells per Delta."""
    from .music import GRID_FACTOR

    return m * max(GRID_FACTOR, int(math.ceil(4.0 * srf)))


def phase_transition(
    a: int,
    lam: int,
    m: int = 100,
    srf_min: float = 1.0,
    srf_max: float = 10.0,
    srf_points: int = 20,
    sigma_lo: float = 1e-6,
    sigma_hi: float = 1.0,
    sigma_per_decade: int = 30,
    trials: int = 10,
    seed: int = 0,
    beta: float = 10.0,
    refine: bool = True,
) -> SweepResult:
    """MUSIC success cells over (SRF, sigma) and the fitted threshold slope.

    Cell value is the mean log2(dist_B/Delta) over the trials; a cell
    succeeds when the mean bottleneck error is below Delta/2.  Per SRF, the
    threshold sigma* is the largest sigma of a successful cell; q is the
    negative slope of log10(sigma*) against log10(SRF).
    """
    srf_grid = log_spaced(srf_min, srf_max, srf_points)
    decades = math.log10(sigma_hi / sigma_lo)
    sigma_points = int(round(sigma_per_decade * decades)) + 1
    sigma_grid = log_spaced(sigma_lo, sigma_hi, sigma_points)
    s = a * lam

    cells = []
    for i_srf, srf in enumerate(srf_grid):
        alpha = 1.0 / srf
        support = scene_support(
            ClumpSceneConfig(a=a, lam=lam, alpha=alpha, m=m, beta=beta)
        )
        delta = support.min_separation() if s > 1 else alpha / m
        grid_size = _phase_grid_size(m, srf)
        srf_key = float_key(srf)
        for i_sigma, sigma in enumerate(sigma_grid):
            sigma_key = float_key(sigma)
            amp_seeds = [
                derive_seed(seed, srf_key, sigma_key, t, 0) for t in range(trials)
            ]
            noise_seeds = [
                derive_seed(seed, srf_key, sigma_key, t, 1) for t in range(trials)
            ]
            cells.append(
                {
                    "i_srf": i_srf,
                    "i_sigma": i_sigma,
                    "srf": float(srf),
                    "alpha": alpha,
                    "delta": delta,
                    "sigma": float(sigma),
                    "args": (
                        support, amp_seeds, noise_seeds, m, s, float(sigma),
                        refine, grid_size,
                    ),
                }
            )

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_phase_cell, [c["args"] for c in cells]))
    else:
        outcomes = [_phase_cell(c["args"]) for c in cells]

    rows = []
    for cell, (dists, degenerate) in zip(cells, outcomes):
        mean_dist = float(np.mean(dists))
        ratios = np.maximum(np.asarray(dists), 1e-300) / cell["delta"]
        rows.append(
            {
                "a": a,
                "lam": lam,
                "m": m,
                "s": s,
                "srf": cell["srf"],
                "alpha": cell["alpha"],
                "delta": cell["delta"],
                "sigma": cell["sigma"],
                "trials": trials,
                "mean_dist_b": mean_dist,
                "mean_log2_ratio": float(np.mean(np.log2(ratios))),
                "success": bool(mean_dist < cell["delta"] / 2.0 and degenerate == 0),
                "degenerate_trials": degenerate,
                "_i_srf": cell["i_srf"],
            }
        )

    # threshold per SRF: largest sigma among successful cells
    sigma_star: dict[int, float] = {}
    for row in rows:
        if row["success"]:
            i = row["_i_srf"]
            sigma_star[i] = max(sigma_star.get(i, 0.0), row["sigma"])
    for row in rows:
        row["sigma_star"] = sigma_star.get(row["_i_srf"], float("nan"))

    fit_x = [
        math.log10(srf_grid[i]) for i in sorted(sigma_star) if sigma_star[i] > 0
    ]
    fit_y = [
        math.log10(sigma_star[i]) for i in sorted(sigma_star) if sigma_star[i] > 0
    ]
    if len(fit_x) >= 2 and np.ptp(fit_x) > 0:
        slope, _, r2 = fit_slope(fit_x, fit_y)
        q = -slope
    else:
        q, r2 = float("nan"), float("nan")
    for row in rows:
        row["q"] = q
        row.pop("_i_srf")

    summary = {
        "q": q,
        "fit_r2": r2,
        "thresholds": [
            {"srf": float(srf_grid[i]), "sigma_star": sigma_star.get(i, float("nan"))}
            for i in range(len(srf_grid))
        ],
    }
    return SweepResult(columns=PHASE_COLUMNS, rows=tuple(rows), summary=summary)


CERTIFY_COLUMNS = (
    "node", "omega", "clump_size", "rho", "interp_dev", "offclump_max",
    "offclump_budget", "norm_l2", "norm_budget", "max_frequency",
    "checks_ok", "separation_ok", "duality_bound", "sigma_min",
)


def certify_scene(
    support: SupportSet, m: int, interp_tol: float = 1e-8
) -> SweepResult:
    """Build and verify the clump certificates for a support set.

    Per node: interpolation defect on the home clump, worst off-clump
    magnitude against the 1/(20S) budget, L2 norm against the
    sqrt(2/M)*B*lambda^(lambda-1)*rho budget, and the degree budget M.
    The certified duality bound is compared against the measured sigma_min.
    """
    dec = decompose_clumps(support, m)
    if dec is None:
        raise SceneOverflowError(
            f"support does not satisfy the clump model at M={m}"
        )
    rho = complexity(support, m)
    pts = support.points
    s = support.size
    separation = clump_separation_report(support, m)
    smin, _ = sigma_extremes(vandermonde(support, m))
    duality = duality_lower_bound(support, m, mode="clump")

    clump_of = {}
    for members in dec.clumps:
        for j in members:
            clump_of[j] = members

    rows = []
    for j in range(s):
        cert = certificate_I(support, m, j)
        values = cert.evaluate(pts)
        home = clump_of[j]
        target = np.zeros(s)
        target[j] = 1.0
        interp_dev = float(np.max(np.abs(values[list(home)] - target[list(home)])))
        off = [k for k in range(s) if k not in home]
        offclump_max = float(np.max(np.abs(values[off]))) if off else 0.0
        lam = len(home)
        norm_budget = float(
            math.sqrt(2.0 / m) * constant_B(lam, m) * lam ** (lam - 1) * rho[j]
        )
        norm = cert.l2_norm()
        checks_ok = bool(
            interp_dev <= interp_tol
            and offclump_max <= 1.0 / (20.0 * s)
            and norm <= norm_budget * (1.0 + 1e-12)
            and cert.max_frequency() <= m
        )
        rows.append(
            {
                "node": j,
                "omega": float(pts[j]),
                "clump_size": lam,
                "rho": float(rho[j]),
                "interp_dev": interp_dev,
                "offclump_max": offclump_max,
                "offclump_budget": 1.0 / (20.0 * s),
                "norm_l2": norm,
                "norm_budget": norm_budget,
                "max_frequency": cert.max_frequency(),
                "checks_ok": checks_ok,
                "separation_ok": separation.satisfied,
                "duality_bound": duality,
                "sigma_min": smin,
            }
        )
    summary = {
        "all_checks_ok": all(r["checks_ok"] for r in rows),
        "separation_ok": separation.satisfied,
        "duality_bound": duality,
        "sigma_min": smin,
        "duality_sound": duality <= smin * (1.0 + 1e-9),
    }
    return SweepResult(columns=CERTIFY_COLUMNS, rows=tuple(rows), summary=summary)


SELFTEST_COLUMNS = ("check", "passed", "detail")


def run_selftest(seed: int = 0) -> SweepResult:
    """Tiny-scale oracles: worst-case-grid enumeration against its bounds,
    the sparsest-fit decoder sandwich, and the bottleneck-matching oracle."""
    rows = []

    for m, s, n in ((6, 2, 38), (8, 2, 51), (7, 2, 44)):
        theta, minimizer = theta_bruteforce(m, n, s, return_minimizer=True)
        lower = theta_lower(m, n, s)
        star = theta_star(m, n, s)
        adjacent = max(minimizer) - min(minimizer) == s - 1
        ok = lower.value <= theta * (1.0 + 1e-9) and theta <= star * (1.0 + 1e-9) and adjacent
        rows.append(
            {
                "check": f"theta_bruteforce(M={m},S={s},N={n})",
                "passed": ok,
                "detail": (
                    f"lower={lower.value:.6g} theta={theta:.6g} star={star:.6g} "
                    f"minimizer={minimizer}"
                ),
            }
        )

    sandwich = demanet_sandwich_check(6, 12, 1, 0.1, trials=50, seed=seed)
    rows.append(
        {
            "check": "demanet_sandwich(M=6,N=12,S=1,delta=0.1)",
            "passed": sandwich.passed,
            "detail": (
                f"max_error={sandwich.max_error:.6g} bound={sandwich.error_bound:.6g} "
                f"violations={sandwich.violations}"
            ),
        }
    )

    rng = np.random.default_rng(seed)
    mismatches = 0
    for _ in range(50):
        size = int(rng.integers(1, 7))
        a = SupportSet(rng.uniform(0.0, 1.0, size))
        b = SupportSet(rng.uniform(0.0, 1.0, size))
        fast = bottleneck_distance(a, b)
        exact = bottleneck_distance_exhaustive(a, b)
        if abs(fast - exact) > 1e-12:
            mismatches += 1
    rows.append(
        {
            "check": "bottleneck cyclic vs exhaustive (50 random pairs)",
            "passed": mismatches == 0,
            "detail": f"mismatches={mismatches}",
        }
    )

    summary = {"all_passed": all(r["passed"] for r in rows)}
    return SweepResult(columns=SELFTEST_COLUMNS, rows=tuple(rows), summary=summary)


TRACE_COLUMNS = ("omega", "correlation", "imaging", "is_true_node", "is_recovered")

IMAGING_CAP = 1e15  # keeps noiseless traces JSON/CSV-friendly


def music_demo(
    a: int,
    lam: int,
    alpha: float,
    m: int,
    sigma: float,
    seed: int = 0,
    beta: float = 10.0,
    grid_size: int | None = None,
) -> SweepResult:
    """Correlation/imaging traces for one scene, with node markers."""
    cfg_scene = ClumpSceneConfig(a=a, lam=lam, alpha=alpha, m=m, beta=beta, seed=seed)
    signal = generate_clump_scene(cfg_scene)
    y = synthesize(signal, m, sigma, derive_seed(seed, 1))
    cfg = MusicConfig(s=signal.support.size, grid_size=grid_size)
    result = recover(y, cfg)

    grid_points = result.grid.size
    true_marks = {
        int(round(w * grid_points)) % grid_points for w in signal.support.points
    }
    recovered_marks = {
        int(round(w * grid_points)) % grid_points for w in result.recovered.points
    }
    rows = []
    for g in range(grid_points):
        rows.append(
            {
                "omega": float(result.grid[g]),
                "correlation": float(result.correlation[g]),
                "imaging": float(min(result.imaging[g], IMAGING_CAP)),
                "is_true_node": g in true_marks,
                "is_recovered": g in recovered_marks,
            }
        )
    summary = {
        "true_nodes": [float(w) for w in signal.support.points],
        "recovered": [float(w) for w in result.recovered.points],
        "dist_b": support_error(signal.support, result.recovered),
        "delta": signal.support.min_separation() if signal.support.size > 1 else float("nan"),
        "sigma": sigma,
        "degenerate": result.degenerate,
    }
    return SweepResult(columns=TRACE_COLUMNS, rows=tuple(rows), summary=summary)
