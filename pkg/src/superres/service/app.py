"""Service wiring: each endpoint wraps one toolkit entry point.

The service performs no mathematics of its own; it validates requests,
dispatches into the core package, and returns rows/summaries that clients
(the bundled CLI among them) can persist as CSV and manifests.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..bounds import (
    BoundReport,
    clump1_lower,
    clump2_lower,
    hankel_noise_bound,
    minmax_bounds,
    music_noise_tolerance,
    theta_lower,
    upper_equispaced,
)
from ..exceptions import SuperresError
from ..experiments import (
    ClumpSceneConfig,
    SweepResult,
    certify_scene,
    music_demo,
    phase_transition,
    run_selftest,
    scene_support,
    sweep_sigma_min,
    sweep_theta,
)
from ..torus import SupportSet
from .schemas import (
    BoundReportModel,
    BoundRequest,
    BoundResponse,
    CertifyRequest,
    HealthResponse,
    HypothesisModel,
    MusicDemoRequest,
    PhaseTransitionRequest,
    SelftestRequest,
    SigmaMinSweepRequest,
    SweepResponse,
    ThetaSweepRequest,
)


def _report_model(report: BoundReport) -> BoundReportModel:
    return BoundReportModel(
        name=report.name,
        value=report.value,
        hypotheses_satisfied=report.hypotheses_satisfied,
        hypothesis_log=[
            HypothesisModel(
                condition=h.condition, lhs=h.lhs, rhs=h.rhs, satisfied=h.satisfied
            )
            for h in report.hypothesis_log
        ],
        inputs={k: v for k, v in report.inputs.items()},
    )


def _sweep_model(result: SweepResult) -> SweepResponse:
    return SweepResponse(
        columns=list(result.columns),
        rows=[dict(r) for r in result.rows],
        summary=dict(result.summary),
    )


def _lambda_list(req: BoundRequest) -> list[int]:
    if req.lambda_list:
        return [int(x) for x in req.lambda_list]
    if req.a is not None and req.lam is not None:
        return [req.lam] * req.a
    raise HTTPException(
        status_code=422, detail="provide lambda_list or both a and lam"
    )


def _require(req: BoundRequest, *names: str):
    values = []
    for name in names:
        value = getattr(req, name)
        if value is None:
            raise HTTPException(
                status_code=422,
                detail=f"theorem {req.theorem!r} requires field {name!r}",
            )
        values.append(value)
    return values


def create_app() -> FastAPI:
    app = FastAPI(
        title="superres",
        version=__version__,
        description=(
            "Vandermonde conditioning bounds, dual certificates, MUSIC "
            "recovery, and sweep experiments for super-resolution."
        ),
    )

    @app.exception_handler(SuperresError)
    async def _domain_error(request, exc: SuperresError):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/bounds", response_model=BoundResponse)
    def bounds(req: BoundRequest) -> BoundResponse:
        extras: dict = {}
        if req.theorem == "clump1":
            (nodes,) = _require(req, "nodes")
            report = clump1_lower(SupportSet(nodes), req.m)
            reports = [report]
        elif req.theorem == "clump2":
            (alpha,) = _require(req, "alpha")
            report = clump2_lower(
                _lambda_list(req), alpha, req.m, interclump_dist=req.interclump_dist
            )
            reports = [report]
        elif req.theorem == "upper":
            lam, alpha = _require(req, "lam", "alpha")
            reports = [upper_equispaced(lam, alpha, req.m)]
        elif req.theorem == "theta-lower":
            n, s = _require(req, "n", "s")
            reports = [theta_lower(req.m, n, s)]
        elif req.theorem == "minmax":
            n, s, delta = _require(req, "n", "s", "delta")
            pair = minmax_bounds(req.m, n, s, delta)
            reports = [pair.lower_report, pair.upper_report]
        elif req.theorem == "music-tolerance":
            alpha, nu, eps = _require(req, "alpha", "nu", "eps")
            reports = [
                music_noise_tolerance(
                    _lambda_list(req), alpha, req.m, nu, eps,
                    interclump_dist=req.interclump_dist,
                )
            ]
        elif req.theorem == "hankel-noise":
            pencil, sigma = _require(req, "pencil", "sigma")
            mean_bound, tail = hankel_noise_bound(req.m, pencil, sigma)
            extras["mean_bound"] = mean_bound
            if req.tail_at:
                extras["tail"] = {
                    format(t, ".17g"): min(tail(t), 1.0) for t in req.tail_at
                }
            reports = []
        else:  # pragma: no cover - pydantic forbids other literals
            raise HTTPException(status_code=422, detail="unknown theorem")
        return BoundResponse(reports=[_report_model(r) for r in reports], extras=extras)

    @app.post("/sweeps/sigma-min", response_model=SweepResponse)
    def sigma_min_sweep(req: SigmaMinSweepRequest) -> SweepResponse:
        return _sweep_model(
            sweep_sigma_min(
                req.a_values,
                req.lambda_values,
                m=req.m,
                srf_min=req.srf_min,
                srf_max=req.srf_max,
                srf_points=req.srf_points,
            )
        )

    @app.post("/sweeps/theta", response_model=SweepResponse)
    def theta_sweep(req: ThetaSweepRequest) -> SweepResponse:
        return _sweep_model(
            sweep_theta(
                req.s_values,
                m=req.m,
                srf_min=req.srf_min,
                srf_max=req.srf_max,
                srf_points=req.srf_points,
            )
        )

    @app.post("/sweeps/phase-transition", response_model=SweepResponse)
    def phase_sweep(req: PhaseTransitionRequest) -> SweepResponse:
        return _sweep_model(
            phase_transition(
                req.a,
                req.lam,
                m=req.m,
                srf_min=req.srf_min,
                srf_max=req.srf_max,
                srf_points=req.srf_points,
                sigma_lo=req.sigma_lo,
                sigma_hi=req.sigma_hi,
                sigma_per_decade=req.sigma_per_decade,
                trials=req.trials,
                seed=req.seed,
                beta=req.beta,
                refine=req.refine,
            )
        )

    @app.post("/music/demo", response_model=SweepResponse)
    def demo(req: MusicDemoRequest) -> SweepResponse:
        return _sweep_model(
            music_demo(
                req.a,
                req.lam,
                req.alpha,
                req.m,
                req.sigma,
                seed=req.seed,
                beta=req.beta,
                grid_size=req.grid_size,
            )
        )

    @app.post("/certify", response_model=SweepResponse)
    def certify(req: CertifyRequest) -> SweepResponse:
        if req.nodes:
            support = SupportSet(req.nodes)
        else:
            if req.a is None or req.lam is None or req.alpha is None:
                raise HTTPException(
                    status_code=422, detail="provide nodes or (a, lam, alpha)"
                )
            support = scene_support(
                ClumpSceneConfig(
                    a=req.a, lam=req.lam, alpha=req.alpha, m=req.m,
                    beta=req.beta, seed=req.seed,
                )
            )
        return _sweep_model(certify_scene(support, req.m))

    @app.post("/selftest", response_model=SweepResponse)
    def selftest(req: SelftestRequest) -> SweepResponse:
        return _sweep_model(run_selftest(seed=req.seed))

    return app
