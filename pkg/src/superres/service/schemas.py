"""Pydantic request/response models for the service API."""

from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class ApiModel(BaseModel):
    """Base for all wire models; keeps NaN/inf cells as IEEE constants."""

    model_config = ConfigDict(ser_json_inf_nan="constants")


class HealthResponse(ApiModel):
    status: str
    version: str


class HypothesisModel(ApiModel):
    condition: str
    lhs: float
    rhs: float
    satisfied: bool


class BoundReportModel(ApiModel):
    name: str
    value: float
    hypotheses_satisfied: bool
    hypothesis_log: list[HypothesisModel]
    inputs: dict[str, Any]


class BoundRequest(ApiModel):
    """One closed-form bound evaluation.

    The theorem selects the formula; only the fields it needs are read.
    Clump scenes are described either by (a, lam) for identical clumps or by
    an explicit lambda_list; clump1 needs explicit nodes.
    """

    theorem: Literal[
        "clump1", "clump2", "upper", "theta-lower", "minmax",
        "music-tolerance", "hankel-noise",
    ]
    m: int = Field(gt=0)
    a: Optional[int] = Field(default=None, gt=0)
    lam: Optional[int] = Field(default=None, gt=0)
    lambda_list: Optional[list[int]] = None
    alpha: Optional[float] = Field(default=None, gt=0)
    interclump_dist: Optional[float] = None
    nodes: Optional[list[float]] = None
    n: Optional[int] = Field(default=None, gt=0)
    s: Optional[int] = Field(default=None, gt=0)
    delta: Optional[float] = Field(default=None, gt=0)
    nu: Optional[float] = Field(default=None, gt=1)
    eps: Optional[float] = Field(default=None, gt=0)
    sigma: Optional[float] = Field(default=None, ge=0)
    pencil: Optional[int] = Field(default=None, gt=0)
    tail_at: Optional[list[float]] = None


class BoundResponse(ApiModel):
    reports: list[BoundReportModel]
    extras: dict[str, Any] = Field(default_factory=dict)


class SweepResponse(ApiModel):
    columns: list[str]
    rows: list[dict[str, Any]]
    summary: dict[str, Any]


class SigmaMinSweepRequest(ApiModel):
    a_values: list[int] = Field(default=[1])
    lambda_values: list[int] = Field(default=[2, 3, 4])
    m: int = 4096
    srf_min: Optional[float] = None
    srf_max: float = 8.0
    srf_points: int = Field(default=20, gt=1)


class ThetaSweepRequest(ApiModel):
    s_values: list[int] = Field(default=[2, 3, 4])
    m: int = 50
    srf_min: float = 2.0
    srf_max: float = 20.0
    srf_points: int = Field(default=20, gt=1)


class PhaseTransitionRequest(ApiModel):
    a: int = Field(default=1, gt=0)
    lam: int = Field(default=2, gt=0)
    m: int = 100
    srf_min: float = 1.0
    srf_max: float = 10.0
    srf_points: int = Field(default=20, gt=1)
    sigma_lo: float = Field(default=1e-6, gt=0)
    sigma_hi: float = Field(default=1.0, gt=0)
    sigma_per_decade: int = Field(default=30, gt=0)
    trials: int = Field(default=10, gt=0)
    seed: int = 0
    beta: float = Field(default=10.0, gt=0)
    refine: bool = True


class MusicDemoRequest(ApiModel):
    a: int = Field(default=1, gt=0)
    lam: int = Field(default=3, gt=0)
    alpha: float = Field(default=0.5, gt=0)
    m: int = 100
    sigma: float = Field(default=0.0, ge=0)
    seed: int = 0
    beta: float = Field(default=10.0, gt=0)
    grid_size: Optional[int] = None


class CertifyRequest(ApiModel):
    m: int = Field(gt=0)
    a: Optional[int] = Field(default=None, gt=0)
    lam: Optional[int] = Field(default=None, gt=0)
    alpha: Optional[float] = Field(default=None, gt=0)
    beta: Optional[float] = None
    nodes: Optional[list[float]] = None
    seed: int = 0


class SelftestRequest(ApiModel):
    seed: int = 0
