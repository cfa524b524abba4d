"""HTTP service exposing the scenario runner.

Thin wrapper over :func:`dlmsim.harness.run_scenario`: the request body
mirrors :class:`~dlmsim.harness.ExperimentConfig` and the response
carries the result table as column names plus rows.
"""
from __future__ import annotations

from dataclasses import asdict

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from . import __version__, harness

app = FastAPI(title="dlmsim", version=__version__)


class RunRequest(BaseModel):
    scenario: str
    alpha: float = 0.99
    events_per_block: int | None = None
    blocks: int | None = None
    seed: int = 100
    warmup: int = 0
    backend: str = "dlm"
    p0: float | None = None
    psi0: float | None = None
    psi1: float | None = None
    phi0: float | None = None
    phi1: float | None = None
    phi2: float | None = None
    phi3: float | None = None
    gamma: float | None = None


class RunResponse(BaseModel):
    scenario: str
    columns: list[str]
    rows: list[list[float]]


class ReproduceRequest(BaseModel):
    seed: int | None = None
    events_per_block: int | None = None
    blocks: int | None = None


class FigureInfo(BaseModel):
    figure_id: str
    description: str
    series: list[dict]


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.get("/scenarios")
def scenarios():
    return {"scenarios": list(harness.SCENARIOS)}


@app.get("/figures", response_model=list[FigureInfo])
def figures():
    out = []
    for fid, (desc, configs) in harness.FIGURES.items():
        out.append(FigureInfo(figure_id=fid, description=desc,
                              series=[asdict(c) for c in configs]))
    return out


@app.post("/run", response_model=RunResponse)
def run(req: RunRequest):
    cfg = harness.ExperimentConfig(**req.model_dump())
    try:
        cfg.validate()
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc))
    columns, rows = harness.run_scenario(cfg)
    return RunResponse(scenario=cfg.scenario, columns=columns, rows=rows)


@app.post("/reproduce/{figure_id}", response_model=RunResponse)
def reproduce(figure_id: str, req: ReproduceRequest | None = None):
    if figure_id not in harness.FIGURES:
        raise HTTPException(status_code=404,
                            detail=f"unknown figure id {figure_id!r}")
    overrides = {}
    if req is not None:
        overrides = {k: v for k, v in req.model_dump().items()
                     if v is not None}
    columns, rows = harness.reproduce(figure_id, **overrides)
    return RunResponse(scenario=figure_id, columns=columns, rows=rows)
