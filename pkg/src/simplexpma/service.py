"""HTTP facade for interactive simplex design against loaded datasets.

Sessions are in-memory only: datasets and fitted models live in a
bounded LRU store and vanish on restart. Fits run synchronously in the
request; fitted models are immutable once stored.
"""

from __future__ import annotations

import argparse
import os
import threading
import uuid
from collections import OrderedDict
from dataclasses import dataclass
from typing import Optional

from fastapi import FastAPI, File, Query, Response, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import simplexes
from .errors import (
    ConfigError,
    DecompositionError,
    EmptyMeasureError,
    ParseError,
    PmaError,
    RankZeroError,
    UnknownAnnotationError,
)
from .frame import MISSING, DataFrame, parse_annotations, parse_data
from .moments import DEFAULT_RANK_TOL, PmaModel, fit_pma
from .report import dumps12, export_scores, report, report_payload

DEFAULT_MAX_UPLOAD = 256 * 1024 * 1024
DEFAULT_DATASET_CAPACITY = 16
DEFAULT_MODEL_CAPACITY = 64
DEFAULT_PORT = 8787


class LruStore:
    """Bounded id -> value map; least recently used entry evicted first."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._items: OrderedDict[str, object] = OrderedDict()
        self._lock = threading.Lock()

    def put(self, value) -> str:
        key = uuid.uuid4().hex
        with self._lock:
            self._items[key] = value
            while len(self._items) > self.capacity:
                self._items.popitem(last=False)
        return key

    def get(self, key: str):
        with self._lock:
            if key not in self._items:
                return None
            self._items.move_to_end(key)
            return self._items[key]


@dataclass(frozen=True)
class StoredModel:
    model: PmaModel
    config: dict


class FitRequest(BaseModel):
    dataset_id: str
    strategy: str
    params: dict = {}
    volume_weights: bool = False
    center: bool = False
    rank_tol: float = DEFAULT_RANK_TOL


def _build_simplexes(frame: DataFrame, strategy: str, params: dict):
    if strategy == "points":
        return simplexes.points(frame)
    if strategy == "groupby":
        column = params.get("group_column")
        if not column:
            raise ConfigError("groupby requires params.group_column")
        return simplexes.group_by(frame, column)
    if strategy == "knn":
        k = params.get("k")
        if not isinstance(k, int):
            raise ConfigError("knn requires integer params.k")
        return simplexes.knn(frame, k)
    if strategy == "chain":
        column = params.get("order_column")
        if not column:
            raise ConfigError("chain requires params.order_column")
        return simplexes.chain(frame, column, params.get("series_column"))
    raise ConfigError(f"unknown strategy {strategy!r}")


def _json12(payload, status_code: int = 200) -> Response:
    return Response(
        content=dumps12(payload) + "\n",
        status_code=status_code,
        media_type="application/json",
    )


def create_app(
    *,
    dataset_capacity: int = DEFAULT_DATASET_CAPACITY,
    model_capacity: int = DEFAULT_MODEL_CAPACITY,
    max_upload: int = DEFAULT_MAX_UPLOAD,
    cors_origins: Optional[list[str]] = None,
) -> FastAPI:
    app = FastAPI(title="simplex PMA explorer service")
    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=cors_origins,
            allow_methods=["*"],
            allow_headers=["*"],
        )
    datasets = LruStore(dataset_capacity)
    models = LruStore(model_capacity)
    app.state.datasets = datasets
    app.state.models = models

    @app.exception_handler(PmaError)
    async def pma_error_handler(_, exc: PmaError):
        if isinstance(exc, ParseError):
            status = 400
        elif isinstance(exc, DecompositionError):
            status = 500
        else:  # config / annotation / rank / measure problems
            status = 422
        return JSONResponse(status_code=status, content={"detail": str(exc)})

    @app.post("/api/datasets", status_code=201)
    async def upload_dataset(
        data: UploadFile = File(...), metadata: UploadFile | None = File(None)
    ):
        raw = await data.read()
        if len(raw) > max_upload:
            return JSONResponse(status_code=413, content={"detail": "data file too large"})
        frame = parse_data(raw.decode("utf-8"))
        if metadata is not None:
            meta_raw = await metadata.read()
            if len(meta_raw) > max_upload:
                return JSONResponse(
                    status_code=413, content={"detail": "metadata file too large"}
                )
            frame = parse_annotations(meta_raw.decode("utf-8"), frame)
        dataset_id = datasets.put(frame)
        value_counts = {
            name: len({v for v in column if v != MISSING})
            for name, column in frame.annotations.items()
        }
        return {
            "dataset_id": dataset_id,
            "p": frame.p,
            "n": frame.n,
            "annotation_names": sorted(frame.annotations),
            "annotation_value_counts": value_counts,
        }

    @app.post("/api/models", status_code=201)
    async def fit_model(req: FitRequest):
        frame = datasets.get(req.dataset_id)
        if frame is None:
            return JSONResponse(status_code=404, content={"detail": "unknown dataset"})
        sset = _build_simplexes(frame, req.strategy, req.params)
        if req.volume_weights:
            sset = simplexes.apply_volume_weights(sset, frame)
        config = {
            "strategy": req.strategy,
            "params": req.params,
            "volume_weights": req.volume_weights,
            "center": req.center,
            "rank_tol": req.rank_tol,
        }
        model = fit_pma(
            frame, sset, center=req.center, rank_tol=req.rank_tol, config=config
        )
        warnings = []
        for s in range(1, model.rank):
            if model.degenerate_gap(s):
                warnings.append(
                    f"eigenvalues {s} and {s + 1} are nearly equal; "
                    f"the rank-{s} projection is not uniquely defined"
                )
        model_id = models.put(StoredModel(model, config))
        return _json12(
            {
                "model_id": model_id,
                "eigenvalues": model.eigenvalues,
                "trace_total": model.trace_total,
                "warnings": warnings,
            },
            status_code=201,
        )

    @app.get("/api/models/{model_id}/report")
    async def model_report(model_id: str, dims: int = Query(...)):
        stored = models.get(model_id)
        if stored is None:
            return JSONResponse(status_code=404, content={"detail": "unknown model"})
        if not 1 <= dims <= stored.model.rank:
            return JSONResponse(
                status_code=422,
                content={"detail": f"dims out of range [1, {stored.model.rank}]"},
            )
        return _json12(report_payload(report(stored.model, dims)))

    @app.get("/api/models/{model_id}/export")
    async def model_export(
        model_id: str, format: str = Query("tsv"), dims: int | None = Query(None)
    ):
        stored = models.get(model_id)
        if stored is None:
            return JSONResponse(status_code=404, content={"detail": "unknown model"})
        if format not in ("tsv", "json"):
            return JSONResponse(status_code=422, content={"detail": f"unknown format {format!r}"})
        rank = stored.model.rank
        s = dims if dims is not None else min(3, rank)
        if not 1 <= s <= rank:
            return JSONResponse(
                status_code=422, content={"detail": f"dims out of range [1, {rank}]"}
            )
        text = export_scores(report(stored.model, s), format)
        media = "text/tab-separated-values" if format == "tsv" else "application/json"
        return Response(content=text, media_type=media)

    return app


def main(argv: list[str] | None = None) -> int:
    import uvicorn

    parser = argparse.ArgumentParser(prog="pma-serve", description="Run the explorer service.")
    parser.add_argument("--bind", default="127.0.0.1")
    parser.add_argument(
        "--port", type=int, default=int(os.environ.get("PMA_PORT", DEFAULT_PORT))
    )
    parser.add_argument("--cors-origin", action="append", default=[])
    args = parser.parse_args(argv)
    app = create_app(cors_origins=args.cors_origin or None)
    uvicorn.run(app, host=args.bind, port=args.port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
