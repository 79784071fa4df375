"""Reports and exports derived from a fitted model.

Numbers in exports are written with 12 significant digits, which
round-trips doubles in practice and keeps text diffs readable. Exports
are deterministic bytes for a fixed model and format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .frame import DataFrame
from .moments import PmaModel, simplex_second_moment_coeffs
from .simplexes import SimplexSet, vertex_matrix


def fmt12(x: float) -> str:
    return format(float(x), ".12g")


def dumps12(obj) -> str:
    """JSON serialization with floats at 12 significant digits."""
    if isinstance(obj, dict):
        items = (f"{json.dumps(k)}:{dumps12(v)}" for k, v in obj.items())
        return "{" + ",".join(items) + "}"
    if isinstance(obj, (list, tuple)) or isinstance(obj, np.ndarray):
        return "[" + ",".join(dumps12(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (float, np.floating)):
        return fmt12(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if obj is None:
        return "null"
    return json.dumps(obj)


@dataclass(frozen=True)
class ProjectionReport:
    """Rank-s summary: explained fractions, exact residual, projected data."""

    s: int
    explained: list[float]  # lambda_k / trace_total for k <= s
    cumulative: float
    residual: float  # trace_total - sum of retained top-s eigenvalues
    scores: np.ndarray  # s x n
    axis_loadings: np.ndarray  # p x s
    sample_ids: tuple[str, ...]
    variable_ids: tuple[str, ...]
    simplex_edges: list[tuple[np.ndarray, np.ndarray]]


def report(model: PmaModel, s: int) -> ProjectionReport:
    """Summarize the optimal rank-s projection of the fitted measure."""
    if not 1 <= s <= model.rank:
        raise ValueError(f"s={s} out of range [1, {model.rank}]")
    lam = model.eigenvalues
    total = model.trace_total
    explained = [float(l / total) for l in lam[:s]]
    cumulative = float(lam[:s].sum() / total)
    residual = float(total - lam[:s].sum())
    edges: list[tuple[np.ndarray, np.ndarray]] = []
    if model.simplexes is not None:
        x = model.centered_values()
        top = model.axes[:, :s]
        for simplex in model.simplexes.simplexes:
            if simplex.m < 2:
                continue
            pts = top.T @ (x @ vertex_matrix(simplex, model.frame.n))  # s x m
            for i in range(simplex.m):
                for j in range(i + 1, simplex.m):
                    edges.append((pts[:, i].copy(), pts[:, j].copy()))
    return ProjectionReport(
        s=s,
        explained=explained,
        cumulative=cumulative,
        residual=residual,
        scores=model.sample_scores[:s].copy(),
        axis_loadings=model.axes[:, :s].copy(),
        sample_ids=model.frame.sample_ids,
        variable_ids=model.frame.variable_ids,
        simplex_edges=edges,
    )


def export_scores(rep: ProjectionReport, fmt: str = "tsv") -> str:
    """Score table: one row per sample (TSV) or axis-major arrays (JSON)."""
    if fmt == "tsv":
        header = "sample\t" + "\t".join(f"PM{k + 1}" for k in range(rep.s))
        lines = [header]
        for j, sid in enumerate(rep.sample_ids):
            lines.append(sid + "\t" + "\t".join(fmt12(rep.scores[k, j]) for k in range(rep.s)))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return dumps12({"samples": list(rep.sample_ids), "scores": rep.scores}) + "\n"
    raise ConfigError(f"unknown export format {fmt!r}")


def export_eigenvalues(model: PmaModel, fmt: str = "tsv") -> str:
    if fmt == "tsv":
        lines = ["component\teigenvalue"]
        for k, lam in enumerate(model.eigenvalues):
            lines.append(f"PM{k + 1}\t{fmt12(lam)}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return (
            dumps12({"eigenvalues": model.eigenvalues, "trace_total": model.trace_total}) + "\n"
        )
    raise ConfigError(f"unknown export format {fmt!r}")


def export_axes(rep: ProjectionReport, fmt: str = "tsv") -> str:
    """Axis loadings: one row per variable."""
    if fmt == "tsv":
        header = "variable\t" + "\t".join(f"PM{k + 1}" for k in range(rep.s))
        lines = [header]
        for i, vid in enumerate(rep.variable_ids):
            lines.append(
                vid + "\t" + "\t".join(fmt12(rep.axis_loadings[i, k]) for k in range(rep.s))
            )
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return (
            dumps12({"variables": list(rep.variable_ids), "axis_loadings": rep.axis_loadings})
            + "\n"
        )
    raise ConfigError(f"unknown export format {fmt!r}")


def report_payload(rep: ProjectionReport) -> dict:
    """JSON-ready report with deterministic field order."""
    return {
        "s": rep.s,
        "explained": rep.explained,
        "cumulative": rep.cumulative,
        "residual": rep.residual,
        "samples": list(rep.sample_ids),
        "scores": rep.scores,
        "variables": list(rep.variable_ids),
        "axis_loadings": rep.axis_loadings,
        "simplex_edges": [[a, b] for a, b in rep.simplex_edges],
    }


def export_report(rep: ProjectionReport) -> str:
    return dumps12(report_payload(rep)) + "\n"


def second_moment_seminorm(
    mu: SimplexSet, nu: SimplexSet | None, frame: DataFrame
) -> float:
    """Trace norm of M2(|mu - nu|) for measures sharing a simplex skeleton.

    nu=None denotes the zero measure. Both measures must carry the same
    vertex sets so the total variation reduces to per-simplex |w - w'|.
    """
    mu_weights = {s.key(): s.weight for s in mu.simplexes}
    nu_weights = {} if nu is None else {s.key(): s.weight for s in nu.simplexes}
    if nu is not None and set(mu_weights) != set(nu_weights):
        raise ConfigError("measures do not share a simplex skeleton")
    skeleton = {s.key(): s for s in mu.simplexes}
    total = 0.0
    x = frame.values
    for key, simplex in skeleton.items():
        dw = abs(mu_weights[key] - nu_weights.get(key, 0.0))
        if dw == 0.0:
            continue
        _, b_g = simplex_second_moment_coeffs(
            type(simplex)(simplex.vertices, dw), frame.n
        )
        y = x @ b_g
        total += float(np.einsum("ij,ij->", y, y))
    return total
