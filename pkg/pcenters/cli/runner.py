# pcenters/cli/runner.py
"""One experiment per call: compute, then write CSV, JSON and optional SVG."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Sequence

from pcenters.centers import (
    body_r_tilde,
    concavity_probe,
    containment_report,
    convergence_experiment,
    find_centers,
    heat_incenter_trend,
    small_parameter_gap_check,
)
from pcenters.cli import config as cfg
from pcenters.cli.config import ExperimentConfig
from pcenters.cli.svg import emit_svg
from pcenters.conebound import half_space_root, e_profile, exterior_bound, lower_bound_r_tilde
from pcenters.errors import ConfigError, NumericalError, UnsupportedDimension, ValidationError
from pcenters.geometry.cone import ConeSpec
from pcenters.potentials import check_summability, evaluate
from pcenters.potentials.kernels import HEAT
from pcenters.unfolded import unfolded_region
from pcenters.utils.csvx import write_rows
from pcenters.utils.jsonx import as_float, dumps

log = logging.getLogger("pc")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_NUMERICAL = 3

DEFAULT_DIRECTIONS = {2: 64, 3: 128}


@dataclass
class Outcome:
    summary: Dict[str, Any]
    header: List[str]
    rows: List[Sequence]
    uf: Any = None
    center_sets: List[Any] = field(default_factory=list)


def _coords(m: int) -> List[str]:
    return [f"x{i + 1}" for i in range(m)]


def _uf(c: ExperimentConfig):
    n = c.direction_count or DEFAULT_DIRECTIONS.get(c.dimension, 128)
    return unfolded_region(c.body, n, c.uf_resolution)


def _centers(c: ExperimentConfig):
    return find_centers(c.body, c.kernel, c.resolution, c.plateau_tolerance, quad_resolution=c.quad_resolution)


def _run_eval(c: ExperimentConfig) -> Outcome:
    rows, values = [], []
    for p in c.points:
        r = evaluate(c.body, c.kernel, p, resolution=c.quad_resolution)
        rows.append([*p, r.value, r.estimated_error, r.location_class])
        values.append(r.value)
    return Outcome({"values": values}, _coords(c.dimension) + ["value", "estimated_error", "location"], rows)


def _run_centers(c: ExperimentConfig) -> Outcome:
    cs = _centers(c)
    summary = {
        "count": len(cs),
        "max_value": cs.max_value,
        "plateau_tolerance": cs.plateau_tolerance,
        "search_region": cs.search_region,
        "evaluations": cs.evaluations,
        "points": cs.points,
    }
    return Outcome(summary, _coords(c.dimension) + ["value"], list(cs.rows()), center_sets=[cs])


def _run_unfolded(c: ExperimentConfig) -> Outcome:
    uf = _uf(c)
    summary = dict(uf.as_dict(), width=uf.width(), centroid_inside=bool(uf.contains(c.body.centroid(), 2 * uf.cell)))
    header = [f"v{i + 1}" for i in range(c.dimension)] + ["l"]
    return Outcome(summary, header, list(uf.rows()), uf=uf)


def _run_conebound(c: ExperimentConfig) -> Outcome:
    cb = c.conebound
    body = c.body
    alpha = float(cb.get("alpha", c.kernel.limit_alpha if c.kernel and c.kernel.limit_alpha is not None else -1.0))
    m = int(cb.get("m", c.dimension))
    kappa = as_float(cb["kappa"]) if "kappa" in cb else body.cone.kappa
    delta = as_float(cb["delta"]) if "delta" in cb else (body.cone.delta if body else math.inf)
    cone = ConeSpec(kappa=kappa, delta=delta)
    D = as_float(cb["D"]) if "D" in cb else body.diameter()
    R0 = as_float(cb["R0"]) if "R0" in cb else body.inradius()
    samples = int(cb.get("samples", 50))
    prof = e_profile(alpha, cone.kappa, cone.delta, D, R0, m, samples=samples)
    summary: Dict[str, Any] = {
        "alpha": alpha, "kappa": cone.kappa, "delta": cone.delta, "D": D, "R0": R0, "m": m,
        "r_tilde": prof.r_tilde,
        "bracket": list(prof.bracket),
        "tolerance": prof.tolerance,
        "E_strictly_decreasing": prof.strictly_decreasing,
        "theta_min_numeric": prof.theta_min_numeric,
        "lower_bound": lower_bound_r_tilde(R0, m),
        "exterior_bound": exterior_bound(cone.kappa, m),
    }
    if cone.kappa >= math.pi - 1e-12 and cone.unbounded and alpha == -1.0:
        summary["closed_form_root"] = half_space_root(D, R0, m)
    return Outcome(summary, ["R", "E"], prof.rows())


def _run_converge(c: ExperimentConfig) -> Outcome:
    if c.kernel.variant == HEAT:
        trend = heat_incenter_trend(c.body, c.parameters, c.resolution, c.quad_resolution)
        records = trend.pop("records")
        summary = trend
    else:
        records = convergence_experiment(c.body, c.kernel, c.parameters, None, c.resolution, c.plateau_tolerance,
                                         c.quad_resolution)
        dists = [r.hausdorff_to_reference for r in records]
        summary = {
            "distances": dists,
            "final_below_two_cells": dists[-1] < 2.0 * c.resolution,
            # the first two parameters are too large to be in the asymptotic regime
            "non_increasing_tail": all(b <= a + c.resolution for a, b in zip(dists[2:], dists[3:])),
            "convex": c.body.convex,
        }
    rows = [[r.parameter, r.hausdorff_to_reference, len(r.center_set)] for r in records]
    return Outcome(summary, [c.kernel.parameter_name, "hausdorff", "centers"], rows,
                   center_sets=[records[-1].center_set])


def _run_contain(c: ExperimentConfig) -> Outcome:
    uf = _uf(c)
    cs = _centers(c)
    alpha = c.kernel.limit_alpha if c.kernel.limit_alpha is not None else -1.0
    rt = body_r_tilde(c.body, alpha)
    rep = containment_report(c.body, cs, uf, c.b, rt)
    rows = [[*r["point"], r["in_uf"], r["distance_to_boundary"], r["in_inner_parallel"]] for r in rep["rows"]]
    header = _coords(c.dimension) + ["in_uf", "distance_to_boundary", "in_inner_parallel"]
    return Outcome(rep, header, rows, uf=uf, center_sets=[cs])


def _run_concavity(c: ExperimentConfig) -> Outcome:
    rep = concavity_probe(c.body, c.kernel, c.trials, c.seed, inner_radius=c.inner_radius,
                          resolution=c.quad_resolution, center_resolution=c.resolution)
    keys = ["trials", "violations", "worst_gap", "center_count", "center_clusters", "rm1_decreasing"]
    return Outcome(rep, keys, [[rep[k] for k in keys]])


def _run_summability(c: ExperimentConfig) -> Outcome:
    rep = check_summability(c.kernel, c.probe_radius, c.parameters)
    rows = [[r["parameter"], r["mass"], r["tail_mass"], r["strictly_decreasing"], r["c0"]] for r in rep["rows"]]
    return Outcome(rep, ["parameter", "mass", "tail_mass", "strictly_decreasing", "c0"], rows)


def _run_gap(c: ExperimentConfig) -> Outcome:
    Y = c.compare or c.body
    p = c.kernel.parameter
    if p is None:
        raise ConfigError(f"gap check needs kernel.{c.kernel.parameter_name}", field=f"kernel.{c.kernel.parameter_name}")
    R0 = c.R0 if c.R0 is not None else 0.9 * c.body.inradius()
    rep = small_parameter_gap_check(c.body, Y, R0, c.b, c.kernel, p, samples=c.samples, seed=c.seed,
                                    resolution=c.quad_resolution)
    keys = ["min_K_X", "max_K_Y", "margin", "pass"]
    return Outcome(rep, keys, [[rep[k] for k in keys]])


RUNNERS: Dict[str, Callable[[ExperimentConfig], Outcome]] = {
    cfg.EVAL: _run_eval,
    cfg.CENTERS: _run_centers,
    cfg.UNFOLDED: _run_unfolded,
    cfg.CONEBOUND: _run_conebound,
    cfg.CONVERGE: _run_converge,
    cfg.CONTAIN: _run_contain,
    cfg.CONCAVITY: _run_concavity,
    cfg.SUMMABILITY: _run_summability,
    cfg.GAP: _run_gap,
}


def execute(config: ExperimentConfig, out_dir: str | Path, svg: bool = False) -> Dict[str, Path]:
    """Run the experiment and write its artifacts; errors propagate."""
    out_dir = Path(out_dir)
    name = config.experiment
    log.info("[cli] running %s", name)
    outcome = RUNNERS[name](config)
    written = {"csv": write_rows(out_dir / f"{name}.csv", outcome.header, outcome.rows)}
    doc = {"experiment": name, "config": config.resolved(), "result": outcome.summary}
    json_path = out_dir / f"{name}.json"
    json_path.parent.mkdir(parents=True, exist_ok=True)
    json_path.write_text(dumps(doc), encoding="utf-8")
    written["json"] = json_path
    if svg:
        if config.body is None or config.dimension != 2:
            raise UnsupportedDimension("--svg needs a planar body", field="dimension")
        written["svg"] = emit_svg(config.body, outcome.uf, outcome.center_sets, out_dir / f"{name}.svg")
    return written


def run(config: ExperimentConfig, out_dir: str | Path = "out", svg: bool = False) -> int:
    """Exit status: 0 ok, 2 invalid input, 3 numerical failure, 1 anything else."""
    try:
        execute(config, out_dir, svg)
    except ValidationError as e:
        log.error("[cli] invalid: %s", e)
        return EXIT_INVALID
    except NumericalError as e:
        log.error("[cli] numerical failure: %s", e)
        return EXIT_NUMERICAL
    except Exception:
        log.exception("[cli] %s crashed", config.experiment)
        return EXIT_FAILED
    return EXIT_OK

