# pcenters/cli/config.py
"""Experiment configuration: one JSON file per run.

Every output embeds ``ExperimentConfig.resolved()``; feeding that document
(or a whole JSON summary) back to ``from_mapping`` reproduces the run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from pcenters.errors import ConfigError
from pcenters.geometry.body import Body, build_body
from pcenters.potentials.kernels import KernelSpec
from pcenters.utils.jsonx import as_float, load_file

EVAL = "eval"
CENTERS = "centers"
UNFOLDED = "unfolded"
CONEBOUND = "conebound"
CONVERGE = "converge"
CONTAIN = "contain"
CONCAVITY = "concavity"
SUMMABILITY = "summability"
GAP = "gap"

# canonical name -> spellings accepted on the command line and in configs
EXPERIMENT_ALIASES = {
    EVAL: ["eval", "evaluate", "potential"],
    CENTERS: ["centers", "centers find", "find"],
    UNFOLDED: ["unfolded", "uf", "heart"],
    CONEBOUND: ["conebound", "r_tilde", "cone bound"],
    CONVERGE: ["converge", "centers converge", "convergence"],
    CONTAIN: ["contain", "centers contain", "containment"],
    CONCAVITY: ["concavity", "centers concavity"],
    SUMMABILITY: ["summability", "kernel check"],
    GAP: ["gap", "centers gap"],
}

ALIAS_LOOKUP: Dict[str, str] = {}
for key, spellings in EXPERIMENT_ALIASES.items():
    for s in spellings:
        ALIAS_LOOKUP[s] = key

# experiments that run without a body
BODYLESS = (CONEBOUND, SUMMABILITY)
# ... and those that draw randomness
SEEDED = (CONCAVITY, GAP)


def resolve_experiment(name: str) -> str:
    key = ALIAS_LOOKUP.get(" ".join(str(name).lower().split()))
    if key is None:
        raise ConfigError(f"unknown experiment {name!r}", field="experiment")
    return key


def _num(data: Mapping[str, Any], key: str, default=None, *, prefix: str = "", positive: bool = False,
         required: bool = False) -> Optional[float]:
    name = f"{prefix}{key}"
    if key not in data or data[key] is None:
        if required:
            raise ConfigError(f"missing {name!r}", field=name)
        return default
    try:
        v = as_float(data[key])
    except (TypeError, ValueError) as e:
        raise ConfigError(f"not a number: {data[key]!r}", field=name) from e
    if math.isnan(v) or (positive and not v > 0):
        raise ConfigError(f"must be > 0, got {data[key]!r}", field=name)
    return v


def _int(data: Mapping[str, Any], key: str, default=None, *, minimum: int = 1) -> Optional[int]:
    if key not in data or data[key] is None:
        return default
    raw = data[key]
    if isinstance(raw, bool) or not isinstance(raw, (int, float)) or int(raw) != raw:
        raise ConfigError(f"must be an integer, got {raw!r}", field=key)
    if int(raw) < minimum:
        raise ConfigError(f"must be >= {minimum}, got {raw!r}", field=key)
    return int(raw)


def _body_block(data: Mapping[str, Any]) -> Dict[str, Any]:
    block: Dict[str, Any] = {"shape": data["shape"], "dimension": int(data.get("dimension", 2))}
    for key in ("params", "cone", "grid_resolution", "name"):
        if data.get(key) is not None:
            block[key] = data[key]
    return block


@dataclass(frozen=True, eq=False)
class ExperimentConfig:
    experiment: str
    dimension: int
    body_spec: Optional[Dict[str, Any]] = None
    body: Optional[Body] = None
    kernel: Optional[KernelSpec] = None
    resolution: Optional[float] = None
    plateau_tolerance: Optional[float] = None
    quad_resolution: Optional[int] = None
    seed: Optional[int] = None
    parameters: List[float] = field(default_factory=list)
    points: List[List[float]] = field(default_factory=list)
    b: float = 0.9
    R0: Optional[float] = None
    trials: int = 200
    samples: int = 32
    direction_count: Optional[int] = None
    uf_resolution: Optional[int] = None
    probe_radius: float = 1.0
    inner_radius: Optional[float] = None
    conebound: Dict[str, Any] = field(default_factory=dict)
    compare_spec: Optional[Dict[str, Any]] = None
    compare: Optional[Body] = None

    @classmethod
    def from_file(cls, path: str | Path, experiment: str | None = None) -> "ExperimentConfig":
        return cls.from_mapping(load_file(path), experiment)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], experiment: str | None = None) -> "ExperimentConfig":
        if not isinstance(data, Mapping):
            raise ConfigError("config must be an object", field="config")
        # a JSON summary written by a previous run
        if isinstance(data.get("config"), Mapping) and "result" in data:
            data = data["config"]

        raw_exp = experiment or data.get("experiment")
        if not raw_exp:
            raise ConfigError("no experiment given", field="experiment")
        exp = resolve_experiment(raw_exp)
        m = _int(data, "dimension", 2, minimum=2)

        body_spec = body = None
        if "shape" in data:
            body_spec = _body_block(data)
            body = build_body(body_spec)
        elif exp not in BODYLESS:
            raise ConfigError(f"experiment {exp!r} needs a shape", field="shape")

        kernel = None
        if data.get("kernel") is not None:
            kernel = KernelSpec.from_mapping(data["kernel"], m)
        elif exp not in (UNFOLDED, CONEBOUND):
            raise ConfigError(f"experiment {exp!r} needs a kernel", field="kernel")

        resolution = _num(data, "resolution", positive=True)
        if exp in (CENTERS, CONVERGE, CONTAIN) and resolution is None:
            raise ConfigError(f"experiment {exp!r} needs a search resolution", field="resolution")
        plateau = _num(data, "plateau_tolerance")
        if plateau is not None and plateau < 0:
            raise ConfigError(f"must be >= 0, got {plateau!r}", field="plateau_tolerance")

        seed = _int(data, "seed", None, minimum=0)
        if exp in SEEDED and seed is None:
            raise ConfigError(f"experiment {exp!r} draws random points and needs a seed", field="seed")

        params = data.get("parameters") or []
        if not isinstance(params, list):
            raise ConfigError("must be a list", field="parameters")
        try:
            parameters = [as_float(p) for p in params]
        except (TypeError, ValueError) as e:
            raise ConfigError(f"not numbers: {params!r}", field="parameters") from e
        if exp in (CONVERGE, SUMMABILITY) and not parameters:
            raise ConfigError(f"experiment {exp!r} needs a parameter list", field="parameters")

        points = data.get("points") or []
        if exp == EVAL:
            if not points:
                raise ConfigError("eval needs at least one point", field="points")
            for i, p in enumerate(points):
                if not isinstance(p, list) or len(p) != m:
                    raise ConfigError(f"point {i} must have {m} coordinates", field=f"points[{i}]")
        points = [[float(c) for c in p] for p in points]

        b = _num(data, "b", 0.9)
        if not 0.0 < b < 1.0:
            raise ConfigError(f"must lie in (0, 1), got {b!r}", field="b")

        cb = data.get("conebound") or {}
        if not isinstance(cb, Mapping):
            raise ConfigError("must be an object", field="conebound")
        if exp == CONEBOUND and body is None:
            for key in ("kappa", "D", "R0"):
                _num(cb, key, prefix="conebound.", required=True, positive=True)

        compare_spec = compare = None
        if data.get("compare") is not None:
            if not isinstance(data["compare"], Mapping) or "shape" not in data["compare"]:
                raise ConfigError("must be a body description with a shape", field="compare")
            compare_spec = _body_block({"dimension": m, **data["compare"]})
            compare = build_body(compare_spec)

        return cls(
            experiment=exp,
            dimension=m,
            body_spec=body_spec,
            body=body,
            kernel=kernel,
            resolution=resolution,
            plateau_tolerance=plateau,
            quad_resolution=_int(data, "quad_resolution", None, minimum=4),
            seed=seed,
            parameters=parameters,
            points=points,
            b=b,
            R0=_num(data, "R0", positive=True),
            trials=_int(data, "trials", 200),
            samples=_int(data, "samples", 32),
            direction_count=_int(data, "direction_count", None),
            uf_resolution=_int(data, "uf_resolution", None, minimum=4),
            probe_radius=_num(data, "probe_radius", 1.0, positive=True),
            inner_radius=_num(data, "inner_radius", positive=True),
            conebound=dict(cb),
            compare_spec=compare_spec,
            compare=compare,
        )

    def resolved(self) -> Dict[str, Any]:
        """Every setting the run used, defaults filled in; accepted by ``from_mapping``."""
        out: Dict[str, Any] = {"experiment": self.experiment, "dimension": self.dimension}
        if self.body is not None:
            out.update(self.body_spec)
            out["cone"] = self.body.cone.as_dict()
            out["grid_resolution"] = self.body.grid_resolution
        if self.kernel is not None:
            out["kernel"] = self.kernel.as_dict()
        if self.compare is not None:
            cmp_block = dict(self.compare_spec)
            cmp_block["cone"] = self.compare.cone.as_dict()
            cmp_block["grid_resolution"] = self.compare.grid_resolution
            out["compare"] = cmp_block
        for key in ("resolution", "plateau_tolerance", "quad_resolution", "seed", "R0", "direction_count",
                    "uf_resolution", "inner_radius"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        out.update({
            "parameters": list(self.parameters),
            "points": [list(p) for p in self.points],
            "b": self.b,
            "trials": self.trials,
            "samples": self.samples,
            "probe_radius": self.probe_radius,
            "conebound": dict(self.conebound),
        })
        return out
