"""Built-in comparison scenarios, JSON scenario documents, and beta sweeps.

A scenario is a pair of deployments plus the evaluation settings (beta1, the
layouts and neighbor modes to run). The five built-ins cover densification
factors from 2x to 10x, path-loss improvement, frequency change, and a
sensitivity-threshold change; the threshold ratio is realized by fixing
deployment (1) at one model unit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .comparison import DeploymentPair, delta_fixed
from .errors import (
    BetaOutOfRangeError,
    ScenarioSchemaError,
    ScenarioSyntaxError,
    ScenarioValidationError,
)
from .geometry import Layout, LayoutKind, TESSELLATING_KINDS
from .propagation import GAMMA_PLAUSIBLE_RANGE, Deployment, NeighborMode

_DEFAULT_LAYOUTS = TESSELLATING_KINDS
_DEFAULT_MODES = (NeighborMode.NONE, NeighborMode.ADJACENT)

#: Default fixed-distance fraction: 25 m from the site in a 500 m cell.
DEFAULT_BETA1 = 0.05


@dataclass(frozen=True)
class Scenario:
    """A named deployment pair plus evaluation settings."""

    id: str
    description: str
    dep1: Deployment
    dep2: Deployment
    beta1: float = DEFAULT_BETA1
    layouts: tuple[LayoutKind, ...] = field(default=_DEFAULT_LAYOUTS)
    modes: tuple[NeighborMode, ...] = field(default=_DEFAULT_MODES)

    def __post_init__(self) -> None:
        if not 0 < self.beta1 < 1:
            raise BetaOutOfRangeError(f"beta1 must be in (0, 1), got {self.beta1}")
        object.__setattr__(self, "layouts", tuple(LayoutKind(k) for k in self.layouts))
        object.__setattr__(self, "modes", tuple(NeighborMode(m) for m in self.modes))


def _builtin(sid, desc, d1, d2, pth2, g1, g2, f1, f2) -> Scenario:
    return Scenario(
        id=sid,
        description=desc,
        dep1=Deployment(d_max=d1, p_r_th=1.0, gamma=g1, f=f1),
        dep2=Deployment(d_max=d2, p_r_th=pth2, gamma=g2, f=f2),
    )


# Threshold ratios are realized as p_r_th(1) = 1, p_r_th(2) = 1/ratio: only
# the ratio is observable in every reported metric.
_BUILTIN_SCENARIOS = {
    "S1": _builtin("S1", "Light densification", 500.0, 250.0, 1.0, 3.0, 3.0, 700.0, 700.0),
    "S2": _builtin("S2", "Moderate densification", 500.0, 100.0, 1.0, 3.0, 2.1, 700.0, 700.0),
    "S3": _builtin(
        "S3", "Light densification, frequency change", 500.0, 250.0, 1.0, 3.0, 3.0, 700.0, 3700.0
    ),
    "S4": _builtin(
        "S4",
        "Same deployment, service & frequency change",
        500.0, 500.0, 2.0, 3.0, 3.0, 700.0, 3700.0,
    ),
    "S5": _builtin(
        "S5",
        "Strong densification, service & frequency change",
        500.0, 50.0, 2.0, 3.0, 2.1, 700.0, 3700.0,
    ),
}


def builtin_scenario_ids() -> tuple[str, ...]:
    """Identifiers of the built-in scenarios, in canonical order."""
    return tuple(_BUILTIN_SCENARIOS)


def builtin_scenario(scenario_id: str) -> Scenario:
    """Return a built-in scenario by id (case-insensitive)."""
    key = str(scenario_id).upper()
    try:
        return _BUILTIN_SCENARIOS[key]
    except KeyError:
        raise ValueError(
            f"unknown scenario id {scenario_id!r}; valid ids: "
            + ", ".join(_BUILTIN_SCENARIOS)
        ) from None


def pair_for(
    scenario: Scenario,
    kind: LayoutKind,
    mode: NeighborMode,
    beta1: float | None = None,
) -> DeploymentPair:
    """Bind a scenario to a concrete layout and neighbor mode."""
    return DeploymentPair(
        dep1=scenario.dep1,
        dep2=scenario.dep2,
        layout=Layout(kind),
        beta1=scenario.beta1 if beta1 is None else beta1,
        mode=mode,
    )


# -- JSON scenario documents -------------------------------------------------

_DEPLOYMENT_REQUIRED = ("d_max_m", "p_r_th", "gamma", "f_mhz")
_DEPLOYMENT_OPTIONAL = {"eta": 2.0, "c": 1.0}
_TOP_REQUIRED = ("id", "deployment1", "deployment2")
_TOP_OPTIONAL = ("description", "beta1", "layouts", "modes")


def _reject_constant(token: str) -> float:
    raise ScenarioSyntaxError(f"non-finite number {token!r} is not allowed")


def _as_number(value: object, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioSchemaError(f"{path} must be a number, got {type(value).__name__}")
    return float(value)


def _check_keys(obj: dict, required: tuple, optional: tuple, path: str) -> None:
    for key in obj:
        if key not in required and key not in optional:
            raise ScenarioSchemaError(f"unknown field {path}{key!r}")
    for key in required:
        if key not in obj:
            raise ScenarioSchemaError(f"missing required field {path}{key!r}")


def _parse_deployment(obj: object, path: str) -> Deployment:
    if not isinstance(obj, dict):
        raise ScenarioSchemaError(f"{path} must be an object")
    _check_keys(obj, _DEPLOYMENT_REQUIRED, tuple(_DEPLOYMENT_OPTIONAL), f"{path}.")
    values = {key: _as_number(obj[key], f"{path}.{key}") for key in obj}
    for key in ("d_max_m", "p_r_th", "gamma", "f_mhz", "c"):
        if key in values and not values[key] > 0:
            raise ScenarioValidationError(f"{path}.{key}", f"must be > 0, got {values[key]}")
    if "eta" in values and values["eta"] < 0:
        raise ScenarioValidationError(f"{path}.eta", f"must be >= 0, got {values['eta']}")
    return Deployment(
        d_max=values["d_max_m"],
        p_r_th=values["p_r_th"],
        gamma=values["gamma"],
        f=values["f_mhz"],
        eta=values.get("eta", _DEPLOYMENT_OPTIONAL["eta"]),
        c=values.get("c", _DEPLOYMENT_OPTIONAL["c"]),
    )


def _parse_enum_list(value: object, enum_type, path: str) -> tuple:
    if not isinstance(value, list):
        raise ScenarioSchemaError(f"{path} must be an array of strings")
    members = []
    for i, item in enumerate(value):
        if not isinstance(item, str):
            raise ScenarioSchemaError(f"{path}[{i}] must be a string")
        try:
            members.append(enum_type(item))
        except ValueError:
            valid = ", ".join(m.value for m in enum_type)
            raise ScenarioValidationError(
                f"{path}[{i}]", f"invalid value {item!r}; expected one of: {valid}"
            ) from None
    return tuple(members)


def parse_scenario_file(document: str) -> Scenario:
    """Parse and validate a JSON scenario document.

    Parsing is strict (closed-world): unknown fields are rejected rather than
    ignored, and non-finite numbers are refused. Errors distinguish malformed
    JSON (ScenarioSyntaxError), structural problems (ScenarioSchemaError), and
    value-invariant breaches (ScenarioValidationError, with the field path).
    """
    try:
        data = json.loads(document, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ScenarioSyntaxError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ScenarioSchemaError("top-level value must be an object")
    _check_keys(data, _TOP_REQUIRED, _TOP_OPTIONAL, "")

    if not isinstance(data["id"], str):
        raise ScenarioSchemaError("id must be a string")
    if not data["id"]:
        raise ScenarioValidationError("id", "must not be empty")
    description = data.get("description", "")
    if not isinstance(description, str):
        raise ScenarioSchemaError("description must be a string")

    dep1 = _parse_deployment(data["deployment1"], "deployment1")
    dep2 = _parse_deployment(data["deployment2"], "deployment2")

    beta1 = _as_number(data["beta1"], "beta1") if "beta1" in data else DEFAULT_BETA1
    if not 0 < beta1 < 1:
        raise ScenarioValidationError("beta1", f"must be in (0, 1), got {beta1}")
    beta2 = beta1 * dep1.d_max / dep2.d_max
    if beta2 > 1:
        raise ScenarioValidationError(
            "beta1",
            f"beta2 = beta1 * d_max(1)/d_max(2) = {beta2:.6g} exceeds 1; the fixed "
            "evaluation point would fall outside deployment (2)'s cell",
        )

    layouts = (
        _parse_enum_list(data["layouts"], LayoutKind, "layouts")
        if "layouts" in data
        else _DEFAULT_LAYOUTS
    )
    modes = (
        _parse_enum_list(data["modes"], NeighborMode, "modes")
        if "modes" in data
        else _DEFAULT_MODES
    )
    return Scenario(
        id=data["id"],
        description=description,
        dep1=dep1,
        dep2=dep2,
        beta1=beta1,
        layouts=layouts,
        modes=modes,
    )


def scenario_to_dict(scenario: Scenario) -> dict:
    """Dict form of a scenario in the JSON document schema."""

    def dep(d: Deployment) -> dict:
        return {
            "d_max_m": d.d_max,
            "p_r_th": d.p_r_th,
            "gamma": d.gamma,
            "f_mhz": d.f,
            "eta": d.eta,
            "c": d.c,
        }

    return {
        "id": scenario.id,
        "description": scenario.description,
        "deployment1": dep(scenario.dep1),
        "deployment2": dep(scenario.dep2),
        "beta1": scenario.beta1,
        "layouts": [k.value for k in scenario.layouts],
        "modes": [m.value for m in scenario.modes],
    }


def serialize_scenario(scenario: Scenario) -> str:
    """Serialize a scenario to a JSON document that parses back losslessly."""
    return json.dumps(scenario_to_dict(scenario), indent=2) + "\n"


# -- Validation --------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    """One validation finding; severity is "error" or "warning"."""

    code: str
    severity: str
    path: str
    message: str


def validate_scenario(scenario: Scenario) -> list[Violation]:
    """Check a scenario's cross-field constraints.

    Returns one entry per finding; entries with severity "error" make the
    scenario unusable, warnings are advisory (plausibility guards).
    """
    violations: list[Violation] = []
    if not scenario.id:
        violations.append(Violation("empty_id", "error", "id", "scenario id must not be empty"))

    beta2 = scenario.beta1 * scenario.dep1.d_max / scenario.dep2.d_max
    if beta2 > 1:
        violations.append(
            Violation(
                "beta_out_of_range",
                "error",
                "beta1",
                f"beta2 = {beta2:.6g} exceeds 1 for beta1 = {scenario.beta1:.6g}",
            )
        )
    if LayoutKind.CIRCLE in scenario.layouts and NeighborMode.ADJACENT in scenario.modes:
        violations.append(
            Violation(
                "no_tessellation",
                "error",
                "layouts",
                "the circle layout cannot be evaluated in adjacent-neighbor mode",
            )
        )
    if scenario.dep1.eta != scenario.dep2.eta:
        violations.append(
            Violation(
                "unsupported_parameter_change",
                "error",
                "deployment2.eta",
                f"deployments must share eta, got {scenario.dep1.eta} and {scenario.dep2.eta}",
            )
        )
    lo, hi = GAMMA_PLAUSIBLE_RANGE
    for name, dep in (("deployment1", scenario.dep1), ("deployment2", scenario.dep2)):
        if not lo <= dep.gamma <= hi:
            violations.append(
                Violation(
                    "gamma_plausibility",
                    "warning",
                    f"{name}.gamma",
                    f"gamma = {dep.gamma} is outside the plausible range [{lo}, {hi}]",
                )
            )
    return violations


# -- Beta sweeps -------------------------------------------------------------

def sweep_beta(
    scenario: Scenario,
    kind: LayoutKind,
    mode: NeighborMode,
    beta_start: float,
    beta_end: float,
    beta_step: float,
) -> list[tuple[float, float]]:
    """Fixed-distance ratio over an inclusive beta1 grid.

    The grid runs from beta_start to beta_end in steps of beta_step, with both
    endpoints included up to half-a-step tolerance. The whole range is checked
    before evaluation: a grid point whose beta2 would exceed 1 aborts the
    sweep naming the offending beta1.
    """
    if beta_step <= 0:
        raise ValueError(f"beta_step must be > 0, got {beta_step}")
    if not 0 < beta_start <= beta_end:
        raise ValueError(
            f"need 0 < beta_start <= beta_end, got [{beta_start}, {beta_end}]"
        )
    n_points = int((beta_end - beta_start) / beta_step + 0.5) + 1
    grid = [beta_start + k * beta_step for k in range(n_points)]

    delta_d_max = scenario.dep1.d_max / scenario.dep2.d_max
    for b in grid:
        if not b < 1:
            raise BetaOutOfRangeError(f"grid point beta1 = {b:.6g} must be below 1")
        beta2 = b * delta_d_max
        if beta2 > 1:
            raise BetaOutOfRangeError(
                f"grid point beta1 = {b:.6g} gives beta2 = {beta2:.6g} > 1"
            )
    return [(b, delta_fixed(pair_for(scenario, kind, mode, beta1=b))) for b in grid]
