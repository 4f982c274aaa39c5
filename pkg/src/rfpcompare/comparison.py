"""Deployment-pair ratios: emitted power and received power at average and
fixed distances, plus the per-scenario closed-form specializations and a
cross-consistency verifier.

All ratios are deployment (1) over deployment (2) and computed in linear
scale; a ratio above 1 means deployment (2) yields the lower value.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import (
    BetaOutOfRangeError,
    NoTessellationError,
    UnsupportedParameterChangeError,
)
from .geometry import Layout, LayoutKind, TESSELLATING_KINDS
from .propagation import Deployment, NeighborMode, neighbor_count

#: Relative tolerance for closed-form vs general-formula agreement.
CLOSED_FORM_RTOL = 1e-12


@dataclass(frozen=True)
class DeploymentPair:
    """Two deployments compared on a shared layout.

    ``beta1`` is the fixed evaluation distance of deployment (1) as a fraction
    of its d_max; the same physical distance corresponds to
    beta2 = beta1 * d_max(1) / d_max(2) in deployment (2) and must not exceed
    its cell radius. The neighbor mode applies to both deployments with equal
    neighbor count.
    """

    dep1: Deployment
    dep2: Deployment
    layout: Layout
    beta1: float = 0.05
    mode: NeighborMode = NeighborMode.NONE

    def __post_init__(self) -> None:
        if not 0 < self.beta1 < 1:
            raise BetaOutOfRangeError(f"beta1 must be in (0, 1), got {self.beta1}")
        if self.mode is NeighborMode.ADJACENT and not self.layout.tessellates:
            raise NoTessellationError(
                "adjacent-neighbor mode requires a tessellating layout"
            )
        beta2 = self.beta2
        if not 0 < beta2 <= 1:
            raise BetaOutOfRangeError(
                f"beta2 = beta1 * d_max(1)/d_max(2) = {beta2:.6g} must be in (0, 1]"
            )

    @property
    def beta2(self) -> float:
        return self.beta1 * self.dep1.d_max / self.dep2.d_max

    @property
    def delta_d_max(self) -> float:
        return self.dep1.d_max / self.dep2.d_max

    @property
    def delta_p_r_th(self) -> float:
        return self.dep1.p_r_th / self.dep2.p_r_th

    @property
    def delta_f(self) -> float:
        return self.dep1.f / self.dep2.f

    @property
    def delta_c(self) -> float:
        return self.dep1.c / self.dep2.c


class Metric(Enum):
    """The three reported ratios."""

    PE = "pe"
    PR_AVG = "pr_avg"
    PR_FX = "pr_fx"


def delta_emitted(pair: DeploymentPair) -> float:
    """Ratio of emitted powers P_E(1) / P_E(2).

    Requires a common frequency exponent eta; the product form below is
    algebraically identical to emitted_power(dep1) / emitted_power(dep2).
    """
    d1, d2 = pair.dep1, pair.dep2
    if d1.eta != d2.eta:
        raise UnsupportedParameterChangeError(
            f"deployments must share eta, got {d1.eta} and {d2.eta}"
        )
    return (
        pair.delta_d_max ** d1.gamma
        * d2.d_max ** (d1.gamma - d2.gamma)
        * pair.delta_p_r_th
        * pair.delta_f**d1.eta
        * pair.delta_c
    )


def delta_avg(pair: DeploymentPair) -> float:
    """Received-power ratio at each deployment's own average distance."""
    layout, mode = pair.layout, pair.mode
    n_i = neighbor_count(layout, mode)
    g1, g2 = pair.dep1.gamma, pair.dep2.gamma
    num = layout.alpha**-g1
    den = layout.alpha**-g2
    if n_i:
        num += n_i * layout.zeta**-g1
        den += n_i * layout.zeta**-g2
    return pair.delta_p_r_th * num / den


def delta_fixed(pair: DeploymentPair) -> float:
    """Received-power ratio at the same physical distance beta1 * d_max(1)."""
    layout, mode = pair.layout, pair.mode
    n_i = neighbor_count(layout, mode)
    g1, g2 = pair.dep1.gamma, pair.dep2.gamma
    num = pair.beta1**-g1
    den = pair.beta1**-g2 * pair.delta_d_max**-g2
    if n_i:
        num += n_i * layout.zeta**-g1
        den += n_i * layout.zeta**-g2
    return pair.delta_p_r_th * num / den


@dataclass(frozen=True)
class ComparisonResult:
    """The three ratios for one (scenario, layout, mode) evaluation."""

    scenario_id: str
    layout_kind: LayoutKind
    mode: NeighborMode
    delta_pe: float
    delta_pr_avg: float
    delta_pr_fx: float

    def get(self, metric: Metric) -> float:
        if metric is Metric.PE:
            return self.delta_pe
        if metric is Metric.PR_AVG:
            return self.delta_pr_avg
        return self.delta_pr_fx


def evaluate_pair(pair: DeploymentPair, scenario_id: str = "") -> ComparisonResult:
    """Evaluate all three ratios of a pair from the general formulas."""
    return ComparisonResult(
        scenario_id=scenario_id,
        layout_kind=pair.layout.kind,
        mode=pair.mode,
        delta_pe=delta_emitted(pair),
        delta_pr_avg=delta_avg(pair),
        delta_pr_fx=delta_fixed(pair),
    )


def closed_form_delta(
    scenario_id: str,
    metric: Metric,
    layout: Layout,
    mode: NeighborMode,
    beta1: float = 0.05,
) -> float:
    """Evaluate the per-scenario closed form of a ratio.

    These are independent transcriptions of the specialized expressions (one
    per built-in scenario, metric, and neighbor regime), kept deliberately
    separate from the general formulas so that verify_closed_forms is a real
    cross-check and not a tautology.
    """
    # Imported lazily: scenarios builds on this module for sweeps.
    from .scenarios import builtin_scenario

    s = builtin_scenario(scenario_id)
    sid = s.id
    d1, d2 = s.dep1, s.dep2
    dd = d1.d_max / d2.d_max
    dpth = d1.p_r_th / d2.p_r_th
    df = d1.f / d2.f
    g1, g2 = d1.gamma, d2.gamma
    eta = d1.eta
    n_i = neighbor_count(layout, mode)

    if metric is Metric.PE:
        # Same expressions in both neighbor regimes.
        if sid == "S1":
            return dd**g1
        if sid == "S2":
            return dd**g1 * d2.d_max ** (g1 - g2)
        if sid == "S3":
            return dd**g1 * df**eta
        if sid == "S4":
            return dpth * df**eta
        return dpth * dd**g1 * d2.d_max ** (g1 - g2) * df**eta  # S5

    if metric is Metric.PR_AVG:
        if sid in ("S1", "S3"):
            return 1.0
        if sid == "S4":
            return dpth
        a = layout.alpha
        if n_i == 0:
            ratio = a ** (g2 - g1)
        else:
            z = layout.zeta
            ratio = (a**-g1 + n_i * z**-g1) / (a**-g2 + n_i * z**-g2)
        return ratio if sid == "S2" else dpth * ratio  # S5 carries delta(P_R_TH)

    # Metric.PR_FX
    if not 0 < beta1 < 1:
        raise BetaOutOfRangeError(f"beta1 must be in (0, 1), got {beta1}")
    if sid == "S4":
        return dpth
    if n_i == 0:
        if sid in ("S1", "S3"):
            return dd**g1
        value = beta1 ** (g2 - g1) * dd**g2
        return value if sid == "S2" else dpth * value  # S5
    z = layout.zeta
    num = beta1**-g1 + n_i * z**-g1
    if sid in ("S1", "S3"):
        return num / (beta1**-g1 * dd**-g1 + n_i * z**-g1)
    den = beta1**-g2 * dd**-g2 + n_i * z**-g2
    return num / den if sid == "S2" else dpth * num / den  # S5


@dataclass(frozen=True)
class ClosedFormCheck:
    """One closed-form vs general-formula comparison."""

    scenario_id: str
    metric: Metric
    layout_kind: LayoutKind
    mode: NeighborMode
    beta1: float
    closed_form: float
    general: float
    relative_error: float

    @property
    def passed(self) -> bool:
        return self.relative_error <= CLOSED_FORM_RTOL


def verify_closed_forms(
    layouts: tuple[LayoutKind, ...] | list[LayoutKind] = TESSELLATING_KINDS,
    modes: tuple[NeighborMode, ...] | list[NeighborMode] = tuple(NeighborMode),
    beta1_values: tuple[float, ...] | list[float] = (0.05,),
) -> list[ClosedFormCheck]:
    """Compare every closed form against the general formulas.

    Iterates scenarios x metrics x layouts x modes x beta1 values in a fixed
    sorted order and records the relative error of each pair of evaluations.
    The circle layout is only evaluable in neighbor-free mode; its
    adjacent-mode combinations are skipped.
    """
    from .scenarios import builtin_scenario, builtin_scenario_ids

    checks: list[ClosedFormCheck] = []
    for sid in builtin_scenario_ids():
        s = builtin_scenario(sid)
        for kind in layouts:
            layout = Layout(kind)
            for mode in modes:
                if mode is NeighborMode.ADJACENT and not layout.tessellates:
                    continue
                for beta1 in beta1_values:
                    pair = DeploymentPair(s.dep1, s.dep2, layout, beta1, mode)
                    result = evaluate_pair(pair, scenario_id=sid)
                    for metric in Metric:
                        general = result.get(metric)
                        closed = closed_form_delta(sid, metric, layout, mode, beta1)
                        rel = abs(closed - general) / abs(general)
                        checks.append(
                            ClosedFormCheck(
                                scenario_id=sid,
                                metric=metric,
                                layout_kind=layout.kind,
                                mode=mode,
                                beta1=beta1,
                                closed_form=closed,
                                general=general,
                                relative_error=rel,
                            )
                        )
    return checks
