"""Ricci-Bourguignon flow dg/dt = -2 Ric + 2 rho R g on H_n and Q_n.

Diagonal initial metrics stay diagonal, so the flow reduces to an ODE system
for the diagonal components.  A fixed-step classical RK4 integrator is used;
exact solutions are available under the product/equality initial conditions.
"""
from __future__ import annotations

import io
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .algebra import Family, LieAlgebraSpec, MetricState, family_dim
from .curvature import (
    ricci_general,
    ricci_specialized_diag,
    scalar_curvature,
    scalar_specialized,
    sigma_heisenberg,
    sigma_quaternion,
)
from .errors import (
    DegenerateMetricError,
    InvalidParameterError,
    NotApplicableError,
    OutOfDomainError,
    SingularExponentError,
)

EPS_DEGENERATE = 1e-12
OVERFLOW_LIMIT = 1e300
HYPOTHESIS_RTOL = 1e-12


class TerminationReason(str, Enum):
    HORIZON = "horizon"
    DEGENERATE = "degenerate"
    OVERFLOW = "overflow"


@dataclass(frozen=True)
class FlowParams:
    family: Family
    n: int
    rho: float = 0.0
    dt: float = 1e-3
    t_end: float = 1.0
    record_every: int = 10

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.n < 1:
            raise InvalidParameterError("n must be positive")
        if self.dt <= 0.0:
            raise InvalidParameterError("dt must be positive")
        if self.t_end < 0.0:
            raise InvalidParameterError("t_end must be nonnegative")
        if self.t_end > 0.0 and self.dt > self.t_end:
            raise InvalidParameterError("dt must not exceed t_end")
        if self.record_every < 1:
            raise InvalidParameterError("record_every must be positive")
        if not np.isfinite([self.rho, self.dt, self.t_end]).all():
            raise InvalidParameterError("flow parameters must be finite")
        bound = 1.0 / (2.0 * (self.dim - 1))
        if self.rho >= bound:
            warnings.warn(
                f"rho = {self.rho} is at or above the short-time existence "
                f"threshold 1/(2(dim-1)) = {bound:g}; formulas are evaluated anyway",
                stacklevel=2,
            )

    @property
    def dim(self) -> int:
        return family_dim(self.family, self.n)


@dataclass(frozen=True)
class ClosedFormCoeffs:
    b_or_c: float
    vector_exponent: float
    center_exponent: float


@dataclass
class Trajectory:
    family: Family
    n: int
    rho: float
    times: np.ndarray  # (n_samples,)
    states: np.ndarray  # (n_samples, dim), diagonal metric components
    terminated_reason: TerminationReason
    invariant_ledger: dict[str, float] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def to_csv(self) -> str:
        """Header t,g_1,...,g_dim; 17 significant digits (round-trip exact)."""
        buf = io.StringIO()
        buf.write("t," + ",".join(f"g_{i + 1}" for i in range(self.dim)) + "\n")
        for t, row in zip(self.times, self.states):
            buf.write(",".join(format(x, ".17g") for x in (t, *row)) + "\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, family: Family, n: int, rho: float,
                 terminated_reason: TerminationReason = TerminationReason.HORIZON) -> "Trajectory":
        lines = [ln for ln in text.strip().splitlines() if ln]
        header = lines[0].split(",")
        if header[0] != "t" or not all(h.startswith("g_") for h in header[1:]):
            raise InvalidParameterError("bad trajectory CSV header")
        rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
        return cls(
            family=Family(family), n=n, rho=rho,
            times=rows[:, 0], states=rows[:, 1:],
            terminated_reason=terminated_reason,
        )


def rb_rhs_general(spec: LieAlgebraSpec, metric: MetricState, rho: float) -> np.ndarray:
    """-2 Ric(g) + 2 rho R(g) g for an arbitrary positive-definite metric."""
    ric = ricci_general(spec, metric)
    scal = float(np.einsum("ij,ij->", metric.inverse, ric))
    return -2.0 * ric + (2.0 * rho * scal) * metric.g


def rhs_diagonal(family: Family, g, n: int, rho: float) -> np.ndarray:
    """Time derivative of the diagonal components under the reduced system.

    Built from the same specialized Ricci/scalar terms, so at rho = 0 this is
    bitwise equal to -2 * (diagonal Ricci).
    """
    family = Family(family)
    g = np.asarray(g, dtype=float)
    r = ricci_specialized_diag(family, g, n)
    scal = scalar_specialized(family, g, n)
    return -2.0 * r + (2.0 * rho * scal) * g


def integrate(params: FlowParams, g0) -> Trajectory:
    """Classical fixed-step RK4 for the diagonal flow system."""
    g0 = np.asarray(g0, dtype=float)
    if g0.shape != (params.dim,):
        raise InvalidParameterError(f"g0 must have length {params.dim}")
    if np.any(g0 <= 0.0):
        raise DegenerateMetricError("g0 has a nonpositive component")

    fam, n, rho, dt = params.family, params.n, params.rho, params.dt
    n_steps = int(round(params.t_end / dt)) if params.t_end > 0.0 else 0

    times = [0.0]
    states = [g0.copy()]
    g = g0.copy()
    reason = TerminationReason.HORIZON

    def ok(state: np.ndarray) -> bool:
        return bool(np.all(state > EPS_DEGENERATE) and np.all(state < OVERFLOW_LIMIT)
                    and np.isfinite(state).all())

    for step in range(1, n_steps + 1):
        k1 = rhs_diagonal(fam, g, n, rho)
        g2 = g + 0.5 * dt * k1
        if not ok(g2):
            reason = _failure_reason(g2)
            break
        k2 = rhs_diagonal(fam, g2, n, rho)
        g3 = g + 0.5 * dt * k2
        if not ok(g3):
            reason = _failure_reason(g3)
            break
        k3 = rhs_diagonal(fam, g3, n, rho)
        g4 = g + dt * k3
        if not ok(g4):
            reason = _failure_reason(g4)
            break
        k4 = rhs_diagonal(fam, g4, n, rho)
        g = g + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not ok(g):
            reason = _failure_reason(g)
            break
        if step % params.record_every == 0 or step == n_steps:
            times.append(step * dt)
            states.append(g.copy())

    traj = Trajectory(
        family=fam, n=n, rho=rho,
        times=np.array(times), states=np.array(states),
        terminated_reason=reason,
    )
    traj.invariant_ledger = invariant_drift(traj)
    return traj


def _failure_reason(state: np.ndarray) -> TerminationReason:
    if np.any(~np.isfinite(state)) or np.any(np.abs(state) >= OVERFLOW_LIMIT):
        return TerminationReason.OVERFLOW
    return TerminationReason.DEGENERATE


def closed_form_coeffs(family: Family, g0, n: int, rho: float) -> ClosedFormCoeffs:
    """Constants of the exact solutions, after checking their hypotheses."""
    family = Family(family)
    g0 = np.asarray(g0, dtype=float)
    if g0.shape != (family_dim(family, n),):
        raise InvalidParameterError("g0 has the wrong length")
    if np.any(g0 <= 0.0):
        raise DegenerateMetricError("g0 has a nonpositive component")
    if family is Family.HEISENBERG:
        products = g0[:n] * g0[n : 2 * n]
        if np.any(np.abs(products - products[0]) > HYPOTHESIS_RTOL * products[0]):
            raise NotApplicableError(
                "exact solution needs g_i(0) g_{n+i}(0) constant across i"
            )
        denom = n + 2 - n * rho
        if denom == 0.0:
            raise SingularExponentError("exponent denominator n+2-n*rho vanishes")
        b = denom * g0[2 * n] / products[0]
        return ClosedFormCoeffs(
            b_or_c=float(b),
            vector_exponent=(1.0 - n * rho) / denom,
            center_exponent=(n + n * rho) / (n * rho - n - 2.0),
        )
    if np.any(np.abs(g0[: 4 * n] - g0[0]) > HYPOTHESIS_RTOL * g0[0]) or np.any(
        np.abs(g0[4 * n :] - g0[4 * n]) > HYPOTHESIS_RTOL * g0[4 * n]
    ):
        raise NotApplicableError(
            "exact solution needs equal non-center components and equal center components"
        )
    denom = 6.0 + 2 * n - 6 * n * rho
    if denom == 0.0:
        raise SingularExponentError("exponent denominator 6+2n-6n*rho vanishes")
    c = g0[4 * n] / g0[0] ** 2 * denom
    return ClosedFormCoeffs(
        b_or_c=float(c),
        vector_exponent=3.0 * (1.0 - 2 * n * rho) / denom,
        center_exponent=-n * (1.0 + 3 * rho) / (3.0 + n - 3 * n * rho),
    )


def closed_form(family: Family, g0, n: int, rho: float, t: float) -> np.ndarray:
    """Exact diagonal solution at time t, under the admissibility hypotheses on g0."""
    family = Family(family)
    g0 = np.asarray(g0, dtype=float)
    coeffs = closed_form_coeffs(family, g0, n, rho)
    base = 1.0 + coeffs.b_or_c * t
    if base <= 0.0:
        raise OutOfDomainError(f"1 + {coeffs.b_or_c:g} * t is nonpositive at t = {t:g}")
    out = np.empty_like(g0)
    if family is Family.HEISENBERG:
        out[: 2 * n] = g0[: 2 * n] * base**coeffs.vector_exponent
        out[2 * n] = g0[2 * n] * base**coeffs.center_exponent
    else:
        out[: 4 * n] = g0[0] * base**coeffs.vector_exponent
        out[4 * n :] = g0[4 * n] * base**coeffs.center_exponent
    return out


def conserved_quantities(family: Family, n: int, rho: float, g) -> dict[str, float]:
    """Ratio invariants A_i (Heisenberg only) and the product invariant."""
    family = Family(family)
    g = np.asarray(g, dtype=float)
    if g.shape != (family_dim(family, n),):
        raise InvalidParameterError("metric vector has the wrong length")
    if np.any(g <= 0.0):
        raise DegenerateMetricError("metric vector has a nonpositive component")
    out: dict[str, float] = {}
    if family is Family.HEISENBERG:
        if rho == -1.0:
            raise SingularExponentError("product invariant undefined at rho = -1")
        for i in range(n):
            out[f"ratio_{i + 1}"] = float(g[i] / g[n + i])
        expo = (1.0 - n * rho) / (1.0 + rho)
        out["product"] = float(np.prod(g[:n]) * g[2 * n] ** expo)
    else:
        if rho == -1.0 / 3.0:
            raise SingularExponentError("product invariant undefined at rho = -1/3")
        expo = 2.0 * (1.0 - 2 * n * rho) / (1.0 + 3 * rho)
        out["product"] = float(np.prod(g[: 4 * n]) * np.prod(g[4 * n :]) ** expo)
    return out


def invariant_drift(traj: Trajectory) -> dict[str, float]:
    """Max relative drift of each conserved quantity along the samples."""
    try:
        ref = conserved_quantities(traj.family, traj.n, traj.rho, traj.states[0])
    except SingularExponentError:
        return {}
    drift = {k: 0.0 for k in ref}
    for row in traj.states[1:]:
        cur = conserved_quantities(traj.family, traj.n, traj.rho, row)
        for k, v in cur.items():
            drift[k] = max(drift[k], abs(v - ref[k]) / max(abs(ref[k]), 1e-300))
    return drift


def center_growth_bound(family: Family, n: int, traj: Trajectory,
                        sigma0: float | None = None) -> dict:
    """Check g_center(t) >= 1/(Sigma(0) t + g_center(0)^-1) along a trajectory.

    Valid for rho < 0.  Also reports the trapezoid running integral of each
    center component, which is monotonically growing within the horizon.
    """
    family = Family(family)
    if traj.rho >= 0.0:
        raise NotApplicableError("the center lower bound requires rho < 0")
    g0 = traj.states[0]
    if family is Family.HEISENBERG:
        sigmas = [sigma_heisenberg(g0, n) if sigma0 is None else sigma0]
        centers = [2 * n]
    else:
        _, s1, s2, s3 = sigma_quaternion(g0, n)
        sigmas = [s1, s2, s3] if sigma0 is None else [sigma0] * 3
        centers = [4 * n, 4 * n + 1, 4 * n + 2]

    slacks = []
    integrals = []
    for sig, idx in zip(sigmas, centers):
        comp = traj.states[:, idx]
        bound = 1.0 / (sig * traj.times + 1.0 / comp[0])
        slacks.append(float((comp - bound).min()))
        integrals.append(np.concatenate(
            [[0.0], np.cumsum(0.5 * np.diff(traj.times) * (comp[1:] + comp[:-1]))]
        ))
    return {
        "min_slack": min(slacks),
        "slack_per_center": slacks,
        "bound_holds": min(slacks) >= 0.0,
        "running_integral": integrals,
        "integral_monotone": all(bool(np.all(np.diff(gi) > 0.0)) for gi in integrals),
    }
