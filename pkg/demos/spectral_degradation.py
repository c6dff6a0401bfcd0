"""How the flow degrades the Heisenberg-type condition.

At t = 0 every j(Z) with |Z| = 1 satisfies j(Z)^2 = -Id, the hallmark of a
Heisenberg-type algebra.  Along the flow the single eigenvalue of j(Z)^2
shrinks by an explicit factor, so the metric algebra stays Heisenberg-like
but stops being of Heisenberg type.  This demo prints the observed and
predicted factors and checks the five inner-product identities.
"""
import numpy as np

from nilflow import (
    Family,
    MetricState,
    build_group,
    classify,
    closed_form,
    spectrum,
    theoretical_p_factor,
    verify_p8,
)

for family, n in ((Family.HEISENBERG, 1), (Family.QUATERNION, 1)):
    spec = build_group(family, n)
    z = np.zeros(spec.dim)
    z[spec.center_indices[0]] = 1.0
    print(f"=== {family.value} n={n} ===")
    print(f"{'t':>4}  {'P observed':>12}  {'P predicted':>12}  verdict")
    for t in (0.0, 0.5, 1.0, 2.0):
        g_t = closed_form(family, np.ones(spec.dim), n, 0.0, t)
        metric = MetricState.from_diag(g_t, t=t)
        rep = spectrum(spec, metric, z)
        p_pred = theoretical_p_factor(family, n, 0.0, t)
        print(f"{t:4.1f}  {rep.p_factor_observed:12.8f}  {p_pred:12.8f}  "
              f"{rep.verdict.value}")

    metric0 = MetricState.from_diag(np.ones(spec.dim))
    metric1 = MetricState.from_diag(closed_form(family, np.ones(spec.dim), n, 0.0, 1.0),
                                    t=1.0)
    print("classification at t=0:", classify(spec, metric0).value)
    print("classification at t=1:", classify(spec, metric1).value)

    p1 = theoretical_p_factor(family, n, 0.0, 1.0)
    residuals = verify_p8(spec, metric1, p1, samples=100, seed=1)
    print("identity residuals at t=1 (P = {:.6f}):".format(p1))
    for name in ("cross_product", "polarized", "norm", "anticommutator", "bracket"):
        print(f"  {name:<14} {residuals[name]:.2e}")
    print()
