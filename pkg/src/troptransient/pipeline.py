"""Per-matrix verdicts: measure every transient and compare it with every bound."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bounds import BoundReport, t1_bounds, t2_bounds
from .core import NEG_INF, TropMatrix, fmt, scalar_mul
from .errors import DegenerateGapError
from .graph import DigraphProfile, profile, require_irreducible
from .schemes import SchemeChoice, weak_expansion
from .thresholds import ThresholdQuery, walk_reduction_threshold
from .transients import TransientEngine

FORMAT_VERSION = 1


@dataclass
class Check:
    """One bound or identity compared against a measured quantity."""

    name: str
    target: str
    measured: object
    bound: object
    applicable: bool
    passed: bool | None
    reason: str = ""
    inputs: dict = field(default_factory=dict)


@dataclass
class VerdictRow:
    matrix_id: int
    scheme: str
    d: int
    gamma: int
    g_hat: int
    sigma_hat: int
    sigma: int
    r: int | None
    lambda_a: object
    lambda_b: object
    T: int
    T1: int
    T2: int
    certified: bool
    removed: tuple
    threshold: object
    checks: list

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.passed is False]

    @property
    def anomalous(self) -> bool:
        return bool(self.failures)


def _from_report(rep: BoundReport, target: str, measured: int) -> Check:
    return Check(
        rep.name,
        target,
        measured,
        rep.value,
        rep.applicable,
        rep.admits(measured),
        rep.reason,
        rep.inputs,
    )


def critical_twr_values(a: TropMatrix, prof: DigraphProfile) -> list:
    """Walk reduction thresholds of each critical component, modulus its cyclicity."""
    norm = scalar_mul(-prof.lam, a)
    crit = prof.critical
    out = []
    for comp in prof.critical_components:
        sigma = prof.critical_component_cyclicity(comp)
        out.append(walk_reduction_threshold(ThresholdQuery(norm, crit.restrict(comp), sigma)))
    return out


def analyze(
    a: TropMatrix,
    schemes=tuple(SchemeChoice),
    factorization=None,
    matrix_id: int = 0,
    horizon: int | None = None,
    engine: TransientEngine | None = None,
) -> list:
    require_irreducible(a)
    prof = engine.prof if engine is not None else profile(a)
    engine = engine or TransientEngine(a, prof, horizon)
    t_res = engine.T()
    twr = critical_twr_values(a, prof)
    rows = []
    d, gamma = prof.node_count, prof.cyclicity
    for scheme in schemes:
        exp = weak_expansion(a, scheme, prof)
        t1 = engine.T1(exp)
        t2 = engine.T2(exp)
        checks = []
        b1 = t1_bounds(a, scheme, factorization, prof, exp)
        checks += [_from_report(r, "T1", t1.value) for r in b1]
        try:
            b2 = t2_bounds(a, exp, factorization, twr, prof)
        except DegenerateGapError as exc:
            b2 = [BoundReport("T2-ratio", None, {}, False, str(exc))]
        checks += [_from_report(r, "T2", t2.value) for r in b2]
        checks.append(
            Check("T<=max(T1,T2)", "T", t_res.value, max(t1.value, t2.value), True,
                  t_res.value <= max(t1.value, t2.value))
        )
        best1 = [r.value for r in b1 if r.applicable]
        best2 = [r.value for r in b2 if r.applicable]
        if best1 and best2:
            cap = max(min(best1), min(best2))
            checks.append(Check("T<=max(T1bound,T2bound)", "T", t_res.value, cap, True, t_res.value <= cap))
        by_name = {r.name: r for r in b2}
        sch, b1r = by_name.get("T2TcrSchwarz"), by_name.get("T2Bound1")
        if sch is not None and sch.applicable and b1r.applicable:
            checks.append(
                Check("T2TcrSchwarz<=T2Bound1", "bound", sch.value, b1r.value, True, sch.value <= b1r.value)
            )
        if d < 2 * gamma:
            lo = d % gamma
            ok = all(engine.matches_csr(t) for t in range(lo, lo + 4 * gamma + 1))
            checks.append(Check("small-dimension CSR", "A^t", lo, lo + 4 * gamma, True, ok))
        lam_b = next((r.inputs.get("lambda_B") for r in b2 if "lambda_B" in r.inputs), None)
        rows.append(
            VerdictRow(
                matrix_id=matrix_id,
                scheme=scheme.value,
                d=d,
                gamma=gamma,
                g_hat=prof.max_critical_girth,
                sigma_hat=prof.max_critical_cyclicity,
                sigma=prof.critical_cyclicity,
                r=factorization.rank_bound if factorization is not None else None,
                lambda_a=prof.lam,
                lambda_b=lam_b,
                T=t_res.value,
                T1=t1.value,
                T2=t2.value,
                certified=t_res.certified and t1.certified and t2.certified,
                removed=tuple(sorted(exp.removed_nodes)),
                threshold=exp.threshold,
                checks=checks,
            )
        )
    return rows


def value_text(x) -> str:
    if x is None:
        return ""
    if x is NEG_INF or hasattr(x, "denominator"):
        return fmt(x)
    return str(x)
