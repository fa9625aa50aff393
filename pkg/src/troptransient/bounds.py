"""Closed-form upper bounds on transients and thresholds, evaluated exactly."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import NEG_INF, TropMatrix
from .errors import DegenerateGapError, DomainError
from .graph import (
    DigraphProfile,
    longest_elementary_path,
    max_cycle_mean,
    profile,
    require_irreducible,
)
from .schemes import SchemeChoice, WeakExpansion


# ---------------------------------------------------------------------------
# classical numbers


def _check_int(name, x, lo=1):
    if not isinstance(x, int) or isinstance(x, bool) or x < lo:
        raise DomainError(f"{name} must be an integer >= {lo}, got {x!r}")


def wielandt(d: int) -> int:
    _check_int("d", d)
    return 0 if d == 1 else (d - 1) ** 2 + 1


def dulmage_mendelsohn(g: int, d: int) -> int:
    _check_int("d", d)
    _check_int("girth", g)
    if g > d:
        raise DomainError(f"girth {g} exceeds dimension {d}")
    return g * (d - 2) + d


def schwarz(gamma: int, d: int) -> int:
    _check_int("d", d)
    _check_int("gamma", gamma)
    if gamma > d:
        raise DomainError(f"cyclicity {gamma} exceeds dimension {d}")
    return gamma * wielandt(d // gamma) + d % gamma


def kim(gamma: int, g: int, d: int) -> int:
    _check_int("d", d)
    _check_int("gamma", gamma)
    _check_int("girth", g)
    return g * (d // gamma - 2) + d


# ---------------------------------------------------------------------------
# cycle removal / walk reduction thresholds


def tcr_linear(sigma: int, d: int, d1: int) -> int:
    """Any subgraph with d1 nodes, any modulus."""
    return sigma * d + d - d1 - 1


def tcr_linear_cyclic(sigma: int, d: int, gamma: int) -> int:
    """Strongly connected subgraph of cyclicity sigma in an irreducible graph of cyclicity gamma."""
    return sigma * (d // gamma) + d - sigma - 1


def tcr_cycle(length: int, d: int, gamma: int) -> int:
    """A cycle Z with modulus l(Z)."""
    return length * (d // gamma) + d - length - 1


def tcr_hamiltonian(d: int) -> int:
    """A cycle of length d with modulus d."""
    return d * d - d + 1


def tcr_long_cycle(d: int, gamma: int) -> int:
    """An elementary cycle of length gamma*floor(d/gamma), same modulus."""
    m = d // gamma
    return gamma * (m - 1) ** 2 + gamma + d - 1


def twr_rank_general(r: int, l: int, related_size: int) -> int:
    return 1 + r * (l + 1) - related_size


def twr_rank_cyclic(l: int, r: int, gamma: int, related_circumference: int) -> int:
    return l * (r // gamma) + r - related_circumference + gamma


def twr_rank_girth(r: int) -> int:
    return wielandt(r) + r + 1


def twr_rank_girth_cyclic(r: int, gamma: int) -> int:
    return gamma * wielandt(r // gamma) + r + gamma


# ---------------------------------------------------------------------------
# reports


@dataclass
class BoundReport:
    name: str
    value: object
    inputs: dict = field(default_factory=dict)
    applicable: bool = True
    reason: str = ""

    def admits(self, measured: int) -> bool | None:
        """Literal comparison measured <= value; None when the bound does not apply."""
        if not self.applicable:
            return None
        return measured <= self.value


def _inapplicable(name, inputs, reason):
    return BoundReport(name, None, dict(inputs), False, reason)


def _report(name, inputs, fn, *args):
    try:
        return BoundReport(name, fn(*args), dict(inputs))
    except DomainError as exc:
        return _inapplicable(name, inputs, str(exc))


def structural_inputs(prof: DigraphProfile, factorization=None) -> dict:
    return {
        "d": prof.node_count,
        "gamma": prof.cyclicity,
        "g_hat": prof.max_critical_girth,
        "sigma_hat": prof.max_critical_cyclicity,
        "r": factorization.rank_bound if factorization is not None else None,
    }


def t1_bounds(
    a: TropMatrix,
    scheme: SchemeChoice,
    factorization=None,
    prof: DigraphProfile | None = None,
    exp: WeakExpansion | None = None,
) -> list:
    if prof is None:
        require_irreducible(a)
        prof = profile(a)
    inp = structural_inputs(prof, factorization)
    d, gamma, g = inp["d"], inp["gamma"], inp["g_hat"]
    out = []
    if scheme in (SchemeChoice.NACHTIGALL, SchemeChoice.HARTMANN_ARGUELLES):
        out.append(_report("Wi(d)", inp, wielandt, d))
        out.append(_report("DM(g,d)", inp, dulmage_mendelsohn, g, d))
        out.append(_report("Sch(gamma,d)", inp, schwarz, gamma, d))
        out.append(_report("Kim(gamma,g,d)", inp, kim, gamma, g, d))
        rank_names = ["Wi(r)+1", "DM(g,r)+1", "Sch(gamma,r)+1", "Kim(gamma,g,r)+1"]
        if scheme is not SchemeChoice.NACHTIGALL:
            for name in rank_names:
                out.append(_inapplicable(name, inp, "rank bounds are proved for the Nachtigall scheme only"))
        elif factorization is None:
            for name in rank_names:
                out.append(_inapplicable(name, inp, "no factorization supplied"))
        else:
            r = inp["r"]
            plus1 = lambda fn: (lambda *args: fn(*args) + 1)  # noqa: E731
            out.append(_report("Wi(r)+1", inp, plus1(wielandt), r))
            out.append(_report("DM(g,r)+1", inp, plus1(dulmage_mendelsohn), g, r))
            out.append(_report("Sch(gamma,r)+1", inp, plus1(schwarz), gamma, r))
            out.append(_report("Kim(gamma,g,r)+1", inp, plus1(kim), gamma, g, r))
        out.extend(_t1_tcr_instances(prof, inp))
    elif scheme is SchemeChoice.CYCLE_THRESHOLD:
        m = d // gamma
        out.append(BoundReport("CT(gamma,d)", gamma * (m - 1) ** 2 + d + gamma, dict(inp)))
        if exp is not None:
            out.append(_t1_ct_instance(a, prof, inp, exp))
    else:
        raise ValueError(scheme)
    return out


def _t1_tcr_instances(prof: DigraphProfile, inp: dict) -> list:
    """Instantiate T1 <= max_l (T_cr - sigma_l + 1 + ep) with closed-form T_cr bounds."""
    from .graph import component_girth
    from .thresholds import exploration_penalty_subgraph

    d, gamma = inp["d"], inp["gamma"]
    crit = prof.critical
    comp_vals_gen = []
    comp_vals_lin = []
    cyc_vals = []
    for comp in prof.critical_components:
        sub = crit.restrict(comp)
        sigma = prof.critical_component_cyclicity(comp)
        ep = exploration_penalty_subgraph(sub, sigma)
        comp_vals_gen.append(tcr_linear_cyclic(sigma, d, gamma) - sigma + 1 + ep)
        comp_vals_lin.append(tcr_linear(sigma, d, len(comp)) - sigma + 1 + ep)
        girth = component_girth(comp, crit.arcs)
        cyc_vals.append(tcr_cycle(girth, d, gamma) - girth + 1)
    return [
        BoundReport("t1B:TcRLinGen", max(comp_vals_gen), dict(inp)),
        BoundReport("t1B:TcRLin", max(comp_vals_lin), dict(inp)),
        BoundReport("t1B:girth-cycles", max(cyc_vals), dict(inp)),
    ]


def _t1_ct_instance(a, prof, inp, exp) -> BoundReport:
    """max over cycles Z of the removed subgraph of (closed-form T_cr(Z) + 1)."""
    from .graph import cycles_of, restrict_arcs, arc_set

    d, gamma = inp["d"], inp["gamma"]
    sub_arcs = restrict_arcs(arc_set(a), exp.removed_nodes)
    best = None
    for cyc in cycles_of(exp.removed_nodes, sub_arcs):
        length = len(cyc)
        cands = [tcr_cycle(length, d, gamma), tcr_linear(length, d, length)]
        if length == d:
            cands.append(tcr_hamiltonian(d))
        if length == gamma * (d // gamma):
            cands.append(tcr_long_cycle(d, gamma))
        v = min(cands) + 1
        best = v if best is None else max(best, v)
    return BoundReport("t1CT:cycles", best, dict(inp))


def weight_inputs(a: TropMatrix, prof: DigraphProfile, b: TropMatrix) -> dict:
    lam_b = max_cycle_mean(b)
    fin_a = a.finite_values()
    fin_b = b.finite_values()
    return {
        "lambda_A": prof.lam,
        "lambda_B": lam_b,
        "min_a": min(fin_a),
        "max_b": max(fin_b) if fin_b else NEG_INF,
        "cd_B": longest_elementary_path(b),
    }


def ratio_bound(leading, w: dict):
    """(leading * (lambda_A - min a) + cd_B * (max b - lambda_B)) / (lambda_A - lambda_B)."""
    lam_a, lam_b = w["lambda_A"], w["lambda_B"]
    gap = lam_a - lam_b
    if gap == 0:
        raise DegenerateGapError("lambda(A) == lambda(B); ratio bounds undefined")
    num = Fraction(leading) * (lam_a - w["min_a"]) + w["cd_B"] * (w["max_b"] - lam_b)
    return num / gap


def t2_bounds(
    a: TropMatrix,
    exp: WeakExpansion,
    factorization=None,
    twr_values=None,
    prof: DigraphProfile | None = None,
) -> list:
    if prof is None:
        require_irreducible(a)
        prof = profile(a)
    inp = structural_inputs(prof, factorization)
    inp.update(weight_inputs(a, prof, exp.b))
    d, gamma = inp["d"], inp["gamma"]
    s_hat, r = inp["sigma_hat"], inp["r"]
    names = [
        "T2Bound1",
        "T2Bound2",
        "T2TcrSchwarz",
        "T2TcrDM",
        "T2TcrRankSchwarz",
        "T2TcrRankDM",
        "T2Twr",
    ]
    if inp["lambda_B"] is NEG_INF:
        out = [BoundReport("cd_B+1", inp["cd_B"] + 1, dict(inp))]
        out += [_inapplicable(n, inp, "lambda(B) = -inf") for n in names]
        return out
    if inp["lambda_B"] == inp["lambda_A"]:
        raise DegenerateGapError("lambda(A) == lambda(B); ratio bounds undefined")
    m = d // gamma
    leading = {
        "T2Bound1": d * d - d + 1,
        "T2Bound2": s_hat * (d - 1) + d - 1,
        "T2TcrSchwarz": gamma * wielandt(m) + d - 1,
        "T2TcrDM": s_hat * (m - 1) + d - 1,
    }
    out = [_inapplicable("cd_B+1", inp, "lambda(B) is finite")]
    for name in names[:4]:
        out.append(BoundReport(name, ratio_bound(leading[name], inp), dict(inp)))
    if r is None:
        out.append(_inapplicable("T2TcrRankSchwarz", inp, "no factorization supplied"))
        out.append(_inapplicable("T2TcrRankDM", inp, "no factorization supplied"))
    elif r // gamma < 1:
        reason = f"floor(r/gamma) = 0 for r={r}, gamma={gamma}"
        out.append(_inapplicable("T2TcrRankSchwarz", inp, reason))
        out.append(_inapplicable("T2TcrRankDM", inp, reason))
    else:
        lead_rs = gamma * wielandt(r // gamma) + r + gamma
        lead_rd = s_hat * (r // gamma - 1) + r + gamma
        out.append(BoundReport("T2TcrRankSchwarz", ratio_bound(lead_rs, inp), dict(inp)))
        out.append(BoundReport("T2TcrRankDM", ratio_bound(lead_rd, inp), dict(inp)))
    if twr_values:
        inp2 = dict(inp, twr_max=max(twr_values))
        out.append(BoundReport("T2Twr", ratio_bound(max(twr_values), inp), inp2))
    else:
        out.append(_inapplicable("T2Twr", inp, "no walk reduction thresholds supplied"))
    return out


def rank_bound_values(r: int, gamma: int, g: int, s_hat: int) -> dict:
    """Every rank-parameterized closed form at a given r (used for monotonicity checks)."""
    vals = {"Wi(r)+1": wielandt(r) + 1, "Kim(gamma,g,r)+1": kim(gamma, g, r) + 1}
    if g <= r:
        vals["DM(g,r)+1"] = dulmage_mendelsohn(g, r) + 1
    if gamma <= r:
        vals["Sch(gamma,r)+1"] = schwarz(gamma, r) + 1
        vals["twr_iv"] = twr_rank_girth_cyclic(r, gamma)
        vals["T2RankSchwarz-lead"] = gamma * wielandt(r // gamma) + r + gamma
        vals["T2RankDM-lead"] = s_hat * (r // gamma - 1) + r + gamma
    vals["twr_iii"] = twr_rank_girth(r)
    return vals
