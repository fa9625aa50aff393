"""Exact transients T(A), T1(A,B), T2(A,B) by certified iteration.

Everything is evaluated literally for t >= 0, so a transient is 0 exactly
when its property already holds at t = 0.

Certification.  Powers of the normalized matrix are iterated until an exact
repetition; the orbit period must divide sigma, and then T(A) is the first
index of the repetition.  For t >= T(A) the normalized power equals
C S^t R and dominates the normalized B^t, so both T1 and T2 are at most
T(A).  T1 and T2 are therefore read off a scan of t <= T(A), and the scan is
extended one full period past T(A) as a consistency check.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

import numpy as np

from . import _kernel as K
from .core import NEG_INF, TropMatrix
from .csr import CsrTriple, csr_from_profile
from .errors import HorizonError, StructureError
from .graph import DigraphProfile, max_cycle_mean, profile, require_irreducible
from .schemes import WeakExpansion, subordinate
from .thresholds import horizon_multiplier


@dataclass(frozen=True)
class TransientResult:
    value: int
    sigma: int
    certified: bool
    horizon_used: int


def default_horizon(a: TropMatrix, prof: DigraphProfile, mult: int | None = None) -> int:
    """A proven upper bound on T(A) plus a 2*d*sigma window, scaled by the multiplier.

    T(A) <= max(T1, T2) for the Nachtigall expansion, T1 <= Wi(d) and T2 is
    bounded by its ratio bound with cd_B replaced by d - 1.
    """
    from .bounds import wielandt

    d = prof.node_count
    sigma = prof.critical_cyclicity
    mult = horizon_multiplier() if mult is None else mult
    b = subordinate(a, prof.critical_nodes)
    lam_b = max_cycle_mean(b)
    if lam_b is NEG_INF:
        t2 = d
    else:
        lam = prof.lam
        fin = a.finite_values()
        num = (d * d - d + 1) * (lam - min(fin)) + (d - 1) * (max(b.finite_values()) - lam_b)
        t2 = ceil(num / (lam - lam_b))
    return mult * (max(wielandt(d), t2) + 2 * d * sigma)


class TransientEngine:
    """Shared state for measuring all transients of one matrix."""

    def __init__(self, a: TropMatrix, prof: DigraphProfile | None = None, horizon: int | None = None):
        if prof is None:
            require_irreducible(a)
            prof = profile(a)
        self.a = a
        self.prof = prof
        self.sigma = prof.critical_cyclicity
        self.triple: CsrTriple = csr_from_profile(a, prof)
        self.scale = K.common_scale(a, prof.lam)
        self.lam_int = int(prof.lam * self.scale)
        self.ahat = K.shift(K.encode(a, self.scale), -self.lam_int)
        self.horizon = horizon
        self._powers = [K.identity(a.rows)]
        c = K.encode(self.triple.C, self.scale)
        s = K.encode(self.triple.S, self.scale)
        r = K.encode(self.triple.R, self.scale)
        self._csr = []
        sp = K.identity(a.rows)
        for _ in range(self.sigma + 1):
            self._csr.append(K.mul(K.mul(c, sp), r))
            sp = K.mul(sp, s)
        self._t = None
        self._b_cache = {}

    # -- sequences ---------------------------------------------------------

    def power(self, t: int) -> np.ndarray:
        """Normalized A^t (encoded)."""
        while len(self._powers) <= t:
            self._powers.append(K.mul(self._powers[-1], self.ahat))
        return self._powers[t]

    def csr(self, t: int) -> np.ndarray:
        """C S^t R (encoded), reduced by periodicity for t >= 1."""
        if t == 0:
            return self._csr[0]
        return self._csr[(t - 1) % self.sigma + 1]

    def b_powers(self, b: TropMatrix, upto: int) -> list:
        key = b.entries
        bhat = K.shift(K.encode(b, self.scale), -self.lam_int)
        seq = self._b_cache.get(key)
        if seq is None:
            seq = [K.identity(b.rows)]
            self._b_cache[key] = seq
        while len(seq) <= upto:
            seq.append(K.mul(seq[-1], bhat))
        return seq

    def matches_csr(self, t: int) -> bool:
        return np.array_equal(self.power(t), self.csr(t))

    def _horizon(self) -> int:
        if self.horizon is None:
            self.horizon = default_horizon(self.a, self.prof)
        return self.horizon

    # -- transients --------------------------------------------------------

    def T(self) -> TransientResult:
        if self._t is not None:
            return self._t
        horizon = self._horizon()
        sigma = self.sigma
        seen = {}
        t = 0
        while True:
            h = self.power(t).tobytes()
            if h in seen:
                t0 = seen[h]
                period = t - t0
                break
            seen[h] = t
            t += 1
            if t > horizon + sigma:
                raise HorizonError(f"no repetition of normalized powers within {horizon + sigma} steps")
        if sigma % period:
            raise StructureError(f"orbit period {period} does not divide sigma={sigma}")
        value = 0
        for s in range(t0 - 1, -1, -1):
            if not np.array_equal(self.power(s), self.power(s + sigma)):
                value = s + 1
                break
        if value != t0:
            raise StructureError(f"transient {value} differs from orbit start {t0}")
        self._t = TransientResult(value, sigma, True, t)
        return self._t

    def _scan(self, exp: WeakExpansion, violated) -> TransientResult:
        tr = self.T()
        end = tr.value + self.sigma
        bs = self.b_powers(exp.b, end)
        last = -1
        for t in range(end + 1):
            if violated(self.power(t), self.csr(t), bs[t]):
                last = t
        if last >= tr.value:
            raise StructureError("violation beyond T(A), contradicting the periodic regime")
        return TransientResult(last + 1, self.sigma, True, end)

    def T1(self, exp: WeakExpansion) -> TransientResult:
        return self._scan(exp, lambda p, c, b: not np.array_equal(p, np.maximum(c, b)))

    def T2(self, exp: WeakExpansion) -> TransientResult:
        return self._scan(exp, lambda p, c, b: bool((c < b).any()))


def measure_T(a: TropMatrix, horizon: int | None = None) -> TransientResult:
    return TransientEngine(a, horizon=horizon).T()


def measure_T1(a: TropMatrix, exp: WeakExpansion, horizon: int | None = None) -> TransientResult:
    _check_subordinate(a, exp.b)
    return TransientEngine(a, horizon=horizon).T1(exp)


def measure_T2(a: TropMatrix, exp: WeakExpansion, horizon: int | None = None) -> TransientResult:
    _check_subordinate(a, exp.b)
    return TransientEngine(a, horizon=horizon).T2(exp)


def _check_subordinate(a: TropMatrix, b: TropMatrix) -> None:
    if a.shape != b.shape:
        raise ValueError("B must have the shape of A")
    for ra, rb in zip(a.entries, b.entries):
        for x, y in zip(ra, rb):
            if y is not NEG_INF and y != x:
                raise ValueError("B is not subordinate to A")
