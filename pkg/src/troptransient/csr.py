"""CSR triple of a matrix and the periodic sequence C S^t R."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import _kernel as K
from .core import NEG_INF, TropMatrix, mat_mul, mat_pow, scalar_mul
from .graph import DigraphProfile, profile, require_irreducible


@dataclass(frozen=True)
class CsrTriple:
    C: TropMatrix
    S: TropMatrix
    R: TropMatrix
    sigma: int
    lam: object
    critical_nodes: frozenset
    # star of the sigma-th normalized power; C and R are masked copies of it
    M: TropMatrix | None = field(default=None, repr=False, compare=False)


def _mask(m: TropMatrix, keep_rows=None, keep_cols=None) -> TropMatrix:
    rows = []
    for i, row in enumerate(m.entries):
        if keep_rows is not None and i not in keep_rows:
            rows.append((NEG_INF,) * m.cols)
            continue
        if keep_cols is None:
            rows.append(row)
        else:
            rows.append(tuple(x if j in keep_cols else NEG_INF for j, x in enumerate(row)))
    return TropMatrix(m.rows, m.cols, tuple(rows))


def csr_from_profile(a: TropMatrix, prof: DigraphProfile) -> CsrTriple:
    lam = prof.lam
    sigma = prof.critical_cyclicity
    crit = prof.critical_nodes
    scale = K.common_scale(a, lam)
    ahat = K.shift(K.encode(a, scale), -int(lam * scale))
    power = K.identity(a.rows)
    for _ in range(sigma):
        power = K.mul(power, ahat)
    m = K.decode(K.star(power), scale)
    norm = scalar_mul(-lam, a)
    s_rows = tuple(
        tuple(
            x if (i, j) in prof.critical_arcs else NEG_INF for j, x in enumerate(row)
        )
        for i, row in enumerate(norm.entries)
    )
    return CsrTriple(
        C=_mask(m, keep_cols=crit),
        S=TropMatrix(a.rows, a.cols, s_rows),
        R=_mask(m, keep_rows=crit),
        sigma=sigma,
        lam=lam,
        critical_nodes=crit,
        M=m,
    )


def csr_of(a: TropMatrix) -> CsrTriple:
    require_irreducible(a)
    return csr_from_profile(a, profile(a))


def reduced_exponent(t: int, sigma: int) -> int:
    """Exponent in [1, sigma] with the same residue as t (t >= 1); 0 stays 0."""
    if t < 0:
        raise ValueError("negative exponent")
    if t == 0:
        return 0
    return (t - 1) % sigma + 1


def csr_term(triple: CsrTriple, t: int) -> TropMatrix:
    """C S^t R of the normalized matrix."""
    e = reduced_exponent(t, triple.sigma)
    return mat_mul(mat_mul(triple.C, mat_pow(triple.S, e)), triple.R)


def csr_term_unreduced(triple: CsrTriple, t: int) -> TropMatrix:
    return mat_mul(mat_mul(triple.C, mat_pow(triple.S, t)), triple.R)


def scaled_csr_term(triple: CsrTriple, t: int) -> TropMatrix:
    """lambda^t (x) C S^t R, the term that approximates A^t itself."""
    return scalar_mul(triple.lam * t, csr_term(triple, t))
