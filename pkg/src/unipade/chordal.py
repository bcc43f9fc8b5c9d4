"""Chordal metric on the extended plane and coefficient rationalization."""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import PipelineError, PreconditionError
from .gaussian import GaussianRational
from .poly import EXACT, FLOAT, Polynomial
from .rational import INF, RationalFunction, is_infinite

__all__ = ["chi", "chi_array", "sup_chordal", "sup_chordal_values", "rationalize", "evaluate_on"]


def chi(a, b) -> float:
    """Chordal distance; ``INF`` (or any infinite complex) is the point at infinity."""
    a_inf, b_inf = is_infinite(a), is_infinite(b)
    if a_inf and b_inf:
        return 0.0
    if a_inf:
        return 1.0 / math.sqrt(1.0 + abs(complex(b)) ** 2)
    if b_inf:
        return 1.0 / math.sqrt(1.0 + abs(complex(a)) ** 2)
    a, b = complex(a), complex(b)
    return abs(a - b) / (math.sqrt(1.0 + abs(a) ** 2) * math.sqrt(1.0 + abs(b) ** 2))


def chi_array(a, b) -> np.ndarray:
    """Elementwise chordal distance between complex arrays with ``inf`` entries."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a_inf = np.isinf(a)
    b_inf = np.isinf(b)
    out = np.zeros(np.broadcast(a, b).shape)
    with np.errstate(all="ignore"):
        fin = ~a_inf & ~b_inf
        aa, bb = np.broadcast_to(a, out.shape), np.broadcast_to(b, out.shape)
        fin = np.broadcast_to(fin, out.shape)
        out[fin] = np.abs(aa[fin] - bb[fin]) / (np.sqrt(1 + np.abs(aa[fin]) ** 2) * np.sqrt(1 + np.abs(bb[fin]) ** 2))
        only_a = np.broadcast_to(a_inf & ~b_inf, out.shape)
        out[only_a] = 1 / np.sqrt(1 + np.abs(bb[only_a]) ** 2)
        only_b = np.broadcast_to(b_inf & ~a_inf, out.shape)
        out[only_b] = 1 / np.sqrt(1 + np.abs(aa[only_b]) ** 2)
    return out


def sup_chordal_values(a, b) -> float:
    if np.size(a) == 0:
        raise PreconditionError("sup over an empty sample")
    return float(np.max(chi_array(a, b)))


def evaluate_on(F, pts: np.ndarray, tau_pole: float = 1e-12) -> np.ndarray:
    """Evaluate a rational function, polynomial or scalar callable on points."""
    if isinstance(F, RationalFunction):
        return F.eval_array(pts, tau_pole)
    if isinstance(F, Polynomial):
        return F.eval_array(pts)
    vals = []
    for z in pts:
        v = F(complex(z))
        vals.append(complex(math.inf, 0) if is_infinite(v) else complex(v))
    return np.array(vals, dtype=complex)


def sup_chordal(F, G, K, tau_pole: float = 1e-12) -> float:
    """max over the sample of chi(F(z), G(z))."""
    pts = np.asarray(getattr(K, "points", K), dtype=complex)
    if pts.size == 0:
        raise PreconditionError("sup_chordal needs a nonempty sample")
    return sup_chordal_values(evaluate_on(F, pts, tau_pole), evaluate_on(G, pts, tau_pole))


def _dyadic(x: float, k: int) -> Fraction:
    return Fraction(round(Fraction(x) * (1 << k)), 1 << k)


def _round_poly(P: Polynomial, k: int) -> Polynomial:
    return Polynomial(tuple(GaussianRational.from_parts(_dyadic(c.real, k), _dyadic(c.imag, k))
                            for c in P.coeffs), EXACT)


def rationalize(q: RationalFunction, K, eps: float, k_max: int = 256,
                tau_pole: float = 1e-12) -> tuple[RationalFunction, int]:
    """Round coefficients to the dyadic lattice 2^-k, raising k until the
    sup chordal distance to ``q`` over the sample drops below ``eps``.

    Returns the exact-mode function (reduced by exact gcd) and the k used.
    """
    if not eps > 0:
        raise PreconditionError("eps must be positive")
    if q.mode != FLOAT:
        return q, 0
    pts = np.asarray(getattr(K, "points", K), dtype=complex)
    ref = q.eval_array(pts, tau_pole)
    best = math.inf
    for k in range(0, k_max + 1):
        den = _round_poly(q.den, k)
        if den.is_zero():
            continue
        cand = RationalFunction(_round_poly(q.num, k), den)
        err = sup_chordal_values(cand.eval_array(pts, tau_pole), ref)
        best = min(best, err)
        if err < eps:
            return cand, k
    raise PipelineError(f"rationalize: eps={eps} not reached with k <= {k_max}",
                        detail={"best": best})
