"""Pade approximants [f; p/q]_zeta.

Two independent constructions are provided: the Jacobi determinant formula
(cofactor expansion along a polynomial first row) and the linear solve for
the denominator followed by a truncated convolution for the numerator.  In
exact mode they must agree identically, which is how the determinant layout
is guarded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ModeError, NotInDError, PreconditionError
from .gaussian import ONE, ZERO
from .linalg import SingularMatrix, det_exact, det_float, solve_exact
from .poly import EXACT, FLOAT, Polynomial, as_mode, binomial_shift
from .rational import INF, RationalFunction, is_infinite, rat_derivative
from .series import TaylorJet, jet_of_rational

__all__ = [
    "HankelReport",
    "PadeApproximant",
    "hankel_matrix",
    "hankel_det",
    "pade_jacobi",
    "pade_solve",
    "in_E",
    "pade_eval_deriv",
    "verify_prop22",
    "admissible_prop22",
    "unit_disk_probes",
]


@dataclass(frozen=True)
class HankelReport:
    p: int
    q: int
    zeta: object
    det: object
    in_D: bool
    margin: float

    @property
    def mode(self) -> str:
        return EXACT if not isinstance(self.det, complex) else FLOAT


@dataclass(frozen=True)
class PadeApproximant:
    p: int
    q: int
    zeta: object
    A: Polynomial
    B: Polynomial
    source: str
    # same approximant in powers of w = z - zeta (before the shift back)
    local: tuple[Polynomial, Polynomial] | None = None

    @property
    def mode(self) -> str:
        return self.A.mode

    def rational(self) -> RationalFunction:
        """A/B reduced to lowest terms (exact) or monic-normalized (float)."""
        return RationalFunction(self.A, self.B)

    def __call__(self, z, tau_pole: float = 1e-12):
        return pade_eval_deriv(self, 0, z, tau_pole)


def _check_order(jet: TaylorJet, needed: int):
    if jet.order < needed:
        raise PreconditionError(f"jet order {jet.order} < required {needed}")


def hankel_matrix(jet: TaylorJet, p: int, q: int) -> list[list]:
    """q x q matrix with entry (r, c) = a_{p-q+1+r+c}."""
    return [[jet.a(p - q + 1 + r + c) for c in range(q)] for r in range(q)]


def hankel_det(jet: TaylorJet, p: int, q: int, tau_hankel: float = 1e-10) -> HankelReport:
    """Hankel determinant deciding membership in D_{p,q}(zeta).

    Exact mode tests for a nonzero determinant.  Float mode compares |det|
    with ``tau_hankel * scale``, ``scale`` being the largest row 1-norm.
    """
    if p < 0 or q < 0:
        raise PreconditionError("p, q must be nonnegative")
    if q == 0:
        one = ONE if jet.mode == EXACT else 1 + 0j
        return HankelReport(p, q, jet.center, one, True, 1.0)
    _check_order(jet, p + q - 1)
    H = hankel_matrix(jet, p, q)
    if jet.mode == EXACT:
        d = det_exact(H)
        return HankelReport(p, q, jet.center, d, bool(d), abs(d) if d else 0.0)
    d = det_float(H)
    scale = max(sum(abs(v) for v in row) for row in H)
    threshold = tau_hankel * scale
    return HankelReport(p, q, jet.center, d, abs(d) > threshold and scale > 0, abs(d))


def _to_z(coeffs_w, zeta, mode) -> Polynomial:
    """Coefficients in powers of w = z - zeta -> polynomial in z."""
    return Polynomial(tuple(binomial_shift(coeffs_w, -zeta, mode)), mode)


def _finish(p, q, jet, Aw, Bw, source) -> PadeApproximant:
    A = _to_z(Aw, jet.center, jet.mode)
    B = _to_z(Bw, jet.center, jet.mode)
    Al, Bl = Polynomial(tuple(Aw), jet.mode), Polynomial(tuple(Bw), jet.mode)
    lead = B.leading
    if lead != 1:
        inv = 1 / lead
        A, B, Al, Bl = A.scale(inv), B.scale(inv), Al.scale(inv), Bl.scale(inv)
    return PadeApproximant(p, q, jet.center, A, B, source, (Al, Bl))


def pade_jacobi(jet: TaylorJet, p: int, q: int, tau_hankel: float = 1e-10) -> PadeApproximant:
    """Jacobi determinant formula.

    Row r = 1..q of both (q+1)x(q+1) determinants reads a_{p-q+r}, ...,
    a_{p+r}; the first rows are (z-zeta)^{q-j} S_{p-q+j} (numerator) and
    (z-zeta)^{q-j} (denominator), j = 0..q.  Both are expanded along the
    first row, sharing the q x q scalar minors.
    """
    _check_order(jet, p + q)
    rep = hankel_det(jet, p, q, tau_hankel)
    if not rep.in_D:
        raise NotInDError(f"jet not in D_{{{p},{q}}}: Hankel determinant {rep.det}")
    zero = ZERO if jet.mode == EXACT else 0j
    if q == 0:
        return _finish(p, q, jet, list(jet.coeffs[: p + 1]), [ONE if jet.mode == EXACT else 1 + 0j],
                       "jacobi")
    rows = [[jet.a(p - q + r + j) for j in range(q + 1)] for r in range(1, q + 1)]
    det = det_exact if jet.mode == EXACT else det_float
    Aw = [zero] * (p + 1)
    Bw = [zero] * (q + 1)
    for j in range(q + 1):
        minor = [[row[c] for c in range(q + 1) if c != j] for row in rows]
        cof = det(minor)
        if j % 2:
            cof = -cof
        if not cof:
            continue
        Bw[q - j] = Bw[q - j] + cof
        # (z-zeta)^{q-j} * S_{p-q+j}: shift a_0..a_{p-q+j} up by q-j
        for nu in range(0, p - q + j + 1):
            Aw[nu + q - j] = Aw[nu + q - j] + cof * jet.coeffs[nu]
    return _finish(p, q, jet, Aw, Bw, "jacobi")


def pade_solve(jet: TaylorJet, p: int, q: int, tau_hankel: float = 1e-10) -> PadeApproximant:
    """Denominator from sum_{k=0..q} b_k a_{p+1+j-k} = 0 (j < q) with b_0 = 1,
    numerator by truncated convolution."""
    _check_order(jet, p + q)
    one = ONE if jet.mode == EXACT else 1 + 0j
    if q == 0:
        b = [one]
    else:
        M = [[jet.a(p + 1 + j - k) for k in range(1, q + 1)] for j in range(q)]
        rhs = [-jet.a(p + 1 + j) for j in range(q)]
        if jet.mode == EXACT:
            try:
                sol = solve_exact(M, rhs)
            except SingularMatrix as exc:
                raise NotInDError(f"Pade linear system singular for (p,q)=({p},{q})") from exc
        else:
            if not hankel_det(jet, p, q, tau_hankel).in_D:
                raise NotInDError(f"Pade linear system singular for (p,q)=({p},{q})")
            sol = [complex(v) for v in np.linalg.solve(np.asarray(M, dtype=complex),
                                                       np.asarray(rhs, dtype=complex))]
        b = [one] + list(sol)
    zero = ZERO if jet.mode == EXACT else 0j
    Aw = []
    for n in range(p + 1):
        acc = zero
        for k in range(0, min(n, q) + 1):
            acc = acc + b[k] * jet.coeffs[n - k]
        Aw.append(acc)
    return _finish(p, q, jet, Aw, b, "solve")


def in_E(pade: PadeApproximant, points, tau_E: float = 1e-12) -> tuple[bool, float]:
    """delta = min over the sample of |A|^2 + |B|^2; passes iff delta > tau_E."""
    pts = np.asarray(getattr(points, "points", points), dtype=complex)
    if pts.size == 0:
        raise PreconditionError("in_E needs a nonempty sample")
    a = pade.A.eval_array(pts)
    b = pade.B.eval_array(pts)
    delta = float(np.min(np.abs(a) ** 2 + np.abs(b) ** 2))
    return delta > tau_E, delta


def pade_eval_deriv(pade: PadeApproximant, order: int, z, tau_pole: float = 1e-12):
    """``order``-th derivative of A/B at z; INF where B vanishes."""
    z = as_mode(z, pade.mode)
    bz = pade.B(z)
    if (pade.mode == EXACT and not bz) or (pade.mode == FLOAT and abs(bz) <= tau_pole):
        return INF
    R = rat_derivative(pade.rational(), order)
    v = R(z, tau_pole)
    return v


def admissible_prop22(k: int, lam: int, p: int, q: int) -> bool:
    return (p == k and q == lam) or (p > k and q == lam) or (p == k and q > lam)


def unit_disk_probes(n: int = 64) -> np.ndarray:
    """Deterministic sunflower sample of the closed unit disk."""
    i = np.arange(n)
    r = np.sqrt((i + 0.5) / n)
    theta = i * math.pi * (3 - math.sqrt(5))
    return r * np.exp(1j * theta)


def verify_prop22(phi: RationalFunction, zeta, p: int, q: int, tau_verify: float = 1e-8,
                  probes=None, tau_hankel: float = 1e-10) -> bool:
    """Check that the Jacobi approximant of phi's jet reproduces phi.

    Exact mode demands identity after reduction; float mode demands a chordal
    sup error below ``tau_verify`` on the probe sample.
    """
    from .chordal import sup_chordal_values

    k, lam = phi.num.degree, phi.den.degree
    if phi.num.is_zero():
        raise PreconditionError("phi must be a nonzero rational function")
    if not admissible_prop22(k, lam, p, q):
        raise PreconditionError(f"(p,q)=({p},{q}) is not an admissible case for deg=({k},{lam})")
    zeta = as_mode(zeta, phi.mode)
    if phi.mode == EXACT and not phi.den(zeta):
        raise PreconditionError("zeta is a pole of phi")
    jet = jet_of_rational(phi, zeta, p + q)
    try:
        pade = pade_jacobi(jet, p, q, tau_hankel)
    except NotInDError:
        return False
    if phi.mode == EXACT:
        return pade.rational() == phi
    pts = unit_disk_probes() if probes is None else np.asarray(probes, dtype=complex)
    # evaluate in w = z - zeta: shifting float coefficients back to z loses digits
    Al, Bl = pade.local
    w = pts - complex(zeta)
    with np.errstate(all="ignore"):
        vals = Al.eval_array(w) / Bl.eval_array(w)
    vals[~np.isfinite(vals)] = complex(math.inf, 0)
    err = sup_chordal_values(vals, phi.eval_array(pts))
    return bool(err < tau_verify)
