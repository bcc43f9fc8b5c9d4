"""Rational functions, derivatives, evaluation on the Riemann sphere and
principal parts at poles."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import ModeError, PreconditionError
from .gaussian import ZERO, GaussianRational, exact
from .poly import EXACT, FLOAT, Polynomial, as_mode, poly_gcd, poly_roots

__all__ = [
    "INF",
    "is_infinite",
    "RationalFunction",
    "rat_normalize",
    "rat_derivative",
    "principal_parts",
    "taylor_coefficients",
    "exact_poles",
]

#: the point at infinity of the extended plane
INF = math.inf


def is_infinite(v) -> bool:
    return isinstance(v, (float, complex)) and cmath.isinf(v)


class RationalFunction:
    """``num/den`` with a monic denominator; in exact mode also coprime.

    Construction always normalizes, so two exact-mode instances describe the
    same function iff their coefficient tuples agree.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.const(1, num.mode)
        if num.mode != den.mode:
            raise ModeError(f"mode mismatch: {num.mode} vs {den.mode}")
        if den.is_zero():
            raise PreconditionError("zero denominator")
        if num.mode == EXACT:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.leading
        if lead != 1:
            inv = 1 / lead
            num, den = num.scale(inv), den.monic()
        self.num = num
        self.den = den

    @property
    def mode(self) -> str:
        return self.num.mode

    @classmethod
    def from_poly(cls, P: Polynomial) -> "RationalFunction":
        return cls(P, Polynomial.const(1, P.mode))

    @classmethod
    def zero(cls, mode: str = FLOAT) -> "RationalFunction":
        return cls(Polynomial.zero(mode))

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    # algebra ------------------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if isinstance(other, Polynomial):
            other = RationalFunction.from_poly(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return RationalFunction(self.num * other, self.den)
        if isinstance(other, RationalFunction):
            return RationalFunction(self.num * other.num, self.den * other.den)
        return RationalFunction(self.num.scale(other), self.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num.coeffs, self.den.coeffs))

    def to_float(self) -> "RationalFunction":
        return RationalFunction(self.num.to_float(), self.den.to_float())

    # evaluation ---------------------------------------------------------

    def __call__(self, z, tau_pole: float = 1e-12):
        """Value in the extended plane; poles evaluate to :data:`INF`."""
        z = as_mode(z, self.mode)
        d = self.den(z)
        n = self.num(z)
        if self.mode == EXACT:
            return INF if not d else n / d
        if abs(d) <= tau_pole:
            return INF
        return n / d

    def eval_array(self, zs, tau_pole: float = 1e-12) -> np.ndarray:
        """Evaluate at complex sample points; poles give ``inf``.

        Exact-mode functions are evaluated exactly at each (dyadic) point and
        rounded once, so high-degree fits do not suffer cancellation.
        """
        zs = np.asarray(zs, dtype=complex)
        if self.mode == FLOAT:
            n = self.num.eval_array(zs)
            d = self.den.eval_array(zs)
            out = np.empty_like(zs)
            pole = np.abs(d) <= tau_pole
            with np.errstate(all="ignore"):
                out[~pole] = n[~pole] / d[~pole]
            out[pole] = complex(math.inf, 0.0)
            return out
        out = []
        for z in zs.ravel():
            v = self(exact(complex(z)))
            out.append(complex(math.inf, 0.0) if is_infinite(v) else complex(v))
        return np.array(out, dtype=complex).reshape(zs.shape)

    def __repr__(self):
        return f"RationalFunction(num={self.num!r}, den={self.den!r})"


def rat_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    """Cancel the gcd (exact mode) and make the denominator monic."""
    return RationalFunction(num, den)


def rat_derivative(R: RationalFunction, order: int) -> RationalFunction:
    """``order``-fold derivative via d/dz (N/D^m) = (N'D - m N D')/D^(m+1)."""
    if order < 0:
        raise PreconditionError("derivative order must be >= 0")
    if order == 0:
        return R
    N, D = R.num, R.den
    Dp = D.derivative()
    for m in range(1, order + 1):
        N = N.derivative() * D - (N * Dp).scale(m)
    return RationalFunction(N, D ** (order + 1))


def taylor_coefficients(num: Polynomial, den: Polynomial, zeta, order: int) -> list:
    """Coefficients ``a_0..a_order`` of num/den expanded about ``zeta``.

    Both polynomials are recentred by an exact binomial shift, then the
    division recurrence ``b_0 a_n = c_n - sum_{k>=1} b_k a_{n-k}`` runs.
    """
    mode = num.mode
    zeta = as_mode(zeta, mode)
    c = num.shift(zeta)
    b = den.shift(zeta)
    b0 = b[0]
    if not b0:
        raise PreconditionError("expansion point is a pole")
    inv = 1 / b0
    a = []
    for n in range(order + 1):
        acc = c[n]
        for k in range(1, min(n, b.degree) + 1):
            acc = acc - b[k] * a[n - k]
        a.append(acc * inv)
    return a


def _snap(x: float) -> Fraction:
    return Fraction(x).limit_denominator(1 << 24)


def exact_poles(den: Polynomial, tau_root: float = 1e-7):
    """Exact roots of an exact polynomial, when all of them are Gaussian
    rationals with moderate denominators; otherwise ``None``."""
    if den.mode != EXACT:
        return None
    if den.degree < 1:
        return []
    found = []
    rest = den
    for r, m in poly_roots(den.to_float(), tau_root):
        cand = GaussianRational.from_parts(_snap(r.real), _snap(r.imag))
        lin = Polynomial((-cand, 1), EXACT)
        k = 0
        while rest.degree >= 1:
            q, rem = rest.divmod(lin)
            if not rem.is_zero():
                break
            rest, k = q, k + 1
        if k == 0:
            return None
        found.append((cand, k))
    if rest.degree >= 1:
        return None
    return found


def _local_part(num: Polynomial, cofactor: Polynomial, pole, m: int) -> RationalFunction:
    mode = num.mode
    phi = taylor_coefficients(num, cofactor, pole, m - 1)
    lin = Polynomial((-pole, 1), mode)
    top = Polynomial.zero(mode)
    for k, ck in enumerate(phi):
        top = top + (lin ** k).scale(ck)
    return RationalFunction(top, lin ** m)


def principal_parts(R: RationalFunction, region, tau_root: float = 1e-7,
                    tau_inclusion: float | None = None) -> RationalFunction:
    """Sum of the principal parts of ``R`` at the poles lying on ``region``.

    A pole counts when its distance to the sampled region is at most
    ``tau_inclusion`` (default: half the grid resolution).  Poles whose
    distance is within ``tau_root`` of that threshold are ambiguous and
    rejected.  Exact input with snappable poles gives an exact result.
    """
    pts = np.asarray(region.points, dtype=complex)
    if tau_inclusion is None:
        tau_inclusion = region.grid.h / 2
    mode = R.mode
    if R.den.degree < 1 or len(pts) == 0:
        return RationalFunction.zero(mode)

    poles = exact_poles(R.den, tau_root) if mode == EXACT else None
    if poles is None:
        fl = R.to_float()
        float_poles = poly_roots(fl.den, tau_root)
        work, poles = fl, float_poles
    else:
        work = R

    total = RationalFunction.zero(work.mode)
    for pole, m in poles:
        dist = float(np.min(np.abs(pts - complex(pole))))
        if abs(dist - tau_inclusion) <= tau_root:
            raise PreconditionError(
                f"pole {complex(pole)} sits on the inclusion threshold of the region (ambiguous membership)")
        if dist > tau_inclusion:
            continue
        if work.mode == EXACT:
            cof = work.den // Polynomial((-pole, 1), EXACT) ** m
        else:
            cof = Polynomial.const(work.den.leading, FLOAT)
            for r, k in poles:
                if r != pole:
                    cof = cof * Polynomial((-r, 1), FLOAT) ** k
        total = total + _local_part(work.num, cof, as_mode(pole, work.mode), m)
    return total
