"""Polynomials over exact Gaussian rationals or complex floats."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ModeError, PreconditionError
from .gaussian import ONE, ZERO, GaussianRational, exact

__all__ = [
    "EXACT",
    "FLOAT",
    "NEG_INF",
    "Polynomial",
    "poly_eval",
    "poly_gcd",
    "poly_roots",
    "binomial_shift",
]

EXACT = "exact"
FLOAT = "float"

#: degree of the zero polynomial
NEG_INF = -math.inf


def scalar_mode(x) -> str | None:
    """Mode of a scalar; ``None`` for plain ints, which fit either mode."""
    if isinstance(x, GaussianRational):
        return EXACT
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return None
    if isinstance(x, (float, complex, np.floating, np.complexfloating)):
        return FLOAT
    raise TypeError(f"unsupported scalar type {type(x).__name__}")


def as_mode(x, mode: str):
    """Convert an int-or-matching scalar into ``mode``; mismatches raise."""
    m = scalar_mode(x)
    if m is not None and m != mode:
        raise ModeError(f"{m} scalar used where {mode} mode is required")
    if mode == EXACT:
        return exact(x)
    return complex(x)


@dataclass(frozen=True)
class Polynomial:
    """Coefficients in ascending powers; trailing zeros are stripped."""

    coeffs: tuple
    mode: str = FLOAT

    def __post_init__(self):
        if self.mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {self.mode!r}")
        cs = [as_mode(c, self.mode) for c in self.coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # constructors -------------------------------------------------------

    @classmethod
    def zero(cls, mode: str = FLOAT) -> "Polynomial":
        return cls((), mode)

    @classmethod
    def const(cls, c, mode: str = FLOAT) -> "Polynomial":
        return cls((c,), mode)

    @classmethod
    def monomial(cls, k: int, c=1, mode: str = FLOAT) -> "Polynomial":
        return cls((0,) * k + (c,), mode)

    @classmethod
    def from_roots(cls, roots: Sequence, mode: str = FLOAT) -> "Polynomial":
        p = cls.const(1, mode)
        for r in roots:
            p = p * cls((-as_mode(r, mode), 1), mode)
        return p

    # basic properties ---------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self):
        if not self.coeffs:
            raise PreconditionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO if self.mode == EXACT else 0j

    def _zero_scalar(self):
        return ZERO if self.mode == EXACT else 0j

    def _check(self, other: "Polynomial"):
        if not isinstance(other, Polynomial):
            raise TypeError("expected a Polynomial")
        if other.mode != self.mode:
            raise ModeError(f"mode mismatch: {self.mode} vs {other.mode}")

    # arithmetic ---------------------------------------------------------

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self), len(other))
        return Polynomial(tuple(self[k] + other[k] for k in range(n)), self.mode)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs), self.mode)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        n = max(len(self), len(other))
        return Polynomial(tuple(self[k] - other[k] for k in range(n)), self.mode)

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Polynomial.zero(self.mode)
        if self.mode == FLOAT:
            return Polynomial(tuple(np.convolve(self.coeffs, other.coeffs)), FLOAT)
        out = [ZERO] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(tuple(out), self.mode)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = as_mode(c, self.mode)
        return Polynomial(tuple(a * c for a in self.coeffs), self.mode)

    def __pow__(self, k: int) -> "Polynomial":
        out = Polynomial.const(1, self.mode)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Long division ``self = q*other + r`` with ``deg r < deg other``."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other)
        if dq < 0:
            return Polynomial.zero(self.mode), self
        lead_inv = 1 / other.leading
        quot = [self._zero_scalar()] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other) - 1] * lead_inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        rem = rem[: len(other) - 1]
        return Polynomial(tuple(quot), self.mode), Polynomial(tuple(rem), self.mode)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = 1 / self.leading
        return Polynomial(tuple(c * inv for c in self.coeffs[:-1]) + (as_mode(1, self.mode),), self.mode)

    def derivative(self, k: int = 1) -> "Polynomial":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [cs[j] * j for j in range(1, len(cs))]
        return Polynomial(tuple(cs), self.mode)

    def shift(self, zeta) -> "Polynomial":
        """Coefficients of ``P(w + zeta)`` in powers of ``w``."""
        return Polynomial(tuple(binomial_shift(self.coeffs, as_mode(zeta, self.mode), self.mode)), self.mode)

    def truncate(self, n: int) -> "Polynomial":
        """Keep powers ``0..n``."""
        return Polynomial(self.coeffs[: max(n + 1, 0)], self.mode)

    def to_float(self) -> "Polynomial":
        if self.mode == FLOAT:
            return self
        return Polynomial(tuple(complex(c) for c in self.coeffs), FLOAT)

    def __call__(self, z):
        return poly_eval(self, z)

    def eval_array(self, zs) -> np.ndarray:
        """Vectorized evaluation at complex points; exact polynomials are
        evaluated exactly at each (dyadic) point and rounded once."""
        zs = np.asarray(zs, dtype=complex)
        if self.mode == FLOAT:
            out = np.zeros_like(zs)
            for c in reversed(self.coeffs):
                out = out * zs + c
            return out
        return np.array([complex(_horner(self.coeffs, exact(complex(z)))) for z in zs.ravel()],
                        dtype=complex).reshape(zs.shape)

    def __repr__(self):
        body = ", ".join(str(c) for c in self.coeffs)
        return f"Polynomial([{body}], {self.mode})"


def _horner(coeffs, z):
    acc = ZERO if isinstance(z, GaussianRational) else 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def poly_eval(P: Polynomial, z):
    """Horner evaluation; ``z`` must be in the polynomial's mode."""
    z = as_mode(z, P.mode)
    return _horner(P.coeffs, z)


def binomial_shift(coeffs: Sequence, zeta, mode: str) -> list:
    """Taylor shift by repeated synthetic division (exact when inputs are)."""
    cs = list(coeffs)
    n = len(cs)
    if mode == FLOAT:
        cs = [complex(c) for c in cs]
    if not zeta:
        return cs
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            cs[j] = cs[j] + zeta * cs[j + 1]
    return cs


def poly_gcd(A: Polynomial, B: Polynomial) -> Polynomial:
    """Monic greatest common divisor by the Euclidean algorithm (exact mode)."""
    A._check(B)
    if A.mode != EXACT:
        raise ModeError("poly_gcd requires exact mode; coprimality is not certifiable in floats")
    a, b = A.monic(), B.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def companion_matrix(P: Polynomial) -> np.ndarray:
    c = np.asarray(P.to_float().monic().coeffs, dtype=complex)
    n = len(c) - 1
    M = np.zeros((n, n), dtype=complex)
    if n > 1:
        M[1:, :-1] = np.eye(n - 1)
    M[:, -1] = -c[:-1]
    return M


def poly_roots(P: Polynomial, tau_root: float = 1e-7) -> list[tuple[complex, int]]:
    """Roots from companion-matrix eigenvalues, clustered into multiplicities.

    Eigenvalues within ``tau_root`` of a cluster's running mean join that
    cluster; the cluster mean is reported.
    """
    if P.mode != FLOAT:
        raise ModeError("poly_roots works in float mode; convert with to_float()")
    if P.is_zero() or P.degree < 1:
        raise PreconditionError("poly_roots needs a polynomial of degree >= 1")
    eig = np.linalg.eigvals(companion_matrix(P))
    eig = sorted(eig, key=lambda r: (r.real, r.imag))
    clusters: list[list[complex]] = []
    for r in eig:
        for cl in clusters:
            if abs(r - np.mean(cl)) <= tau_root:
                cl.append(r)
                break
        else:
            clusters.append([r])
    return [(complex(np.mean(cl)), len(cl)) for cl in clusters]
