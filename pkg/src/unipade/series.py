"""Finite Taylor jets about a centre and their partial sums."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .gaussian import ZERO
from .poly import EXACT, Polynomial, as_mode, binomial_shift
from .rational import RationalFunction, taylor_coefficients

__all__ = ["TaylorJet", "jet_of_rational", "partial_sum"]


@dataclass(frozen=True)
class TaylorJet:
    """Coefficients ``a_0..a_M`` of a power series in ``(z - center)``."""

    center: object
    coeffs: tuple
    mode: str

    def __post_init__(self):
        if not self.coeffs:
            raise PreconditionError("a jet needs at least a_0")
        object.__setattr__(self, "center", as_mode(self.center, self.mode))
        object.__setattr__(self, "coeffs", tuple(as_mode(c, self.mode) for c in self.coeffs))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def a(self, i: int):
        """Coefficient ``a_i``; negative indices read as zero."""
        if i < 0:
            return ZERO if self.mode == EXACT else 0j
        if i > self.order:
            raise PreconditionError(f"jet of order {self.order} has no coefficient a_{i}")
        return self.coeffs[i]

    def truncate(self, order: int) -> "TaylorJet":
        return TaylorJet(self.center, self.coeffs[: order + 1], self.mode)


def jet_of_rational(R: RationalFunction, zeta, order: int, tau_root: float = 1e-7) -> TaylorJet:
    """Taylor jet of ``R`` at ``zeta`` up to ``order`` (exact in exact mode)."""
    if order < 0:
        raise PreconditionError("order must be >= 0")
    zeta = as_mode(zeta, R.mode)
    if R.mode != EXACT and abs(R.den(zeta)) <= tau_root:
        raise PreconditionError("expansion point is (numerically) a pole")
    coeffs = taylor_coefficients(R.num, R.den, zeta, order)
    return TaylorJet(zeta, tuple(coeffs), R.mode)


def partial_sum(jet: TaylorJet, k: int) -> Polynomial:
    """``S_k(z) = sum_{nu<=k} a_nu (z - center)^nu`` in powers of z; zero if k < 0."""
    if k < 0:
        return Polynomial.zero(jet.mode)
    if k > jet.order:
        raise PreconditionError(f"partial sum S_{k} needs a jet of order >= {k}")
    return Polynomial(tuple(binomial_shift(jet.coeffs[: k + 1], -jet.center, jet.mode)), jet.mode)
