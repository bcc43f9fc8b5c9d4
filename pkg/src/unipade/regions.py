"""Closed-form region predicates with open and closed membership.

Every region answers ``contains(z, closed)`` on complex arrays.  Thin sets
(arcs and segments) have empty interior; their closed membership on a grid
is a band of half-diagonal width, passed in as ``band``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParseError

__all__ = [
    "Region",
    "Disk",
    "HalfPlane",
    "Sector",
    "Annulus",
    "Arc",
    "Segment",
    "Plane",
    "Empty",
    "Union",
    "Intersection",
    "Complement",
    "region_from_json",
]


def _angle_in(theta, t1: float, t2: float, closed: bool):
    """theta (any branch) inside the counter-clockwise interval t1 -> t2."""
    span = (t2 - t1) % (2 * math.pi) or 2 * math.pi
    rel = np.mod(theta - t1, 2 * math.pi)
    if closed:
        # allow the endpoint t2 reached from either side of the cut
        return (rel <= span + 1e-15) | (rel >= 2 * math.pi - 1e-15)
    return (rel > 0) & (rel < span)


class Region:
    """Base class; subclasses implement ``_contains``."""

    thin = False

    def contains(self, z, closed: bool = False, band: float = 0.0) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        return np.asarray(self._contains(z, closed, band), dtype=bool)

    def _contains(self, z, closed, band):
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def __or__(self, other):
        return Union((self, other))

    def __and__(self, other):
        return Intersection((self, other))

    def __invert__(self):
        return Complement(self)


@dataclass(frozen=True, eq=False)
class Disk(Region):
    center: complex
    radius: float

    def _contains(self, z, closed, band):
        d = np.abs(z - self.center)
        return d <= self.radius if closed else d < self.radius

    def to_json(self):
        return {"type": "disk", "center": [self.center.real, self.center.imag], "radius": self.radius}


@dataclass(frozen=True, eq=False)
class HalfPlane(Region):
    """{z : n_x x + n_y y < offset} (open) with normal n given as a complex number."""

    normal: complex
    offset: float

    def _contains(self, z, closed, band):
        v = self.normal.real * z.real + self.normal.imag * z.imag
        return v <= self.offset if closed else v < self.offset

    def to_json(self):
        return {"type": "halfplane", "normal": [self.normal.real, self.normal.imag], "offset": self.offset}


@dataclass(frozen=True, eq=False)
class Sector(Region):
    """Points with r_min < |z - c| < r_max and argument in (theta1, theta2)."""

    center: complex
    theta1: float
    theta2: float
    r_min: float = 0.0
    r_max: float = math.inf

    def _contains(self, z, closed, band):
        w = z - self.center
        r = np.abs(w)
        th = np.angle(w)
        if closed:
            radial = (r >= self.r_min) & (r <= self.r_max)
            ang = _angle_in(th, self.theta1, self.theta2, True) | (r == 0)
        else:
            radial = (r > self.r_min) & (r < self.r_max) & (r > 0)
            ang = _angle_in(th, self.theta1, self.theta2, False)
        return radial & ang

    def to_json(self):
        return {"type": "sector", "center": [self.center.real, self.center.imag],
                "theta1": self.theta1, "theta2": self.theta2, "r_min": self.r_min,
                "r_max": None if math.isinf(self.r_max) else self.r_max}


@dataclass(frozen=True, eq=False)
class Annulus(Region):
    center: complex
    r_in: float
    r_out: float

    def _contains(self, z, closed, band):
        d = np.abs(z - self.center)
        if closed:
            return (d >= self.r_in) & (d <= self.r_out)
        return (d > self.r_in) & (d < self.r_out)

    def to_json(self):
        return {"type": "annulus", "center": [self.center.real, self.center.imag],
                "r_in": self.r_in, "r_out": self.r_out}


@dataclass(frozen=True, eq=False)
class Arc(Region):
    """Closed circular arc {c + r e^{it}: t from theta1 ccw to theta2}."""

    center: complex
    radius: float
    theta1: float
    theta2: float
    thin = True

    def distance(self, z):
        w = z - self.center
        th = np.angle(w)
        on = _angle_in(th, self.theta1, self.theta2, True)
        radial = np.abs(np.abs(w) - self.radius)
        e1 = self.center + self.radius * np.exp(1j * self.theta1)
        e2 = self.center + self.radius * np.exp(1j * self.theta2)
        ends = np.minimum(np.abs(z - e1), np.abs(z - e2))
        return np.where(on, radial, ends)

    def _contains(self, z, closed, band):
        if not closed:
            return np.zeros(z.shape, dtype=bool)
        return self.distance(z) <= band

    def to_json(self):
        return {"type": "arc", "center": [self.center.real, self.center.imag], "radius": self.radius,
                "theta1": self.theta1, "theta2": self.theta2}


@dataclass(frozen=True, eq=False)
class Segment(Region):
    a: complex
    b: complex
    thin = True

    def distance(self, z):
        d = self.b - self.a
        t = np.clip(((z - self.a) * np.conj(d)).real / (abs(d) ** 2 or 1.0), 0.0, 1.0)
        return np.abs(z - (self.a + t * d))

    def _contains(self, z, closed, band):
        if not closed:
            return np.zeros(z.shape, dtype=bool)
        return self.distance(z) <= band

    def to_json(self):
        return {"type": "segment", "a": [self.a.real, self.a.imag], "b": [self.b.real, self.b.imag]}


class Plane(Region):
    def _contains(self, z, closed, band):
        return np.ones(z.shape, dtype=bool)

    def to_json(self):
        return {"type": "plane"}


class Empty(Region):
    def _contains(self, z, closed, band):
        return np.zeros(z.shape, dtype=bool)

    def to_json(self):
        return {"type": "empty"}


@dataclass(frozen=True, eq=False)
class Union(Region):
    parts: tuple

    def _contains(self, z, closed, band):
        out = np.zeros(z.shape, dtype=bool)
        for p in self.parts:
            out |= p.contains(z, closed, band)
        return out

    def to_json(self):
        return {"type": "union", "parts": [p.to_json() for p in self.parts]}


@dataclass(frozen=True, eq=False)
class Intersection(Region):
    parts: tuple

    def _contains(self, z, closed, band):
        out = np.ones(z.shape, dtype=bool)
        for p in self.parts:
            out &= p.contains(z, closed, band)
        return out

    def to_json(self):
        return {"type": "intersection", "parts": [p.to_json() for p in self.parts]}


@dataclass(frozen=True, eq=False)
class Complement(Region):
    """Open complement is the exterior of the closed child and vice versa."""

    child: Region

    def _contains(self, z, closed, band):
        return ~self.child.contains(z, not closed, band)

    def to_json(self):
        return {"type": "complement", "of": self.child.to_json()}


def _c(v) -> complex:
    try:
        x, y = v
        return complex(float(x), float(y))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"expected a point [x, y], got {v!r}") from exc


def region_from_json(obj: dict) -> Region:
    try:
        t = obj["type"]
        if t == "disk":
            return Disk(_c(obj["center"]), float(obj["radius"]))
        if t == "halfplane":
            return HalfPlane(_c(obj["normal"]), float(obj["offset"]))
        if t == "sector":
            r_max = obj.get("r_max")
            return Sector(_c(obj.get("center", [0, 0])), float(obj["theta1"]), float(obj["theta2"]),
                          float(obj.get("r_min", 0.0)), math.inf if r_max is None else float(r_max))
        if t == "annulus":
            return Annulus(_c(obj["center"]), float(obj["r_in"]), float(obj["r_out"]))
        if t == "arc":
            return Arc(_c(obj["center"]), float(obj["radius"]), float(obj["theta1"]), float(obj["theta2"]))
        if t == "segment":
            return Segment(_c(obj["a"]), _c(obj["b"]))
        if t == "plane":
            return Plane()
        if t == "empty":
            return Empty()
        if t == "union":
            return Union(tuple(region_from_json(p) for p in obj["parts"]))
        if t == "intersection":
            return Intersection(tuple(region_from_json(p) for p in obj["parts"]))
        if t == "complement":
            return Complement(region_from_json(obj["of"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed region description: {exc}") from exc
    raise ParseError(f"unknown region type {obj.get('type')!r}")
