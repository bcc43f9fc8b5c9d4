"""Grid-sampled compact sets.

A compact set is represented by the grid nodes it contains.  Distances come
from a Euclidean distance transform over the node lattice; the lattice
frame (one node beyond the box) stands in for the point at infinity when
complement components are labelled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .errors import PipelineError, PreconditionError
from .regions import Region

__all__ = [
    "GridSpec",
    "CompactSample",
    "exhausting_sequence",
    "fill_holes",
    "complement_exhaustion",
    "connect_complement",
    "complement_components",
    "split_boundary_sequences",
    "example_46_sets",
    "sample_distance",
]

# 4-connectivity for the complement; the sets themselves are 8-connected
FOUR = ndimage.generate_binary_structure(2, 1)
GOLDEN = math.pi * (3 - math.sqrt(5))


@dataclass(frozen=True)
class GridSpec:
    xmin: float
    xmax: float
    ymin: float
    ymax: float
    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise PreconditionError("grid resolution h must be positive")
        if not (self.xmax >= self.xmin and self.ymax >= self.ymin):
            raise PreconditionError("empty grid box")

    @property
    def nx(self) -> int:
        return int(math.floor((self.xmax - self.xmin) / self.h + 1e-9)) + 1

    @property
    def ny(self) -> int:
        return int(math.floor((self.ymax - self.ymin) / self.h + 1e-9)) + 1

    @property
    def band(self) -> float:
        """Half-diagonal: every point of the plane is this close to a node."""
        return self.h / math.sqrt(2)

    def nodes(self, pad: int = 0) -> np.ndarray:
        """Complex node array, rows indexed by y, padded by ``pad`` nodes."""
        xs = self.xmin + self.h * np.arange(-pad, self.nx + pad)
        ys = self.ymin + self.h * np.arange(-pad, self.ny + pad)
        return xs[None, :] + 1j * ys[:, None]

    def core(self, pad: int) -> np.ndarray:
        m = np.zeros((self.ny + 2 * pad, self.nx + 2 * pad), dtype=bool)
        m[pad: pad + self.ny, pad: pad + self.nx] = True
        return m

    def dist_pad(self) -> int:
        """Padding wide enough that distances up to 1 see outside the box."""
        return int(math.ceil(1 / self.h)) + 1

    def to_json(self) -> dict:
        return {"xmin": self.xmin, "xmax": self.xmax, "ymin": self.ymin, "ymax": self.ymax, "h": self.h}


@dataclass(frozen=True, eq=False)
class CompactSample:
    """Finite sample of a compact set; points normally sit on grid nodes."""

    points: np.ndarray
    grid: GridSpec
    label: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=complex).ravel())

    def __len__(self):
        return len(self.points)

    def is_empty(self) -> bool:
        return len(self.points) == 0

    @classmethod
    def from_mask(cls, grid: GridSpec, mask: np.ndarray, label: str = "", pad: int = 0,
                  meta: dict | None = None) -> "CompactSample":
        Z = grid.nodes(pad)
        m = mask & grid.core(pad)
        return cls(Z[m], grid, label, dict(meta or {}))

    def indices(self, pad: int = 0) -> tuple[np.ndarray, np.ndarray]:
        g = self.grid
        fx = (self.points.real - g.xmin) / g.h
        fy = (self.points.imag - g.ymin) / g.h
        ix, iy = np.rint(fx).astype(int), np.rint(fy).astype(int)
        if len(self.points) and (ix.min() < 0 or iy.min() < 0 or ix.max() >= g.nx or iy.max() >= g.ny):
            raise PreconditionError(f"sample {self.label!r} has points outside the grid box")
        return iy + pad, ix + pad

    def mask(self, pad: int = 0) -> np.ndarray:
        """Boolean node mask (points snapped to their nearest node)."""
        m = np.zeros_like(self.grid.core(pad))
        iy, ix = self.indices(pad)
        m[iy, ix] = True
        return m

    def node_set(self) -> set[tuple[int, int]]:
        iy, ix = self.indices()
        return set(zip(iy.tolist(), ix.tolist()))

    def with_points(self, points, label: str | None = None) -> "CompactSample":
        return CompactSample(points, self.grid, self.label if label is None else label, dict(self.meta))


_NEIGHBOURS = ((0, 1), (1, 0), (1, 1), (1, -1))


def edge_points(sample: CompactSample, n: int = 4) -> np.ndarray:
    """Points dividing each segment between 8-adjacent sample nodes into n
    equal parts (interior division points only)."""
    iy, ix = sample.indices()
    nodes = set(zip(iy.tolist(), ix.tolist()))
    g = sample.grid
    t = np.arange(1, n) / n
    out = []
    for (y, x) in nodes:
        z0 = complex(g.xmin + x * g.h, g.ymin + y * g.h)
        for dy, dx in _NEIGHBOURS:
            if (y + dy, x + dx) in nodes:
                out.append(z0 + t * complex(dx * g.h, dy * g.h))
    return np.concatenate(out) if out else np.zeros(0, dtype=complex)


def _dist_to(mask: np.ndarray, h: float) -> np.ndarray:
    """Distance from every node to the nearest node of ``mask``."""
    if not mask.any():
        return np.full(mask.shape, math.inf)
    return ndimage.distance_transform_edt(~mask, sampling=h)


def sample_distance(A: CompactSample, B: CompactSample) -> float:
    """min pairwise Euclidean distance between two samples (inf if either is empty)."""
    if A.is_empty() or B.is_empty():
        return math.inf
    a, b = A.points, B.points
    best = math.inf
    for i in range(0, len(a), 512):
        best = min(best, float(np.min(np.abs(a[i: i + 512, None] - b[None, :]))))
    return best


def exhausting_sequence(omega: Region, grid: GridSpec, n: int) -> list[CompactSample]:
    """L_k = nodes z in Omega with dist(z, complement) >= 1/k and |z| <= k.

    Grid distances overestimate true ones by at most a half-diagonal, so the
    threshold is applied to ``grid_dist - h``.
    """
    if n < 1:
        raise PreconditionError("n must be positive")
    if grid.h > 1 / (2 * n):
        raise PreconditionError(f"grid too coarse: h = {grid.h} > 1/(2n) = {1 / (2 * n)}")
    pad = grid.dist_pad()
    Z = grid.nodes(pad)
    inside = omega.contains(Z, closed=False)
    dist = _dist_to(~inside, grid.h)
    out = []
    for k in range(1, n + 1):
        m = inside & (dist - grid.h >= 1 / k) & (np.abs(Z) <= k)
        out.append(CompactSample.from_mask(grid, m, f"L_{k}", pad))
    return out


def complement_components(mask: np.ndarray) -> tuple[np.ndarray, int, set[int]]:
    """4-connected labels of the complement of a framed mask, the label count
    and the labels touching the frame (the unbounded ones)."""
    labels, count = ndimage.label(~mask, structure=FOUR)
    border = np.concatenate([labels[0], labels[-1], labels[:, 0], labels[:, -1]])
    return labels, count, set(border[border > 0].tolist())


def fill_holes(K: CompactSample, omega: Region) -> CompactSample:
    """Adjoin every bounded complement component lying entirely in Omega.

    Nodes of the boundary band (closed but not open membership) are never
    added, so the part of K on the boundary is preserved.
    """
    grid = K.grid
    pad = 1
    Z = grid.nodes(pad)
    Km = K.mask(pad)
    closed = omega.contains(Z, closed=True, band=grid.band)
    if Km.any():
        near = _dist_to(closed, grid.h)
        if np.any(near[Km] > grid.h * math.sqrt(2)):
            raise PreconditionError("fill_holes: K is not contained in the closure of Omega")
    open_ = omega.contains(Z, closed=False)
    labels, count, frame = complement_components(Km)
    total = np.bincount(labels.ravel(), minlength=count + 1)
    inside = np.bincount(labels[open_].ravel(), minlength=count + 1)
    fill = (total == inside) & (total > 0)
    fill[0] = False
    for lab in frame:
        fill[lab] = False
    out = Km | fill[labels]
    # every remaining complement component is unbounded or leaves Omega
    labels2, count2, frame2 = complement_components(out)
    outside = np.bincount(labels2[~open_].ravel(), minlength=count2 + 1)
    for lab in range(1, count2 + 1):
        if lab not in frame2 and outside[lab] == 0:
            raise PipelineError("fill_holes left a bounded component inside Omega")
    return CompactSample.from_mask(grid, out, K.label, pad, K.meta)


def connect_complement(mask: np.ndarray, h: float, max_carves: int = 256) -> tuple[np.ndarray, int]:
    """Carve one-node corridors until the complement of a framed mask is a
    single 4-connected component.  Returns the carved mask and corridor count.
    """
    m = mask.copy()
    carves = 0
    while True:
        labels, count, frame = complement_components(m)
        holes = [lab for lab in range(1, count + 1) if lab not in frame]
        if not holes:
            return m, carves
        if carves >= max_carves:
            raise PipelineError(f"corridor carving did not connect the complement ({len(holes)} holes left)")
        ys, xs = np.nonzero(labels == holes[0])
        cy, cx = ys.mean(), xs.mean()
        j = int(np.argmin((ys - cy) ** 2 + (xs - cx) ** 2))
        y0, x0 = float(ys[j]), float(xs[j])
        theta = carves * GOLDEN
        dy, dx = math.sin(theta) / 2, math.cos(theta) / 2
        prev = (int(y0), int(x0))
        t = 0
        while True:
            t += 1
            iy, ix = int(round(y0 + t * dy)), int(round(x0 + t * dx))
            if not (0 <= iy < m.shape[0] and 0 <= ix < m.shape[1]):
                break
            if (iy, ix) == prev:
                continue
            if iy != prev[0] and ix != prev[1]:
                m[prev[0], ix] = False
            reached = not m[iy, ix] and labels[iy, ix] in frame
            m[iy, ix] = False
            prev = (iy, ix)
            if reached:
                break
        carves += 1


def complement_exhaustion(omega: Region, grid: GridSpec, mode: str, m: int,
                          carve: bool = True) -> list[CompactSample]:
    """K_1..K_m exhausting C \\ Omega (``off_omega``) or C \\ closure(Omega)
    (``off_closure``), each with a connected complement after carving."""
    if m < 1:
        raise PreconditionError("m must be positive")
    pad = grid.dist_pad()
    Z = grid.nodes(pad)
    core = grid.core(pad)
    if mode == "off_omega":
        base = ~omega.contains(Z, closed=False)
        thresh = None
    elif mode == "off_closure":
        closed = omega.contains(Z, closed=True, band=grid.band)
        base = ~closed
        thresh = _dist_to(closed, grid.h) - grid.h
    else:
        raise PreconditionError(f"unknown mode {mode!r}")
    out = []
    for r in range(1, m + 1):
        mk = base & core & (np.abs(Z) <= r)
        if thresh is not None:
            mk &= thresh >= 1 / r
        carves = 0
        if carve and mk.any():
            framed = mk[pad - 1: pad + grid.ny + 1, pad - 1: pad + grid.nx + 1]
            framed, carves = connect_complement(framed, grid.h)
            mk = np.zeros_like(mk)
            mk[pad - 1: pad + grid.ny + 1, pad - 1: pad + grid.nx + 1] = framed
        out.append(CompactSample.from_mask(grid, mk, f"K_{r}", pad, {"corridors": carves}))
    return out


def split_boundary_sequences(omega: Region, S: Region, T: Region, grid: GridSpec, n_max: int):
    """Compacts L_n (Omega plus a neighbourhood of S in the closure) and K_r
    (outside Omega plus a neighbourhood of T) with L_n and K_r disjoint.

    Returns ``(Ls, Ks, radii)``.
    """
    h = grid.h
    pad = grid.dist_pad()
    Z = grid.nodes(pad)
    core = grid.core(pad)
    Sm = S.contains(Z, closed=True, band=grid.band) & core
    Tm = T.contains(Z, closed=True, band=grid.band) & core
    dist_S = _dist_to(Sm, h)
    dist_T = _dist_to(Tm, h)
    if Sm.any() and Tm.any():
        sep = float(dist_T[Sm].min())
        if sep <= 2 * h:
            raise PreconditionError(f"separation precondition: dist(S, T) = {sep} <= 2h = {2 * h}")

    inner = [c.mask(pad) for c in exhausting_sequence(omega, grid, n_max)]
    outer = [c.mask(pad) for c in complement_exhaustion(omega, grid, "off_closure", n_max, carve=False)]
    closed_side = omega.contains(Z, closed=True) | Sm
    open_out = ~omega.contains(Z, closed=False) | Tm
    radii = []
    L_acc = np.zeros(Z.shape, dtype=bool)
    K_acc = np.zeros(Z.shape, dtype=bool)
    Ls, Ks = [], []
    for n in range(1, n_max + 1):
        Lp = Sm & (np.abs(Z) <= n)
        Kp = Tm & (np.abs(Z) <= n)
        d1 = float(dist_T[Lp].min()) if Lp.any() else math.inf
        d2 = float(dist_S[Kp].min()) if Kp.any() else math.inf
        a = min(d1, d2) / 2 - h
        if math.isfinite(a) and a <= 0:
            raise PreconditionError(f"a_{n} = {a} <= 0: grid too coarse for the S-T gap")
        radii.append(a)
        if Lp.any():
            L_acc |= closed_side & (_dist_to(Lp, h) <= a)
        if Kp.any():
            K_acc |= open_out & (_dist_to(Kp, h) <= a)
        Ln = CompactSample.from_mask(grid, L_acc | inner[n - 1], f"L_{n}", pad)
        Ls.append(fill_holes(Ln, omega))
        Ks.append(CompactSample.from_mask(grid, K_acc | outer[n - 1], f"K_{n}", pad))
    for Ln in Ls:
        ln = Ln.node_set()
        for Kr in Ks:
            if ln & Kr.node_set():
                raise PipelineError(f"{Ln.label} meets {Kr.label}")
    return Ls, Ks, radii


def example_46_sets(grid: GridSpec, n: int) -> tuple[CompactSample, CompactSample]:
    """Upper compact L_n (closed disk shrunk by 1/n plus the upper sector)
    and lower-outer compact K_1, both truncated to the box."""
    if n < 1:
        raise PreconditionError("n must be positive")
    if grid.h > 1 / (4 * n):
        raise PreconditionError(f"resolution bound violated: h = {grid.h} > 1/(4n) = {1 / (4 * n)}")
    Z = grid.nodes()
    r = np.abs(Z)
    arg = np.angle(Z)
    L = (r <= 1 - 1 / n) | ((Z != 0) & (r <= 1) & (arg >= 1 / n) & (arg <= math.pi - 1 / n))
    K = (r >= 1) & (Z.real >= -2) & (Z.real <= 2) & (Z.imag <= 0)
    if np.any(L & K):
        raise PipelineError("example sets intersect")
    return (CompactSample.from_mask(grid, L, f"L_{n}"), CompactSample.from_mask(grid, K, "K_1"))
