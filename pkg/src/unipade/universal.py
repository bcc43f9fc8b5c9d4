"""Certified witnesses for universal Pade approximation.

Given disjoint samples L (where the approximants must reproduce f) and K
(where they must approximate a target h), the constructors fit a rational
function to the piecewise target, perturb it by ``d z^T`` so that its
numerator degree hits the chosen p exactly, and certify the result point by
point in exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chordal import chi_array
from .compacta import CompactSample, complement_components, edge_points
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import NotInDError, PipelineError, PreconditionError
from .gaussian import ONE, GaussianRational, exact, from_float
from .pade import hankel_det, in_E, pade_jacobi, pade_solve
from .poly import EXACT, FLOAT, Polynomial, poly_gcd, poly_roots
from .rational import (INF, RationalFunction, exact_poles, is_infinite, principal_parts,
                       rat_derivative)
from .series import jet_of_rational

__all__ = [
    "IndexSetF",
    "ConstructionProblem",
    "FitTarget",
    "FitResult",
    "Certificate",
    "UniversalWitness",
    "runge_fit",
    "construct_candidate",
    "construct_candidate_poly",
    "verify_certificate",
    "exactify",
    "fault_double_d",
    "fault_delete_pole",
    "LADDER_LENGTH",
]

LADDER_LENGTH = 40
MAX_DOUBLINGS = 64
KREFINE = 4  # K fit targets: subdivisions per edge between adjacent nodes
CHORDAL = "chordal"
EUCLIDEAN = "euclidean"


# index sets -----------------------------------------------------------------


@dataclass(frozen=True)
class IndexSetF:
    """Explicit (p, q) pairs plus an optional generating rule.

    Rules: ``all`` (every pair), ``diagonal`` (p = q), ``row:k`` (q = k),
    ``column:k`` (p = k, finite).  Pairs are generated up to ``horizon``.
    """

    pairs: tuple = ()
    rule: str | None = None
    horizon: int = 200

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(p), int(q)) for p, q in self.pairs))
        if any(p < 0 or q < 0 for p, q in self.pairs):
            raise PreconditionError("index pairs must be nonnegative")
        if self.rule is not None:
            self._rule_parts()

    def _rule_parts(self):
        name, _, arg = self.rule.partition(":")
        if name in ("all", "diagonal") and not arg:
            return name, None
        if name in ("row", "column") and arg.isdigit():
            return name, int(arg)
        raise PreconditionError(f"unknown index rule {self.rule!r}")

    def candidates(self) -> list[tuple[int, int]]:
        out = set(self.pairs)
        if self.rule is not None:
            name, k = self._rule_parts()
            H = self.horizon
            if name == "all":
                out |= {(p, q) for p in range(H + 1) for q in range(H + 1)}
            elif name == "diagonal":
                out |= {(p, p) for p in range(H + 1)}
            elif name == "row":
                out |= {(p, k) for p in range(H + 1)}
            else:
                out |= {(k, q) for q in range(H + 1)}
        return sorted(out, key=lambda pq: (pq[0] + pq[1], pq[0]))

    def first_admissible(self, p_min: int, q_min: int) -> tuple[int, int]:
        for p, q in self.candidates():
            if p >= p_min and q >= q_min:
                return p, q
        raise PipelineError(f"no (p,q) in F with p >= {p_min} and q >= {q_min}",
                            detail={"p_min": p_min, "q_min": q_min})

    def cofinal_tail(self, both: bool = False) -> list[tuple[int, int]]:
        """Greedy strictly increasing chain through the candidates; its
        length measures cofinality up to the horizon."""
        chain: list[tuple[int, int]] = []
        for p, q in sorted(self.candidates()):
            if not chain:
                chain.append((p, q))
                continue
            lp, lq = chain[-1]
            if p > lp and (q > lq if both else q >= lq):
                chain.append((p, q))
        return chain

    def to_json(self) -> dict:
        out: dict = {"pairs": [list(pq) for pq in self.pairs]}
        if self.rule is not None:
            out["rule"] = self.rule
            out["horizon"] = self.horizon
        return out


# problems, fits, certificates ------------------------------------------------


def exactify(R):
    """Lossless exact copy of a float-mode polynomial or rational function."""
    if isinstance(R, Polynomial):
        if R.mode == EXACT:
            return R
        return Polynomial(tuple(from_float(c) for c in R.coeffs), EXACT)
    if R.mode == EXACT:
        return R
    return RationalFunction(exactify(R.num), exactify(R.den))


def _as_rational(R) -> RationalFunction:
    if isinstance(R, Polynomial):
        R = RationalFunction.from_poly(R)
    return exactify(R)


def _inclusion(sample: CompactSample, tol: Tolerances) -> float:
    return tol.tau_inclusion if tol.tau_inclusion is not None else sample.grid.h / 2


def _dist(pole: complex, pts: np.ndarray) -> float:
    return float(np.min(np.abs(pts - pole))) if len(pts) else math.inf


def _poles(R: RationalFunction, tol: Tolerances) -> list[tuple[object, int]]:
    if R.den.degree < 1:
        return []
    found = exact_poles(R.den, tol.tau_root)
    if found is not None:
        return found
    return [(from_float(r), m) for r, m in poly_roots(R.den.to_float(), tol.tau_root)]


@dataclass(frozen=True, eq=False)
class ConstructionProblem:
    L: CompactSample
    K: CompactSample
    g: RationalFunction
    h: RationalFunction
    F: IndexSetF
    s: int = 0
    eps: float = 1e-3
    metric: str = CHORDAL
    pole_markers: tuple = ()
    fit_order: int | None = None
    deg_cap: int = 128

    def __post_init__(self):
        object.__setattr__(self, "g", _as_rational(self.g))
        object.__setattr__(self, "h", _as_rational(self.h))
        object.__setattr__(self, "pole_markers", tuple(exact(z) for z in self.pole_markers))
        if self.s < 0:
            raise PreconditionError("s must be nonnegative")
        if not self.eps > 0:
            raise PreconditionError("eps must be positive")
        if self.metric not in (CHORDAL, EUCLIDEAN):
            raise PreconditionError(f"unknown metric {self.metric!r}")

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES):
        if self.L.is_empty() or self.K.is_empty():
            raise PreconditionError("L and K must be nonempty samples")
        if _points_meet(self.L.points, self.K.points):
            raise PreconditionError("disjointness: L and K share sample points")
        pts = np.concatenate([self.L.points, self.K.points])
        tau = min(_inclusion(self.L, tol), _inclusion(self.K, tol))
        for pole, _ in _poles(self.g, tol):
            if _dist(complex(pole), pts) <= tau:
                raise PreconditionError(f"g has a pole at {complex(pole)} on L or K")
        for z in self.pole_markers:
            if _dist(complex(z), pts) <= tau:
                raise PreconditionError(f"pole marker {complex(z)} lies on L or K")


def _points_meet(a: np.ndarray, b: np.ndarray) -> bool:
    return bool(set(np.asarray(a, complex).tolist()) & set(np.asarray(b, complex).tolist()))


@dataclass(frozen=True)
class FitTarget:
    """Samples of the ``order``-th derivative of the target at ``points``."""

    points: np.ndarray
    values: np.ndarray
    order: int = 0


@dataclass(frozen=True, eq=False)
class FitResult:
    R: RationalFunction
    residual: float
    degree: int
    poles: tuple
    nodes: np.ndarray
    rho: object


def leja_points(candidates: np.ndarray, n: int) -> np.ndarray:
    """First n discrete Leja points of a candidate set (distinct points only)."""
    cand = np.unique(np.asarray(candidates, dtype=complex))
    n = min(n, len(cand))
    if n == 0:
        return cand[:0]
    centroid = cand.mean()
    idx = [int(np.argmax(np.abs(cand - centroid)))]
    logsum = np.zeros(len(cand))
    for _ in range(n - 1):
        with np.errstate(divide="ignore"):
            logsum += np.log(np.abs(cand - cand[idx[-1]]))
        idx.append(int(np.argmax(logsum)))
    return cand[idx]


def _leja_scale(nodes: np.ndarray) -> Fraction:
    """Power of two near the capacity estimate of the node set."""
    if len(nodes) < 2:
        return Fraction(1)
    cap = math.exp(float(np.mean(np.log(np.abs(nodes[-1] - nodes[:-1])))))
    return Fraction(2) ** round(math.log2(cap))


def _rising(j: int, l: int) -> int:
    out = 1
    for i in range(l):
        out *= j + i
    return out


def _newton_block(z: np.ndarray, l: int, nodes: np.ndarray, rho: float) -> np.ndarray:
    """Columns q_k^{(l)}(z), k = 0..len(nodes), for the Newton basis
    q_0 = 1, q_{k+1} = q_k (z - x_k) / rho."""
    derivs = [np.ones(len(z), dtype=complex)] + [np.zeros(len(z), dtype=complex)] * l
    cols = [derivs[l]]
    for x in nodes:
        w = z - x
        derivs = [(derivs[i] * w + (i * derivs[i - 1] if i else 0)) / rho for i in range(l + 1)]
        cols.append(derivs[l])
    return np.stack(cols, axis=1)


def _pole_block(z: np.ndarray, l: int, poles) -> np.ndarray:
    cols = []
    for pole, m in poles:
        w = z - pole
        for j in range(1, m + 1):
            cols.append((-1) ** l * _rising(j, l) * w ** (-j - l))
    return np.stack(cols, axis=1) if cols else np.zeros((len(z), 0), dtype=complex)


def runge_fit(targets: list[FitTarget], poles=(), eps_fit: float = 1e-8, deg_cap: int = 80,
              deg_min: int = 0) -> FitResult:
    """Weighted least squares in a Newton-Leja polynomial basis plus
    prescribed poles.

    The degree grows until the max weighted residual (weight 1/l! on l-th
    derivative rows) drops below ``eps_fit``; it is also capped by the
    number of distinct target points.  Nodes are target points and the scale
    is a power of two, so the float coefficients expand exactly and the
    returned function's poles are exactly the prescribed ones.
    """
    targets = [t for t in targets if len(t.points)]
    if not targets:
        raise PreconditionError("runge_fit needs target points")
    pts = np.concatenate([np.asarray(t.points, dtype=complex) for t in targets])
    poles = tuple((exact(p), int(m)) for p, m in poles)
    for p, _ in poles:
        if _dist(complex(p), pts) == 0:
            raise PreconditionError(f"prescribed pole {complex(p)} coincides with a target point")
    nodes = leja_points(pts, deg_cap)
    rho_q = _leja_scale(nodes)
    rho = float(rho_q)
    fpoles = [(complex(p), m) for p, m in poles]
    blocks = [(_newton_block(np.asarray(t.points, dtype=complex), t.order, nodes, rho),
               _pole_block(np.asarray(t.points, dtype=complex), t.order, fpoles)) for t in targets]
    v = np.concatenate([np.asarray(t.values, dtype=complex) for t in targets])
    w = np.concatenate([np.full(len(t.points), 1.0 / math.factorial(t.order)) for t in targets])
    best = (math.inf, None, None)
    for deg in range(min(deg_min, len(nodes)), len(nodes) + 1):
        M = np.vstack([np.hstack([nb[:, : deg + 1], pb]) for nb, pb in blocks])
        scale = np.linalg.norm(M, axis=0)
        scale[scale == 0] = 1.0
        coef, *_ = np.linalg.lstsq(M * w[:, None] / scale, v * w, rcond=None)
        coef = coef / scale
        res = float(np.max(np.abs(M @ coef - v) * w)) if len(v) else 0.0
        if res < best[0]:
            best = (res, deg, coef)
        if res < eps_fit:
            break
    else:
        raise PipelineError(f"runge_fit: degree cap {len(nodes)} reached with residual {best[0]:.3e} >= {eps_fit:.3e}",
                            detail={"best_residual": best[0], "degree": best[1]})
    res, deg, coef = best
    Rf = _expand(coef, deg, poles, nodes[:deg], rho_q)
    return FitResult(Rf, res, deg, poles, nodes[:deg], rho_q)


def _expand(coef, deg, poles, nodes, rho) -> RationalFunction:
    inv_rho = GaussianRational.from_parts(1 / rho)
    q = Polynomial.const(1, EXACT)
    P = Polynomial.const(from_float(coef[0]), EXACT)
    for k in range(deg):
        q = q * Polynomial((-from_float(nodes[k]) * inv_rho, inv_rho), EXACT)
        P = P + q.scale(from_float(coef[k + 1]))
    den = Polynomial.const(1, EXACT)
    for p, m in poles:
        den = den * Polynomial((-p, 1), EXACT) ** m
    num = P * den
    i = deg + 1
    for p, m in poles:
        lin = Polynomial((-p, 1), EXACT)
        for j in range(1, m + 1):
            num = num + (den // lin ** j).scale(from_float(coef[i]))
            i += 1
    return RationalFunction(num, den)


@dataclass(eq=False)
class Certificate:
    pq: tuple
    metric: str
    arithmetic: str
    eps: float
    s: int
    passes: bool = False
    violations: list = field(default_factory=list)
    d: object = None
    T: int | None = None
    hankel_margins: list = field(default_factory=list)
    hankel_log10: list = field(default_factory=list)
    delta_E: float = math.nan
    err_ii: list = field(default_factory=list)
    err_iii: float = math.nan
    err_fit: float | None = None
    fit_degree: int | None = None
    err_ii_per_zeta: list = field(default_factory=list)
    err_iii_per_zeta: list = field(default_factory=list)
    err_iii_per_sample: list = field(default_factory=list)
    distinct_pades: int = 0
    tolerances: dict = field(default_factory=dict)
    ladder: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def err_ii_max(self) -> float:
        return max(self.err_ii) if self.err_ii else math.nan


@dataclass(eq=False)
class UniversalWitness:
    f: RationalFunction
    certificate: Certificate
    A: Polynomial | None = None
    B: Polynomial | None = None

    @property
    def pq(self):
        return self.certificate.pq


# certification ----------------------------------------------------------------


def _log10_abs(v) -> float:
    if isinstance(v, GaussianRational):
        a2 = v.abs2()
        if a2 == 0:
            return -math.inf
        return (math.log10(a2.numerator) - math.log10(a2.denominator)) / 2
    a = abs(complex(v))
    return math.log10(a) if a > 0 else -math.inf


def _metric_values(a: np.ndarray, b: np.ndarray, metric: str) -> np.ndarray:
    if metric == CHORDAL:
        return chi_array(a, b)
    with np.errstate(all="ignore"):
        out = np.abs(a - b)
    out[np.isinf(a) | np.isinf(b)] = math.inf
    return out


def _deriv_values(R: RationalFunction, s: int, pts: np.ndarray, tau_pole: float) -> list[np.ndarray]:
    return [rat_derivative(R, l).eval_array(pts, tau_pole) for l in range(s + 1)]


def verify_certificate(f: RationalFunction, pq, L: CompactSample, K: CompactSample, h, s: int,
                       eps: float, metric: str = CHORDAL, tol: Tolerances = DEFAULT_TOLERANCES,
                       *, d=None, T=None, err_fit=None, fit_degree=None,
                       check_solve: bool = True) -> Certificate:
    """Check conditions (i)-(iii) for every expansion point of L.

    Never raises on a failed check: each failure is appended to
    ``violations`` by name.  In exact mode a Pade approximant that reduces to
    f itself gives err_ii = 0 identically; otherwise derivatives are compared
    pointwise on L.
    """
    p, q = (int(pq[0]), int(pq[1]))
    h = h if isinstance(h, RationalFunction) else RationalFunction.from_poly(h)
    if h.mode != f.mode:
        h = exactify(h) if f.mode == EXACT else h.to_float()
    mode = f.mode
    cert = Certificate((p, q), metric, mode, eps, s, d=d, T=T, err_fit=err_fit, fit_degree=fit_degree,
                       tolerances=tol.to_json())
    viol = cert.violations
    Lp = np.asarray(L.points, dtype=complex)
    Kp = np.asarray(K.points, dtype=complex)
    if len(Lp) == 0 or len(Kp) == 0:
        viol.append("empty_sample")
        return cert
    if _points_meet(Lp, Kp):
        viol.append("disjointness")
    if mode == EXACT and poly_gcd(f.num, f.den).degree > 0:
        viol.append("coprimality")
    LK = np.concatenate([Lp, Kp])
    h_K = h.eval_array(Kp, tol.tau_pole)
    f_derivs = None
    cache: dict = {}
    deltas, ii_rows, iii_rows = [], [], []
    for zf in Lp:
        zeta = from_float(zf) if mode == EXACT else complex(zf)
        dz = f.den(zeta)
        if (mode == EXACT and not dz) or (mode == FLOAT and abs(dz) <= tol.tau_pole):
            _add(viol, "pole_on_L")
            cert.hankel_margins.append(0.0)
            cert.hankel_log10.append(-math.inf)
            cert.err_ii_per_zeta.append(math.inf)
            cert.err_iii_per_zeta.append(math.inf)
            continue
        jet = jet_of_rational(f, zeta, p + q + s, tol.tau_root)
        rep = hankel_det(jet, p, q, tol.tau_hankel)
        cert.hankel_margins.append(float(rep.margin))
        cert.hankel_log10.append(_log10_abs(rep.det))
        if not rep.in_D:
            _add(viol, "hankel_in_D")
            cert.err_ii_per_zeta.append(math.inf)
            cert.err_iii_per_zeta.append(math.inf)
            continue
        pj = pade_jacobi(jet, p, q, tol.tau_hankel)
        if mode == EXACT and check_solve:
            try:
                ps = pade_solve(jet, p, q, tol.tau_hankel)
                if ps.rational() != pj.rational():
                    _add(viol, "jacobi_solve_agreement")
            except NotInDError:
                _add(viol, "jacobi_solve_agreement")
        key = (pj.A.coeffs, pj.B.coeffs)
        if key not in cache:
            ok_E, delta = in_E(pj, LK, tol.tau_E)
            Rp = pj.rational()
            if mode == EXACT and Rp == f:
                ii = [0.0] * (s + 1)
            else:
                if f_derivs is None:
                    f_derivs = _deriv_values(f, s, Lp, tol.tau_pole)
                pd = _deriv_values(Rp, s, Lp, tol.tau_pole)
                ii = [float(np.max(_metric_values(a, b, EUCLIDEAN))) for a, b in zip(pd, f_derivs)]
            iii = _metric_values(Rp.eval_array(Kp, tol.tau_pole), h_K, metric)
            cache[key] = (ok_E, delta, ii, iii)
        ok_E, delta, ii, iii = cache[key]
        if not ok_E:
            _add(viol, "E_margin")
        deltas.append(delta)
        ii_rows.append(ii)
        iii_rows.append(iii)
        cert.err_ii_per_zeta.append(max(ii))
        cert.err_iii_per_zeta.append(float(np.max(iii)))
    cert.distinct_pades = len(cache)
    cert.delta_E = min(deltas) if deltas else math.nan
    if ii_rows:
        cert.err_ii = [max(r[l] for r in ii_rows) for l in range(s + 1)]
        per_sample = np.max(np.vstack(iii_rows), axis=0)
        cert.err_iii_per_sample = [float(v) for v in per_sample]
        cert.err_iii = float(np.max(per_sample))
        if not max(cert.err_ii) < eps:
            _add(viol, "err_ii")
        if not cert.err_iii < eps:
            _add(viol, "err_iii")
    else:
        cert.err_ii = [math.inf] * (s + 1)
        cert.err_iii = math.inf
    cert.passes = not viol
    return cert


def _add(viol: list, name: str):
    if name not in viol:
        viol.append(name)


# construction -----------------------------------------------------------------


def _refined_K(problem: ConstructionProblem, avoid: list) -> np.ndarray:
    """K samples plus edge points between adjacent nodes, keeping a grid
    step away from the poles in ``avoid``; fitting on these keeps the
    approximation from oscillating between samples."""
    Kp = problem.K.points
    extra = edge_points(problem.K, KREFINE)
    if len(extra) and avoid:
        pz = np.array([complex(z) for z in avoid])
        extra = extra[np.min(np.abs(extra[:, None] - pz[None, :]), axis=1) > problem.K.grid.h]
    return np.concatenate([Kp, extra])


def _fit_targets(problem: ConstructionProblem, wK: RationalFunction, N: int, tol: Tolerances):
    Lp = problem.L.points
    avoid = [z for src in (problem.g, wK) if isinstance(src, RationalFunction) for z, _ in _poles(src, tol)]
    Kp = _refined_K(problem, avoid)
    targets = []
    # derivative rows only on L: condition (iii) on K is a value condition
    for l in range(N + 1):
        targets.append(FitTarget(Lp, rat_derivative(problem.g, l).eval_array(Lp, tol.tau_pole), l))
    targets.append(FitTarget(Kp, wK.eval_array(Kp, tol.tau_pole), 0))
    for t in targets:
        if not np.all(np.isfinite(t.values)):
            raise PipelineError("fit target is not finite on the samples (pole on L or K)")
    return targets


def _power_of_two_below(x: float) -> GaussianRational:
    e = math.floor(math.log2(x))
    return GaussianRational.from_parts(Fraction(2) ** e)


def _d_ladder(problem: ConstructionProblem, A: Polynomial, B: Polynomial, T: int, pq, fit: FitResult,
              tol: Tolerances) -> UniversalWitness:
    """Geometric ladder on d.

    Starting from eps / (1 + max|z|^T max|B|), d is first doubled while the
    cheap screen (exact coprimality, sup over K of the target error of f
    itself) holds, then halved until a rung passes the full certificate.
    The accepted d is therefore the largest passing rung, and 2d is a
    recorded failing one.
    """
    Lp, Kp = problem.L.points, problem.K.points
    LK = np.concatenate([Lp, Kp])
    zT = Polynomial.monomial(T, 1, EXACT)
    zTB = zT * B
    h_K = problem.h.eval_array(Kp, tol.tau_pole)
    maxL = float(np.max(np.abs(Lp)))
    maxB = float(np.max(np.abs(B.eval_array(LK))))
    M = float(np.max(np.abs(LK)))
    trace: list[dict] = []

    def screen(d):
        num = A + zTB.scale(d)
        coprime = poly_gcd(num, B).degree == 0
        f = RationalFunction(num, B)
        err = float(np.max(_metric_values(f.eval_array(Kp, tol.tau_pole), h_K, problem.metric)))
        ok = coprime and err < problem.eps
        trace.append({"d": str(d), "perturbation_L": abs(complex(d)) * maxL ** T,
                      "coprime": coprime, "err_iii": err, "screen": ok})
        return ok, f

    d = _power_of_two_below(problem.eps / (1 + M ** T * maxB))
    ok, _ = screen(d)
    if ok:
        for _ in range(MAX_DOUBLINGS):
            ok2, _ = screen(d * 2)
            if not ok2:
                break
            d = d * 2
        rungs = [d / 2 ** j for j in range(LADDER_LENGTH)]
    else:
        rungs = [d / 2 ** j for j in range(1, LADDER_LENGTH + 1)]
    last = None
    for rung in rungs:
        ok, f = screen(rung)
        if not ok:
            continue
        cert = verify_certificate(f, pq, problem.L, problem.K, problem.h, problem.s, problem.eps,
                                  problem.metric, tol, d=rung, T=T, err_fit=fit.residual,
                                  fit_degree=fit.degree)
        cert.ladder = trace
        trace[-1]["certificate"] = cert.passes
        if cert.passes:
            return UniversalWitness(f, cert, A, B)
        last = cert
    raise PipelineError("d-ladder exhausted without a passing certificate",
                        detail={"ladder": trace, "violations": last.violations if last else []})


def construct_candidate(problem: ConstructionProblem, tol: Tolerances = DEFAULT_TOLERANCES) -> UniversalWitness:
    """Rational-target construction: fit, perturb, certify."""
    problem.validate(tol)
    mu = principal_parts(problem.h, problem.K, tol.tau_root, tol.tau_inclusion)
    mu = exactify(mu)
    wK = problem.h - mu
    N = problem.s if problem.fit_order is None else problem.fit_order
    targets = _fit_targets(problem, wK, N, tol)
    pts = np.concatenate([problem.L.points, problem.K.points])
    tau = min(_inclusion(problem.L, tol), _inclusion(problem.K, tol))
    basis: dict = {}
    for src in (problem.g, wK):
        for pole, m in _poles(src, tol):
            if _dist(complex(pole), pts) > tau:
                basis[pole] = max(basis.get(pole, 0), m)
    for z in problem.pole_markers:
        basis[z] = max(basis.get(z, 0), 1)
    poles = tuple(sorted(basis.items(), key=lambda pm: (complex(pm[0]).real, complex(pm[0]).imag)))
    fit = runge_fit(targets, poles, problem.eps / 2, problem.deg_cap)
    AB = mu + fit.R
    A, B = AB.num, AB.den
    degA = A.degree if not A.is_zero() else 0
    p, q = problem.F.first_admissible(max(degA, B.degree) + 1, B.degree + 1)
    T = p - B.degree
    return _d_ladder(problem, A, B, T, (p, q), fit, tol)


def construct_candidate_poly(problem: ConstructionProblem, tol: Tolerances = DEFAULT_TOLERANCES) -> UniversalWitness:
    """Polynomial-target construction f = h~ + d z^p, euclidean on K."""
    problem.validate(tol)
    if problem.h.den.degree > 0:
        raise PreconditionError("construct_candidate_poly needs a polynomial target h")
    if problem.metric != EUCLIDEAN:
        raise PreconditionError("construct_candidate_poly measures condition (iii) in the euclidean metric")
    labels, count, frame = complement_components(problem.K.mask(pad=1))
    if count != len(frame):
        raise PreconditionError("K must have a connected complement (flood fill found bounded components)")
    N = problem.s if problem.fit_order is None else problem.fit_order
    targets = _fit_targets(problem, problem.h, N, tol)
    fit = runge_fit(targets, (), problem.eps / 2, problem.deg_cap)
    A = fit.R.num
    degA = A.degree if not A.is_zero() else 0
    p, q = problem.F.first_admissible(degA + 1, 0)
    B = Polynomial.const(1, EXACT)
    return _d_ladder(problem, A, B, p, (p, q), fit, tol)


# fault injection ----------------------------------------------------------------


def fault_double_d(w: UniversalWitness) -> RationalFunction:
    """The witness function rebuilt with d replaced by 2d."""
    c = w.certificate
    if w.A is None or c.d is None:
        raise PreconditionError("witness lacks its construction data")
    zTB = Polynomial.monomial(c.T, 1, EXACT) * w.B
    return RationalFunction(w.A + zTB.scale(c.d * 2), w.B)


def fault_delete_pole(w: UniversalWitness, tol: Tolerances = DEFAULT_TOLERANCES, index: int = 0) -> RationalFunction:
    """Drop one linear factor of a denominator pole, keeping the numerator."""
    poles = _poles(w.f, tol)
    if not poles:
        raise PreconditionError("witness has no poles to delete")
    pole, _ = poles[index % len(poles)]
    den = w.f.den // Polynomial((-pole, 1), EXACT)
    return RationalFunction(w.f.num, den)
