"""JSON encodings for every exchanged object, plus table output.

Exact scalars are ``[re, im]`` with each part an integer or a ``"num/den"``
string; float scalars are ``[re, im]`` floats.  Non-finite floats are
written as the strings ``"inf"``, ``"-inf"`` and ``"nan"``.  Field order is
fixed, so equal inputs serialize to identical bytes.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction

import numpy as np

from .compacta import CompactSample, GridSpec
from .errors import ParseError
from .gaussian import GaussianRational
from .pade import HankelReport, PadeApproximant
from .poly import EXACT, FLOAT, Polynomial
from .rational import RationalFunction, is_infinite
from .regions import region_from_json
from .series import TaylorJet
from .universal import (Certificate, ConstructionProblem, IndexSetF, UniversalWitness)

__all__ = [
    "dumps",
    "num",
    "scalar_to_json",
    "scalar_from_json",
    "poly_to_json",
    "poly_from_json",
    "rational_to_json",
    "rational_from_json",
    "jet_to_json",
    "jet_from_json",
    "pade_to_json",
    "hankel_to_json",
    "grid_to_json",
    "grid_from_json",
    "sample_to_json",
    "sample_from_json",
    "problem_to_json",
    "problem_from_json",
    "certificate_to_json",
    "witness_to_json",
    "witness_from_json",
    "two_column",
    "region_from_json",
]


def num(x):
    """JSON-safe float (non-finite values become strings)."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def _parse_num(v) -> float:
    if isinstance(v, str):
        try:
            return float(Fraction(v)) if "/" in v else float(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad number {v!r}") from exc
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ParseError(f"bad number {v!r}")
    return float(v)


def _frac_str(f: Fraction):
    return f.numerator if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def scalar_to_json(z):
    if isinstance(z, GaussianRational):
        return [_frac_str(z.real), _frac_str(z.imag)]
    if is_infinite(z):
        return "inf"
    z = complex(z)
    return [num(z.real), num(z.imag)]


def _frac(v) -> Fraction:
    try:
        if isinstance(v, float):
            if not math.isfinite(v):
                raise ParseError("non-finite value in exact mode")
            return Fraction(v)
        if isinstance(v, (int, str)) and not isinstance(v, bool):
            return Fraction(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad exact component {v!r}") from exc
    raise ParseError(f"bad exact component {v!r}")


def scalar_from_json(v, mode: str):
    if isinstance(v, (int, float, str)) and not isinstance(v, bool):
        v = [v, 0]
    if not isinstance(v, (list, tuple)) or len(v) != 2:
        raise ParseError(f"expected a scalar [re, im], got {v!r}")
    if mode == EXACT:
        return GaussianRational.from_parts(_frac(v[0]), _frac(v[1]))
    return complex(_parse_num(v[0]), _parse_num(v[1]))


def _mode(obj: dict, default: str | None = None) -> str:
    mode = obj.get("mode", default)
    if mode not in (EXACT, FLOAT):
        raise ParseError(f"mode must be 'exact' or 'float', got {mode!r}")
    return mode


def poly_to_json(P: Polynomial) -> dict:
    return {"mode": P.mode, "coeffs": [scalar_to_json(c) for c in P.coeffs]}


def poly_from_json(obj, mode: str | None = None) -> Polynomial:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise ParseError("polynomial needs a 'coeffs' list")
    m = mode or _mode(obj, FLOAT)
    return Polynomial(tuple(scalar_from_json(c, m) for c in obj["coeffs"]), m)


def rational_to_json(R: RationalFunction) -> dict:
    return {"num": poly_to_json(R.num), "den": poly_to_json(R.den)}


def rational_from_json(obj, mode: str | None = None) -> RationalFunction:
    """A RationalFunction object, or a bare polynomial (denominator 1)."""
    if not isinstance(obj, dict):
        raise ParseError("rational function must be a JSON object")
    if "coeffs" in obj:
        P = poly_from_json(obj, mode)
        return RationalFunction.from_poly(P)
    try:
        n, d = obj["num"], obj["den"]
    except KeyError as exc:
        raise ParseError("rational function needs 'num' and 'den'") from exc
    m = mode or (_mode(n, FLOAT) if isinstance(n, dict) else FLOAT)
    return RationalFunction(poly_from_json(n, m), poly_from_json(d, m))


def jet_to_json(jet: TaylorJet) -> dict:
    return {"mode": jet.mode, "center": scalar_to_json(jet.center),
            "coeffs": [scalar_to_json(c) for c in jet.coeffs]}


def jet_from_json(obj, mode: str | None = None) -> TaylorJet:
    if not isinstance(obj, dict) or "coeffs" not in obj:
        raise ParseError("jet needs 'coeffs'")
    m = mode or _mode(obj, FLOAT)
    center = scalar_from_json(obj.get("center", [0, 0]), m)
    coeffs = tuple(scalar_from_json(c, m) for c in obj["coeffs"])
    if not coeffs:
        raise ParseError("jet needs at least one coefficient")
    return TaylorJet(center, coeffs, m)


def pade_to_json(P: PadeApproximant) -> dict:
    return {"p": P.p, "q": P.q, "zeta": scalar_to_json(P.zeta), "A": poly_to_json(P.A),
            "B": poly_to_json(P.B), "source": P.source}


def hankel_to_json(r: HankelReport) -> dict:
    return {"p": r.p, "q": r.q, "zeta": scalar_to_json(r.zeta), "det": scalar_to_json(r.det),
            "in_D": r.in_D, "margin": num(r.margin)}


def grid_to_json(g: GridSpec) -> dict:
    return {k: num(v) for k, v in g.to_json().items()}


def grid_from_json(obj) -> GridSpec:
    try:
        return GridSpec(*(_parse_num(obj[k]) for k in ("xmin", "xmax", "ymin", "ymax", "h")))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"grid needs xmin, xmax, ymin, ymax, h: {exc}") from exc


def sample_to_json(S: CompactSample) -> dict:
    out = {"label": S.label, "grid": grid_to_json(S.grid),
           "points": [[num(z.real), num(z.imag)] for z in S.points]}
    if S.meta:
        out["meta"] = {k: num(v) if isinstance(v, float) else v for k, v in S.meta.items()}
    return out


def sample_from_json(obj) -> CompactSample:
    if not isinstance(obj, dict) or "grid" not in obj or "points" not in obj:
        raise ParseError("compact sample needs 'grid' and 'points'")
    pts = np.array([complex(_parse_num(p[0]), _parse_num(p[1])) for p in obj["points"]], dtype=complex)
    S = CompactSample(pts, grid_from_json(obj["grid"]), obj.get("label", ""), dict(obj.get("meta", {})))
    S.indices()  # points must lie in the box
    return S


def _index_from_json(obj) -> IndexSetF:
    if not isinstance(obj, dict):
        raise ParseError("F must be an object with 'pairs' and optional 'rule'")
    try:
        return IndexSetF(tuple(tuple(pq) for pq in obj.get("pairs", [])), obj.get("rule"),
                         int(obj.get("horizon", 200)))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad index set: {exc}") from exc


def problem_to_json(P: ConstructionProblem) -> dict:
    return {"L": sample_to_json(P.L), "K": sample_to_json(P.K), "g": rational_to_json(P.g),
            "h": rational_to_json(P.h), "F": P.F.to_json(), "s": P.s, "eps": num(P.eps),
            "mode": P.metric, "pole_markers": [scalar_to_json(z) for z in P.pole_markers],
            "fit_order": P.fit_order, "deg_cap": P.deg_cap}


def problem_from_json(obj) -> ConstructionProblem:
    try:
        return ConstructionProblem(
            L=sample_from_json(obj["L"]),
            K=sample_from_json(obj["K"]),
            g=rational_from_json(obj.get("g", {"coeffs": []})),
            h=rational_from_json(obj["h"]),
            F=_index_from_json(obj.get("F", {"rule": "all"})),
            s=int(obj.get("s", 0)),
            eps=_parse_num(obj.get("eps", 1e-3)),
            metric=obj.get("mode", "chordal"),
            pole_markers=tuple(scalar_from_json(z, EXACT) for z in obj.get("pole_markers", [])),
            fit_order=obj.get("fit_order"),
            deg_cap=int(obj.get("deg_cap", 128)),
        )
    except KeyError as exc:
        raise ParseError(f"problem is missing field {exc}") from exc
    except (TypeError, AttributeError) as exc:
        raise ParseError(f"malformed problem: {exc}") from exc


def certificate_to_json(c: Certificate) -> dict:
    return {
        "passes": c.passes,
        "violations": list(c.violations),
        "pq": list(c.pq),
        "metric": c.metric,
        "arithmetic": c.arithmetic,
        "eps": num(c.eps),
        "s": c.s,
        "d": None if c.d is None else scalar_to_json(c.d),
        "T": c.T,
        "err_fit": num(c.err_fit),
        "fit_degree": c.fit_degree,
        "err_ii": [num(v) for v in c.err_ii],
        "err_iii": num(c.err_iii),
        "delta_E": num(c.delta_E),
        "hankel_margins": [num(v) for v in c.hankel_margins],
        "hankel_log10": [num(v) for v in c.hankel_log10],
        "err_ii_per_zeta": [num(v) for v in c.err_ii_per_zeta],
        "err_iii_per_zeta": [num(v) for v in c.err_iii_per_zeta],
        "err_iii_per_sample": [num(v) for v in c.err_iii_per_sample],
        "distinct_pades": c.distinct_pades,
        "tolerances": {k: num(v) for k, v in c.tolerances.items()},
        "ladder": [{k: num(v) for k, v in r.items()} for r in c.ladder],
    }


def witness_to_json(w: UniversalWitness, problem: ConstructionProblem | None = None) -> dict:
    c = w.certificate
    out = {"f": rational_to_json(w.f), "pq": list(c.pq)}
    if w.A is not None:
        out["construction"] = {"A": poly_to_json(w.A), "B": poly_to_json(w.B),
                               "d": scalar_to_json(c.d), "T": c.T}
    out["certificate"] = certificate_to_json(c)
    if problem is not None:
        out["problem"] = problem_to_json(problem)
    return out


def witness_from_json(obj):
    """Returns ``(f, pq, problem_or_None, construction_consistent)``.

    When construction data is present, f is rebuilt from A, B, d and T so
    that edits to those fields take effect.
    """
    try:
        f = rational_from_json(obj["f"])
        pq = tuple(int(v) for v in obj["pq"])
        consistent = True
        if "construction" in obj:
            cons = obj["construction"]
            A = poly_from_json(cons["A"], EXACT)
            B = poly_from_json(cons["B"], EXACT)
            d = scalar_from_json(cons["d"], EXACT)
            T = int(cons["T"])
            rebuilt = RationalFunction(A + (Polynomial.monomial(T, 1, EXACT) * B).scale(d), B)
            consistent = rebuilt == f
            f = rebuilt
        problem = problem_from_json(obj["problem"]) if "problem" in obj else None
    except KeyError as exc:
        raise ParseError(f"witness is missing field {exc}") from exc
    return f, pq, problem, consistent


_LEAF_LIST = re.compile(r"\[[^\[\]{}]*\]")


def dumps(obj) -> str:
    """Indented JSON with innermost arrays kept on one line."""
    text = json.dumps(obj, indent=2, allow_nan=False)
    return _LEAF_LIST.sub(lambda m: re.sub(r"\s*\n\s*", "", m.group(0)).replace(",", ", "), text) + "\n"


def two_column(values, header: tuple[str, str] = ("index", "error"), sep: str = " ") -> str:
    """Plain two-column table with 17 significant digits."""
    lines = [f"# {header[0]}{sep}{header[1]}"]
    for i, v in enumerate(values):
        lines.append(f"{i}{sep}{float(v):.17g}")
    return "\n".join(lines) + "\n"
