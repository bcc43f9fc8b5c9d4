"""Command-line front end.

Exit codes: 0 success, 2 precondition failure, 3 pipeline failure (including
a failing certificate), 4 parse error.  Failures print a JSON object with an
``error`` member to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import io
from .chordal import sup_chordal
from .compacta import (GridSpec, complement_exhaustion, example_46_sets, exhausting_sequence,
                       fill_holes, split_boundary_sequences)
from .config import Tolerances
from .demos import boundary_split_problem
from .errors import ParseError, PipelineError, UnipadeError
from .pade import hankel_det, pade_jacobi, pade_solve, verify_prop22
from .poly import EXACT, FLOAT
from .regions import region_from_json
from .series import jet_of_rational
from .universal import (construct_candidate, construct_candidate_poly, exactify,
                        verify_certificate)

__all__ = ["main", "build_parser"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"usage: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--mode", choices=[EXACT, FLOAT], default=None, help="arithmetic mode")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=None, help="output file or directory")
    p.add_argument("--format", dest="fmt", choices=["json", "csv", "table"], default="json")
    for name in ("hankel", "E", "pole", "root", "verify", "inclusion"):
        p.add_argument(f"--tau-{name}", type=float, default=None)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="unipade", description="Pade approximants and universal-approximation witnesses")
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    pade = groups.add_parser("pade", help="Pade approximants of a jet or rational function")
    pcmd = pade.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in ("compute", "hankel", "verify-prop22"):
        sp = pcmd.add_parser(name, parents=[common])
        if name != "verify-prop22":
            sp.add_argument("--jet", type=Path)
        sp.add_argument("--rational", type=Path)
        sp.add_argument("--zeta", default="0")
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        if name == "compute":
            sp.add_argument("--algorithm", choices=["jacobi", "solve"], default="jacobi")

    comp = groups.add_parser("compacta", help="grid compact sets")
    ccmd = comp.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sp = ccmd.add_parser("exhaust", parents=[common])
    sp.add_argument("--region", type=Path, required=True)
    sp.add_argument("--grid", required=True, help="xmin,xmax,ymin,ymax,h (write --grid=... when xmin is negative)")
    sp.add_argument("--n", type=int, required=True)
    sp = ccmd.add_parser("fill-holes", parents=[common])
    sp.add_argument("--sample", type=Path, required=True)
    sp.add_argument("--region", type=Path, required=True)
    sp = ccmd.add_parser("complement", parents=[common])
    sp.add_argument("--region", type=Path, required=True)
    sp.add_argument("--grid", required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--target", choices=["off_omega", "off_closure"], default="off_closure")
    sp = ccmd.add_parser("split", parents=[common])
    sp.add_argument("--omega", type=Path, required=True)
    sp.add_argument("--S", type=Path, required=True)
    sp.add_argument("--T", type=Path, required=True)
    sp.add_argument("--grid", required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp = ccmd.add_parser("example46", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--h", type=float, required=True)
    sp.add_argument("--box", default="-2,2,-2,1.25", help="xmin,xmax,ymin,ymax")

    uni = groups.add_parser("universal", help="universal-approximation witnesses")
    ucmd = uni.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    for name in ("construct", "construct-poly"):
        sp = ucmd.add_parser(name, parents=[common])
        sp.add_argument("--problem", type=Path, required=True)
    sp = ucmd.add_parser("verify", parents=[common])
    sp.add_argument("--witness", type=Path, required=True)
    sp.add_argument("--problem", type=Path, default=None)
    demo = ucmd.add_parser("demo")
    dcmd = demo.add_subparsers(dest="demo", required=True, parser_class=_Parser)
    sp = dcmd.add_parser("boundary-split", parents=[common])
    sp.add_argument("--eps", type=float, default=1e-3)
    sp.add_argument("--s", type=int, default=2)
    sp.add_argument("--h", type=float, default=0.125)
    return top


# helpers ---------------------------------------------------------------------


def _read_json(path: Path):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError as exc:
        raise ParseError(f"no such file: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def _grid(spec: str) -> GridSpec:
    try:
        vals = [float(v) for v in spec.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad grid spec {spec!r}") from exc
    if len(vals) != 5:
        raise ParseError("grid spec is xmin,xmax,ymin,ymax,h")
    return GridSpec(*vals)


def _zeta(text: str, mode: str):
    parts = [t.strip() for t in text.split(",")]
    if len(parts) == 1:
        parts.append("0")
    if len(parts) != 2:
        raise ParseError(f"bad zeta {text!r}; use re or re,im")
    if mode == FLOAT:
        return io.scalar_from_json([io._parse_num(p) for p in parts], FLOAT)
    return io.scalar_from_json(parts, EXACT)


def _tolerances(args) -> Tolerances:
    return Tolerances().with_overrides(
        tau_hankel=args.tau_hankel, tau_E=args.tau_E, tau_pole=args.tau_pole,
        tau_root=args.tau_root, tau_verify=args.tau_verify, tau_inclusion=args.tau_inclusion)


def _convert(R, mode):
    if mode is None or R.mode == mode:
        return R
    return exactify(R) if mode == EXACT else R.to_float()


def _emit(args, payload, files: dict | None = None) -> None:
    """Write ``files`` into --out (a directory when several files are produced)
    and print ``payload`` in the requested format."""
    if files:
        if args.out is None:
            payload = dict(payload, files={k: v for k, v in files.items() if k.endswith(".json")})
        else:
            args.out.mkdir(parents=True, exist_ok=True)
            for name, content in files.items():
                text = content if isinstance(content, str) else io.dumps(content)
                (args.out / name).write_text(text)
            payload = dict(payload, written=sorted(str(args.out / n) for n in files))
    elif args.out is not None:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(io.dumps(payload))
    sys.stdout.write(_format(payload, args.fmt))


def _format(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return io.dumps(payload)
    rows = _flat(payload)
    if fmt == "csv":
        return "key,value\n" + "".join(f"{k},{_cell(v)}\n" for k, v in rows)
    width = max((len(k) for k, _ in rows), default=0)
    return "".join(f"{k.ljust(width)}  {_cell(v)}\n" for k, v in rows)


def _cell(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return json.dumps(v) if isinstance(v, (list, dict)) else str(v)


def _flat(payload: dict, prefix: str = "") -> list:
    rows = []
    for k, v in payload.items():
        if isinstance(v, dict) and k not in ("files",):
            rows.extend(_flat(v, f"{prefix}{k}."))
        else:
            rows.append((f"{prefix}{k}", v))
    return rows


# commands --------------------------------------------------------------------


def _pade_input(args):
    mode = args.mode
    if getattr(args, "jet", None) is not None:
        jet = io.jet_from_json(_read_json(args.jet))
        if mode is not None and mode != jet.mode:
            jet = io.jet_from_json(_read_json(args.jet), mode)
        return jet, None
    if args.rational is None:
        raise ParseError("give --jet or --rational")
    R = _convert(io.rational_from_json(_read_json(args.rational)), mode)
    return None, R


def cmd_pade(args) -> int:
    tol = _tolerances(args)
    jet, R = _pade_input(args)
    if args.cmd == "verify-prop22":
        zeta = _zeta(args.zeta, R.mode)
        ok = verify_prop22(R, zeta, args.p, args.q, tol.tau_verify, tau_hankel=tol.tau_hankel)
        _emit(args, {"verify_prop22": ok, "p": args.p, "q": args.q, "zeta": io.scalar_to_json(zeta),
                     "mode": R.mode})
        return 0
    if jet is None:
        jet = jet_of_rational(R, _zeta(args.zeta, R.mode), args.p + args.q, tol.tau_root)
    if args.cmd == "hankel":
        _emit(args, io.hankel_to_json(hankel_det(jet, args.p, args.q, tol.tau_hankel)))
        return 0
    fn = pade_jacobi if args.algorithm == "jacobi" else pade_solve
    _emit(args, io.pade_to_json(fn(jet, args.p, args.q, tol.tau_hankel)))
    return 0


def _samples_payload(samples) -> tuple[dict, dict]:
    files = {f"{s.label}.json": io.sample_to_json(s) for s in samples}
    summary = {"samples": [{"label": s.label, "points": len(s)} for s in samples]}
    return summary, files


def cmd_compacta(args) -> int:
    if args.cmd == "exhaust":
        omega = region_from_json(_read_json(args.region))
        seq = exhausting_sequence(omega, _grid(args.grid), args.n)
        summary, files = _samples_payload(seq)
        sets = [s.node_set() for s in seq]
        summary["nested"] = all(a <= b for a, b in zip(sets, sets[1:]))
        _emit(args, summary, files)
    elif args.cmd == "fill-holes":
        K = io.sample_from_json(_read_json(args.sample))
        out = fill_holes(K, region_from_json(_read_json(args.region)))
        _emit(args, io.sample_to_json(out))
    elif args.cmd == "complement":
        omega = region_from_json(_read_json(args.region))
        seq = complement_exhaustion(omega, _grid(args.grid), args.target, args.m)
        summary, files = _samples_payload(seq)
        summary["corridors"] = [s.meta.get("corridors", 0) for s in seq]
        _emit(args, summary, files)
    elif args.cmd == "split":
        omega = region_from_json(_read_json(args.omega))
        S = region_from_json(_read_json(args.S))
        T = region_from_json(_read_json(args.T))
        Ls, Ks, radii = split_boundary_sequences(omega, S, T, _grid(args.grid), args.n_max)
        summary, files = _samples_payload(Ls + Ks)
        summary["radii"] = [io.num(a) for a in radii]
        summary["disjoint"] = True
        _emit(args, summary, files)
    elif args.cmd == "example46":
        try:
            xmin, xmax, ymin, ymax = (float(v) for v in args.box.split(","))
        except ValueError as exc:
            raise ParseError(f"bad box {args.box!r}") from exc
        L, K = example_46_sets(GridSpec(xmin, xmax, ymin, ymax, args.h), args.n)
        summary, files = _samples_payload([L, K])
        summary["disjoint"] = not (L.node_set() & K.node_set())
        _emit(args, summary, files)
    return 0


def _witness_outputs(args, w, problem, extra: dict | None = None) -> int:
    c = w.certificate
    report = {
        "passes": c.passes,
        "violations": list(c.violations),
        "pq": list(c.pq),
        "d": io.scalar_to_json(c.d),
        "T": c.T,
        "metric": c.metric,
        "err_ii": [io.num(v) for v in c.err_ii],
        "err_iii": io.num(c.err_iii),
        "err_fit": io.num(c.err_fit),
        "fit_degree": c.fit_degree,
        "delta_E": io.num(c.delta_E),
        "L_size": len(problem.L),
        "K_size": len(problem.K),
        "seed": args.seed,
    }
    report.update(extra or {})
    files = {
        "witness.json": io.witness_to_json(w, problem),
        "err_ii.txt": io.two_column(c.err_ii_per_zeta, ("zeta_index", "err_ii")),
        "err_iii.txt": io.two_column(c.err_iii_per_zeta, ("zeta_index", "err_iii")),
        "err_iii_samples.txt": io.two_column(c.err_iii_per_sample, ("K_index", "err_iii")),
    }
    if args.fmt == "table":
        sys.stdout.write(files["err_ii.txt"] + "\n" + files["err_iii.txt"])
        if args.out is not None:
            _write_files(args.out, files)
        return 0
    _emit(args, report, files)
    return 0


def _write_files(out: Path, files: dict):
    out.mkdir(parents=True, exist_ok=True)
    for name, content in files.items():
        (out / name).write_text(content if isinstance(content, str) else io.dumps(content))


def cmd_universal(args) -> int:
    tol = _tolerances(args)
    if args.cmd in ("construct", "construct-poly"):
        problem = io.problem_from_json(_read_json(args.problem))
        ctor = construct_candidate if args.cmd == "construct" else construct_candidate_poly
        return _witness_outputs(args, ctor(problem, tol), problem)
    if args.cmd == "verify":
        obj = _read_json(args.witness)
        f, pq, problem, consistent = io.witness_from_json(obj)
        if args.problem is not None:
            problem = io.problem_from_json(_read_json(args.problem))
        if problem is None:
            raise ParseError("the witness carries no problem; pass --problem")
        cert = verify_certificate(f, pq, problem.L, problem.K, problem.h, problem.s, problem.eps,
                                  problem.metric, tol)
        payload = {"certificate": io.certificate_to_json(cert), "f_matches_construction": consistent}
        if not cert.passes:
            err = PipelineError(f"certificate fails: {', '.join(cert.violations)}",
                                detail={"violations": list(cert.violations)})
            payload = dict(_error_payload(err), **payload)
            sys.stdout.write(_format(payload, args.fmt))
            return err.exit_code
        _emit(args, payload)
        return 0
    if args.cmd == "demo":
        problem = boundary_split_problem(args.eps, args.s, args.h)
        w = construct_candidate_poly(problem, tol)
        chordal = sup_chordal(w.f, problem.h, problem.K, tol.tau_pole)
        extra = {"instance": "boundary-split", "err_iii_chordal": io.num(chordal),
                 "reproduction_error_L": io.num(max(w.certificate.err_ii))}
        return _witness_outputs(args, w, problem, extra)
    raise ParseError(f"unknown command {args.cmd}")


def _error_payload(err: UnipadeError) -> dict:
    body = {"type": type(err).__name__, "exit_code": err.exit_code, "message": str(err)}
    detail = getattr(err, "detail", None)
    if detail:
        body["detail"] = json.loads(io.dumps(_jsonable(detail)))
    return {"error": body}


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (float, np.floating)):
        return io.num(float(v))
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return str(v)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        handler = {"pade": cmd_pade, "compacta": cmd_compacta, "universal": cmd_universal}[args.group]
        return handler(args)
    except UnipadeError as err:
        sys.stdout.write(io.dumps(_error_payload(err)))
        return err.exit_code


if __name__ == "__main__":
    sys.exit(main())
