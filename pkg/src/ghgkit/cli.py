"""Command-line front end.

    ghgkit ghg rep --desc d.json --element "a,b,c" [--side left|right]
    ghgkit ghg aut enumerate --desc d.json [--count-only]
    ghgkit arith build --config field.json [--out desc.json]   (also: ghg arith build)
    ghgkit bouquet verify --desc d.json --fiducial v.json [--section D|zero] [--orbits ...]
    ghgkit bouquet search --desc d.json --mode equiangular|regular [--targets t.json] ...
    ghgkit selftest [--quick]

Exit codes: 0 success, 2 malformed input, 3 numerical verification failure,
4 internal inconsistency.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from importlib.metadata import PackageNotFoundError, version as _pkg_version
from pathlib import Path

import numpy as np

from . import acceptance
from .arith import parse_config, trace_pairing_build
from .autgrp import WeilSolveError, enumerate_aut0, enumerate_sp, sum_group_coords
from .bouquet import (Line, autgroup_orbits, classify, clinometric_check, divisor_orbits,
                      generating_set, orbit_and_stabilizer, overlap_table, symmetry_group)
from .ghg import GhgDescriptor
from .schrodinger import RepConfig, SVInconsistency, rep_matrix
from .search import equiangular_problem, optimize_fiducial, regular_problem, verify_candidate
from .settings import tolerance

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_INTERNAL = 0, 2, 3, 4


class InputError(Exception):
    pass


class NumericFailure(Exception):
    pass


def package_version() -> str:
    try:
        return _pkg_version("artifact")
    except PackageNotFoundError:
        return "0.0.0"


# --------------------------------------------------------------------------
# JSON helpers
# --------------------------------------------------------------------------

def complex_pair(z) -> list:
    """[re, im]; Python floats serialise with round-trip precision (at most 17 digits)."""
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_pairs(M: np.ndarray) -> list:
    return [[complex_pair(z) for z in row] for row in np.asarray(M)]


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _digest_file(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def load_descriptor(path: str) -> GhgDescriptor:
    data = _read_json(path)
    if isinstance(data, dict) and "result" in data:      # output of `arith build --out`
        data = data["result"]
    try:
        return GhgDescriptor.from_json(data.get("descriptor", data))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed descriptor in {path}: {exc}") from None


def load_fiducial(path: str, s: int) -> np.ndarray:
    data = _read_json(path)
    if isinstance(data, dict) and "result" in data:      # output of `bouquet search --out`
        data = data["result"]
    try:
        if isinstance(data, dict) and "re" in data:
            v = np.asarray(data["re"], dtype=float) + 1j * np.asarray(data.get("im", [0.0] * len(data["re"])))
        else:
            pairs = data["fiducial"] if isinstance(data, dict) else data
            v = np.array([complex(p[0], p[1]) if isinstance(p, (list, tuple)) else complex(p) for p in pairs])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputError(f"malformed fiducial in {path}: {exc}") from None
    if len(v) != s:
        raise InputError(f"fiducial has {len(v)} entries, the representation space has dimension {s}")
    if np.linalg.norm(v) == 0:
        raise InputError("fiducial is the zero vector")
    return v


def parse_element(text: str, desc: GhgDescriptor) -> np.ndarray:
    try:
        vals = [int(x) for x in text.replace(";", ",").split(",") if x.strip()]
    except ValueError:
        raise InputError(f"element {text!r} must be comma-separated integers") from None
    width = len(desc.moduli())
    if len(vals) != width:
        raise InputError(f"element needs {width} coordinates (a, b, c blocks), got {len(vals)}")
    return np.mod(np.array(vals, dtype=np.int64), desc.moduli())


# --------------------------------------------------------------------------
# output and provenance
# --------------------------------------------------------------------------

def emit(args, result: dict, inputs: list[str], t0: float, text: str | None = None):
    """Write the result with a provenance block whose digest covers only
    deterministic fields; wall time goes to a sidecar manifest."""
    prov = {
        "command": " ".join(args.command_words),
        "version": package_version(),
        "seed": getattr(args, "seed", None),
        "inputs": {p: _digest_file(p) for p in inputs},
    }
    body = {"result": result, "provenance": prov}
    digest = hashlib.sha256(_dumps(body).encode()).hexdigest()
    body["provenance"]["digest"] = digest
    payload = _dumps(body) + "\n"
    out = getattr(args, "out", None)
    if out:
        Path(out).write_text(payload)
        manifest = dict(prov, wall_time=round(time.perf_counter() - t0, 3), outputs=[out])
        Path(out + ".manifest.json").write_text(_dumps(manifest) + "\n")
    if args.format == "json" and not out:
        sys.stdout.write(payload)
    elif args.format == "text":
        sys.stdout.write((text if text is not None else _dumps(result)) + "\n")


def format_matrix(M: np.ndarray) -> str:
    def cell(z):
        z = complex(z)
        re = 0.0 if abs(z.real) < 1e-12 else z.real
        im = 0.0 if abs(z.imag) < 1e-12 else z.imag
        if im == 0:
            return f"{re:g}"
        if re == 0:
            return f"{im:g}i"
        return f"{re:g}{im:+g}i"
    rows = [[cell(z) for z in row] for row in M]
    w = max(len(c) for r in rows for c in r)
    return "\n".join("  ".join(c.rjust(w) for c in r) for r in rows)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def cmd_rep(args, t0):
    desc = load_descriptor(args.desc)
    try:
        cfg = RepConfig(desc, args.u)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    X = parse_element(args.element, desc)
    M = rep_matrix(cfg, X, args.side)
    result = {"element": X.tolist(), "side": args.side, "u": cfg.u, "matrix": matrix_pairs(M)}
    emit(args, result, [args.desc], t0, format_matrix(M))


def cmd_aut(args, t0):
    desc = load_descriptor(args.desc)
    if not desc.C.is_cyclic or desc.r % 2 == 0:
        raise InputError("automorphism enumeration uses the displacement section and needs odd cyclic C")
    sp = enumerate_sp(desc)
    n_eta = len(enumerate_aut0(desc, sp[:1])) if sp else 0
    result = {"count": n_eta * len(sp), "sp_count": len(sp), "hom_count": n_eta}
    if not args.count_only:
        result["automorphisms"] = [phi.to_json() for phi in enumerate_aut0(desc, sp)]
    text = f"|Aut0| = {result['count']} = {n_eta} x {len(sp)} (|Hom(A+B, C)| x |Sp|)"
    emit(args, result, [args.desc], t0, text)


def cmd_arith_build(args, t0):
    data = _read_json(args.config)
    try:
        tup = parse_config(data)
        ag = trace_pairing_build(tup)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    desc = ag.desc
    result = {"descriptor": desc.to_json(), "s": desc.s, "f": tup.f, "r": desc.r,
              "norm_f": int(tup.frak_f.norm())}
    text = (f"A = {desc.A}, B = {desc.B}, C = {desc.C}, f = {tup.f}, N(f) = {int(tup.frak_f.norm())}\n"
            + _dumps(desc.to_json()))
    emit(args, result, [args.config], t0, text)


def _orbits_for(args, desc: GhgDescriptor):
    if args.orbits == "divisor":
        return list(divisor_orbits(desc).values())
    if args.orbits == "autgroup":
        return autgroup_orbits(desc, enumerate_sp(desc))
    if args.orbits == "none":
        return []
    data = _read_json(args.orbits)
    raw = data["orbits"] if isinstance(data, dict) else data
    from .autgrp import sum_group_index
    out = []
    for orb in raw:
        arr = np.asarray(orb, dtype=np.int64)
        out.append(sum_group_index(desc, arr) if arr.ndim == 2 else arr)
    return out


def cmd_verify(args, t0):
    desc = load_descriptor(args.desc)
    cfg = RepConfig(desc, args.u)
    v = load_fiducial(args.fiducial, cfg.s)
    section = args.section or ("D" if desc.r % 2 else "zero")
    if section == "D" and desc.r % 2 == 0:
        raise InputError("section D needs odd r")
    inputs = [args.desc, args.fiducial]
    orbits = _orbits_for(args, desc)
    if args.orbits not in ("divisor", "autgroup", "none"):
        inputs.append(args.orbits)
    b = orbit_and_stabilizer(cfg, Line(v), section)
    tab = overlap_table(cfg, b.base, section)
    clin = clinometric_check(cfg, b)
    values, counts = np.unique(np.round(tab.angles[1:], 9), return_counts=True)
    result = {
        "free": b.free,
        "stabilizer_order": len(b.stabilizer),
        "orbit_size": len(b),
        "angles_histogram": [[float(x), int(c)] for x, c in zip(values, counts)],
        "clinometric_residual": clin.residual,
        "angle_sum": clin.angle_sum,
        "expected_angle_sum": clin.expected,
        "section": section,
    }
    if b.free and desc.A.order * desc.B.order == cfg.s ** 2:
        c = classify(cfg, b, orbits)
        result["classification"] = {"equiangular": c.equiangular, "regular": c.regular, "value": c.value,
                                    "expected_value": c.expected_value, "spread": c.spread,
                                    "orbit_spreads": list(c.orbit_spreads)}
    else:
        result["classification"] = None
    if desc.r % 2 and not args.no_symmetry:
        sym = symmetry_group(cfg, b, enumerate_sp(desc), np.random.default_rng(args.seed))
        result["symmetry_order"] = len(sym)
        result["symmetry_generators"] = [g.to_json() for g in generating_set(desc, sym)]
    cls = result["classification"]
    verdict = "not free" if cls is None else (
        "equiangular" if cls["equiangular"] else ("regular" if cls["regular"] and orbits else "neither"))
    result["verdict"] = verdict
    text = (f"orbit size {len(b)}, stabilizer {len(b.stabilizer)}, verdict: {verdict}\n"
            f"clinometric residual {clin.residual:.3e}, angle sum {clin.angle_sum:.12g} "
            f"(expected {clin.expected:g})")
    if clin.residual > 1e-8:
        emit(args, result, inputs, t0, text)
        raise NumericFailure(f"clinometric residual {clin.residual:.3e} exceeds 1e-8")
    emit(args, result, inputs, t0, text)


def cmd_search(args, t0):
    desc = load_descriptor(args.desc)
    cfg = RepConfig(desc, args.u)
    kw = dict(restarts=args.restarts, max_iters=args.max_iters, seed=args.seed, threads=args.threads)
    inputs = [args.desc]
    try:
        if args.mode == "equiangular":
            problem = equiangular_problem(cfg, **kw)
        else:
            if not args.targets:
                raise InputError("regular mode needs --targets (no default targets exist)")
            inputs.append(args.targets)
            data = _read_json(args.targets)
            spec = data.get("orbits", "divisor")
            if spec == "divisor":
                groups = divisor_orbits(desc)
                orbits = [groups[int(k)] for k in sorted(groups)]
                tvals = data["targets"]
                targets = [tvals[str(k)] if isinstance(tvals, dict) else tvals[i]
                           for i, k in enumerate(sorted(groups))]
            else:
                from .autgrp import sum_group_index
                orbits = [sum_group_index(desc, np.asarray(o)) if np.ndim(o) == 2 else np.asarray(o)
                          for o in spec]
                targets = data["targets"]
            problem = regular_problem(cfg, orbits, targets, **kw)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed targets: {exc}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rep = optimize_fiducial(problem)
    result = rep.to_json()
    result["verification"] = verify_candidate(problem, rep.vector)
    text = (f"converged: {rep.converged} (objective {rep.objective:.3e}, restart {rep.best_restart}, "
            f"{rep.restarts_run} run)\nmax |a^2 - target| = {rep.max_deviation:.3e}")
    emit(args, result, inputs, t0, text)
    if not rep.converged:
        raise NumericFailure("search did not reach the objective tolerance")


def cmd_selftest(args, t0):
    results = acceptance.run_all(quick=args.quick, echo=print if args.format == "text" else None)
    failed = [r.number for r in results if not r.passed]
    if args.format == "json":
        sys.stdout.write(_dumps({"results": [r.__dict__ for r in results], "failed": failed}) + "\n")
    if failed:
        raise NumericFailure(f"failed criteria: {failed}")


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--seed", type=int, default=0, help="64-bit seed for all randomness")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", default=None, help="write JSON here (plus a .manifest.json sidecar)")

    p = argparse.ArgumentParser(prog="ghgkit", description="Generalised Heisenberg group toolkit")
    top = p.add_subparsers(dest="group", required=True)

    def add_rep(sub):
        r = sub.add_parser("rep", parents=[common], help="matrix of sigma_p or tau_p")
        r.add_argument("--desc", required=True)
        r.add_argument("--element", required=True, help='flat coordinates "a...,b...,c"')
        r.add_argument("--side", choices=["left", "right"], default="left")
        r.add_argument("--u", type=int, default=1, help="character index, p(c) = exp(2 pi i u c / r)")
        r.set_defaults(func=cmd_rep)

    def add_arith(sub):
        a = sub.add_parser("arith", help="arithmetic-type groups")
        asub = a.add_subparsers(dest="action", required=True)
        b = asub.add_parser("build", parents=[common], help="descriptor from a field/ideal config")
        b.add_argument("--config", required=True)
        b.set_defaults(func=cmd_arith_build)

    g = top.add_parser("ghg", help="groups and representations")
    gsub = g.add_subparsers(dest="sub", required=True)
    add_rep(gsub)
    aut = gsub.add_parser("aut", help="automorphism groups")
    autsub = aut.add_subparsers(dest="action", required=True)
    en = autsub.add_parser("enumerate", parents=[common], help="enumerate Aut0 (odd r)")
    en.add_argument("--desc", required=True)
    en.add_argument("--count-only", action="store_true")
    en.set_defaults(func=cmd_aut)
    add_arith(gsub)
    add_arith(top)

    bq = top.add_parser("bouquet", help="bouquets and fiducial search")
    bsub = bq.add_subparsers(dest="sub", required=True)
    v = bsub.add_parser("verify", parents=[common], help="analyse the bouquet of a fiducial")
    v.add_argument("--desc", required=True)
    v.add_argument("--fiducial", required=True)
    v.add_argument("--section", choices=["D", "zero"], default=None)
    v.add_argument("--orbits", default="autgroup", help="autgroup | divisor | none | path to JSON")
    v.add_argument("--u", type=int, default=1)
    v.add_argument("--no-symmetry", action="store_true", help="skip the symmetry-group scan")
    v.set_defaults(func=cmd_verify)
    s = bsub.add_parser("search", parents=[common], help="search for fiducials")
    s.add_argument("--desc", required=True)
    s.add_argument("--mode", choices=["equiangular", "regular"], default="equiangular")
    s.add_argument("--targets", default=None)
    s.add_argument("--restarts", type=int, default=20)
    s.add_argument("--max-iters", type=int, default=5000)
    s.add_argument("--u", type=int, default=1)
    s.set_defaults(func=cmd_search)

    st = top.add_parser("selftest", parents=[common], help="run the acceptance suite")
    st.add_argument("--quick", action="store_true")
    st.set_defaults(func=cmd_selftest)
    return p


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    args.command_words = [w for w in (getattr(args, k, None) for k in ("group", "sub", "action")) if w]
    t0 = time.perf_counter()
    try:
        tolerance()                                  # validate GHG_TOLERANCE early
        args.func(args, t0)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NumericFailure, WeilSolveError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SVInconsistency, RuntimeError, ArithmeticError, AssertionError) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def main() -> None:
    sys.exit(run())
