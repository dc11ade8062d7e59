"""Command-line entry point: ``flagsympl <subcommand> [flags]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import dehn, moment, reduced3, springer
from .phase_space import CotangentPoint, dumps_points, loads_points, random_point
from .suites import (
    SUITES,
    RunConfig,
    _jsonable,
    all_pass,
    case_rng,
    describe,
    dumps_report,
    run_verify,
)


def _parse_tol(items):
    out = {}
    for item in items or []:
        name, sep, val = item.partition("=")
        if not sep:
            raise ValueError(f"--tol expects name=value, got {item!r}")
        out[name.strip()] = float(val)
    return out


def _parse_p(text):
    return np.array([float(v) for v in text.split(",")])


def build_config(args) -> RunConfig:
    """Defaults, then the config file, then explicit flags."""
    data = {}
    if getattr(args, "config", None):
        with open(args.config) as fh:
            data.update(json.load(fh))
    flag_map = {"n": "n", "seed": "seed", "samples": "samples", "profile_cutoff": "profile_cutoff",
                "N": "N", "json": "output"}
    for attr, key in flag_map.items():
        val = getattr(args, attr, None)
        if val is not None:
            data[key] = val
    tols = dict(data.get("tolerances", {}))
    tols.update(_parse_tol(getattr(args, "tol", None)))
    data["tolerances"] = tols
    return RunConfig.from_dict(data)


def _write(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ValueError(f"cannot write {path}: {exc}") from exc


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in r])
    return buf.getvalue()


def _complex_header(n, prefix="xi"):
    cols = []
    for j in range(n):
        for k in range(n):
            cols += [f"{prefix}{j + 1}{k + 1}_re", f"{prefix}{j + 1}{k + 1}_im"]
    return cols


def _complex_row(m):
    return [v for z in np.asarray(m).ravel() for v in (float(z.real), float(z.imag))]


def emit_trajectory(cfg: RunConfig, kind: str, alpha: int = 1, point: CotangentPoint | None = None,
                    rows: int | None = None) -> str:
    """CSV of the twist family ``t in [0, 1]`` at a point.

    ``kind="twist"`` records the entries of xi; ``kind="edge"`` starts from the
    midpoint of edge ``Q1Q2`` of the SU(3) reduced triangle and records the
    chart ``(m12, m13, m23, nu)``.
    """
    rows = cfg.samples if rows is None else rows
    ts = np.linspace(0.0, 1.0, rows) if rows > 1 else np.zeros(rows)
    prof = cfg.profile
    if kind == "twist":
        if point is None:
            point = random_point(cfg.n, case_rng(cfg.seed, "trajectory.twist"))
        fam = dehn.twist_family(point, alpha, prof, ts)
        return _csv_text(["t"] + _complex_header(point.n), [[t] + _complex_row(q.xi) for t, q in zip(ts, fam)])
    if kind == "edge":
        xi = reduced3.edge_point("12", 0.5, cfg.N)
        start = moment.fiber_point(xi, cfg.N * np.array([1.0, 0.0, -1.0]))
        fam = dehn.twist_family(start, alpha, prof, ts)
        return _csv_text(["t", "m12", "m13", "m23", "nu"],
                         [[t, *reduced3.project(q.xi).as_array()] for t, q in zip(ts, fam)])
    raise ValueError(f"unknown trajectory kind {kind!r}")


# ---- subcommands --------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.list:
        for name, desc in describe():
            print(f"{name}\t{desc}")
        return 0
    cfg = build_config(args)
    report = run_verify(cfg, args.suite)
    _write(dumps_report(report), cfg.output)
    return 0 if all_pass(report) else 1


def cmd_sample(args) -> int:
    cfg = build_config(args)
    p = _parse_p(args.p) if args.p else moment.p_n(cfg.n)
    if p.size != cfg.n:
        raise ValueError(f"--p has {p.size} entries but n = {cfg.n}")
    rng = case_rng(cfg.seed, "sample")
    pts = [moment.sample_fiber(p, rng) for _ in range(cfg.samples)]
    _write(dumps_points(pts) + "\n", cfg.output)
    return 0


def cmd_twist(args) -> int:
    cfg = build_config(args)
    if args.point:
        with open(args.point) as fh:
            pts = loads_points(fh.read())
        point = pts[0]
    else:
        point = random_point(cfg.n, case_rng(cfg.seed, "twist.random"))
    if not 1 <= args.alpha <= point.n - 1:
        raise ValueError(f"--alpha must be in 1..{point.n - 1}")
    if args.trajectory:
        _write(emit_trajectory(cfg, "twist", args.alpha, point), args.csv)
        return 0
    out = dehn.tau(point, args.alpha, cfg.profile)
    rep = dehn.verify_twist(point, args.alpha, cfg.profile, case_rng(cfg.seed, "twist.verify"))
    _write(json.dumps({"input": point.to_dict(), "output": out.to_dict(), "report": _jsonable(rep)},
                      indent=2, sort_keys=True) + "\n", cfg.output)
    return 0


def cmd_figure1(args) -> int:
    # --samples counts edge samples here, not suite samples
    cfg = build_config(argparse.Namespace(**{**vars(args), "samples": None}))
    if args.samples is not None:
        cfg.figure1_samples = args.samples
    rep = reduced3.figure1_report(cfg.N, cfg.figure1_samples, cfg.profile, args.alpha)
    ok, _ = reduced3.figure1_pass(rep)
    if args.csv:
        lab = reduced3._RELABEL[args.alpha]["12"]
        tr = reduced3.trace_edge_image(args.alpha, lab, cfg.figure1_samples, cfg.N, cfg.profile)
        _write(_csv_text(["t", "m12", "m13", "m23", "nu"], tr["polyline"]), args.csv)
    _write(json.dumps(_jsonable(rep), indent=2, sort_keys=True) + "\n", cfg.output)
    return 0 if ok else 1


def cmd_springer(args) -> int:
    cfg = build_config(args)
    p = _parse_p(args.p) if args.p else moment.p_n(cfg.n)
    if p.size != cfg.n:
        raise ValueError(f"--p has {p.size} entries but n = {cfg.n}")
    is_pn = np.array_equal(p, moment.p_n(cfg.n))
    rng = case_rng(cfg.seed, "springer")
    rows = []
    for k in range(cfg.samples):
        q = moment.sample_fiber(p, rng)
        part = springer.springer_class(q).partition
        eps = springer.zn_normal_form(q).epsilon if is_pn else float("nan")
        m = np.abs(q.xi) ** 2
        rows.append([k, "+".join(map(str, part)), eps, m[0, 1], m[0, 2], m[1, 2]])
    text = _csv_text(["sample_id", "partition", "epsilon", "m12", "m13", "m23"], rows)
    _write(text, args.csv or cfg.output)
    return 0


def cmd_localmodels(args) -> int:
    cfg = build_config(args)
    names = {"sp4": ("localmodels.sp4",),
             "rays": ("localmodels.rays_numeric", "localmodels.rays_roundtrip", "localmodels.winding"),
             "blowup": ("localmodels.blowup_symplectic", "localmodels.blowup_moment",
                        "localmodels.blowup_no_critical", "localmodels.blowup_weights")}[args.suite]
    report = run_verify(cfg, "localmodels", names)
    report["suite"] = f"localmodels.{args.suite}"
    _write(dumps_report(report), cfg.output)
    return 0 if all_pass(report) else 1


def _common(sp, samples_default=None):
    sp.add_argument("--n", type=int, default=None, help="matrix size (default 3)")
    sp.add_argument("--seed", type=int, default=None, help="64-bit seed (default 0)")
    sp.add_argument("--samples", type=int, default=samples_default, help="sample count")
    sp.add_argument("--tol", action="append", metavar="NAME=VAL", help="override a tolerance")
    sp.add_argument("--json", default=None, metavar="PATH", help="write JSON output here")
    sp.add_argument("--csv", default=None, metavar="PATH", help="write CSV output here")
    sp.add_argument("--profile-cutoff", dest="profile_cutoff", type=float, default=None,
                    help="twist profile cutoff t0 (default 1)")
    sp.add_argument("--N", type=float, default=None, help="SU(3) reduced-space scale (default 4)")
    sp.add_argument("--config", default=None, metavar="PATH", help="JSON config file")


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="flagsympl", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="run verification suites")
    _common(sp)
    sp.add_argument("--suite", choices=("all",) + SUITES, default="all")
    sp.add_argument("--list", action="store_true", help="list cases and what they check")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sample", help="sample a moment fiber as JSON points")
    _common(sp)
    sp.add_argument("--p", default=None, help="comma-separated diagonal (default 1,-1,0,...)")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("twist", help="apply the Dehn twist to a point")
    _common(sp)
    sp.add_argument("--alpha", type=int, default=1, help="simple root index")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--point", default=None, metavar="FILE", help="JSON point file")
    grp.add_argument("--random", action="store_true", help="random point (default)")
    sp.add_argument("--trajectory", action="store_true", help="emit the t in [0,1] family as CSV")
    sp.set_defaults(func=cmd_twist)

    sp = sub.add_parser("figure1", help="SU(3) triangle pattern of a generator")
    _common(sp)
    sp.add_argument("--alpha", type=int, choices=(1, 2), default=1)
    sp.set_defaults(func=cmd_figure1)

    sp = sub.add_parser("springer", help="Jordan types over a sampled fiber as CSV")
    _common(sp)
    sp.add_argument("--p", default=None, help="comma-separated diagonal (default 1,-1,0,...)")
    sp.set_defaults(func=cmd_springer)

    sp = sub.add_parser("localmodels", help="checks of the circle-equivariant local models")
    _common(sp)
    sp.add_argument("--suite", choices=("sp4", "rays", "blowup"), default="sp4")
    sp.set_defaults(func=cmd_localmodels)
    return ap


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
