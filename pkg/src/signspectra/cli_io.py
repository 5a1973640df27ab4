"""Command-line interface, file emitters, and run manifests.

Determinism contract: identical invocations produce byte-identical CSV,
JSON, and SVG data files.  Clouds are sorted before emission, JSON keys are
lexicographic, floats use repr round-tripping (17 significant digits in
CSV).  Timing never goes into data files; it lives in the side-car manifest
`<out>.manifest.json` together with sha256 digests of every emitted file.

Exit codes: 0 success/verified, 1 verification failure, 2 usage error,
3 numerical-consistency failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from .cloud import SpectrumCloud
from .density import density_report, periodic_union
from .embed import verify_embedding
from .errors import (
    CapExceededError,
    ConvergenceError,
    NumericalConsistencyError,
    ParseError,
    WitnessDegenerateError,
)
from .finite import ENUMERATION_CAP, enumerate_sigma, finite_eigenvalues
from .polyroot import DEFAULT_TOL
from .signmodel import (
    PeriodicOperatorSpec,
    gauge_normalize_finite,
    gauge_normalize_periodic,
    parse_sign_vector,
)
from .symbol import periodic_spectrum

__all__ = [
    "main",
    "build_parser",
    "write_cloud_csv",
    "read_cloud_csv",
    "write_cloud_json",
    "write_cloud_svg",
    "write_manifest",
]

EXIT_OK = 0
EXIT_UNVERIFIED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4

SNAP_CELL = 1e-6


def write_cloud_csv(cloud: SpectrumCloud, path: str) -> None:
    lines = ["re,im,tag"]
    for p in cloud.points:
        lines.append(f"{p.re:.17g},{p.im:.17g},{p.tag}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_cloud_csv(path: str) -> SpectrumCloud:
    from .cloud import CloudPoint

    points = []
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "re,im,tag":
            raise ParseError(f"unexpected CSV header {header!r}", position=0)
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            re_s, im_s, tag = line.split(",", 2)
            points.append(CloudPoint(float(re_s), float(im_s), tag))
    return SpectrumCloud(points)


def cloud_json_text(cloud: SpectrumCloud, params: dict) -> str:
    obj = {
        "params": params,
        "points": [{"im": p.im, "re": p.re, "tag": p.tag} for p in cloud.points],
        "warnings": list(cloud.warnings),
    }
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_cloud_json(cloud: SpectrumCloud, params: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(cloud_json_text(cloud, params))


def write_cloud_svg(cloud: SpectrumCloud, path: str) -> None:
    # fixed square viewport covering the attainable square |re|+|im| <= 2
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" width="880" height="880" '
        'viewBox="-2.2 -2.2 4.4 4.4">\n'
        '<rect x="-2.2" y="-2.2" width="4.4" height="4.4" fill="white"/>\n'
    )
    parts = [head]
    for p in cloud.points:
        parts.append(
            f'<circle cx="{p.re:.6g}" cy="{-p.im:.6g}" r="0.005" '
            'fill="black" fill-opacity="0.6"/>\n'
        )
    parts.append("</svg>\n")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("".join(parts))


def _sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def write_manifest(out_path: str, command: str, params: dict, wall_time_s: float) -> str:
    manifest = {
        "command": command,
        "outputs": [{"path": out_path, "sha256": _sha256(out_path)}],
        "params": params,
        "version": __version__,
        "wall_time_s": wall_time_s,
    }
    manifest_path = f"{out_path}.manifest.json"
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(manifest, sort_keys=True, indent=2) + "\n")
    return manifest_path


def _emit_cloud(cloud: SpectrumCloud, args, params: dict, started: float) -> None:
    cloud = cloud.sorted()
    if args.out is None:
        if args.format == "json":
            sys.stdout.write(cloud_json_text(cloud, params))
        else:
            sys.stdout.write("re,im,tag\n")
            for p in cloud.points:
                sys.stdout.write(f"{p.re:.17g},{p.im:.17g},{p.tag}\n")
        return
    if args.format == "csv":
        write_cloud_csv(cloud, args.out)
    elif args.format == "json":
        write_cloud_json(cloud, params, args.out)
    else:
        write_cloud_svg(cloud, args.out)
    write_manifest(args.out, params["command"], params, time.monotonic() - started)


def _resolve_tol(args, fallback: float) -> float:
    return fallback if args.tol is None else args.tol


def _cmd_normalize(args) -> int:
    k = parse_sign_vector(args.k)
    l = parse_sign_vector(args.l)
    if args.periodic:
        spec = gauge_normalize_periodic(PeriodicOperatorSpec(k, l))
        print(spec.sub.to_text())
        if spec.period != len(k):
            print(f"period doubled: {len(k)} -> {spec.period}")
    else:
        print(gauge_normalize_finite(k, l).to_text())
    return EXIT_OK


def _cmd_spectrum(args) -> int:
    started = time.monotonic()
    tol = _resolve_tol(args, DEFAULT_TOL)
    params: dict = {
        "command": "spectrum",
        "format": args.format,
        "mode": args.mode,
        "tol": tol,
    }
    if args.mode == "finite":
        if args.k is None:
            raise ValueError("finite mode needs --k")
        cloud = finite_eigenvalues(parse_sign_vector(args.k), tol)
        params["k"] = args.k
    else:
        if args.samples < 2:
            raise ValueError("periodic mode needs --samples >= 2")
        params["samples"] = args.samples
        if args.union_max_m is not None:
            cloud = periodic_union(args.union_max_m, args.samples, tol)
            params["union_max_m"] = args.union_max_m
        else:
            if args.k is None:
                raise ValueError("periodic mode needs --k or --union-max-m")
            cloud = periodic_spectrum(parse_sign_vector(args.k), args.samples, tol)
            params["k"] = args.k
    _emit_cloud(cloud, args, params, started)
    return EXIT_OK


def _cmd_enumerate(args) -> int:
    started = time.monotonic()
    tol = _resolve_tol(args, DEFAULT_TOL)
    sizes = range(1, args.n + 1) if args.accumulate else [args.n]
    parts = [
        enumerate_sigma(n, tol, cap=args.cap, threads=args.threads) for n in sizes
    ]
    cloud = SpectrumCloud().merged(*parts)
    if args.dedup:
        cloud = cloud.snapped(SNAP_CELL)
    params = {
        "accumulate": bool(args.accumulate),
        "command": "enumerate",
        "dedup": bool(args.dedup),
        "format": args.format,
        "n": args.n,
        "tol": tol,
    }
    _emit_cloud(cloud, args, params, started)
    elapsed = time.monotonic() - started
    print(f"points: {len(cloud)}")
    print(f"wall_time_s: {elapsed:.3f}")
    return EXIT_OK


def _embed_json(result, params: dict) -> str:
    obj = {
        "excluded": [
            {
                "j": e.j,
                "residuals": list(e.residuals),
                "values": [{"im": v.imag, "re": v.real} for v in e.values],
            }
            for e in result.excluded
        ],
        "l": result.l.to_text(),
        "m_effective": result.m,
        "n": result.n,
        "params": params,
        "residuals": list(result.residuals),
        "targets": [
            {"im": p.im, "re": p.re, "tag": p.tag} for p in result.targets.points
        ],
        "verified": result.verified,
        "warnings": list(result.targets.warnings),
        "witnesses": None
        if result.witnesses is None
        else [
            {
                "first_component": w.first_component,
                "residual": w.residual,
                "target_index": w.target_index,
            }
            for w in result.witnesses
        ],
        "worst_residual": result.worst_residual,
    }
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _cmd_embed(args) -> int:
    started = time.monotonic()
    if args.n < 3:
        raise ValueError("embedding needs --n >= 3")
    tol = _resolve_tol(args, 1e-8)
    k = parse_sign_vector(args.k)
    result = verify_embedding(k, args.n, tol=tol, want_witness=args.witness)
    params = {
        "command": "embed",
        "k": args.k,
        "n": args.n,
        "tol": tol,
        "witness": bool(args.witness),
    }
    text = _embed_json(result, params)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        write_manifest(args.out, "embed", params, time.monotonic() - started)
    return EXIT_OK if result.verified else EXIT_UNVERIFIED


def _cmd_density(args) -> int:
    tol = _resolve_tol(args, DEFAULT_TOL)
    report = density_report(
        args.max_n,
        args.max_m,
        args.samples,
        args.disk_step,
        tol=tol,
        threads=args.threads,
    )
    obj = {"command": "density", **report.to_json_dict()}
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        write_manifest(args.out, "density", obj["params"], report.wall_time_s)
    return EXIT_OK if report.monotone() else EXIT_UNVERIFIED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signspectra",
        description="Spectra of tridiagonal sign matrices and periodic sign operators.",
    )
    parser.add_argument("--tol", type=float, default=None, help="numerical tolerance")
    parser.add_argument("--threads", type=int, default=1, help="worker threads")
    parser.add_argument(
        "--cap", type=int, default=ENUMERATION_CAP, help="enumeration size cap"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="gauge-normalize a sub/super sign pair")
    p.add_argument("--k", required=True, help="subdiagonal pattern, e.g. +-+")
    p.add_argument("--l", required=True, help="superdiagonal pattern")
    p.add_argument("--periodic", action="store_true", help="treat patterns as periodic")
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("spectrum", help="finite or periodic spectrum point cloud")
    p.add_argument("--mode", choices=("finite", "periodic"), required=True)
    p.add_argument("--k", default=None, help="sign pattern")
    p.add_argument("--samples", type=int, default=257, help="angle samples (periodic)")
    p.add_argument(
        "--union-max-m",
        type=int,
        default=None,
        help="union of periodic clouds over all patterns up to this period",
    )
    p.add_argument("--out", default=None, help="output file (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("enumerate", help="union of all finite spectra at size n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--accumulate", action="store_true", help="union over sizes <= n")
    p.add_argument(
        "--dedup", action="store_true", help="grid-snap dedup at 1e-6 for plotting"
    )
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("embed", help="verify the periodic-to-finite embedding")
    p.add_argument("--k", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--witness", action="store_true", help="compute eigenvector witnesses")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("density", help="directed Hausdorff density report")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-m", type=int, default=4)
    p.add_argument("--samples", type=int, default=257)
    p.add_argument("--disk-step", type=float, default=0.1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_density)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CapExceededError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalConsistencyError, ConvergenceError, WitnessDegenerateError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
