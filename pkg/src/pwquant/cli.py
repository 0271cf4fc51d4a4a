"""Command line client for the quantizer service.

Every subcommand builds the same pydantic request the HTTP endpoint takes
and, by default, calls the handler in process, so no server is needed and
output for a fixed invocation and seed is byte-identical. Pass --server to
send the identical request to a running instance instead. Output is JSON
(the response model, indent 2); table, allocate, compare and verify also
support --format csv.

Exit codes: 0 success (and, for verify, all checks passed), 1 verify ran
but found failures, 2 bad input or I/O, 3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

import httpx

from . import service
from .defaults import DEFAULT_SEED
from .distributions import PiecewiseUniform
from .errors import ConsistencyError
from .schemas import (
    AllocateRequest,
    AllocateResponse,
    CanonicalRequest,
    CanonicalResponse,
    CompareRequest,
    CompareResponse,
    DistortionRequest,
    DistortionResponse,
    DistSpec,
    KroneckerRequest,
    KroneckerResponse,
    MomentsRequest,
    MomentsResponse,
    RandomRequest,
    RandomResponse,
    TableRequest,
    TableResponse,
    VerifyRequest,
    VerifyResponse,
)

_THREE_PIECE_SPEC = DistSpec.from_distribution(PiecewiseUniform.three_piece())


def _env_seed() -> int:
    return int(os.environ.get("PWQUANT_SEED", DEFAULT_SEED))


def _resolve_seed(args) -> int:
    return args.seed if args.seed is not None else _env_seed()


def _parse_theta(text: str):
    if text == "golden":
        return "golden"
    return float(text)


def _parse_n_values(text: str) -> list[int]:
    """Accept "16", "2,4,8" or an inclusive range "2..64"."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part.strip()]


def _dist_spec(args, default: str) -> DistSpec:
    if getattr(args, "config", None):
        with open(args.config) as fh:
            return DistSpec.model_validate(json.load(fh))
    name = getattr(args, "dist", None) or default
    if name == "infinite":
        return DistSpec.infinite()
    if name == "three-piece":
        return _THREE_PIECE_SPEC
    raise ValueError(f"unknown distribution name: {name!r}")


# ----------------------------------------------------------------------
# csv renderers

def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table_csv(resp: TableResponse) -> str:
    return _csv(
        ["n", "sequence", "V_n", "V_n_float"],
        [[r.n, " ".join(map(str, r.sequence)), r.V_n, repr(r.V_n_float)] for r in resp.rows],
    )


def _allocate_csv(resp: AllocateResponse) -> str:
    return _csv(
        ["allocation", "V_n"],
        [[" ".join(map(str, counts)), resp.V_n] for counts in resp.allocations],
    )


def _compare_csv(resp: CompareResponse) -> str:
    cols = ["n", "V_opt", "V_iid_mean", "V_iid_se", "V_kron", "Dstar_iid_mean", "Dstar_kron"]
    return _csv(cols, [[getattr(r, "n")] + [repr(getattr(r, c)) for c in cols[1:]] for r in resp.rows])


def _verify_csv(resp: VerifyResponse) -> str:
    return _csv(
        ["check", "n", "passed", "detail"],
        [[c.check, "" if c.n is None else c.n, c.passed, c.detail] for c in resp.checks],
    )


# ----------------------------------------------------------------------
# request builders, one per subcommand

def _build_canonical(args):
    return CanonicalRequest(n=args.n), "/canonical", service.handle_canonical, CanonicalResponse, None


def _build_table(args):
    req = TableRequest(min_n=args.min_n, max_n=args.max_n)
    return req, "/table", service.handle_table, TableResponse, _table_csv


def _build_allocate(args):
    req = AllocateRequest(dist=_dist_spec(args, "three-piece"), n=args.n)
    return req, "/allocate", service.handle_allocate, AllocateResponse, _allocate_csv


def _build_distortion(args):
    points = [p.strip() for p in args.points.split(",") if p.strip()]
    req = DistortionRequest(dist=_dist_spec(args, "infinite"), points=points)
    return req, "/distortion", service.handle_distortion, DistortionResponse, None


def _build_moments(args):
    req = MomentsRequest(dist=_dist_spec(args, "infinite"), pieces=args.pieces)
    return req, "/moments", service.handle_moments, MomentsResponse, None


def _build_random(args):
    req = RandomRequest(
        n=args.n,
        trials=args.trials,
        seed=_resolve_seed(args),
        t_values=[float(t) for t in args.t.split(",") if t.strip()],
    )
    return req, "/random", service.handle_random, RandomResponse, None


def _build_kronecker(args):
    req = KroneckerRequest(n=args.n, theta=_parse_theta(args.theta), include_points=args.points)
    return req, "/kronecker", service.handle_kronecker, KroneckerResponse, None


def _build_compare(args):
    req = CompareRequest(
        dist=_dist_spec(args, "infinite"),
        n_values=_parse_n_values(args.n),
        theta=_parse_theta(args.theta),
        trials=args.trials,
        seed=_resolve_seed(args),
    )
    return req, "/compare", service.handle_compare, CompareResponse, _compare_csv


def _build_verify(args):
    req = VerifyRequest(
        max_n_infinite=args.max_n_infinite,
        max_n_finite=args.max_n_finite,
        lloyd_max_n=args.lloyd_max_n,
        restarts=args.restarts,
        consistency_max_n=args.consistency_max_n,
        include_golden=not args.no_golden,
        rel_tol=args.rel_tol,
        seed=_resolve_seed(args),
    )
    return req, "/verify", service.handle_verify, VerifyResponse, _verify_csv


_BUILDERS = {
    "canonical": _build_canonical,
    "table": _build_table,
    "allocate": _build_allocate,
    "distortion": _build_distortion,
    "moments": _build_moments,
    "random": _build_random,
    "kronecker": _build_kronecker,
    "compare": _build_compare,
    "verify": _build_verify,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pwquant", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, dist_flag=False, seeded=False):
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--server", help="base URL of a running service, e.g. http://127.0.0.1:8000")
        if dist_flag:
            g = p.add_mutually_exclusive_group()
            g.add_argument("--dist", choices=["infinite", "three-piece"])
            g.add_argument("--config", help="path to a distribution config JSON file")
        if seeded:
            p.add_argument("--seed", type=int, default=None,
                           help=f"PRNG seed (default: PWQUANT_SEED env var or {DEFAULT_SEED})")

    p = sub.add_parser("canonical", help="optimal sequence and points for one n (infinite family)")
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("table", help="optimal sequences and exact errors for a range of n")
    p.add_argument("--min-n", type=int, default=2)
    p.add_argument("--max-n", type=int, required=True)
    common(p)

    p = sub.add_parser("allocate", help="optimal per-piece point counts for a finite distribution")
    p.add_argument("--n", type=int, required=True)
    common(p, dist_flag=True)

    p = sub.add_parser("distortion", help="exact distortion of explicit rational points")
    p.add_argument("--points", required=True, help='comma list of rationals, e.g. "1/6,5/6"')
    common(p, dist_flag=True)

    p = sub.add_parser("moments", help="mean, variance and conditional means")
    p.add_argument("--pieces", type=int, default=6, help="pieces reported for the infinite family")
    common(p, dist_flag=True)

    p = sub.add_parser("random", help="iid benchmark: scaled nearest-distance statistics vs the law")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--t", default="0.25,0.5,1.0", help="comma list of survival thresholds")
    common(p, seeded=True)

    p = sub.add_parser("kronecker", help="Kronecker point set: discrepancy and circle distortion")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", default="golden", help='"golden" or a float in (0,1)')
    p.add_argument("--points", action="store_true", help="include the points in the output")
    common(p)

    p = sub.add_parser("compare", help="optimal vs iid vs Kronecker quantization table")
    p.add_argument("--n", required=True, help='n values: "16", "2,4,8" or "2..64"')
    p.add_argument("--theta", default="golden")
    p.add_argument("--trials", type=int, default=100)
    common(p, dist_flag=True, seeded=True)

    p = sub.add_parser("verify", help="run the oracle cross-checks")
    p.add_argument("--max-n-infinite", type=int, default=10)
    p.add_argument("--max-n-finite", type=int, default=24)
    p.add_argument("--lloyd-max-n", type=int, default=3)
    p.add_argument("--restarts", type=int, default=50)
    p.add_argument("--consistency-max-n", type=int, default=60)
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument("--no-golden", action="store_true", help="skip the bundled reference table check")
    common(p, seeded=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        uvicorn.run(service.app, host=args.host, port=args.port)
        return 0
    try:
        req, path, handler, resp_cls, csv_fn = _BUILDERS[args.command](args)
        if args.server:
            r = httpx.post(
                args.server.rstrip("/") + path,
                json=json.loads(req.model_dump_json()),
                timeout=600.0,
            )
            r.raise_for_status()
            resp = resp_cls.model_validate(r.json())
        else:
            resp = handler(req)
        if args.format == "csv":
            if csv_fn is None:
                raise ValueError(f"csv output is not available for {args.command}")
            text = csv_fn(resp)
        else:
            text = resp.model_dump_json(indent=2) + "\n"
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        if args.command == "verify" and not resp.passed:
            return 1
        return 0
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, httpx.HTTPError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
