"""Command-line client for the service.

Every subcommand issues one request against the service API (an in-process
app by default, or a remote server via --server), prints a short summary,
and persists <out>/records.csv plus <out>/manifest.json.

Exit codes: 0 success, 1 failed checks or runtime errors, 2 completed runs
whose only defect is a violated bound hypothesis, 64 usage errors.
"""

from __future__ import annotations

import argparse
import sys
import time

import httpx

from . import __version__
from .runio import write_manifest, write_records_csv

USAGE_ERROR = 64

BOUND_COLUMNS = ("name", "value", "hypotheses_satisfied", "hypothesis_log", "inputs")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


class ServiceClient:
    """Thin HTTP client; defaults to running the app in-process."""

    def __init__(self, server: str | None = None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=None)
        else:
            from fastapi.testclient import TestClient

            from .service import create_app

            self._client = TestClient(create_app())

    def post(self, path: str, payload: dict) -> dict:
        response = self._client.post(path, json=payload)
        if response.status_code != 200:
            raise RuntimeError(f"{path} failed ({response.status_code}): {response.text}")
        return response.json()

    def close(self):
        self._client.close()


def _add_common(parser: argparse.ArgumentParser, default_out: str):
    parser.add_argument("--server", default=None, help="base URL of a running service")
    parser.add_argument("--out", default=default_out, help="run directory for records.csv and manifest.json")
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="superres", description=__doc__)
    parser.add_argument("--version", action="version", version=f"superres {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    bounds = sub.add_parser("bounds", help="evaluate one closed-form bound")
    bounds.add_argument(
        "--theorem",
        required=True,
        choices=[
            "clump1", "clump2", "upper", "theta-lower", "minmax",
            "music-tolerance", "hankel-noise",
        ],
    )
    bounds.add_argument("--M", type=int, required=True)
    bounds.add_argument("--A", type=int)
    bounds.add_argument("--lambda", dest="lam", type=int)
    bounds.add_argument("--alpha", type=float)
    bounds.add_argument("--interclump-dist", type=float)
    bounds.add_argument("--nodes", type=str, help="comma-separated torus points")
    bounds.add_argument("--N", type=int)
    bounds.add_argument("--S", type=int)
    bounds.add_argument("--delta", type=float)
    bounds.add_argument("--nu", type=float)
    bounds.add_argument("--eps", type=float)
    bounds.add_argument("--sigma", type=float)
    bounds.add_argument("--L", dest="pencil", type=int)
    bounds.add_argument("--tail-at", type=float, nargs="*")
    _add_common(bounds, "runs/bounds")

    ssm = sub.add_parser("sweep-sigma-min", help="sigma_min power-law sweep")
    ssm.add_argument("--A", type=int, nargs="+", default=[1])
    ssm.add_argument("--lambda", dest="lam", type=int, nargs="+", default=[2, 3, 4])
    ssm.add_argument("--M", type=int, default=4096)
    ssm.add_argument("--srf-min", type=float, default=None)
    ssm.add_argument("--srf-max", type=float, default=8.0)
    ssm.add_argument("--srf-points", type=int, default=20)
    _add_common(ssm, "runs/sweep-sigma-min")

    sth = sub.add_parser("sweep-theta", help="worst-case grid constant sweep")
    sth.add_argument("--S", type=int, nargs="+", default=[2, 3, 4])
    sth.add_argument("--M", type=int, default=50)
    sth.add_argument("--srf-min", type=float, default=2.0)
    sth.add_argument("--srf-max", type=float, default=20.0)
    sth.add_argument("--srf-points", type=int, default=20)
    _add_common(sth, "runs/sweep-theta")

    demo = sub.add_parser("music-demo", help="correlation/imaging traces for a scene")
    demo.add_argument("--A", type=int, default=1)
    demo.add_argument("--lambda", dest="lam", type=int, default=3)
    demo.add_argument("--alpha", type=float, default=0.5)
    demo.add_argument("--M", type=int, default=100)
    demo.add_argument("--sigma", type=float, default=0.0)
    demo.add_argument("--beta", type=float, default=10.0)
    demo.add_argument("--grid-size", type=int, default=None)
    _add_common(demo, "runs/music-demo")

    phase = sub.add_parser("phase-transition", help="MUSIC phase-transition sweep")
    phase.add_argument("--A", type=int, default=1)
    phase.add_argument("--lambda", dest="lam", type=int, default=2)
    phase.add_argument("--M", type=int, default=100)
    phase.add_argument("--srf-min", type=float, default=1.0)
    phase.add_argument("--srf-max", type=float, default=10.0)
    phase.add_argument("--srf-points", type=int, default=20)
    phase.add_argument("--sigma-lo", type=float, default=1e-6)
    phase.add_argument("--sigma-hi", type=float, default=1.0)
    phase.add_argument("--sigma-per-decade", type=int, default=30)
    phase.add_argument("--trials", type=int, default=10)
    phase.add_argument("--beta", type=float, default=10.0)
    phase.add_argument("--no-refine", action="store_true")
    _add_common(phase, "runs/phase-transition")

    certify = sub.add_parser("certify", help="verify dual certificates on a scene")
    certify.add_argument("--M", type=int, required=True)
    certify.add_argument("--A", type=int)
    certify.add_argument("--lambda", dest="lam", type=int)
    certify.add_argument("--alpha", type=float)
    certify.add_argument("--beta", type=float, default=None)
    certify.add_argument("--nodes", type=str, help="comma-separated torus points")
    _add_common(certify, "runs/certify")

    selftest = sub.add_parser("selftest", help="run the tiny-scale oracles")
    _add_common(selftest, "runs/selftest")

    return parser


def _write_run(out: str, command: str, seed, params: dict, columns, rows, started_at: float) -> None:
    write_records_csv(f"{out}/records.csv", columns, rows)
    write_manifest(
        f"{out}/manifest.json",
        command=command,
        seed=seed,
        params=params,
        started_at=started_at,
        duration_s=time.time() - started_at,
    )


def _cmd_bounds(args, client: ServiceClient) -> int:
    payload = {
        "theorem": args.theorem,
        "m": args.M,
        "a": args.A,
        "lam": args.lam,
        "alpha": args.alpha,
        "interclump_dist": args.interclump_dist,
        "n": args.N,
        "s": args.S,
        "delta": args.delta,
        "nu": args.nu,
        "eps": args.eps,
        "sigma": args.sigma,
        "pencil": args.pencil,
        "tail_at": args.tail_at,
    }
    if args.nodes:
        payload["nodes"] = [float(x) for x in args.nodes.split(",")]
    payload = {k: v for k, v in payload.items() if v is not None}
    started = time.time()
    result = client.post("/bounds", payload)
    rows = []

    def num(x) -> float:
        return float("nan") if x is None else float(x)

    for report in result["reports"]:
        log = "; ".join(
            f"{h['condition']}: {num(h['lhs']):.6g} vs {num(h['rhs']):.6g} -> "
            f"{'ok' if h['satisfied'] else 'FAIL'}"
            for h in report["hypothesis_log"]
        )
        rows.append(
            {
                "name": report["name"],
                "value": report["value"],
                "hypotheses_satisfied": report["hypotheses_satisfied"],
                "hypothesis_log": log,
                "inputs": str(report["inputs"]),
            }
        )
        print(f"{report['name']} = {report['value']:.12g}")
        print(f"  hypotheses satisfied: {report['hypotheses_satisfied']}")
        if log:
            print(f"  {log}")
    for key, value in result["extras"].items():
        print(f"{key}: {value}")
        rows.append(
            {
                "name": key,
                "value": value if isinstance(value, float) else str(value),
                "hypotheses_satisfied": True,
                "hypothesis_log": "",
                "inputs": "",
            }
        )
    _write_run(args.out, "bounds", args.seed, payload, BOUND_COLUMNS, rows, started)
    if any(not r["hypotheses_satisfied"] for r in rows):
        return 2
    return 0


def _run_sweep(args, client: ServiceClient, command: str, path: str, payload: dict) -> dict:
    started = time.time()
    result = client.post(path, payload)
    _write_run(
        args.out, command, payload.get("seed", args.seed), payload,
        result["columns"], result["rows"], started,
    )
    print(f"{command}: {len(result['rows'])} records -> {args.out}/records.csv")
    return result


def _cmd_sigma_min(args, client: ServiceClient) -> int:
    payload = {
        "a_values": args.A,
        "lambda_values": args.lam,
        "m": args.M,
        "srf_min": args.srf_min,
        "srf_max": args.srf_max,
        "srf_points": args.srf_points,
        "seed": args.seed,
    }
    payload = {k: v for k, v in payload.items() if v is not None}
    result = _run_sweep(args, client, "sweep-sigma-min", "/sweeps/sigma-min", payload)
    for entry in result["summary"]["slopes"]:
        print(
            f"  A={entry['a']} lambda={entry['lam']}: "
            f"slope(zeta)={entry['slope_zeta']:.4f} slope(ratio)={entry['slope_ratio']:.4f}"
        )
    return 0


def _cmd_theta(args, client: ServiceClient) -> int:
    payload = {
        "s_values": args.S,
        "m": args.M,
        "srf_min": args.srf_min,
        "srf_max": args.srf_max,
        "srf_points": args.srf_points,
        "seed": args.seed,
    }
    result = _run_sweep(args, client, "sweep-theta", "/sweeps/theta", payload)
    for entry in result["summary"]["slopes"]:
        print(
            f"  S={entry['s']}: slope(theta*)={entry['slope_theta_star']:.4f} "
            f"slope(ratio)={entry['slope_ratio']:.4f}"
        )
    return 0


def _cmd_demo(args, client: ServiceClient) -> int:
    payload = {
        "a": args.A,
        "lam": args.lam,
        "alpha": args.alpha,
        "m": args.M,
        "sigma": args.sigma,
        "seed": args.seed,
        "beta": args.beta,
    }
    if args.grid_size is not None:
        payload["grid_size"] = args.grid_size
    result = _run_sweep(args, client, "music-demo", "/music/demo", payload)
    summary = result["summary"]
    print(f"  dist_B = {summary['dist_b']:.6g} (delta = {summary['delta']:.6g})")
    return 0


def _cmd_phase(args, client: ServiceClient) -> int:
    payload = {
        "a": args.A,
        "lam": args.lam,
        "m": args.M,
        "srf_min": args.srf_min,
        "srf_max": args.srf_max,
        "srf_points": args.srf_points,
        "sigma_lo": args.sigma_lo,
        "sigma_hi": args.sigma_hi,
        "sigma_per_decade": args.sigma_per_decade,
        "trials": args.trials,
        "seed": args.seed,
        "beta": args.beta,
        "refine": not args.no_refine,
    }
    result = _run_sweep(args, client, "phase-transition", "/sweeps/phase-transition", payload)
    print(f"  fitted q = {result['summary']['q']:.4f}")
    return 0


def _cmd_certify(args, client: ServiceClient) -> int:
    payload = {"m": args.M, "seed": args.seed}
    if args.nodes:
        payload["nodes"] = [float(x) for x in args.nodes.split(",")]
    else:
        payload.update({"a": args.A, "lam": args.lam, "alpha": args.alpha})
        if args.beta is not None:
            payload["beta"] = args.beta
    result = _run_sweep(args, client, "certify", "/certify", payload)
    summary = result["summary"]
    print(
        f"  checks ok: {summary['all_checks_ok']}; separation ok: "
        f"{summary['separation_ok']}; duality bound {summary['duality_bound']:.6g} "
        f"<= sigma_min {summary['sigma_min']:.6g}"
    )
    if not (summary["all_checks_ok"] and summary["duality_sound"]):
        return 1
    if not summary["separation_ok"]:
        return 2
    return 0


def _cmd_selftest(args, client: ServiceClient) -> int:
    payload = {"seed": args.seed}
    result = _run_sweep(args, client, "selftest", "/selftest", payload)
    for row in result["rows"]:
        status = "PASS" if row["passed"] else "FAIL"
        print(f"  [{status}] {row['check']}: {row['detail']}")
    return 0 if result["summary"]["all_passed"] else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return 0

    client = ServiceClient(args.server)
    handlers = {
        "bounds": _cmd_bounds,
        "sweep-sigma-min": _cmd_sigma_min,
        "sweep-theta": _cmd_theta,
        "music-demo": _cmd_demo,
        "phase-transition": _cmd_phase,
        "certify": _cmd_certify,
        "selftest": _cmd_selftest,
    }
    try:
        return handlers[args.command](args, client)
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    finally:
        client.close()


if __name__ == "__main__":
    sys.exit(main())
