"""Command line client.

Verbs: transform, invert, solve, selftest, serve.  Every verb except serve
can run against the in-process engine (default) or a remote service via
--url; both paths go through the same request/response models.

Exit codes follow the error hierarchy: 2 parse or config, 3 divergence,
4 outside the closed-form grammar, 5 improper image, 6 solver failure,
1 anything else.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import httpx
from pydantic import BaseModel, ValidationError

from . import __version__
from .errors import ERROR_KINDS, ConfigError, ShehuError
from .handlers import (
    handle_invert,
    handle_selftest,
    handle_solve,
    handle_transform,
    model_to_table,
)
from .schemas import (
    InvertRequest,
    InvertResponse,
    ProblemConfig,
    SelftestResponse,
    SolveRequest,
    SolveResponse,
    TransformRequest,
    TransformResponse,
)
from .tables import write_output

_TIMEOUT = 120.0


class _RemoteError(Exception):
    """Service-side failure already mapped to a local exit code."""

    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _decode(resp: httpx.Response, model: type[BaseModel]) -> BaseModel:
    if resp.status_code == 200:
        return model.model_validate(resp.json())
    if resp.status_code == 400:
        body = resp.json()
        kind = body.get("kind", "ShehuError")
        code = ERROR_KINDS.get(kind, ShehuError).exit_code
        raise _RemoteError(code, body.get("message", "service error"))
    if resp.status_code == 422:
        raise _RemoteError(2, f"service rejected the request: {resp.text}")
    raise _RemoteError(1, f"service returned HTTP {resp.status_code}: {resp.text[:400]}")


def _post(url: str, path: str, payload: BaseModel, model: type[BaseModel]) -> BaseModel:
    resp = httpx.post(
        url.rstrip("/") + path, json=payload.model_dump(mode="json"), timeout=_TIMEOUT
    )
    return _decode(resp, model)


def _get(url: str, path: str, model: type[BaseModel]) -> BaseModel:
    return _decode(httpx.get(url.rstrip("/") + path, timeout=_TIMEOUT), model)


def _parse_times(text: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad time list: {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("time list is empty")
    return values


def cmd_transform(args: argparse.Namespace) -> int:
    req = TransformRequest(
        expression=args.expression,
        s=args.s,
        u=args.u,
        mode="numeric" if args.numeric else "symbolic",
    )
    if args.url:
        resp = _post(args.url, "/transform", req, TransformResponse)
    else:
        resp = handle_transform(req)
    if resp.image is not None:
        print(f"image: {resp.image}")
    if resp.numeric_value is not None:
        print(f"numeric value: {resp.numeric_value:.6g}")
        if resp.table_value is not None:
            print(f"table value:   {resp.table_value:.6g}")
            print(f"difference:    {resp.difference:.6g}")
        else:
            print("table value:   n/a (outside the closed-form table)")
    return 0


def cmd_invert(args: argparse.Namespace) -> int:
    req = InvertRequest(
        image=args.image,
        times=args.times,
        method=args.method,
        node_count=args.nodes,
        contour_scale=args.contour_scale,
    )
    if args.url:
        resp = _post(args.url, "/invert", req, InvertResponse)
    else:
        resp = handle_invert(req)
    print(resp.expression)
    for t, v in zip(resp.times, resp.values):
        print(f"t={t:.6g}  v={v:.6g}")
    return 0


def cmd_solve(args: argparse.Namespace) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}")
    config = ProblemConfig.model_validate(raw)
    if args.url:
        resp = _post(args.url, "/solve", SolveRequest(config=config), SolveResponse)
    else:
        resp = handle_solve(config)
    write_output(model_to_table(resp.table), config.output.path, config.output.format)
    print(f"solution: {resp.solution}")
    print(f"wrote {config.output.path} ({config.output.format})")
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    if args.url:
        resp = _get(args.url, "/selftest", SelftestResponse)
    else:
        resp = handle_selftest()
    for case in resp.cases:
        tag = "PASS" if case.passed else "FAIL"
        print(f"{tag}  {case.name}: {case.detail}")
    print("selftest passed" if resp.passed else "selftest FAILED")
    return 0 if resp.passed else 1


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shehu", description="two-parameter integral transform engine"
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("transform", help="transform a function of t")
    p.add_argument("expression", help="function of t, e.g. 'sin(3*t)*exp(-4*t)'")
    p.add_argument("--s", type=float, default=1.0, help="first transform variable")
    p.add_argument("--u", type=float, default=1.0, help="second transform variable")
    p.add_argument(
        "--numeric",
        action="store_true",
        help="evaluate by quadrature and compare with the closed form",
    )
    p.add_argument("--url", help="run against a remote service")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("invert", help="recover a function of t from its image")
    p.add_argument("image", help="rational image in s and u, e.g. 'u^2/(s-2u)^2'")
    p.add_argument(
        "--times",
        type=_parse_times,
        default=[0.1, 0.5, 1.0, 2.0, 5.0],
        help="comma separated sample times",
    )
    p.add_argument(
        "--method",
        choices=("symbolic", "talbot", "stehfest"),
        default="symbolic",
        help="how to evaluate the samples",
    )
    p.add_argument("--nodes", type=int, default=32, help="contour or series node count")
    p.add_argument("--contour-scale", type=float, default=1.0)
    p.add_argument("--url", help="run against a remote service")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("solve", help="run a solver described by a JSON config")
    p.add_argument("config", help="path to the problem config")
    p.add_argument("--url", help="run against a remote service")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("selftest", help="run the built-in golden-value checks")
    p.add_argument("--url", help="run against a remote service")
    p.set_defaults(func=cmd_selftest)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage or version
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ShehuError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValidationError as exc:
        print(f"error: invalid request\n{exc}", file=sys.stderr)
        return 2
    except _RemoteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except httpx.HTTPError as exc:
        print(f"error: service request failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
