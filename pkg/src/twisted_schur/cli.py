"""Command-line surface: a thin client over the operation handlers.

Every subcommand builds a JSON payload from its files and flags, obtains the
response either in process or from a running service (``--server``), and
renders it.  Rendering depends only on the response payload, so both modes
produce byte-identical output.

Exit codes: 0 success (including an unliftable class, which is a result),
2 malformed input, 3 resource budget exceeded, 4 violated mathematical
precondition.
"""

import argparse
import json
import sys
from typing import List, Optional, Tuple

from .config import DEFAULT_CONFIG, RunConfig
from .errors import InputError, TwistedSchurError
from .formats import dump_json, load_json_file
from .service import handlers

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_PRECONDITION = 4

_EXIT_BY_STATUS = {400: EXIT_INPUT, 413: EXIT_RESOURCE, 422: EXIT_PRECONDITION}

_ROUTES = {
    "multiplier": ("POST", "/v1/multiplier"),
    "repgroups": ("POST", "/v1/repgroups"),
    "cohomology": ("POST", "/v1/cohomology"),
    "regular-rep": ("POST", "/v1/regular-rep"),
    "lift": ("POST", "/v1/lift"),
    "heisenberg": ("GET", "/v1/heisenberg"),
}

_HANDLERS = {
    "multiplier": handlers.handle_multiplier,
    "repgroups": handlers.handle_repgroups,
    "cohomology": handlers.handle_cohomology,
    "regular-rep": handlers.handle_regular_rep,
    "lift": handlers.handle_lift,
    "heisenberg": handlers.handle_heisenberg,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _parse_signs(text: str) -> List[int]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise InputError("--action must list +-1 signs, e.g. '1,-1'")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise InputError(f"--action entries must be integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twisted-schur",
        description="Exact twisted Schur multipliers, representation groups, "
                    "semi-projective lifts, and semilinear geometry.")
    parser.add_argument("--format", choices=("text", "json"), default="text",
                        help="output rendering (default: text)")
    parser.add_argument("--server", metavar="URL", default=None,
                        help="send the request to a running service instead "
                             "of computing in process")
    parser.add_argument("--cache-dir", default=None,
                        help="directory for the cohomology disk cache")
    parser.add_argument("--max-group-order", type=int, default=None)
    parser.add_argument("--max-cochain-basis", type=int, default=None)
    parser.add_argument("--max-closure-order", type=int, default=None)
    parser.add_argument("--parallelism", type=int, default=None)
    parser.add_argument("--seed", type=int, default=None,
                        help="seed for the selftest suites")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("multiplier",
                       help="invariant factors of H^2(G, C*_phi)")
    p.add_argument("groupfile", help="group JSON file")
    p.add_argument("--action", required=True,
                   help="comma-separated +-1 signs, one per group generator "
                        "(or per element)")

    p = sub.add_parser("repgroups",
                       help="all phi-twisted representation groups")
    p.add_argument("groupfile")
    p.add_argument("--action", required=True)
    p.add_argument("--output", default=None,
                   help="also write the full JSON response to this file")

    p = sub.add_parser("cohomology", help="H^n(G, M) invariant factors")
    p.add_argument("groupfile")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--coeff", required=True,
                   help="'sign' (uses --action) or 'finite:<m1,m2,...>' or "
                        "'finite:<module-spec.json>'")
    p.add_argument("--action", default=None)
    p.add_argument("--reps", action="store_true",
                   help="include class representatives")

    p = sub.add_parser("regular-rep",
                       help="regular semi-projective representation of a "
                            "twisted 2-cocycle")
    p.add_argument("groupfile")
    p.add_argument("--action", required=True)
    p.add_argument("--cocycle", required=True, help="cocycle JSON file")
    p.add_argument("--output", default=None,
                   help="write the representation file here instead of stdout")

    p = sub.add_parser("lift",
                       help="lift a representation over an extension; an "
                            "unliftable class is reported, not an error")
    p.add_argument("--rep", required=True, help="representation JSON file")
    p.add_argument("--extension", required=True,
                   help="extension dump JSON file")
    p.add_argument("--output", default=None,
                   help="also write the full JSON response to this file")

    sub.add_parser("heisenberg",
                   help="order-2592 semilinear normalizer demo report")

    sub.add_parser("selftest", help="run the seeded invariant suites")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = DEFAULT_CONFIG
    updates = {}
    for attr, key in (("cache_dir", "cache_dir"),
                      ("max_group_order", "max_group_order"),
                      ("max_cochain_basis", "max_cochain_basis"),
                      ("max_closure_order", "max_closure_order"),
                      ("parallelism", "parallelism"),
                      ("seed", "seed")):
        value = getattr(args, attr, None)
        if value is not None:
            updates[key] = value
    updates["output_format"] = args.format
    return cfg.with_(**updates)


# ---------------------------------------------------------------------------
# payload construction (thin: files + flags in, dicts out)
# ---------------------------------------------------------------------------

def _build_payload(args: argparse.Namespace) -> Optional[dict]:
    cmd = args.command
    if cmd in ("multiplier", "repgroups"):
        return {"group": load_json_file(args.groupfile),
                "action": _parse_signs(args.action)}
    if cmd == "cohomology":
        coeff = args.coeff
        if coeff == "sign":
            if not args.action:
                raise InputError("--coeff sign needs --action")
            coefficients = {"sign": _parse_signs(args.action)}
        elif coeff.startswith("finite:"):
            spec = coeff[len("finite:"):]
            if not spec:
                raise InputError("--coeff finite: needs moduli or a file")
            if all(ch.isdigit() or ch == "," for ch in spec):
                moduli = [int(p) for p in spec.split(",") if p]
                coefficients = {"module": {"free_rank": 0, "moduli": moduli}}
            else:
                coefficients = {"module": load_json_file(spec)}
        else:
            raise InputError(
                f"--coeff must be 'sign' or 'finite:<spec>', got {coeff!r}")
        payload = {"group": load_json_file(args.groupfile),
                   "degree": args.degree,
                   "coefficients": coefficients}
        if args.reps:
            payload["reps"] = True
        return payload
    if cmd == "regular-rep":
        return {"group": load_json_file(args.groupfile),
                "action": _parse_signs(args.action),
                "cocycle": load_json_file(args.cocycle)}
    if cmd == "lift":
        return {"rep": load_json_file(args.rep),
                "extension": load_json_file(args.extension)}
    if cmd == "heisenberg":
        return None
    raise AssertionError(f"unroutable command {cmd!r}")


# ---------------------------------------------------------------------------
# transport
# ---------------------------------------------------------------------------

def _respond_in_process(cmd: str, payload: Optional[dict],
                        cfg: RunConfig) -> Tuple[int, dict]:
    handler = _HANDLERS[cmd]
    try:
        if cmd == "heisenberg":
            return EXIT_OK, handler(None, cfg)
        return EXIT_OK, handler(payload, cfg)
    except TwistedSchurError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code, {}


def _respond_from_server(cmd: str, payload: Optional[dict],
                         server: str) -> Tuple[int, dict]:
    import httpx

    method, path = _ROUTES[cmd]
    url = server.rstrip("/") + path
    try:
        if method == "GET":
            resp = httpx.get(url, timeout=600.0)
        else:
            resp = httpx.post(url, json=payload, timeout=600.0)
    except httpx.HTTPError as exc:
        print(f"error: cannot reach {url}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL, {}
    if resp.status_code == 200:
        return EXIT_OK, resp.json()
    try:
        message = resp.json()["error"]["message"]
    except (json.JSONDecodeError, KeyError, TypeError):
        message = resp.text
    print(f"error: {message}", file=sys.stderr)
    return _EXIT_BY_STATUS.get(resp.status_code, EXIT_INTERNAL), {}


# ---------------------------------------------------------------------------
# rendering (depends only on the response payload)
# ---------------------------------------------------------------------------

def _fmt_abelian(invariants: List[int]) -> str:
    if not invariants:
        return "trivial"
    return " x ".join(f"Z{m}" for m in invariants)


def _render_text(cmd: str, body: dict) -> str:
    if cmd == "multiplier":
        return f"{body['invariants']}\n"
    if cmd == "repgroups":
        groups = []
        for entry in body["results"]:
            label = entry.get("identified_as", "unidentified")
            groups.append(f"{entry['order']}:{label}")
        action = ", ".join(str(v) for v in body["action"])
        lines = [
            "phi (per element) | A = H^2(G, C*_phi) | "
            "phi-twisted representation groups",
            f"{action} | {_fmt_abelian(body['multiplier'])} | "
            f"{', '.join(groups) if groups else '(none)'}",
            f"count: {body['count']}",
        ]
        return "\n".join(lines) + "\n"
    if cmd == "cohomology":
        lines = [f"{body['invariants']}"]
        for i, rep in enumerate(body.get("representatives", [])):
            values = json.dumps(rep["values"], sort_keys=True)
            lines.append(f"representative {i}: {values}")
        return "\n".join(lines) + "\n"
    if cmd == "lift":
        lines = [f"lift: {'success' if body['success'] else 'failure'}",
                 f"detail: {body['detail']}",
                 f"alpha class: {body['alpha_class']}",
                 f"transgression image: "
                 f"{[list(c) for c in body['transgression_image']]}"]
        if body["success"]:
            lines.append(f"character: {body['character']} "
                         f"(order {body['character_order']})")
        return "\n".join(lines) + "\n"
    if cmd == "heisenberg":
        lines = [
            f"closure order: {body['closure_order']}",
            f"scalar subgroup order: {body['scalar_order']} "
            f"(generator {body['scalar_generator']})",
            f"quotient order: {body['quotient_order']}",
            f"lattice stabilizer: order {body['stabilizer_order']}, "
            f"generator {body['stabilizer_generator']}",
        ]
        for lattice in ("lambda1", "lambda2"):
            cells = ", ".join(
                f"{gen} {'yes' if flags[lattice] else 'NO'}"
                for gen, flags in sorted(body["preserves"].items()))
            lines.append(f"preserves {lattice}: {cells}")
        lines.append(f"note: {body['notes']}")
        return "\n".join(lines) + "\n"
    raise AssertionError(f"no text renderer for {cmd!r}")


def _write_output(path: str, body: dict) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dump_json(body))
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}")


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)

    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(cfg), host=args.host, port=args.port)
        return EXIT_OK

    if args.command == "selftest":
        from .selftest import run_selftest

        ok = run_selftest(cfg, stream=sys.stdout)
        return EXIT_OK if ok else EXIT_INTERNAL

    try:
        payload = _build_payload(args)
    except TwistedSchurError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code

    if args.server:
        code, body = _respond_from_server(args.command, payload, args.server)
    else:
        code, body = _respond_in_process(args.command, payload, cfg)
    if code != EXIT_OK:
        return code

    output_path = getattr(args, "output", None)
    if output_path:
        _write_output(output_path, body)

    if args.format == "json":
        sys.stdout.write(dump_json(body))
    elif args.command == "regular-rep":
        # the representation file is the deliverable
        if output_path:
            sys.stdout.write(f"wrote representation file to {output_path}\n")
        else:
            sys.stdout.write(dump_json(body))
    else:
        sys.stdout.write(_render_text(args.command, body))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
