"""Command-line front end.

Every command reads a flat JSON job description (``--config``); a few
common keys can also be given as flags.  Sequences and permutations in
job files are 1-based, as in the usual notation ``mu_1 mu_2 ...``.

Exit codes: 0 success, 2 configuration error, 3 a mathematical check
failed, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import ast
import json
import logging
import math
import operator
import sys
from typing import Any, Dict, List, Optional, Sequence

from .cluster import (
    check_extended_period,
    check_period,
    initial_extended_seed,
    initial_seed,
    run_sequence,
    tropical_signs,
)
from .errors import (
    ConfigError,
    IndexOutOfRange,
    LengthMismatch,
    MalformedTriangulation,
    NumericalError,
    VerdictError,
    WKBClusterError,
)
from .exchange import ExchangeMatrix
from .surface import (
    LabeledSignedTriangulation,
    StokesTriangulationState,
    adjacency_matrix,
    annulus,
    lift_period,
    octagon_example,
    pentagon,
    punctured_digon,
    punctured_digon_radii,
    punctured_octagon_example,
    punctured_square,
)
from .tropical import tropical_run
from .voros import chain_closes, identity_from_period
from .wkb import Potential, airy, hypergeometric, riccati_report, riccati_text, weber

log = logging.getLogger("wkbcluster")

EXIT_OK, EXIT_CONFIG, EXIT_VERDICT, EXIT_NUMERIC = 0, 2, 3, 4

POTENTIALS = {
    "airy": lambda: airy(),
    "weber": lambda: weber(),
    "cubic": lambda: Potential(["z*(z+1)*(z+i)"]),
    "degenerate": lambda: Potential(["-(z+2*i)*(z-3*i)/z^2"]),
    "hypergeometric": lambda: hypergeometric("1/3", "1/5", "1/7"),
}

TRIANGULATIONS = {
    "pentagon": pentagon,
    "octagon": octagon_example,
    "punctured_octagon": punctured_octagon_example,
    "punctured_digon": punctured_digon,
    "punctured_digon_radii": punctured_digon_radii,
    "punctured_square": punctured_square,
    "annulus11": lambda: annulus(1, 1),
}


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

_OPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
        ast.Div: operator.truediv, ast.USub: operator.neg, ast.UAdd: operator.pos}


def parse_angle(text) -> float:
    """A real number such as ``0.3``, ``-pi/10`` or ``2*pi/3``."""
    if isinstance(text, (int, float)):
        return float(text)

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.BinOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _OPS:
            return _OPS[type(node.op)](ev(node.operand))
        raise ConfigError(f"cannot read angle {text!r}")

    try:
        return ev(ast.parse(str(text).strip(), mode="eval"))
    except (SyntaxError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot read angle {text!r}: {exc}") from exc


def parse_theta_range(text: str):
    """``a:b:steps`` -> ``(a, b, steps)``; a single value gives ``(a, a, 1)``."""
    parts = str(text).split(":")
    if len(parts) == 1:
        t = parse_angle(parts[0])
        return t, t, 1
    if len(parts) != 3:
        raise ConfigError(f"--theta expects a:b:steps, got {text!r}")
    try:
        steps = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"bad step count in {text!r}") from exc
    if steps < 1:
        raise ConfigError("the number of theta steps must be positive")
    return parse_angle(parts[0]), parse_angle(parts[1]), steps


def load_config(path: Optional[str]) -> Dict[str, Any]:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("the job description must be a JSON object")
    for key in ("tol", "R", "pole_radius"):
        if key in cfg and not float(cfg[key]) > 0:
            raise ConfigError(f"{key} must be positive")
    return cfg


def _matrix(cfg) -> ExchangeMatrix:
    if "B" not in cfg:
        raise ConfigError("missing key 'B'")
    try:
        return ExchangeMatrix(cfg["B"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad exchange matrix: {exc}") from exc


def _indices(cfg, key, n, default=None) -> List[int]:
    vals = cfg.get(key, default)
    if vals is None:
        raise ConfigError(f"missing key {key!r}")
    out = []
    for v in vals:
        if not isinstance(v, int) or not 1 <= v <= n:
            raise ConfigError(f"{key}: entry {v!r} is not in 1..{n}")
        out.append(v - 1)
    return out


def _nu(cfg, n) -> Optional[List[int]]:
    if "nu" not in cfg:
        return None
    nu = _indices(cfg, "nu", n)
    if sorted(nu) != list(range(n)):
        raise ConfigError(f"nu = {cfg['nu']} is not a permutation of 1..{n}")
    return nu


def _triangulation(cfg) -> Optional[LabeledSignedTriangulation]:
    t = cfg.get("triangulation")
    if t is None:
        return None
    if isinstance(t, str):
        if t not in TRIANGULATIONS:
            raise ConfigError(f"unknown triangulation {t!r}; known: {sorted(TRIANGULATIONS)}")
        return TRIANGULATIONS[t]()
    try:
        return LabeledSignedTriangulation.from_dict(t)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad triangulation: {exc}") from exc


def _potential(cfg) -> Potential:
    if "potential" in cfg:
        name = cfg["potential"]
        if name not in POTENTIALS:
            raise ConfigError(f"unknown potential {name!r}; known: {sorted(POTENTIALS)}")
        return POTENTIALS[name]()
    if "Q" in cfg:
        Q = cfg["Q"]
    elif "Q0" in cfg:
        Q = [cfg["Q0"]]
    else:
        raise ConfigError("missing potential: give 'Q', 'Q0' or 'potential'")
    try:
        return Potential([str(q) for q in Q])
    except (ValueError, SyntaxError, KeyError) as exc:
        raise ConfigError(f"cannot parse potential {Q!r}: {exc}") from exc


def _trace_options(cfg):
    from .tracer import TraceOptions

    opts = TraceOptions()
    for key in ("tol", "R", "pole_radius", "tp_radius", "max_length"):
        if key in cfg:
            setattr(opts, key, float(cfg[key]))
    return opts


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------

def _emit(args, text: str, data: dict):
    body = json.dumps(data, indent=2, default=str) if args.json else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps(data, indent=2, default=str) + "\n")
    print(body)


def _seed_row(t, k, s) -> dict:
    return {"t": t, "k": None if k is None else k + 1,
            "x": [str(v) for v in s.x], "y": [str(s.y_field(i)) for i in range(s.n)],
            "B": s.B.tolist()}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_mutate(cfg, args) -> int:
    B = _matrix(cfg)
    ks = _indices(cfg, "sequence", B.n, default=[])
    flavor = cfg.get("flavor", "universal")
    if flavor not in ("universal", "tropical"):
        raise ConfigError(f"unknown flavor {flavor!r}")
    seeds = run_sequence(initial_seed(B, flavor), ks)
    rows = [_seed_row(t + 1, ks[t - 1] if t else None, s) for t, s in enumerate(seeds)]
    lines = []
    for r in rows:
        head = f"t={r['t']}" + ("" if r["k"] is None else f"  (after mu_{r['k']})")
        lines.append(head)
        lines.append("  x = (" + ", ".join(r["x"]) + ")")
        lines.append("  y = (" + ", ".join(r["y"]) + ")")
    data = {"B": B.tolist(), "sequence": [k + 1 for k in ks], "flavor": flavor, "seeds": rows}
    nu = _nu(cfg, B.n)
    status = EXIT_OK
    if nu is not None:
        ok = check_period(initial_seed(B, flavor), ks, nu)
        data["period"] = ok
        lines.append(f"nu-period: {'yes' if ok else 'no'}")
        if not ok:
            status = EXIT_VERDICT
    _emit(args, "\n".join(lines), data)
    return status


def cmd_period(cfg, args) -> int:
    B = _matrix(cfg)
    ks = _indices(cfg, "sequence", B.n)
    nu = _nu(cfg, B.n) or list(range(B.n))
    signs, cvecs, ys = tropical_run(B, ks)
    ok = check_period(initial_seed(B), ks, nu)
    lines = [" t  k  sign  c(t)"]
    for t, k in enumerate(ks):
        lines.append(f"{t + 1:2d} {k + 1:2d}   {'+' if signs[t] > 0 else '-'}   {list(cvecs[t])}")
    lines.append("final [y] = " + ", ".join(str(v) for v in ys[-1]))
    lines.append(f"nu-period: {'yes' if ok else 'no'}")
    data = {"B": B.tolist(), "sequence": [k + 1 for k in ks], "nu": [v + 1 for v in nu],
            "signs": signs, "cvectors": [list(c) for c in cvecs],
            "tropical_y": [[list(v.exponents) for v in y] for y in ys], "period": ok}
    T = _triangulation(cfg)
    if T is not None:
        St = StokesTriangulationState(T)
        moves = lift_period(St, ks, tropical_signs(adjacency_matrix(T), ks), nu)
        ext = check_extended_period(initial_extended_seed(St), moves, nu)
        data["lift"] = [m.to_dict() for m in moves]
        data["extended_period"] = ext
        lines.append("lift: " + " ".join(str(m) for m in moves))
        lines.append(f"extended seed period: {'yes' if ext else 'no'}")
        ok = ok and ext
    _emit(args, "\n".join(lines), data)
    return EXIT_OK if ok else EXIT_VERDICT


def cmd_identity(cfg, args) -> int:
    T = _triangulation(cfg)
    B = adjacency_matrix(T) if T is not None and "B" not in cfg else _matrix(cfg)
    ks = _indices(cfg, "sequence", B.n)
    nu = _nu(cfg, B.n) or list(range(B.n))
    report, ok = identity_from_period(B, ks, nu, raise_on_failure=False)
    text = report.text()
    data = report.to_dict()
    if T is not None:
        St = StokesTriangulationState(T)
        moves = lift_period(St, ks, tropical_signs(B, ks), nu)
        closes = chain_closes(St, moves, nu)
        ext = check_extended_period(initial_extended_seed(St), moves, nu)
        data.update({"lift": [m.to_dict() for m in moves], "chain_closes": closes,
                     "extended_period": ext})
        text += "\nlift: " + " ".join(str(m) for m in moves)
        text += f"\nVoros chain returns to nu*: {'yes' if closes else 'no'}"
        text += f"\nextended seed period: {'yes' if ext else 'no'}"
        ok = ok and closes and ext
    _emit(args, text, data)
    return EXIT_OK if ok else EXIT_VERDICT


def cmd_riccati(cfg, args) -> int:
    P = _potential(cfg)
    N = args.order if args.order is not None else int(cfg.get("order", 4))
    if N < 0:
        raise ConfigError("the truncation order must be >= 0")
    report = riccati_report(P, N)
    _emit(args, riccati_text(P, N), report)
    ok = report.get("residual_vanishes", True) and report.get("log_derivative_identity", True)
    return EXIT_OK if ok else EXIT_VERDICT


def _thetas(cfg, args, default_steps=1):
    spec = args.theta if args.theta is not None else cfg.get("theta", "0")
    if isinstance(spec, (int, float)):
        return float(spec), float(spec), 1
    return parse_theta_range(spec)


def cmd_trace(cfg, args) -> int:
    from .tracer import build_graph, graph_to_triangulation, region_summary, write_svg

    P = _potential(cfg)
    theta = _thetas(cfg, args)[0]
    G = build_graph(P, theta, _trace_options(cfg))
    data = G.to_dict()
    text = [region_summary(G)]
    for e in G.edges:
        text.append(f"  a{e.start}/{e.dir}: departs at {e.departure:+.4f} -> {e.end.label()}"
                    f"  ({e.steps} steps, drift {e.rel_drift:.1e})")
    if G.saddle_free:
        T, B = graph_to_triangulation(G)
        data["triangulation"] = T.to_dict()
        data["B"] = B.tolist()
        text.append(f"B = {B.tolist()}")
    else:
        log.warning("saddle trajectory present at theta=%s", theta)
    if args.svg:
        write_svg(G, args.svg)
    _emit(args, "\n".join(text), data)
    return EXIT_OK


def cmd_rotate(cfg, args) -> int:
    from .tracer import region_summary, rotate, write_svg

    P = _potential(cfg)
    a, b, steps = _thetas(cfg, args)
    if steps < 2:
        raise ConfigError("rotate needs a theta range a:b:steps with steps >= 2")
    res = rotate(P, a, b, steps, _trace_options(cfg))
    lines = [region_summary(G) for G in res.graphs]
    for ev in res.events:
        where = ev.pole if ev.kind == "degenerate" else "-".join(f"a{i}" for i in ev.turning_points)
        lines.append(f"event: {ev.kind} saddle at theta = {ev.theta:.10f} ({where})")
    for m in res.moves:
        lines.append(f"move: {m.move}  verified: {'yes' if m.verified else 'NO'}")
    if args.svg:
        stem = args.svg[:-4] if args.svg.endswith(".svg") else args.svg
        for i, G in enumerate(res.graphs):
            write_svg(G, f"{stem}_{i:02d}.svg")
    _emit(args, "\n".join(lines), res.to_dict())
    return EXIT_OK if res.verified else EXIT_VERDICT


def cmd_triangulate(cfg, args) -> int:
    T = _triangulation(cfg)
    if T is not None:
        B = adjacency_matrix(T)
        _emit(args, T.describe() + f"\nB = {B.tolist()}", {"triangulation": T.to_dict(),
                                                            "B": B.tolist()})
        return EXIT_OK
    from .tracer import build_graph, graph_to_triangulation

    P = _potential(cfg)
    theta = _thetas(cfg, args)[0]
    G = build_graph(P, theta, _trace_options(cfg))
    T, B = graph_to_triangulation(G)
    data = {"theta": theta, "triangulation": T.to_dict(), "B": B.tolist(),
            "census": list(G.census())}
    _emit(args, T.describe() + f"\nB = {B.tolist()}", data)
    return EXIT_OK


COMMANDS = {
    "mutate": cmd_mutate,
    "period": cmd_period,
    "identity": cmd_identity,
    "riccati": cmd_riccati,
    "trace": cmd_trace,
    "rotate": cmd_rotate,
    "triangulate": cmd_triangulate,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wkbcluster",
                                 description="Cluster seeds, Voros symbols and Stokes graphs.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("--config", help="JSON job description")
    ap.add_argument("--out", help="write the JSON report to this file")
    ap.add_argument("--svg", help="write an SVG picture (rotate: one file per sample)")
    ap.add_argument("--json", action="store_true", help="print JSON instead of text")
    ap.add_argument("--order", type=int, help="truncation order N for riccati")
    ap.add_argument("--theta", help="direction theta, or a:b:steps for rotate")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def _join_theta(argv: List[str]) -> List[str]:
    """Glue ``--theta VALUE`` into ``--theta=VALUE`` so negative ranges parse."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--theta" and i + 1 < len(argv):
            out.append(f"--theta={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(_join_theta(sys.argv[1:] if argv is None else list(argv)))
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cfg = load_config(args.config)
        return COMMANDS[args.command](cfg, args)
    except (ConfigError, LengthMismatch, IndexOutOfRange, MalformedTriangulation) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except VerdictError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_VERDICT
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except WKBClusterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
