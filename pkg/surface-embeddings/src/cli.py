"""Command line front end: one subcommand per toolkit operation, JSON on stdout.

Each command handler takes the parsed input document, an options mapping and the
loaded configuration, and returns ``(report, exit_status)``. The MCP server calls
the same handlers.
"""

import argparse
import logging
import sys
from collections.abc import Callable
from typing import Any

from . import __version__
from .config import ToolkitConfig, load_config
from .embedding import EmbeddingScheme, euler_genus, is_edge_maximal, orientability, trace_faces
from .enumeration import (
    CLAIMS,
    EnumerationRange,
    verify_lemma1,
    verify_lh_bound,
    verify_loop_bound,
    verify_maximal_embeddings,
    verify_neighborhood_uniqueness,
)
from .errors import SurfaceEmbeddingError, ValidationError
from .fixtures import write_fixtures
from .flowers import FlowerDecomposition, build_flower, flower_scheme, is_flower
from .local_hamiltonicity import is_locally_hamiltonian
from .multigraph import Multigraph
from .oracle import oracle_embed
from .serialization import document, faces_to_json, load_json, parse_document, to_dot, write_output
from .triangulation import CycleSpec, lemma1_candidates, reconstruct_triangulation

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

Options = dict[str, Any]
Handler = Callable[[Any, Options, ToolkitConfig], tuple[dict[str, Any], int]]


def _graph(data: Any) -> Multigraph:
    g, _ = parse_document(data)
    return g


def _scheme(data: Any, command: str) -> EmbeddingScheme:
    _, s = parse_document(data)
    if s is None:
        raise ValidationError(f"embedding: {command} needs an embedding scheme")
    return s


def cmd_check_lh(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    g = _graph(data)
    result = is_locally_hamiltonian(g, config.hamiltonian_max_degree)
    report = {
        "locally_hamiltonian": result.holds,
        "certificate": None if result.certificate is None else result.certificate.to_json(g),
        "failing_vertex": None if result.failing_vertex is None else g.labels[result.failing_vertex],
    }
    return report, 0 if result.holds else 1


def cmd_faces(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    s = _scheme(data, "faces")
    faces = trace_faces(s)
    return {"face_count": len(faces), "faces": faces_to_json(s.graph, faces)}, 0


def cmd_genus(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    s = _scheme(data, "genus")
    return {
        "euler_genus": euler_genus(s),
        "face_count": len(trace_faces(s)),
        "orientable": orientability(s),
    }, 0


def cmd_check_maximal(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    s = _scheme(data, "check-maximal")
    g = s.graph
    result = is_edge_maximal(s)
    report = {
        "edge_maximal": result.maximal,
        "witness": None if result.witness is None else [g.labels[v] for v in result.witness],
        "face": None if result.face is None else [g.labels[v] for v in result.face.vertices(g)],
    }
    return report, 0 if result.maximal else 1


def cmd_reconstruct(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    g = _graph(data)
    scheme, trace = reconstruct_triangulation(
        g, budget=config.reconstruction_budget, max_degree=config.hamiltonian_max_degree
    )
    report = {
        **document(g, scheme),
        "euler_genus": euler_genus(scheme),
        "face_count": len(trace_faces(scheme)),
        "backtracking_needed": trace.backtracking_needed,
    }
    if opts.get("emit_trace"):
        report["trace"] = trace.to_json(g)
    return report, 0


def cmd_oracle(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    g = _graph(data)
    scheme = oracle_embed(g, config.oracle_max_vertices, _threads(opts, config))
    if scheme is None:
        return {"found": False}, 1
    return {"found": True, **document(g, scheme)}, 0


def cmd_lemma1(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    s = _scheme(data, "lemma1")
    edges = opts.get("cycle") or (data.get("cycle") if isinstance(data, dict) else None)
    if not edges:
        raise ValidationError("cycle: lemma1 needs the edge ids of a 2- or 3-cycle")
    side = opts.get("side") or "interior"
    found = lemma1_candidates(s, CycleSpec(tuple(int(e) for e in edges)), side)
    return {
        "cycle": [int(e) for e in edges],
        "side": side,
        "candidates": [s.graph.labels[v] for v in found],
    }, 0


def _decomposition(data: Any) -> FlowerDecomposition:
    if not isinstance(data, dict):
        raise ValidationError("flower: expected a decomposition object")
    return FlowerDecomposition.from_json(data.get("flower", data))


def cmd_flower_build(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    d = _decomposition(data)
    return {**document(build_flower(d), flower_scheme(d)), "flower": d.to_json()}, 0


def cmd_flower_recognize(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    g = _graph(data)
    d = is_flower(g)
    return {"flower": None if d is None else d.to_json()}, 0 if d is not None else 1


def cmd_dot(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    g, s = parse_document(data)
    return {"dot": to_dot(g, s)}, 0


def _threads(opts: Options, config: ToolkitConfig) -> int | None:
    return opts.get("threads") or config.threads


def claim_range(claim: str, opts: Options, config: ToolkitConfig) -> EnumerationRange:
    """Default range for a claim from the configuration, with command line overrides."""
    multiplicity = opts.get("max_multiplicity")
    if claim == "loop-bound" or opts.get("allow_loops"):
        base = dict(config.ranges.get("loops", {}))
    elif multiplicity and multiplicity > 1:
        base = dict(config.ranges.get("multigraph", {}))
    else:
        base = dict(config.ranges.get("simple", {}))
    for key in ("max_n", "max_multiplicity"):
        if opts.get(key) is not None:
            base[key] = opts[key]
    if opts.get("allow_loops"):
        base["allow_loops"] = True
    if claim == "maximal":
        base.setdefault("bound_slack", 0)
    elif claim == "lh-bound" and base.get("max_multiplicity", 1) > 1:
        base.setdefault("bound_slack", 1)
    base.setdefault("max_darts", config.scheme_max_darts)
    try:
        return EnumerationRange(**base)
    except TypeError as e:
        raise ValidationError(f"ranges: {e}") from e


def cmd_enumerate(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    claim = opts.get("claim") or "lh-bound"
    threads = _threads(opts, config)
    limit = config.labeled_space_limit
    if claim == "lemma1":
        samples, seed, max_n = opts.get("samples"), opts.get("seed"), opts.get("max_n")
        report = verify_lemma1(
            samples=100 if samples is None else samples,
            seed=0 if seed is None else seed,
            max_n=12 if max_n is None else max_n,
        )
    else:
        r = claim_range(claim, opts, config)
        if claim == "lh-bound":
            report = verify_lh_bound(
                r,
                threads=threads,
                labeled_limit=limit,
                oracle_cap=config.oracle_max_vertices,
                budget=config.reconstruction_budget,
            )
        elif claim == "maximal":
            report = verify_maximal_embeddings(
                r, threads=threads, labeled_limit=limit, budget=config.reconstruction_budget
            )
        elif claim == "loop-bound":
            report = verify_loop_bound(r, threads=threads, labeled_limit=limit)
        elif claim == "neighborhood":
            report = verify_neighborhood_uniqueness(
                r, threads=threads, labeled_limit=limit, oracle_cap=config.oracle_max_vertices
            )
        else:
            raise ValidationError(f"claim: unknown claim {claim!r}, expected one of {CLAIMS}")
    return report.to_json(include_timing=opts.get("timing", True)), 0 if report.ok else 1


def cmd_fixtures(data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    written = write_fixtures(opts.get("directory") or "fixtures")
    return {"written": [str(p) for p in written]}, 0


COMMANDS: dict[str, Handler] = {
    "check-lh": cmd_check_lh,
    "faces": cmd_faces,
    "genus": cmd_genus,
    "check-maximal": cmd_check_maximal,
    "reconstruct": cmd_reconstruct,
    "oracle": cmd_oracle,
    "lemma1": cmd_lemma1,
    "flower-build": cmd_flower_build,
    "flower-recognize": cmd_flower_recognize,
    "dot": cmd_dot,
    "enumerate": cmd_enumerate,
    "fixtures": cmd_fixtures,
}

NO_INPUT = {"enumerate", "fixtures"}


def run(command: str, data: Any, opts: Options, config: ToolkitConfig) -> tuple[dict[str, Any], int]:
    """Dispatch one command; toolkit errors propagate to the caller."""
    return COMMANDS[command](data, opts, config)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the JSON report here instead of stdout")
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--verbose", action="store_true", help="debug logging on stderr")

    with_input = argparse.ArgumentParser(add_help=False, parents=[common])
    with_input.add_argument("path", nargs="?", help="input document (default: stdin)")
    with_input.add_argument("--input", help="input document (same as the positional path)")

    parser = argparse.ArgumentParser(
        prog="surface-embeddings",
        description="Locally Hamiltonian multigraphs and edge-maximal surface embeddings.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check-lh", parents=[with_input], help="certify local Hamiltonicity")
    sub.add_parser("faces", parents=[with_input], help="trace the faces of a scheme")
    sub.add_parser("genus", parents=[with_input], help="Euler genus and orientability")
    sub.add_parser("check-maximal", parents=[with_input], help="edge-maximality of a scheme")
    reconstruct = sub.add_parser(
        "reconstruct", parents=[with_input], help="sphere triangulation of a 3n-6 edge graph"
    )
    reconstruct.add_argument("--emit-trace", action="store_true", help="include the reduction trace")
    oracle = sub.add_parser("oracle", parents=[with_input], help="brute-force sphere triangulation")
    oracle.add_argument("--threads", type=int)
    lemma1 = sub.add_parser("lemma1", parents=[with_input], help="interior-vertex candidates")
    lemma1.add_argument("--cycle", type=int, nargs="+", help="edge ids of a 2- or 3-cycle")
    lemma1.add_argument("--side", choices=("interior", "exterior"), default="interior")
    sub.add_parser("flower-build", parents=[with_input], help="flower graph and scheme")
    sub.add_parser("flower-recognize", parents=[with_input], help="flower decomposition")
    sub.add_parser("dot", parents=[with_input], help="Graphviz export")

    enumerate_ = sub.add_parser("enumerate", parents=[common], help="verify a claim exhaustively")
    enumerate_.add_argument("--claim", choices=CLAIMS, default="lh-bound")
    enumerate_.add_argument("--max-n", type=int)
    enumerate_.add_argument("--max-multiplicity", type=int)
    enumerate_.add_argument("--allow-loops", action="store_true")
    enumerate_.add_argument("--threads", type=int)
    enumerate_.add_argument("--samples", type=int, help="lemma1 fixture count")
    enumerate_.add_argument("--seed", type=int, help="lemma1 random seed")
    enumerate_.add_argument("--no-timing", action="store_true", help="omit seconds from the report")

    fixtures = sub.add_parser("fixtures", parents=[common], help="write the example bundle")
    fixtures.add_argument("--dir", dest="directory", default="fixtures")
    return parser


def _options(args: argparse.Namespace) -> Options:
    opts = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "path", "input", "output", "config", "verbose", "no_timing")
    }
    opts["timing"] = not getattr(args, "no_timing", False)
    return opts


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )
    config = load_config(args.config)

    try:
        data = None
        if args.command not in NO_INPUT:
            data = load_json(args.input or args.path)
        report, status = run(args.command, data, _options(args), config)
    except SurfaceEmbeddingError as e:
        logger.error(f"{args.command} failed: {e}", exc_info=True)
        error = {"error": type(e).__name__, "message": str(e)}
        if getattr(e, "hypothesis", None):
            error["hypothesis"] = e.hypothesis
        if getattr(e, "tag", None):
            error["tag"] = e.tag
        write_output(error, args.output)
        return e.exit_code

    write_output(report, args.output)
    return status


if __name__ == "__main__":
    raise SystemExit(main())
