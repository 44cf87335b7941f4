"""Surface Embeddings MCP Server - local Hamiltonicity, faces and triangulation tools."""

import asyncio
import logging
import os
from typing import Any

import mcp.types as types
from mcp.server import Server
from mcp.server.stdio import stdio_server

from .cli import run
from .config import load_config
from .enumeration import CLAIMS
from .serialization import dumps

logger = logging.getLogger(__name__)

# Initialize server
server = Server("surface-embeddings-server")

config = load_config(os.environ.get("SURFACE_EMBEDDINGS_CONFIG"))

DOCUMENT_SCHEMA = {
    "type": "object",
    "description": (
        "Graph document: vertices, edges ({id, ends}), loops_allowed and an optional "
        "embedding with rotations and signature"
    ),
}

# Tool name to CLI command
TOOL_COMMANDS = {
    "check_local_hamiltonicity": "check-lh",
    "trace_faces": "faces",
    "euler_genus": "genus",
    "check_edge_maximal": "check-maximal",
    "reconstruct_triangulation": "reconstruct",
    "oracle_triangulation": "oracle",
    "lemma1_candidates": "lemma1",
    "build_flower": "flower-build",
    "recognize_flower": "flower-recognize",
    "export_dot": "dot",
    "verify_claim": "enumerate",
}


def _document_tool(name: str, description: str, **extra: dict[str, Any]) -> types.Tool:
    return types.Tool(
        name=name,
        description=description,
        inputSchema={
            "type": "object",
            "properties": {"document": DOCUMENT_SCHEMA, **extra},
            "required": ["document"],
        },
    )


@server.list_tools()
async def list_tools() -> list[types.Tool]:
    """List available surface embedding tools."""
    return [
        _document_tool(
            "check_local_hamiltonicity",
            "Decide whether every vertex neighborhood has a Hamiltonian cycle, with a certificate",
        ),
        _document_tool("trace_faces", "Trace the facial walks of an embedding scheme"),
        _document_tool("euler_genus", "Euler genus and orientability of an embedding scheme"),
        _document_tool(
            "check_edge_maximal",
            "Check that no edge can be added inside a face, with a witness face otherwise",
        ),
        _document_tool(
            "reconstruct_triangulation",
            "Recover the sphere triangulation of a connected locally Hamiltonian graph with 3n-6 edges",
            emit_trace={
                "type": "boolean",
                "description": "Include the reduction trace (default: false)",
            },
        ),
        _document_tool(
            "oracle_triangulation",
            "Brute-force search for a sphere triangulation of a small graph",
            threads={"type": "integer", "description": "Worker threads (optional)"},
        ),
        _document_tool(
            "lemma1_candidates",
            "Vertices strictly on one side of a 2- or 3-cycle of a sphere triangulation "
            "that are simple, have degree at most 5, have at most two non-simple "
            "neighbors and lie in no non-facial triangle",
            cycle={
                "type": "array",
                "items": {"type": "integer"},
                "description": "Edge ids of the cycle (defaults to the document's cycle field)",
            },
            side={"type": "string", "enum": ["interior", "exterior"]},
        ),
        _document_tool(
            "build_flower",
            "Build a flower graph and its scheme from a decomposition object (under 'flower')",
        ),
        _document_tool("recognize_flower", "Find a flower decomposition of a multigraph"),
        _document_tool("export_dot", "Graphviz source for a graph and optional scheme"),
        types.Tool(
            name="verify_claim",
            description="Exhaustively verify a claim over a bounded range of multigraphs",
            inputSchema={
                "type": "object",
                "properties": {
                    "claim": {"type": "string", "enum": list(CLAIMS)},
                    "max_n": {"type": "integer", "description": "Largest vertex count"},
                    "max_multiplicity": {"type": "integer"},
                    "allow_loops": {"type": "boolean"},
                    "threads": {"type": "integer"},
                    "samples": {"type": "integer", "description": "lemma1 fixture count"},
                    "seed": {"type": "integer", "description": "lemma1 random seed"},
                },
                "required": ["claim"],
            },
        ),
    ]


@server.call_tool()
async def call_tool(name: str, arguments: Any) -> list[types.TextContent]:
    """Handle tool calls for surface embeddings."""
    try:
        if name not in TOOL_COMMANDS:
            raise ValueError(f"Unknown tool: {name}")
        result = await handle_tool(name, arguments or {})
        return [types.TextContent(type="text", text=dumps(result))]

    except Exception as e:
        logger.error(f"Error in tool {name}: {e}", exc_info=True)
        return [types.TextContent(type="text", text=f"Error: {type(e).__name__}: {str(e)}")]


async def handle_tool(name: str, arguments: dict[str, Any]) -> dict[str, Any]:
    """Run the command behind a tool in a worker thread.

    The result is the command report plus the exit status it would have on the
    command line.
    """
    command = TOOL_COMMANDS[name]
    data = arguments.get("document")
    opts = {k: v for k, v in arguments.items() if k != "document"}
    opts.setdefault("timing", False)

    report, status = await asyncio.to_thread(run, command, data, opts, config)
    logger.info(f"{name}: status {status}")
    return {**report, "status": status}


async def main():
    """Run the Surface Embeddings MCP server."""
    logger.info("Starting Surface Embeddings MCP Server...")

    async with stdio_server() as (read_stream, write_stream):
        await server.run(read_stream, write_stream, server.create_initialization_options())


def run_server():
    logging.basicConfig(level=logging.INFO)
    asyncio.run(main())


if __name__ == "__main__":
    run_server()
