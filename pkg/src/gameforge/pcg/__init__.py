from gameforge.pcg.docs import DocChunk, chunk_documents, retrieve_chunks
from gameforge.pcg.graph import (
    Connection,
    NodeAttrs,
    NodeChain,
    PcgGraph,
    PcgNodeSpec,
    parse_graph,
    serialize_graph,
)
from gameforge.pcg.planner import (
    LARGE_OBJECT,
    SMALL_SCATTER,
    assemble_graph,
    classify_pattern,
    plan_node_chain,
    specify_node,
)

__all__ = [
    "Connection",
    "DocChunk",
    "LARGE_OBJECT",
    "NodeAttrs",
    "NodeChain",
    "PcgGraph",
    "PcgNodeSpec",
    "SMALL_SCATTER",
    "assemble_graph",
    "chunk_documents",
    "classify_pattern",
    "parse_graph",
    "plan_node_chain",
    "retrieve_chunks",
    "serialize_graph",
    "specify_node",
]
