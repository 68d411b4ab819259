"""Export graphs and verification reports to RDF N-Triples."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Iterable, Tuple, Union

from rdflib import Graph, Literal, Namespace, URIRef
from rdflib.namespace import RDF, RDFS, XSD

from jumped_wenger.graph import GraphSpec, Side, iter_edges
from jumped_wenger.models import ReportRecord

logger = logging.getLogger(__name__)

JWG_BASE = "https://jumped-wenger.example.org/"
JWG = Namespace(JWG_BASE + "vocab#")


def slugify(value: str) -> str:
    """Convert a string to a URL-safe slug."""
    clean = "".join(ch if ch.isalnum() else "_" for ch in value)
    while "__" in clean:
        clean = clean.replace("__", "_")
    return clean.strip("_").lower() or "graph"


def graph_uri(spec: GraphSpec) -> URIRef:
    return URIRef(f"{JWG_BASE}graph/{slugify(spec.label())}")


def vertex_uri(spec: GraphSpec, side: Side, rank: int) -> URIRef:
    kind = "point" if side is Side.POINT else "line"
    return URIRef(f"{graph_uri(spec)}/{kind}/{rank}")


def _sorted_ntriples(graph: Graph) -> str:
    payload = graph.serialize(format="nt")
    if isinstance(payload, bytes):  # rdflib < 6
        payload = payload.decode("utf-8")
    lines = sorted(line for line in payload.splitlines() if line.strip())
    return "\n".join(lines) + ("\n" if lines else "")


def _describe_spec(graph: Graph, spec: GraphSpec) -> URIRef:
    subject = graph_uri(spec)
    f = spec.field
    graph.add((subject, RDF.type, JWG.JumpedWengerGraph))
    graph.add((subject, RDFS.label, Literal(spec.label())))
    graph.add((subject, JWG.q, Literal(f.q, datatype=XSD.integer)))
    graph.add((subject, JWG.characteristic, Literal(f.p, datatype=XSD.integer)))
    graph.add((subject, JWG.modulus, Literal(",".join(map(str, f.modulus)))))
    graph.add((subject, JWG.m, Literal(spec.m, datatype=XSD.integer)))
    graph.add((subject, JWG.exponents, Literal(",".join(map(str, spec.exponents)))))
    if spec.is_jumped:
        graph.add((subject, JWG.i, Literal(spec.i, datatype=XSD.integer)))
        graph.add((subject, JWG.j, Literal(spec.j, datatype=XSD.integer)))
    return subject


def _add_vertex(graph: Graph, spec: GraphSpec, owner: URIRef, side: Side, rank: int) -> URIRef:
    node = vertex_uri(spec, side, rank)
    graph.add((node, RDF.type, JWG.Point if side is Side.POINT else JWG.Line))
    graph.add((node, JWG.rank, Literal(rank, datatype=XSD.integer)))
    graph.add((node, JWG.coordinates, Literal(",".join(map(str, spec.coords(rank))))))
    graph.add((node, JWG.inGraph, owner))
    return node


def graph_to_ntriples(spec: GraphSpec) -> Tuple[str, int]:
    """Sorted N-Triples of every vertex and edge; returns (payload, edge count)."""
    graph = Graph()
    graph.bind("jwg", JWG)
    owner = _describe_spec(graph, spec)
    for rank in range(spec.side_size):
        _add_vertex(graph, spec, owner, Side.POINT, rank)
        _add_vertex(graph, spec, owner, Side.LINE, rank)
    edges = 0
    for point_rank, line_rank in iter_edges(spec):
        graph.add(
            (vertex_uri(spec, Side.POINT, point_rank), JWG.incident, vertex_uri(spec, Side.LINE, line_rank))
        )
        edges += 1
    logger.debug("Built %d triples for %s", len(graph), spec.label())
    return _sorted_ntriples(graph), edges


def records_to_graph(records: Iterable[ReportRecord]) -> Graph:
    """One jwg:Cell resource per report record."""
    graph = Graph()
    graph.bind("jwg", JWG)
    for record in records:
        params = record.params
        name = slugify(f"q{params['q']}_poly{'_'.join(map(str, params['poly']))}_m{params['m']}_i{params['i']}_j{params['j']}")
        cell = URIRef(f"{JWG_BASE}cell/{name}")
        graph.add((cell, RDF.type, JWG.Cell))
        for key in ("q", "p", "e", "m", "i", "j"):
            graph.add((cell, JWG[key], Literal(params[key], datatype=XSD.integer)))
        graph.add((cell, JWG.vertices, Literal(record.vertices, datatype=XSD.integer)))
        graph.add((cell, JWG.edges, Literal(record.edges, datatype=XSD.integer)))
        for key in ("diameter", "girth_bfs", "girth_algebraic", "girth_predicted", "components"):
            value = getattr(record, key)
            if value is not None:
                graph.add((cell, JWG[key], Literal(value)))
        if record.girth_status:
            graph.add((cell, JWG.girthStatus, Literal(record.girth_status)))
        for finding in record.findings:
            graph.add((cell, JWG.finding, Literal(finding)))
    return graph


def export_records(records: Iterable[ReportRecord], destination: Union[str, Path]) -> int:
    graph = records_to_graph(records)
    path = Path(destination)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(_sorted_ntriples(graph), encoding="utf-8")
    logger.info("Wrote %d triples to %s", len(graph), path)
    return len(graph)


__all__ = [
    "JWG",
    "slugify",
    "graph_uri",
    "vertex_uri",
    "graph_to_ntriples",
    "records_to_graph",
    "export_records",
]
