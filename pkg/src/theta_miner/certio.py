"""Certificate documents: JSON objects with a ``kind`` tag and sorted keys."""

from __future__ import annotations

import json

from .decomposition import RootedTreePartition
from .graph import GraphError, MinorModelCertificate, ThetaCertificate


def certificate_to_dict(c) -> dict:
    if isinstance(c, ThetaCertificate):
        return {
            "kind": "theta",
            "r": c.r,
            "branch_a": list(c.branch_a),
            "branch_b": list(c.branch_b),
            "tree_edges_a": list(c.tree_edges_a),
            "tree_edges_b": list(c.tree_edges_b),
            "cross_edges": list(c.cross_edges),
            "total_edges": c.total_edges,
        }
    if isinstance(c, MinorModelCertificate):
        return {
            "kind": "minor_model",
            "branch_sets": [list(b) for b in c.branch_sets],
            "claimed_min_degree": c.claimed_min_degree,
        }
    if hasattr(c, "to_dict"):
        return c.to_dict()
    raise GraphError(f"cannot serialize {type(c).__name__}")


def outcome_to_dict(outcome) -> dict:
    """Driver outcomes carry a little context next to the certificate."""
    kind = outcome.kind
    if kind == "low_degree_vertex":
        return {"kind": kind, "vertex": outcome.vertex, "degree": outcome.degree}
    doc = certificate_to_dict(outcome.certificate)
    doc["stage"] = outcome.stage
    if kind == "minor_model":
        doc["bound"] = outcome.bound
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def certificate_from_dict(doc: dict):
    kind = doc.get("kind")
    if kind == "theta":
        return ThetaCertificate(
            tuple(doc["branch_a"]),
            tuple(doc["branch_b"]),
            tuple(doc["tree_edges_a"]),
            tuple(doc["tree_edges_b"]),
            tuple(doc["cross_edges"]),
            doc["r"],
            doc["total_edges"],
        )
    if kind == "minor_model":
        return MinorModelCertificate(tuple(tuple(b) for b in doc["branch_sets"]), doc["claimed_min_degree"])
    if kind == "protrusion":
        from .protrusion import ProtrusionCertificate

        tree = doc["tree"]
        return ProtrusionCertificate(
            tuple(doc["y"]),
            tuple(doc["boundary"]),
            RootedTreePartition(tuple(tree["parent"]), tuple(tuple(b) for b in tree["bags"])),
            doc["t"],
            doc["extension"],
            doc.get("connected", True),
            doc.get("folded_path_length", 0),
        )
    if kind == "packing":
        from .packing import PackingCertificate

        return PackingCertificate(
            tuple(certificate_from_dict(m) for m in doc["models"]),
            tuple(doc["part_assignment"]),
            doc.get("seed", 0),
            doc.get("restarts", 0),
        )
    if kind == "low_degree_vertex":
        return doc
    raise GraphError(f"unknown certificate kind {kind!r}")


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"certificate is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise GraphError("certificate must be a JSON object")
    try:
        return certificate_from_dict(doc)
    except (KeyError, TypeError) as exc:
        raise GraphError(f"malformed {doc.get('kind')} certificate: {exc}") from exc
