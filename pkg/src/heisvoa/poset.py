"""Hasse diagrams of finite sets of semi-conformal pairs."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .errors import InvalidPair
from .scalars import encode_scalar
from .semiconformal import ScPair, _same_context, leq
from .serialization import encode_matrix, encode_vector, pair_to_json


def _key(p: ScPair) -> tuple:
    return (p.k, repr(encode_matrix(p.A)), repr(encode_vector(p.B)))


def _label(p: ScPair) -> str:
    beta = ", ".join(str(encode_scalar(x)) for x in p.B)
    return f"k={p.k} B=({beta})"


@dataclass(frozen=True)
class HasseGraph:
    """Nodes in canonical order and covering edges ``(lower, upper)`` as node indices."""

    nodes: tuple
    edges: tuple

    def to_json(self) -> dict:
        return {
            "nodes": [dict(pair_to_json(p), id=f"n{i}", k=p.k) for i, p in enumerate(self.nodes)],
            "edges": [[f"n{a}", f"n{b}"] for a, b in self.edges],
        }

    def to_dot(self) -> str:
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for i, p in enumerate(self.nodes):
            lines.append(f'  n{i} [label="{_label(p)}"];')
        for a, b in self.edges:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def hasse(pairs: list[ScPair]) -> HasseGraph:
    """Covering relations of ``leq`` on ``pairs`` (duplicates merged).

    The order relation is already transitive, so ``a -> b`` is a cover iff
    ``a < b`` and no ``c`` satisfies ``a < c < b``.
    """
    for i, p in enumerate(pairs):
        if not p.is_valid():
            raise InvalidPair("not a semi-conformal pair", i)
        if i:
            _same_context(pairs[0], p)
    nodes: list[ScPair] = []
    for p in sorted(pairs, key=_key):
        if not any(la.is_zero_matrix(la.sub(p.A, q.A)) and la.is_zero_vector(la.sub(p.B, q.B)) for q in nodes):
            nodes.append(p)
    n = len(nodes)
    below = [[i != j and leq(nodes[i], nodes[j]) for j in range(n)] for i in range(n)]
    edges = tuple(
        (i, j)
        for i in range(n)
        for j in range(n)
        if below[i][j] and not any(below[i][c] and below[c][j] for c in range(n))
    )
    return HasseGraph(tuple(nodes), edges)
