"""Extension graphs and the neutral/connected/acyclic/tree classification."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InsufficientHorizon
from .words import FactorSet


@dataclass(frozen=True)
class ExtensionGraph:
    """Bipartite graph of one-letter extensions of a factor."""

    word: str
    left: tuple[str, ...]
    right: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def multiplicity(self) -> int:
        return len(self.edges) - len(self.left) - len(self.right) + 1

    def is_connected(self) -> bool:
        """Connected as an undirected bipartite graph (vacuously for <= 1 vertex)."""
        nodes = [("L", a) for a in self.left] + [("R", b) for b in self.right]
        if len(nodes) <= 1:
            return True
        adj: dict[tuple[str, str], list[tuple[str, str]]] = {v: [] for v in nodes}
        for a, b in self.edges:
            adj[("L", a)].append(("R", b))
            adj[("R", b)].append(("L", a))
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(nodes)

    def is_acyclic(self) -> bool:
        # a bipartite multigraph-free graph is acyclic iff every connected
        # component has edges = vertices - 1; equivalently edges = vertices - c
        vertices = len(self.left) + len(self.right)
        return len(self.edges) == vertices - self._component_count()

    def _component_count(self) -> int:
        nodes = [("L", a) for a in self.left] + [("R", b) for b in self.right]
        adj: dict[tuple[str, str], list[tuple[str, str]]] = {v: [] for v in nodes}
        for a, b in self.edges:
            adj[("L", a)].append(("R", b))
            adj[("R", b)].append(("L", a))
        seen: set[tuple[str, str]] = set()
        count = 0
        for v in nodes:
            if v in seen:
                continue
            count += 1
            seen.add(v)
            stack = [v]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return count

    def is_tree(self) -> bool:
        return self.is_connected() and self.is_acyclic()

    def to_dot(self) -> str:
        lines = ["graph extension {", "  rankdir=LR;"]
        lines.append("  { rank=same; " + " ".join(f'"L_{a}"' for a in self.left) + " }")
        lines.append("  { rank=same; " + " ".join(f'"R_{b}"' for b in self.right) + " }")
        for a in self.left:
            lines.append(f'  "L_{a}" [label="{a}"];')
        for b in self.right:
            lines.append(f'  "R_{b}" [label="{b}"];')
        for a, b in self.edges:
            lines.append(f'  "L_{a}" -- "R_{b}";')
        lines.append("}")
        return "\n".join(lines)


def extension_graph(F: FactorSet, w: str) -> ExtensionGraph:
    """Left/right letter extensions of ``w`` in ``F`` and their pairings."""
    if len(w) > F.horizon - 2:
        raise InsufficientHorizon(
            f"extension graph of a length-{len(w)} word needs horizon {len(w) + 2}"
        )
    if not F.complete:
        raise InsufficientHorizon("factor set is not certified complete")
    if w not in F:
        raise ValueError(f"{w!r} is not a factor")
    letters = F.alphabet.letters
    left = tuple(a for a in letters if a + w in F)
    right = tuple(b for b in letters if w + b in F)
    edges = tuple(
        (a, b) for a in letters for b in letters if a + w + b in F
    )
    return ExtensionGraph(w, left, right, edges)


def multiplicity(F: FactorSet, w: str) -> int:
    return extension_graph(F, w).multiplicity()


@dataclass(frozen=True)
class WordRecord:
    word: str
    multiplicity: int
    connected: bool
    acyclic: bool


@dataclass(frozen=True)
class Classification:
    """Per-word extension-graph verdicts up to a length bound."""

    max_length: int
    records: tuple[WordRecord, ...]

    @property
    def neutral(self) -> bool:
        return all(r.multiplicity == 0 for r in self.records)

    @property
    def connected(self) -> bool:
        return all(r.connected for r in self.records)

    @property
    def acyclic(self) -> bool:
        return all(r.acyclic for r in self.records)

    @property
    def tree(self) -> bool:
        return self.connected and self.acyclic

    def record_for(self, w: str) -> WordRecord:
        for r in self.records:
            if r.word == w:
                return r
        raise KeyError(w)

    def to_json(self) -> str:
        return json.dumps(
            {
                "max_length": self.max_length,
                "neutral": self.neutral,
                "connected": self.connected,
                "acyclic": self.acyclic,
                "tree": self.tree,
                "words": [
                    {
                        "word": r.word,
                        "multiplicity": r.multiplicity,
                        "connected": r.connected,
                        "acyclic": r.acyclic,
                    }
                    for r in self.records
                ],
            },
            sort_keys=True,
        )


def classify(F: FactorSet, max_length: int) -> Classification:
    """Classify every factor of length <= ``max_length``, empty word included."""
    if max_length > F.horizon - 2:
        raise InsufficientHorizon(
            f"classification up to length {max_length} needs horizon {max_length + 2}"
        )
    records = []
    for n in range(max_length + 1):
        for w in F.words_of_length(n):
            g = extension_graph(F, w)
            records.append(
                WordRecord(w, g.multiplicity(), g.is_connected(), g.is_acyclic())
            )
    return Classification(max_length, tuple(records))
