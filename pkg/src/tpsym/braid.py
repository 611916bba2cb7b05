"""Braid graphs on involution words and transition maps along their edges.

Edges are standard rank-2 braid moves applied inside the word, the
single-letter swap (i) <-> (i*) at the start of the word for commuting
star orbits, and the non-standard prefix patterns.  Every edge carries a
coordinate transform usable over any semifield that supports the move.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .cartan import CartanDatum
from .involutions import TwistedInvolution, involution_words
from .moves import MOVES, Move, NS_LABEL, NS_PATTERNS, MoveError, get_move
from .semifields import PositiveTower, Semifield

TOWER = PositiveTower()


class BraidGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    source: tuple
    target: tuple
    kind: str         # "std" | "ns"
    tag: str          # move tag
    position: int     # leftmost affected letter (0 for ns/prefix moves)
    span: int         # number of letters rewritten
    forward: bool     # move applied in its forward orientation

    def label(self) -> str:
        return "std" if self.kind == "std" else NS_LABEL[self.tag]


def _segment_swap(word, p):
    return word[:p] + (word[p + 1], word[p]) + word[p + 2:]


@lru_cache(maxsize=None)
def _pattern_embeddings(datum: CartanDatum, move_tag: str):
    """Injective node maps of a pattern sub-datum into the datum."""
    pat = MOVES[move_tag].pattern
    k = len(pat.cartan)
    out = []
    for nodes in permutations(range(datum.rank), k):
        ok = True
        for a in range(k):
            if datum.star[nodes[a]] != nodes[pat.star[a]]:
                ok = False
                break
            for b in range(k):
                if datum.cartan[nodes[a]][nodes[b]] != pat.cartan[a][b]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(nodes)
    return tuple(out)


def _edges_from(datum: CartanDatum, word):
    """All braid-graph edges leaving a word (deterministic order)."""
    edges = []
    n = len(word)
    # standard braid moves on contiguous alternating segments
    for p in range(n - 1):
        i, j = word[p], word[p + 1]
        if i == j:
            continue
        m = datum.m_order(i, j)
        if m == 2:
            edges.append(Edge(word, _segment_swap(word, p), "std", "Std-A1A1",
                              p, 2, True))
        elif p + m <= n:
            seg = word[p:p + m]
            alt = tuple(i if q % 2 == 0 else j for q in range(m))
            if seg == alt:
                new = word[:p] + tuple(j if q % 2 == 0 else i for q in range(m)) \
                    + word[p + m:]
                tag = {3: "Std-A2", 4: "Std-B2", 6: "Std-G2"}[m]
                edges.append(Edge(word, new, "std", tag, p, m, True))
    # rank-1 twisted swap at the start of the word
    if n:
        i = word[0]
        istar = datum.star[i]
        if istar != i and datum.m_order(i, istar) == 2:
            edges.append(Edge(word, (istar,) + word[1:], "std", "Std-A1A1", 0, 1, True))
    # non-standard prefix patterns
    for mv in NS_PATTERNS:
        pat = mv.pattern
        ln = len(pat.source)
        if ln > n:
            continue
        for nodes in _pattern_embeddings(datum, mv.tag):
            src = tuple(nodes[x] for x in pat.source)
            tgt = tuple(nodes[x] for x in pat.target)
            if word[:ln] == src:
                edges.append(Edge(word, tgt + word[ln:], "ns", mv.tag, 0, ln, True))
            if word[:ln] == tgt:
                edges.append(Edge(word, src + word[ln:], "ns", mv.tag, 0, ln, False))
    return edges


def _apply_std_segment(datum, tag, i, j, seg_coords, semifield):
    """Coordinate transform of a standard braid move on one segment."""
    if tag == "Std-A1A1":
        return (seg_coords[1], seg_coords[0])
    if tag == "Std-A2":
        return get_move("Std-A2").forward(seg_coords, semifield)
    mv = get_move(tag)
    # orientation: forward formulas assume the first letter is the node whose
    # coroot pairs to -2 (resp. -3) with the other
    first_short = datum.cartan[i][j] in (-2, -3)
    if first_short:
        return mv.forward(seg_coords, semifield)
    return mv.backward(seg_coords, semifield)


def apply_edge(datum: CartanDatum, edge: Edge, coords, semifield: Semifield = TOWER):
    coords = tuple(coords)
    if len(coords) != len(edge.source):
        raise MoveError("coordinate count does not match the word")
    if edge.kind == "std":
        if edge.span == 1:   # rank-1 twisted swap: identical coordinates
            return coords
        p, m = edge.position, edge.span
        i, j = edge.source[p], edge.source[p + 1]
        seg = coords[p:p + m]
        out = _apply_std_segment(datum, edge.tag, i, j, seg, semifield)
        return coords[:p] + tuple(out) + coords[p + m:]
    mv = MOVES[edge.tag]
    ln = edge.span
    seg = coords[:ln]
    out = mv.word_forward(seg, semifield) if edge.forward \
        else mv.word_backward(seg, semifield)
    return tuple(out) + coords[ln:]


def edge_tropical_ok(edge: Edge) -> bool:
    return MOVES[edge.tag].tropical_ok()


@dataclass
class BraidGraph:
    datum: CartanDatum
    target: TwistedInvolution
    vertices: list
    edges: list

    def adjacency(self):
        adj: dict = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.source].append(e)
        return adj

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        adj = self.adjacency()
        while stack:
            v = stack.pop()
            for e in adj[v]:
                if e.target not in seen:
                    seen.add(e.target)
                    stack.append(e.target)
        return len(seen) == len(self.vertices)

    def to_json(self) -> dict:
        return {
            "target": [i + 1 for i in self.target.element.word],
            "vertices": [[i + 1 for i in v] for v in self.vertices],
            "edges": [{"source": [i + 1 for i in e.source],
                       "target": [i + 1 for i in e.target],
                       "label": e.label(), "move": e.tag,
                       "position": e.position + 1}
                      for e in self.edges],
        }

    def to_dot(self) -> str:
        def name(word):
            return "".join(str(i + 1) for i in word) or "e"
        lines = ["graph braid {"]
        for v in self.vertices:
            lines.append(f'  "{name(v)}";')
        seen = set()
        for e in self.edges:
            key = frozenset((e.source, e.target)), e.label(), e.position
            if key in seen:
                continue
            seen.add(key)
            lines.append(f'  "{name(e.source)}" -- "{name(e.target)}" '
                         f'[label="{e.label()}"];')
        lines.append("}")
        return "\n".join(lines)


SUPPORTED_BRAID_TYPES = ("A", "B", "C", "D")


def braid_graph(datum: CartanDatum, w) -> BraidGraph:
    """Graph on the involution words of w; connectivity is checked."""
    if datum.type_label[0] not in SUPPORTED_BRAID_TYPES:
        raise BraidGraphError(
            f"braid graphs unsupported for type {datum.type_label} "
            "(no closed form for the order-6 non-standard move)")
    tw = w if isinstance(w, TwistedInvolution) else TwistedInvolution.of(datum, w)
    vertices = sorted(involution_words(datum, tw))
    vset = set(vertices)
    edges = []
    for v in vertices:
        for e in _edges_from(datum, v):
            if e.target not in vset:
                raise BraidGraphError(
                    f"move {e.tag} left the involution-word set: {e}")
            edges.append(e)
    g = BraidGraph(datum, tw, vertices, edges)
    if not g.is_connected():
        raise BraidGraphError(
            f"braid graph of {tw.element!r} is not connected")
    return g


@dataclass
class TransitionMap:
    """Composite coordinate map along a braid-graph path."""
    datum: CartanDatum
    source: tuple
    target: tuple
    path: list    # list of Edge

    def apply(self, coords, semifield: Semifield = TOWER):
        if len(coords) != len(self.source):
            raise MoveError("coordinate count does not match the source word")
        cur = tuple(coords)
        for e in self.path:
            cur = apply_edge(self.datum, e, cur, semifield)
        return cur

    def tropical_ok(self) -> bool:
        return all(edge_tropical_ok(e) for e in self.path)

    def moves(self):
        return [(e.tag, e.position) for e in self.path]


def transition_map(graph: BraidGraph, source, target) -> TransitionMap:
    """Shortest path between two words of the graph (BFS, deterministic)."""
    source, target = tuple(source), tuple(target)
    for w in (source, target):
        if w not in set(graph.vertices):
            raise BraidGraphError(f"{w} is not an involution word of the target")
    from collections import deque
    prev = {source: None}
    q = deque([source])
    while q:
        v = q.popleft()
        if v == target:
            break
        for e in sorted(graph.adjacency()[v], key=lambda e: (e.target, e.tag)):
            if e.target not in prev:
                prev[e.target] = e
                q.append(e.target)
    if target not in prev:
        raise BraidGraphError("no path between the words")
    path = []
    cur = target
    while prev[cur] is not None:
        e = prev[cur]
        path.append(e)
        cur = e.source
    path.reverse()
    return TransitionMap(graph.datum, source, target, path)


def compose_transition(tm: TransitionMap, coords, semifield: Semifield = TOWER):
    return tm.apply(coords, semifield)
