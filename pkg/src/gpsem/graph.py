"""Partially labelled directed multigraphs over sequences of integers and strings.

A label is a nonempty tuple of atoms; an atom is a Python ``int`` (arbitrary
precision) or ``str``.  Node labels may be ``None`` (unlabelled), edge labels
are mandatory.  Graphs are immutable once built; node and edge ids are plain
integers whose only meaning is identity inside one graph.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

Atom = Union[int, str]
Label = Tuple[Atom, ...]


class Edge(NamedTuple):
    source: int
    target: int
    label: Label


def is_atom(value) -> bool:
    return (isinstance(value, int) and not isinstance(value, bool)) or isinstance(value, str)


def is_label(value) -> bool:
    return isinstance(value, tuple) and len(value) > 0 and all(is_atom(a) for a in value)


def format_atom(atom: Atom) -> str:
    if isinstance(atom, str):
        return '"' + atom.replace('\\', '\\\\').replace('"', '\\"') + '"'
    return str(atom)


def format_label(label: Optional[Label]) -> str:
    if label is None:
        return '<unlabelled>'
    return '_'.join(format_atom(a) for a in label)


def _as_label(value) -> Optional[Label]:
    if value is None:
        return None
    if isinstance(value, (list, tuple)):
        return tuple(value)
    return (value,)


class Graph:
    """Immutable directed multigraph with partial node labelling.

    ``nodes`` maps node id to label (or ``None``); ``edges`` maps edge id to
    ``(source, target, label)``.  Insertion order is kept and is the
    "construction order" that match enumeration follows.  A bare atom is
    accepted wherever a label is expected and wrapped into a 1-tuple.
    """

    __slots__ = ('_nodes', '_edges', '_key', '_out', '_incident')

    def __init__(self, nodes: Union[Mapping[int, object], Iterable[Tuple[int, object]]] = (),
                 edges: Union[Mapping[int, object], Iterable[Tuple[int, object]]] = ()):
        nodes = nodes.items() if isinstance(nodes, Mapping) else nodes
        edges = edges.items() if isinstance(edges, Mapping) else edges
        self._nodes: Dict[int, Optional[Label]] = {v: _as_label(l) for v, l in nodes}
        self._edges: Dict[int, Edge] = {}
        for e, (s, t, l) in edges:
            self._edges[e] = Edge(s, t, _as_label(l))
        self._key: Optional[bytes] = None
        self._out: Optional[Dict[Tuple[int, int], List[int]]] = None
        self._incident: Optional[Dict[int, List[int]]] = None

    @classmethod
    def from_lists(cls, labels: Sequence[object], edges: Iterable[Tuple[int, int, object]] = ()) -> Graph:
        """Nodes numbered 1..n in the order of ``labels``; edges numbered 1..m."""
        return cls(((i + 1, l) for i, l in enumerate(labels)),
                   ((j + 1, tuple(e)) for j, e in enumerate(edges)))

    # -- structure ---------------------------------------------------------

    @property
    def nodes(self) -> Tuple[int, ...]:
        return tuple(self._nodes)

    @property
    def edges(self) -> Tuple[int, ...]:
        return tuple(self._edges)

    def node_items(self):
        return self._nodes.items()

    def edge_items(self):
        return self._edges.items()

    def has_node(self, v: int) -> bool:
        return v in self._nodes

    def label(self, v: int) -> Optional[Label]:
        return self._nodes[v]

    def edge(self, e: int) -> Edge:
        return self._edges[e]

    def source(self, e: int) -> int:
        return self._edges[e].source

    def target(self, e: int) -> int:
        return self._edges[e].target

    def edge_label(self, e: int) -> Label:
        return self._edges[e].label

    def num_nodes(self) -> int:
        return len(self._nodes)

    def num_edges(self) -> int:
        return len(self._edges)

    def edges_between(self, u: int, v: int) -> Sequence[int]:
        """Edges from ``u`` to ``v`` (direction-sensitive)."""
        if self._out is None:
            out: Dict[Tuple[int, int], List[int]] = {}
            for e, edge in self._edges.items():
                out.setdefault((edge.source, edge.target), []).append(e)
            self._out = out
        return self._out.get((u, v), ())

    def incident(self, v: int) -> Sequence[int]:
        """Edges with ``v`` as source or target; a loop is listed once."""
        if self._incident is None:
            inc: Dict[int, List[int]] = {}
            for e, edge in self._edges.items():
                inc.setdefault(edge.source, []).append(e)
                if edge.target != edge.source:
                    inc.setdefault(edge.target, []).append(e)
            self._incident = inc
        return self._incident.get(v, ())

    def next_node_id(self) -> int:
        return max(self._nodes, default=0) + 1

    def next_edge_id(self) -> int:
        return max(self._edges, default=0) + 1

    @property
    def key(self) -> bytes:
        """Canonical key, computed once per graph."""
        if self._key is None:
            self._key = canonical_key(self)
        return self._key

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self):
        return hash((tuple(self._nodes.items()), tuple(self._edges.items())))

    def __repr__(self):
        nodes = ', '.join(f'{v}: {format_label(l)}' for v, l in self._nodes.items())
        edges = ', '.join(f'{e}: {s}->{t} {format_label(l)}' for e, (s, t, l) in self._edges.items())
        return f'Graph({{{nodes}}} | {{{edges}}})'


def validate(g: Graph) -> List[str]:
    """Return the invariant violations of ``g``; an empty list means valid."""
    problems = []
    for v, l in g.node_items():
        if not isinstance(v, int):
            problems.append(f'node {v!r}: id is not an integer')
        if l is not None and not is_label(l):
            problems.append(f'node {v}: label {l!r} is not a nonempty sequence of atoms')
    for e, (s, t, l) in g.edge_items():
        if not isinstance(e, int):
            problems.append(f'edge {e!r}: id is not an integer')
        if not g.has_node(s):
            problems.append(f'edge {e}: source {s} is not a node')
        if not g.has_node(t):
            problems.append(f'edge {e}: target {t} is not a node')
        if not is_label(l):
            problems.append(f'edge {e}: label {l!r} is not a nonempty sequence of atoms')
    return problems


def is_totally_labelled(g: Graph) -> bool:
    return all(l is not None for _, l in g.node_items())


@dataclass(frozen=True)
class Morphism:
    node_map: Mapping[int, int]
    edge_map: Mapping[int, int]
    src: Graph
    dst: Graph


def identity(g: Graph) -> Morphism:
    return Morphism({v: v for v in g.nodes}, {e: e for e in g.edges}, g, g)


def check_morphism(m: Morphism) -> bool:
    """Sources, targets, edge labels and defined node labels are preserved."""
    src, dst = m.src, m.dst
    for v, l in src.node_items():
        w = m.node_map.get(v)
        if w is None or not dst.has_node(w):
            return False
        if l is not None and dst.label(w) != l:
            return False
    for e, (s, t, l) in src.edge_items():
        f = m.edge_map.get(e)
        if f is None or f not in dst.edges:
            return False
        image = dst.edge(f)
        if image.source != m.node_map[s] or image.target != m.node_map[t] or image.label != l:
            return False
    return True


def is_injective(m: Morphism) -> bool:
    return (len(set(m.node_map.values())) == len(m.node_map)
            and len(set(m.edge_map.values())) == len(m.edge_map))


# -- isomorphism ----------------------------------------------------------

def _atom_key(a: Atom):
    return (1, a) if isinstance(a, str) else (0, a)


def label_key(l: Optional[Label]) -> tuple:
    """Total order on labels; ``None`` sorts before every label."""
    if l is None:
        return ()
    return tuple(_atom_key(a) for a in l)


def isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking search for a label-preserving bijection."""
    if g1.num_nodes() != g2.num_nodes() or g1.num_edges() != g2.num_edges():
        return False
    if Counter(l for _, l in g1.node_items()) != Counter(l for _, l in g2.node_items()):
        return False
    if Counter(e.label for _, e in g1.edge_items()) != Counter(e.label for _, e in g2.edge_items()):
        return False

    def profile(g):
        mult: Dict[Tuple[int, int], Counter] = {}
        sig: Dict[int, tuple] = {v: () for v in g.nodes}
        outs: Dict[int, list] = {v: [] for v in g.nodes}
        ins: Dict[int, list] = {v: [] for v in g.nodes}
        for _, (s, t, l) in g.edge_items():
            mult.setdefault((s, t), Counter())[l] += 1
            outs[s].append(label_key(l))
            ins[t].append(label_key(l))
        for v in g.nodes:
            sig[v] = (label_key(g.label(v)), tuple(sorted(outs[v])), tuple(sorted(ins[v])))
        return mult, sig

    mult1, sig1 = profile(g1)
    mult2, sig2 = profile(g2)
    if Counter(sig1.values()) != Counter(sig2.values()):
        return False
    empty: Counter = Counter()
    order = list(g1.nodes)
    mapping: Dict[int, int] = {}
    used = set()

    def consistent(u, w):
        if mult1.get((u, u), empty) != mult2.get((w, w), empty):
            return False
        for u2, w2 in mapping.items():
            if mult1.get((u, u2), empty) != mult2.get((w, w2), empty):
                return False
            if mult1.get((u2, u), empty) != mult2.get((w2, w), empty):
                return False
        return True

    def extend(i):
        if i == len(order):
            return True
        u = order[i]
        for w in g2.nodes:
            if w in used or sig2[w] != sig1[u] or not consistent(u, w):
                continue
            mapping[u] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[u]
            used.discard(w)
        return False

    return extend(0)


def _rank(values: Mapping[int, object]) -> Dict[int, int]:
    distinct = sorted(set(values.values()))
    index = {x: i for i, x in enumerate(distinct)}
    return {v: index[x] for v, x in values.items()}


class _Component:
    """Canonical labelling of one weakly connected component.

    Individualisation-refinement: refine an ordered colouring to equitable
    form, branch on the first non-singleton cell, keep the smallest leaf
    encoding.  Automorphisms found between equal leaves prune sibling
    branches lying in the same orbit.
    """

    def __init__(self, g: Graph, nodes: List[int], edges: List[int]):
        self.nodes = nodes
        self.labels = {v: label_key(g.label(v)) for v in nodes}
        self.out: Dict[int, list] = {v: [] for v in nodes}
        self.inn: Dict[int, list] = {v: [] for v in nodes}
        self.edge_list = []
        for e in edges:
            s, t, l = g.edge(e)
            lk = label_key(l)
            self.out[s].append((lk, t))
            self.inn[t].append((lk, s))
            self.edge_list.append((s, t, lk))
        self.best: Optional[tuple] = None
        self.best_order: Optional[List[int]] = None
        self.first_order: Optional[List[int]] = None
        self.first_enc: Optional[tuple] = None
        self.automorphisms: List[Dict[int, int]] = []

    def refine(self, colors: Dict[int, int]) -> Dict[int, int]:
        count = len(set(colors.values()))
        while True:
            sig = {v: (colors[v],
                       tuple(sorted((lk, colors[t]) for lk, t in self.out[v])),
                       tuple(sorted((lk, colors[s]) for lk, s in self.inn[v])))
                   for v in self.nodes}
            colors = _rank(sig)
            new_count = len(set(colors.values()))
            if new_count == count:
                return colors
            count = new_count

    def encode(self, order: List[int]) -> tuple:
        pos = {v: i for i, v in enumerate(order)}
        return (tuple(self.labels[v] for v in order),
                tuple(sorted((pos[s], pos[t], lk) for s, t, lk in self.edge_list)))

    def run(self) -> Tuple[tuple, List[int]]:
        self.search(_rank(self.labels), [])
        return self.best, self.best_order

    def _leaf(self, order: List[int]):
        enc = self.encode(order)
        if self.first_enc is None:
            self.first_enc, self.first_order = enc, order
        elif enc == self.first_enc:
            self.automorphisms.append(dict(zip(self.first_order, order)))
        if self.best is None or enc < self.best:
            self.best, self.best_order = enc, order
        elif enc == self.best and order is not self.best_order:
            self.automorphisms.append(dict(zip(self.best_order, order)))

    def _orbit_roots(self, prefix: List[int]) -> Dict[int, int]:
        parent = {v: v for v in self.nodes}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for gamma in self.automorphisms:
            if any(gamma[p] != p for p in prefix):
                continue
            for u, w in gamma.items():
                ru, rw = find(u), find(w)
                if ru != rw:
                    parent[ru] = rw
        return {v: find(v) for v in self.nodes}

    def search(self, colors: Dict[int, int], prefix: List[int]):
        colors = self.refine(colors)
        cells: Dict[int, List[int]] = {}
        for v in self.nodes:
            cells.setdefault(colors[v], []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            self._leaf(sorted(self.nodes, key=colors.__getitem__))
            return
        tried_roots = set()
        for v in target:
            if tried_roots:
                roots = self._orbit_roots(prefix)
                if roots[v] in {roots[w] for w in tried_roots}:
                    continue
            tried_roots.add(v)
            split = _rank({u: (colors[u], 0 if u == v else 1) for u in self.nodes})
            self.search(split, prefix + [v])


def _components(g: Graph) -> List[Tuple[List[int], List[int]]]:
    parent = {v: v for v in g.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, (s, t, _l) in g.edge_items():
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[rs] = rt
    groups: Dict[int, Tuple[List[int], List[int]]] = {}
    for v in g.nodes:
        groups.setdefault(find(v), ([], []))[0].append(v)
    for e, (s, _t, _l) in g.edge_items():
        groups[find(s)][1].append(e)
    return list(groups.values())


def canonical_form(g: Graph) -> Tuple[tuple, List[int]]:
    """Return ``(encoding, order)``: a complete isomorphism invariant and a
    canonical node ordering.  Isomorphic graphs get equal encodings and their
    orders correspond under some isomorphism."""
    parts = []
    for nodes, edges in _components(g):
        enc, order = _Component(g, nodes, edges).run()
        parts.append((enc, order))
    parts.sort(key=lambda p: p[0])
    return tuple(p[0] for p in parts), [v for p in parts for v in p[1]]


def canonical_key(g: Graph) -> bytes:
    """Deterministic byte string; equal iff the graphs are isomorphic."""
    enc, _ = canonical_form(g)
    return repr(enc).encode('utf-8')


def relabel_canonically(g: Graph) -> Graph:
    """Isomorphic copy with nodes 1..n and edges 1..m in canonical order."""
    _, order = canonical_form(g)
    pos = {v: i + 1 for i, v in enumerate(order)}
    edges = sorted(((pos[s], pos[t], l) for _, (s, t, l) in g.edge_items()),
                   key=lambda x: (x[0], x[1], label_key(x[2])))
    return Graph.from_lists([g.label(v) for v in order], edges)
