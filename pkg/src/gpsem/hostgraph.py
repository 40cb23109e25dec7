"""Text format for host graphs.

One item per line, ``#`` starts a comment::

    node <id> <label>
    edge <source-id> <target-id> <label>

Labels use the program label syntax restricted to values: integers (with
an optional leading minus) and double-quoted strings joined by ``_``.
"""
from __future__ import annotations

from typing import Dict, List

from .errors import HostGraphError, ParseError
from .frontend import ast as A
from .frontend.parser import Parser
from .graph import Graph, Label, format_label, is_totally_labelled, relabel_canonically

HEADER = '# GP host graph'


def _ground(lexpr: A.LabelExpr, lineno: int) -> Label:
    atoms = []
    for c in lexpr.components:
        if isinstance(c, (A.Num, A.Str)):
            atoms.append(c.value)
        elif isinstance(c, A.Var):
            raise HostGraphError(f'variable {c.name!r} not allowed in a host label', lineno)
        else:
            raise HostGraphError('arithmetic not allowed in a host label', lineno)
    return tuple(atoms)


def parse_host(text: str) -> Graph:
    nodes: Dict[int, Label] = {}
    edges: List[tuple] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        try:
            p = Parser(line, line_comment='#')
        except ParseError as exc:
            raise HostGraphError(exc.message, lineno) from None
        if p.at('EOF'):
            continue
        try:
            kind = p.advance()
            if kind.kind not in ('ID', 'KW'):
                raise HostGraphError(f"expected 'node' or 'edge', found {kind.describe()}", lineno)
            if kind.value == 'node':
                v = p.expect('NUM', what='node id').value
                label = _ground(p.label(), lineno)
                p.expect('EOF', what='end of line')
                if v in nodes:
                    raise HostGraphError(f'duplicate node id {v}', lineno)
                nodes[v] = label
            elif kind.value == 'edge':
                s = p.expect('NUM', what='source node id').value
                t = p.expect('NUM', what='target node id').value
                label = _ground(p.label(), lineno)
                p.expect('EOF', what='end of line')
                edges.append((lineno, s, t, label))
            else:
                raise HostGraphError(f"unknown item {kind.value!r}, expected 'node' or 'edge'", lineno)
        except ParseError as exc:
            raise HostGraphError(f'column {exc.col}: {exc.message}', lineno) from None
    for i, (lineno, s, t, label) in enumerate(edges, 1):
        for end in (s, t):
            if end not in nodes:
                raise HostGraphError(f'edge {i} ({s} -> {t}) refers to undeclared node {end}', lineno)
    return Graph(nodes, ((i, (s, t, l)) for i, (_, s, t, l) in enumerate(edges, 1)))


def serialize_host(g: Graph) -> str:
    """Deterministic text; isomorphic graphs serialise identically."""
    if not is_totally_labelled(g):
        bad = [v for v in g.nodes if g.label(v) is None]
        raise HostGraphError(f'cannot serialise unlabelled nodes {bad}')
    c = relabel_canonically(g)
    lines = [HEADER]
    lines += [f'node {v} {format_label(c.label(v))}' for v in c.nodes]
    lines += [f'edge {s} {t} {format_label(l)}' for _, (s, t, l) in c.edge_items()]
    return '\n'.join(lines) + '\n'
