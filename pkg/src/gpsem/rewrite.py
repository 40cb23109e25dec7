"""Matching and application of conditional rule schemata.

The (possibly infinite) instance set of a schema is never built.  Left labels
are simple expressions, so matching a left label against a host label binds
each variable positionally to one atom; the resulting assignment is the only
one under which that morphism is a match.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

from .errors import EvaluationFailure
from .frontend import ast as A
from .frontend.compile import CompiledSchema
from .graph import Atom, Graph, Label, Morphism

log = logging.getLogger(__name__)

Assignment = Mapping[str, Atom]


@dataclass(frozen=True)
class Match:
    schema: str
    node_map: Mapping[int, int]
    # left edge index -> host edge id
    edge_map: Mapping[int, int]
    assignment: Assignment

    def summary(self) -> str:
        nodes = ','.join(f'{v}->{w}' for v, w in self.node_map.items())
        return '{' + nodes + '}'


@dataclass(frozen=True)
class Derivation:
    schema: str
    match: Match
    result: Graph


# -- evaluation -----------------------------------------------------------------

def _div(a: int, b: int) -> int:
    if b == 0:
        raise EvaluationFailure('division by zero')
    q = abs(a) // abs(b)
    return q if (a >= 0) == (b >= 0) else -q


_ARITH = {
    '+': lambda a, b: a + b,
    '-': lambda a, b: a - b,
    '*': lambda a, b: a * b,
    '/': _div,
}


def eval_expr(e: A.Expr, a: Assignment) -> Atom:
    if isinstance(e, A.Num):
        return e.value
    if isinstance(e, A.Str):
        return e.value
    if isinstance(e, A.Var):
        return a[e.name]
    left, right = eval_expr(e.left, a), eval_expr(e.right, a)
    if not (isinstance(left, int) and isinstance(right, int)):
        raise EvaluationFailure(f"operator '{e.op}' applied to non-integer")
    return _ARITH[e.op](left, right)


def eval_label(l: A.LabelExpr, a: Assignment) -> Label:
    """Value of a label expression; components concatenate into one atom sequence."""
    return tuple(eval_expr(c, a) for c in l.components)


_REL = {
    '=': lambda x, y: x == y,
    '\\=': lambda x, y: x != y,
    '>': lambda x, y: x > y,
    '<': lambda x, y: x < y,
    '>=': lambda x, y: x >= y,
    '<=': lambda x, y: x <= y,
}


def eval_condition(cond: A.Cond, a: Assignment, g, host: Graph) -> bool:
    """Truth value of a schema condition.

    ``g`` is anything with a ``node_map`` (a :class:`Morphism` or
    :class:`Match`) or a plain node mapping.  Raises
    :class:`EvaluationFailure` on division by zero.
    """
    node_map = getattr(g, 'node_map', g)
    if isinstance(cond, A.EdgePred):
        return len(host.edges_between(node_map[cond.source], node_map[cond.target])) > 0
    if isinstance(cond, A.Rel):
        x, y = eval_expr(cond.left, a), eval_expr(cond.right, a)
        if type(x) is not type(y):
            # unreachable for statically checked schemata
            return cond.op == '\\='
        return _REL[cond.op](x, y)
    if isinstance(cond, A.Not):
        return not eval_condition(cond.operand, a, node_map, host)
    if cond.op == 'and':
        return eval_condition(cond.left, a, node_map, host) and eval_condition(cond.right, a, node_map, host)
    return eval_condition(cond.left, a, node_map, host) or eval_condition(cond.right, a, node_map, host)


# -- instantiation ----------------------------------------------------------------

def instantiate(schema: CompiledSchema, side: str, a: Assignment) -> Graph:
    """L^a (``side='left'``) or R^a: labels evaluated, edge ids are edge indices."""
    nodes = schema.left_nodes if side == 'left' else schema.right_nodes
    edges = schema.left_edges if side == 'left' else schema.right_edges
    return Graph(((v, eval_label(l, a)) for v, l in nodes.items()),
                 ((i, (pe.source, pe.target, eval_label(pe.label, a))) for i, pe in enumerate(edges)))


def match_morphism(schema: CompiledSchema, m: Match, host: Graph) -> Morphism:
    return Morphism(dict(m.node_map), dict(m.edge_map), instantiate(schema, 'left', m.assignment), host)


# -- matching ---------------------------------------------------------------------

def _unify(lexpr: A.LabelExpr, label: Label, binding: Dict[str, Atom],
           types: Mapping[str, str]) -> Optional[Dict[str, Atom]]:
    comps = lexpr.components
    if label is None or len(comps) != len(label):
        return None
    out = binding
    for comp, atom in zip(comps, label):
        is_int = isinstance(atom, int)
        if isinstance(comp, A.Num):
            if not is_int or atom != comp.value:
                return None
        elif isinstance(comp, A.Str):
            if is_int or atom != comp.value:
                return None
        elif isinstance(comp, A.Var):
            ty = types.get(comp.name)
            if (ty == A.INT and not is_int) or (ty == A.STRING and is_int):
                return None
            if comp.name in out:
                bound = out[comp.name]
                if isinstance(bound, int) != is_int or bound != atom:
                    return None
            else:
                if out is binding:
                    out = dict(binding)
                out[comp.name] = atom
        else:
            raise ValueError(f'left label component is not simple: {comp!r}')
    return out


def check_dangling(schema: CompiledSchema, g, host: Graph) -> bool:
    """No node in g(L) - g(K) is incident to an edge in G - g(L)."""
    image_edges = set(g.edge_map.values())
    for v in schema.deleted_nodes:
        for e in host.incident(g.node_map[v]):
            if e not in image_edges:
                return False
    return True


def find_matches(schema: CompiledSchema, host: Graph,
                 diagnostics: Optional[List[str]] = None) -> List[Match]:
    """All matches of ``schema`` in ``host`` in deterministic order.

    Left nodes are assigned in declaration order, each to host nodes in host
    order; a left edge is assigned as soon as both its endpoints are.
    """
    order = list(schema.left_nodes)
    placed = set()
    edges_at: List[List[int]] = []
    for v in order:
        placed.add(v)
        edges_at.append([i for i, pe in enumerate(schema.left_edges)
                         if v in (pe.source, pe.target) and pe.source in placed and pe.target in placed])
    types = schema.var_types
    host_nodes = host.nodes
    results: List[Match] = []
    node_map: Dict[int, int] = {}
    edge_map: Dict[int, int] = {}
    used_nodes = set()
    used_edges = set()

    def finish(binding):
        m = Match(schema.name, dict(node_map), dict(edge_map), dict(binding))
        if not check_dangling(schema, m, host):
            return
        if schema.condition is not None:
            try:
                if not eval_condition(schema.condition, binding, node_map, host):
                    return
            except EvaluationFailure as exc:
                msg = f'{schema.name}: match {m.summary()} rejected: {exc} in condition'
                log.debug(msg)
                if diagnostics is not None:
                    diagnostics.append(msg)
                return
        results.append(m)

    def place_edges(i, k, binding):
        pending = edges_at[i]
        if k == len(pending):
            place_node(i + 1, binding)
            return
        idx = pending[k]
        pe = schema.left_edges[idx]
        for e in host.edges_between(node_map[pe.source], node_map[pe.target]):
            if e in used_edges:
                continue
            b = _unify(pe.label, host.edge_label(e), binding, types)
            if b is None:
                continue
            edge_map[idx] = e
            used_edges.add(e)
            place_edges(i, k + 1, b)
            used_edges.discard(e)
            del edge_map[idx]

    def place_node(i, binding):
        if i == len(order):
            finish(binding)
            return
        v = order[i]
        lexpr = schema.left_nodes[v]
        for w in host_nodes:
            if w in used_nodes:
                continue
            b = _unify(lexpr, host.label(w), binding, types)
            if b is None:
                continue
            node_map[v] = w
            used_nodes.add(w)
            place_edges(i, 0, b)
            used_nodes.discard(w)
            del node_map[v]

    place_node(0, {})
    return results


# -- application ------------------------------------------------------------------

def apply_match(schema: CompiledSchema, m: Match, host: Graph) -> Graph:
    """Build H from G by deleting g(L)-g(K), adding R-K, relabelling g(K).

    Raises :class:`EvaluationFailure` if a right-hand label divides by zero.
    """
    a = m.assignment
    created_labels = {v: eval_label(schema.right_nodes[v], a) for v in schema.created_nodes}
    relabels = {m.node_map[v]: eval_label(schema.right_nodes[v], a) for v in schema.interface}
    new_edge_labels = [eval_label(pe.label, a) for pe in schema.right_edges]

    deleted_nodes = {m.node_map[v] for v in schema.deleted_nodes}
    # K has no edges, so every matched edge is in g(L) - g(K)
    deleted_edges = set(m.edge_map.values())
    nodes = {v: l for v, l in host.node_items() if v not in deleted_nodes}
    edges = {e: edge for e, edge in host.edge_items() if e not in deleted_edges}

    fresh = host.next_node_id()
    created: Dict[int, int] = {}
    for v, l in created_labels.items():
        created[v] = fresh
        nodes[fresh] = l
        fresh += 1
    fresh_edge = host.next_edge_id()
    for pe, l in zip(schema.right_edges, new_edge_labels):
        s = created[pe.source] if pe.source in created else m.node_map[pe.source]
        t = created[pe.target] if pe.target in created else m.node_map[pe.target]
        edges[fresh_edge] = (s, t, l)
        fresh_edge += 1
    for w, l in relabels.items():
        nodes[w] = l
    return Graph(nodes, edges)


def derive_all(rules: Sequence[CompiledSchema], host: Graph,
               diagnostics: Optional[List[str]] = None) -> List[Derivation]:
    """Every direct derivation of ``host`` by any schema in ``rules``.

    Matches whose right-hand labels cannot be evaluated are treated as not
    applicable and reported in ``diagnostics``.
    """
    out = []
    for schema in rules:
        for m in find_matches(schema, host, diagnostics):
            try:
                h = apply_match(schema, m, host)
            except EvaluationFailure as exc:
                msg = f'{schema.name}: match {m.summary()} not applied: {exc}'
                log.debug(msg)
                if diagnostics is not None:
                    diagnostics.append(msg)
                continue
            out.append(Derivation(schema.name, m, h))
    return out
