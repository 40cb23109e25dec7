"""Independent brute-force oracles used by the test-suite.

Nothing here calls into the matching, application or exploration code of
the package; only the graph container, the AST and the canonical key (for
cycle detection in the naive interpreter) are shared.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from gpsem.frontend import ast as A
from gpsem.frontend.compile import SKIP_RULE
from gpsem.graph import Graph


# -- isomorphism ----------------------------------------------------------------

def brute_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Try every bijection between node sets."""
    n1, n2 = list(g1.nodes), list(g2.nodes)
    if len(n1) != len(n2) or g1.num_edges() != g2.num_edges():
        return False
    e2 = Counter((s, t, l) for _, (s, t, l) in g2.edge_items())
    for perm in itertools.permutations(n2):
        f = dict(zip(n1, perm))
        if any(g1.label(v) != g2.label(f[v]) for v in n1):
            continue
        if Counter((f[s], f[t], l) for _, (s, t, l) in g1.edge_items()) == e2:
            return True
    return False


# -- expressions ----------------------------------------------------------------

class DivZero(Exception):
    pass


def o_eval(e, a):
    if isinstance(e, A.Num) or isinstance(e, A.Str):
        return e.value
    if isinstance(e, A.Var):
        return a[e.name]
    x, y = o_eval(e.left, a), o_eval(e.right, a)
    if e.op == '+':
        return x + y
    if e.op == '-':
        return x - y
    if e.op == '*':
        return x * y
    if y == 0:
        raise DivZero()
    # truncation toward zero
    q = int(abs(x) / abs(y)) if abs(x) < 2 ** 52 else abs(x) // abs(y)
    return q if x * y >= 0 else -q


def o_cond(c, a, nmap, host: Graph) -> bool:
    if isinstance(c, A.EdgePred):
        s, t = nmap[c.source], nmap[c.target]
        return any(e.source == s and e.target == t for _, e in host.edge_items())
    if isinstance(c, A.Rel):
        x, y = o_eval(c.left, a), o_eval(c.right, a)
        return {'=': x == y, '\\=': x != y, '>': x > y, '<': x < y, '>=': x >= y, '<=': x <= y}[c.op]
    if isinstance(c, A.Not):
        return not o_cond(c.operand, a, nmap, host)
    l, r = o_cond(c.left, a, nmap, host), o_cond(c.right, a, nmap, host)
    return (l and r) if c.op == 'and' else (l or r)


def _solve(equations, types) -> Optional[Dict[str, object]]:
    """Solve component equations ``(expr, atom)`` positionally."""
    a: Dict[str, object] = {}
    for expr, atom in equations:
        if isinstance(expr, A.Var):
            want = types[expr.name]
            if want == 'int' and not isinstance(atom, int):
                return None
            if want == 'string' and not isinstance(atom, str):
                return None
            if expr.name in a and (type(a[expr.name]) is not type(atom) or a[expr.name] != atom):
                return None
            a[expr.name] = atom
        elif type(expr.value) is not type(atom) or expr.value != atom:
            return None
    return a


# -- matching -------------------------------------------------------------------

def brute_matches(schema, host: Graph):
    """Set of ``(node_map, edge_map, assignment)`` triples (as frozensets)."""
    lnodes = list(schema.left_nodes)
    ledges = list(schema.left_edges)
    out = set()
    for images in itertools.permutations(host.nodes, len(lnodes)):
        nmap = dict(zip(lnodes, images))
        candidates = [[e for e, ed in host.edge_items()
                       if ed.source == nmap[pe.source] and ed.target == nmap[pe.target]]
                      for pe in ledges]
        for choice in itertools.product(*candidates):
            if len(set(choice)) != len(choice):
                continue
            eqs = []
            ok = True
            for v in lnodes:
                lab, hl = schema.left_nodes[v].components, host.label(nmap[v])
                if len(lab) != len(hl):
                    ok = False
                    break
                eqs.extend(zip(lab, hl))
            for pe, e in zip(ledges, choice):
                lab, hl = pe.label.components, host.edge_label(e)
                if len(lab) != len(hl):
                    ok = False
                    break
                eqs.extend(zip(lab, hl))
            if not ok:
                continue
            a = _solve(eqs, schema.var_types)
            if a is None:
                continue
            # dangling: nodes of g(L) - g(K) versus edges of G - g(L)
            deleted = {nmap[v] for v in lnodes if v not in schema.interface}
            outside = set(host.edges) - set(choice)
            if any(host.source(e) in deleted or host.target(e) in deleted for e in outside):
                continue
            if schema.condition is not None:
                try:
                    if not o_cond(schema.condition, a, nmap, host):
                        continue
                except DivZero:
                    continue
            out.add((frozenset(nmap.items()), frozenset(enumerate(choice)), frozenset(a.items())))
    return out


# -- rule application by explicit instantiation -----------------------------------

def instantiate_rule(schema, a):
    """(L^a, K, R^a) as concrete graphs; raises DivZero."""
    L = Graph({v: tuple(o_eval(c, a) for c in l.components) for v, l in schema.left_nodes.items()},
              {i: (pe.source, pe.target, tuple(o_eval(c, a) for c in pe.label.components))
               for i, pe in enumerate(schema.left_edges)})
    K = Graph({v: None for v in schema.interface})
    R = Graph({v: tuple(o_eval(c, a) for c in l.components) for v, l in schema.right_nodes.items()},
              {i: (pe.source, pe.target, tuple(o_eval(c, a) for c in pe.label.components))
               for i, pe in enumerate(schema.right_edges)})
    return L, K, R


def apply_rule(L: Graph, K: Graph, R: Graph, gv: Dict[int, int], ge: Dict[int, int], G: Graph) -> Graph:
    """Direct derivation for a rule L <- K -> R (inclusions) with match (gv, ge)."""
    # 1. remove g(L) - g(K)
    del_nodes = {gv[v] for v in L.nodes if not K.has_node(v)}
    del_edges = {ge[e] for e in L.edges if e not in K.edges}
    nodes = {v: G.label(v) for v in G.nodes if v not in del_nodes}
    edges = {e: G.edge(e) for e in G.edges if e not in del_edges}
    # 2. add R - K disjointly
    new_id = {}
    for v in R.nodes:
        if not K.has_node(v):
            new_id[v] = ('new', v)
            nodes[('new', v)] = R.label(v)
    for e in R.edges:
        if e in K.edges:
            continue
        s, t, l = R.edge(e)
        src = new_id[s] if s in new_id else gv[s]
        tgt = new_id[t] if t in new_id else gv[t]
        edges[('new', e)] = (src, tgt, l)
    # 3. relabel unlabelled interface nodes
    for v in K.nodes:
        if K.label(v) is None:
            nodes[gv[v]] = R.label(v)
    # renumber to integers
    vid = {v: i for i, v in enumerate(nodes, 1)}
    return Graph({vid[v]: l for v, l in nodes.items()},
                 {i: (vid[s], vid[t], l) for i, (s, t, l) in enumerate(edges.values(), 1)})


def brute_derivations(rules, host: Graph) -> List[Graph]:
    out = []
    for schema in rules:
        for nm, em, asg in sorted(brute_matches(schema, host), key=repr):
            try:
                L, K, R = instantiate_rule(schema, dict(asg))
            except DivZero:
                continue
            out.append(apply_rule(L, K, R, dict(nm), dict(em), host))
    return out


# -- naive structural operational semantics ---------------------------------------

@dataclass
class Summary:
    results: Dict[bytes, Graph] = field(default_factory=dict)
    fail: bool = False
    stuck: bool = False
    diverge: bool = False

    @property
    def finitely_fails(self):
        return not self.results and not self.stuck and not self.diverge

    @property
    def bottom(self):
        return self.stuck or self.diverge


class NaiveSOS:
    """Depth-first transcription of the inference rules without memoisation.

    Cycle detection on the current path (configurations compared up to
    isomorphism) stands in for infinite computations.  Summaries of subtrees
    that never reached back into the path are path-independent and cached.
    Only usable on tiny state spaces.
    """

    def __init__(self, rules):
        self.rules = rules
        self.done = {}

    def successors(self, seq, g):
        c, rest = seq[0], seq[1:]
        if isinstance(c, A.Skip):
            head = [('run', (A.RuleSetCall((SKIP_RULE,)),), g)]
        elif isinstance(c, A.Fail):
            head = [('run', (A.RuleSetCall(()),), g)]
        elif isinstance(c, A.IfThen):
            head = [('run', (A.IfThenElse(c.cond, c.then, (A.Skip(),)),), g)]
        elif isinstance(c, A.RuleSetCall):
            hs = brute_derivations([self.rules[r] for r in c.rules], g)
            head = [('done', h) for h in hs] if hs else [('fail',)]
        elif isinstance(c, A.IfThenElse):
            s = self.summary(c.cond, g)
            if s.results:
                head = [('run', c.then, g)]
            elif s.finitely_fails:
                head = [('run', c.else_, g)]
            else:
                return None
        elif isinstance(c, A.Bang):
            s = self.summary(c.body, g)
            if s.results:
                head = [('run', (c,), h) for h in s.results.values()]
            elif s.finitely_fails:
                head = [('done', g)]
            else:
                return None
        else:
            raise TypeError(c)
        if not rest:
            return head
        out = []
        for d in head:
            if d[0] == 'run':
                out.append(('run', d[1] + rest, d[2]))
            elif d[0] == 'done':
                out.append(('run', rest, d[1]))
            else:
                out.append(d)
        return out

    def summary(self, seq, g, path=frozenset()) -> Summary:
        s = Summary()
        here = (seq, g.key)
        if here in self.done:
            return self.done[here]
        if here in path:
            s.diverge = True
            return s
        succs = self.successors(seq, g)
        if succs is None:
            s.stuck = True
            return s
        for d in succs:
            if d[0] == 'done':
                s.results.setdefault(d[1].key, d[1])
            elif d[0] == 'fail':
                s.fail = True
            else:
                sub = self.summary(d[1], d[2], path | {here})
                for k, h in sub.results.items():
                    s.results.setdefault(k, h)
                s.fail |= sub.fail
                s.stuck |= sub.stuck
                s.diverge |= sub.diverge
        if not s.diverge:
            self.done[here] = s
        return s


# -- series-parallel reduction -------------------------------------------------------

def is_series_parallel(nodes, edges) -> bool:
    """Search all sequences of parallel/series reductions for a single edge
    between two nodes.  ``edges`` is a list of ``(source, target)``."""
    seen = set()

    def key(ns, es):
        return (frozenset(ns), tuple(sorted(es)))

    def search(ns, es):
        k = key(ns, es)
        if k in seen:
            return False
        seen.add(k)
        if len(ns) == 2 and len(es) == 1 and es[0][0] != es[0][1]:
            return True
        # parallel pair
        for i, j in itertools.combinations(range(len(es)), 2):
            if es[i] == es[j]:
                if search(ns, es[:j] + es[j + 1:]):
                    return True
        # series node
        for v in ns:
            incident = [i for i, (s, t) in enumerate(es) if s == v or t == v]
            if len(incident) != 2:
                continue
            ins = [i for i in incident if es[i][1] == v and es[i][0] != v]
            outs = [i for i in incident if es[i][0] == v and es[i][1] != v]
            if len(ins) != 1 or len(outs) != 1:
                continue
            u, w = es[ins[0]][0], es[outs[0]][1]
            if u == w:
                continue
            rest = [e for i, e in enumerate(es) if i not in incident] + [(u, w)]
            if search(ns - {v}, rest):
                return True
        return False

    return search(frozenset(nodes), list(edges))
