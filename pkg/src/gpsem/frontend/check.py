"""Static checks on macro-free programs: scoping, typing, schema well-formedness."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional

from ..errors import Diagnostic, StaticError
from . import ast as A


@dataclass(frozen=True)
class CheckedProgram:
    program: A.Program
    # rule name -> variable -> 'int' | 'string'
    var_types: Mapping[str, Mapping[str, str]]

    @property
    def main(self) -> A.ComSeq:
        return self.program.main.body


def expr_vars(e: A.Expr) -> Iterator[A.Var]:
    if isinstance(e, A.Var):
        yield e
    elif isinstance(e, A.BinOp):
        yield from expr_vars(e.left)
        yield from expr_vars(e.right)


def label_vars(l: A.LabelExpr) -> Iterator[A.Var]:
    for c in l.components:
        yield from expr_vars(c)


def cond_vars(c: A.Cond) -> Iterator[A.Var]:
    if isinstance(c, A.Rel):
        yield from expr_vars(c.left)
        yield from expr_vars(c.right)
    elif isinstance(c, A.Not):
        yield from cond_vars(c.operand)
    elif isinstance(c, A.BoolOp):
        yield from cond_vars(c.left)
        yield from cond_vars(c.right)


def graph_vars(g: A.SchemaGraph) -> Iterator[A.Var]:
    for n in g.nodes:
        yield from label_vars(n.label)
    for e in g.edges:
        yield from label_vars(e.label)


def type_of(e: A.Expr, env: Mapping[str, str]) -> Optional[str]:
    """Type of a well-typed expression, or ``None`` if it cannot be typed."""
    if isinstance(e, A.Num):
        return A.INT
    if isinstance(e, A.Str):
        return A.STRING
    if isinstance(e, A.Var):
        return env.get(e.name)
    if type_of(e.left, env) == A.INT and type_of(e.right, env) == A.INT:
        return A.INT
    return None


class _Checker:
    def __init__(self, prog: A.Program):
        self.prog = prog
        self.errors: List[Diagnostic] = []
        self.var_types: Dict[str, Dict[str, str]] = {}

    def err(self, where: str, message: str, pos=None):
        self.errors.append(Diagnostic(message, where, pos))

    def run(self):
        rule_names = {r.name for r in self.prog.rules()}
        for r in self.prog.rules():
            self.rule(r)
        for d in self.prog.decls:
            if isinstance(d, A.MacroDecl):
                self.err(f'macro {d.name}', 'macro declaration left in a program that should be macro-free',
                         d.pos)
        self.commands(self.prog.main.body, rule_names, 'main')

    # -- schemata -----------------------------------------------------------

    def rule(self, r: A.RuleDecl):
        where = f'rule {r.name}'
        env: Dict[str, str] = {}
        for p in r.params:
            if p.type not in A.TYPES:
                self.err(where, f'unknown type {p.type!r} for parameter {p.name}', p.pos)
            if p.name in env:
                self.err(where, f'duplicate parameter {p.name}', p.pos)
            env[p.name] = p.type
        self.var_types[r.name] = env

        left_ids = self.schema_graph(r.left, where + ' (left)')
        right_ids = self.schema_graph(r.right, where + ' (right)')

        for n in r.left.nodes:
            if not n.label.is_simple():
                self.err(where, f'left labels must be simple expressions (node {n.id})', n.label.pos)
        for e in r.left.edges:
            if not e.label.is_simple():
                self.err(where, f'left labels must be simple expressions '
                                f'(edge {e.source}->{e.target})', e.label.pos)

        seen = set()
        for v in r.interface:
            if v in seen:
                self.err(where, f'interface node {v} listed twice', r.pos)
            seen.add(v)
            if v not in left_ids:
                self.err(where, f'interface node {v} missing from left graph', r.pos)
            if v not in right_ids:
                self.err(where, f'interface node {v} missing from right graph', r.pos)

        for var in list(graph_vars(r.left)) + list(graph_vars(r.right)):
            if var.name not in env:
                self.err(where, f'undeclared variable {var.name}', var.pos)
        left_vars = {v.name for v in graph_vars(r.left)}
        for var in graph_vars(r.right):
            if var.name in env and var.name not in left_vars:
                self.err(where, f'unbound variable {var.name} (right-hand variables must occur in the left graph)',
                         var.pos)

        for g in (r.left, r.right):
            for n in g.nodes:
                self.label_types(n.label, env, where)
            for e in g.edges:
                self.label_types(e.label, env, where)

        if r.condition is not None:
            for var in cond_vars(r.condition):
                if var.name not in env:
                    self.err(where, f'undeclared variable {var.name} in condition', var.pos)
                elif var.name not in left_vars:
                    self.err(where, f'unbound variable {var.name} in condition '
                                    f'(condition variables must occur in the left graph)', var.pos)
            self.cond(r.condition, env, set(r.interface), where)

    def schema_graph(self, g: A.SchemaGraph, where: str):
        ids = set()
        for n in g.nodes:
            if n.id in ids:
                self.err(where, f'duplicate node id {n.id}', n.pos)
            ids.add(n.id)
        for e in g.edges:
            for end in (e.source, e.target):
                if end not in ids:
                    self.err(where, f'edge {e.source}->{e.target} refers to undeclared node {end}', e.pos)
        return ids

    def label_types(self, l: A.LabelExpr, env, where):
        for c in l.components:
            self.expr(c, env, where)

    def expr(self, e: A.Expr, env, where) -> Optional[str]:
        if isinstance(e, A.BinOp):
            lt = self.expr(e.left, env, where)
            rt = self.expr(e.right, env, where)
            for side, t in (('left', lt), ('right', rt)):
                if t is not None and t != A.INT:
                    self.err(where, f"type error: operator '{e.op}' expects int operands, "
                                    f'{side} operand has type {t}', e.pos)
            return A.INT
        return type_of(e, env)

    def cond(self, c: A.Cond, env, interface, where):
        if isinstance(c, A.EdgePred):
            for v in (c.source, c.target):
                if v not in interface:
                    self.err(where, f'edge({c.source},{c.target}): node {v} is not an interface node', c.pos)
        elif isinstance(c, A.Rel):
            lt = self.expr(c.left, env, where)
            rt = self.expr(c.right, env, where)
            if c.op in A.ORDER_OPS:
                if (lt is not None and lt != A.INT) or (rt is not None and rt != A.INT):
                    self.err(where, f"type error: ordering '{c.op}' needs int operands, "
                                    f'got {lt} and {rt}', c.pos)
            elif lt is not None and rt is not None and lt != rt:
                self.err(where, f"type error: '{c.op}' compares {lt} with {rt}", c.pos)
        elif isinstance(c, A.Not):
            self.cond(c.operand, env, interface, where)
        else:
            self.cond(c.left, env, interface, where)
            self.cond(c.right, env, interface, where)

    # -- commands -----------------------------------------------------------

    def commands(self, seq: A.ComSeq, rules, where: str):
        for c in seq:
            if isinstance(c, A.RuleSetCall):
                for name in c.rules:
                    if name not in rules:
                        self.err(where, f'call of undeclared rule schema {name!r}', c.pos)
            elif isinstance(c, A.MacroCall):
                self.err(where, f'unexpanded macro call {c.name!r}', c.pos)
            elif isinstance(c, A.IfThenElse):
                self.commands(c.cond, rules, where)
                self.commands(c.then, rules, where)
                self.commands(c.else_, rules, where)
            elif isinstance(c, A.IfThen):
                self.commands(c.cond, rules, where)
                self.commands(c.then, rules, where)
            elif isinstance(c, A.Bang):
                self.commands(c.body, rules, where)


def diagnose(prog: A.Program) -> List[Diagnostic]:
    """All static errors of a macro-free program (empty when it is well formed)."""
    checker = _Checker(prog)
    checker.run()
    return checker.errors


def static_check(prog: A.Program) -> CheckedProgram:
    """Check a macro-free program; raise :class:`StaticError` listing every problem."""
    checker = _Checker(prog)
    checker.run()
    if checker.errors:
        raise StaticError(checker.errors)
    return CheckedProgram(prog, checker.var_types)
