"""Pretty printer producing text that parses back to the same AST."""
from __future__ import annotations

from typing import List

from ..graph import format_atom
from . import ast as A

_ARITH_PREC = {'+': 1, '-': 1, '*': 2, '/': 2}


def expr_str(e: A.Expr) -> str:
    if isinstance(e, A.Num):
        return str(e.value)
    if isinstance(e, A.Str):
        return format_atom(e.value)
    if isinstance(e, A.Var):
        return e.name
    prec = _ARITH_PREC[e.op]
    left = expr_str(e.left)
    right = expr_str(e.right)
    if isinstance(e.left, A.BinOp) and _ARITH_PREC[e.left.op] < prec:
        left = f'({left})'
    if isinstance(e.right, A.BinOp) and _ARITH_PREC[e.right.op] <= prec:
        right = f'({right})'
    return f'{left} {e.op} {right}'


def label_str(l: A.LabelExpr) -> str:
    return '_'.join(expr_str(c) for c in l.components)


def _cond_prec(c: A.Cond) -> int:
    if isinstance(c, A.BoolOp):
        return 1 if c.op == 'or' else 2
    if isinstance(c, A.Not):
        return 3
    return 4


def cond_str(c: A.Cond) -> str:
    if isinstance(c, A.EdgePred):
        return f'edge({c.source}, {c.target})'
    if isinstance(c, A.Rel):
        return f'{expr_str(c.left)} {c.op} {expr_str(c.right)}'
    if isinstance(c, A.Not):
        inner = cond_str(c.operand)
        return f'not {inner}' if _cond_prec(c.operand) >= 3 else f'not ({inner})'
    prec = _cond_prec(c)
    left, right = cond_str(c.left), cond_str(c.right)
    if _cond_prec(c.left) < prec:
        left = f'({left})'
    if _cond_prec(c.right) <= prec:
        right = f'({right})'
    return f'{left} {c.op} {right}'


def graph_str(g: A.SchemaGraph) -> str:
    nodes = ', '.join(f'{n.id}: {label_str(n.label)}' for n in g.nodes)
    edges = ', '.join(f'{e.source} -> {e.target}: {label_str(e.label)}' for e in g.edges)
    if edges:
        return f'[{nodes} | {edges}]' if nodes else f'[| {edges}]'
    return f'[{nodes}]'


def params_str(params) -> str:
    groups: List[List[A.Param]] = []
    for p in params:
        if groups and groups[-1][0].type == p.type:
            groups[-1].append(p)
        else:
            groups.append([p])
    return '; '.join(', '.join(p.name for p in g) + ': ' + g[0].type for g in groups)


def rule_str(r: A.RuleDecl) -> str:
    lines = [f'{r.name}({params_str(r.params)})',
             f'  {graph_str(r.left)}',
             '  =>',
             f'  {graph_str(r.right)}',
             '  interface = {' + ', '.join(str(v) for v in r.interface) + '}']
    if r.condition is not None:
        lines.append(f'  where {cond_str(r.condition)}')
    return '\n'.join(lines)


def _atomic(c: A.Command) -> bool:
    return isinstance(c, (A.RuleSetCall, A.MacroCall, A.Skip, A.Fail, A.Bang))


def command_str(c: A.Command) -> str:
    if isinstance(c, A.RuleSetCall):
        if len(c.rules) == 1:
            return c.rules[0]
        return '{' + ', '.join(c.rules) + '}'
    if isinstance(c, A.MacroCall):
        return c.name
    if isinstance(c, A.Skip):
        return 'skip'
    if isinstance(c, A.Fail):
        return 'fail'
    if isinstance(c, A.Bang):
        if len(c.body) == 1 and _atomic(c.body[0]):
            return command_str(c.body[0]) + '!'
        return f'({seq_str(c.body)})!'
    if isinstance(c, A.IfThenElse):
        return f'if {seq_str(c.cond)} then {_branch(c.then)} else {_branch(c.else_)}'
    if isinstance(c, A.IfThen):
        return f'if {seq_str(c.cond)} then {_branch(c.then)}'
    raise TypeError(f'not a command: {c!r}')


def _branch(seq: A.ComSeq) -> str:
    if len(seq) == 1 and _atomic(seq[0]):
        return command_str(seq[0])
    return f'({seq_str(seq)})'


def seq_str(seq: A.ComSeq) -> str:
    return '; '.join(command_str(c) for c in seq)


def program_str(prog: A.Program) -> str:
    parts = []
    for d in prog.decls:
        if isinstance(d, A.RuleDecl):
            parts.append(rule_str(d))
        elif isinstance(d, A.MacroDecl):
            parts.append(f'{d.name} = {seq_str(d.body)}')
        else:
            parts.append(f'main = {seq_str(d.body)}')
    return '\n\n'.join(parts) + '\n'
