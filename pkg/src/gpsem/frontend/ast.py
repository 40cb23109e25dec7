"""Abstract syntax of GP programs.

All nodes are frozen dataclasses.  Source positions are carried in ``pos``
fields that take no part in equality, so two parses of equivalent text
compare equal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

Pos = Optional[Tuple[int, int]]

INT = 'int'
STRING = 'string'
TYPES = (INT, STRING)

ARITH_OPS = ('+', '-', '*', '/')
REL_OPS = ('=', '\\=', '>', '<', '>=', '<=')
ORDER_OPS = ('>', '<', '>=', '<=')


def _pos():
    return field(default=None, compare=False, repr=False)


# -- expressions --------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Str:
    value: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: 'Expr'
    right: 'Expr'
    pos: Pos = _pos()


Expr = Union[Num, Str, Var, BinOp]
SimpleExpr = (Num, Str, Var)


@dataclass(frozen=True)
class LabelExpr:
    components: Tuple[Expr, ...]
    pos: Pos = _pos()

    def is_simple(self) -> bool:
        return all(isinstance(c, SimpleExpr) for c in self.components)


# -- conditions ---------------------------------------------------------------

@dataclass(frozen=True)
class EdgePred:
    source: int
    target: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Rel:
    op: str
    left: Expr
    right: Expr
    pos: Pos = _pos()


@dataclass(frozen=True)
class Not:
    operand: 'Cond'
    pos: Pos = _pos()


@dataclass(frozen=True)
class BoolOp:
    op: str  # 'and' | 'or'
    left: 'Cond'
    right: 'Cond'
    pos: Pos = _pos()


Cond = Union[EdgePred, Rel, Not, BoolOp]


# -- rule schemata ------------------------------------------------------------

@dataclass(frozen=True)
class NodeDecl:
    id: int
    label: LabelExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class EdgeDecl:
    source: int
    target: int
    label: LabelExpr
    pos: Pos = _pos()


@dataclass(frozen=True)
class SchemaGraph:
    nodes: Tuple[NodeDecl, ...] = ()
    edges: Tuple[EdgeDecl, ...] = ()

    def node_ids(self) -> Tuple[int, ...]:
        return tuple(n.id for n in self.nodes)


@dataclass(frozen=True)
class Param:
    name: str
    type: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class RuleDecl:
    name: str
    params: Tuple[Param, ...]
    left: SchemaGraph
    right: SchemaGraph
    interface: Tuple[int, ...] = ()
    condition: Optional[Cond] = None
    pos: Pos = _pos()


# -- commands -----------------------------------------------------------------

@dataclass(frozen=True)
class RuleSetCall:
    rules: Tuple[str, ...]
    pos: Pos = _pos()


@dataclass(frozen=True)
class MacroCall:
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class IfThenElse:
    cond: 'ComSeq'
    then: 'ComSeq'
    else_: 'ComSeq'
    pos: Pos = _pos()


@dataclass(frozen=True)
class IfThen:
    cond: 'ComSeq'
    then: 'ComSeq'
    pos: Pos = _pos()


@dataclass(frozen=True)
class Bang:
    body: 'ComSeq'
    pos: Pos = _pos()


@dataclass(frozen=True)
class Skip:
    pos: Pos = _pos()


@dataclass(frozen=True)
class Fail:
    pos: Pos = _pos()


Command = Union[RuleSetCall, MacroCall, IfThenElse, IfThen, Bang, Skip, Fail]
ComSeq = Tuple[Command, ...]


@dataclass(frozen=True)
class MacroDecl:
    name: str
    body: ComSeq
    pos: Pos = _pos()


@dataclass(frozen=True)
class MainDecl:
    body: ComSeq
    pos: Pos = _pos()


Decl = Union[RuleDecl, MacroDecl, MainDecl]


@dataclass(frozen=True)
class Program:
    decls: Tuple[Decl, ...]

    @property
    def main(self) -> MainDecl:
        for d in self.decls:
            if isinstance(d, MainDecl):
                return d
        raise LookupError('program has no main declaration')

    def rules(self) -> Tuple[RuleDecl, ...]:
        return tuple(d for d in self.decls if isinstance(d, RuleDecl))

    def macros(self) -> Tuple[MacroDecl, ...]:
        return tuple(d for d in self.decls if isinstance(d, MacroDecl))

    def rule(self, name: str) -> RuleDecl:
        for d in self.rules():
            if d.name == name:
                return d
        raise KeyError(name)
