"""Recursive-descent parser for GP programs.

Concrete grammar (``{x}`` repetition, ``[x]`` option)::

    Prog      ::= Decl {Decl}
    Decl      ::= 'main' '=' ComSeq
                | MacroId '=' ComSeq
                | RuleId ['(' [Params] ')'] Graph '=>' Graph
                  ['interface' '=' '{' [Num {',' Num}] '}'] ['where' BoolExp]
    Params    ::= Group {';' Group}
    Group     ::= VarId {',' VarId} ':' ('int' | 'string')
    Graph     ::= '[' [Node {',' Node}] ['|' [Edge {',' Edge}]] ']'
    Node      ::= Num ':' Label
    Edge      ::= Num '->' Num ':' Label
    Label     ::= Exp {'_' Exp}
    Exp       ::= Term {('+' | '-') Term}
    Term      ::= Factor {('*' | '/') Factor}
    Factor    ::= ['-'] Num | String | VarId | '(' Exp ')'
    BoolExp   ::= Conj {'or' Conj}
    Conj      ::= Neg {'and' Neg}
    Neg       ::= 'not' Neg | 'edge' '(' Num ',' Num ')' | '(' BoolExp ')'
                | Exp RelOp Exp
    ComSeq    ::= Com {';' Com}
    Com       ::= Simple {'!'}
    Simple    ::= 'if' ComSeq 'then' Com ['else' Com]
                | '(' ComSeq ')' | '{' [RuleId {',' RuleId}] '}'
                | RuleId | MacroId | 'skip' | 'fail'

Identifiers are letters followed by letters or digits; the underscore is
reserved as the label separator.  Comments run from ``//`` to end of line or
sit between ``/*`` and ``*/``.
"""
from __future__ import annotations

from typing import List, Optional, Tuple

from ..errors import ParseError
from . import ast as A
from .lexer import Token, tokenize

REL_OPS = ('=', '\\=', '>=', '<=', '>', '<')


class Parser:
    def __init__(self, text: str, line_comment: str = '//'):
        self.tokens = tokenize(text, line_comment)
        self.i = 0

    # -- token helpers ------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != 'EOF':
            self.i += 1
        return t

    def at(self, kind: str, value=None) -> bool:
        return self.tok.is_(kind, value)

    def accept(self, kind: str, value=None) -> Optional[Token]:
        if self.at(kind, value):
            return self.advance()
        return None

    def expect(self, kind: str, value=None, what: Optional[str] = None) -> Token:
        if self.at(kind, value):
            return self.advance()
        wanted = what or (repr(value) if value is not None else kind.lower())
        raise self.error(f'expected {wanted}, found {self.tok.describe()}')

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.col)

    # -- declarations -------------------------------------------------------

    def program(self) -> A.Program:
        decls = []
        seen = {}
        while not self.at('EOF'):
            start = self.tok
            d = self.decl()
            name = 'main' if isinstance(d, A.MainDecl) else d.name
            if name in seen:
                raise self.error(f'duplicate declaration of {name!r} '
                                 f'(first declared at {seen[name][0]}:{seen[name][1]})', start)
            seen[name] = start.pos
            decls.append(d)
        if 'main' not in seen:
            raise self.error('program has no main declaration')
        macros = {d.name for d in decls if isinstance(d, A.MacroDecl)}
        return A.Program(tuple(_resolve_decl(d, macros) for d in decls))

    def decl(self) -> A.Decl:
        if self.at('KW', 'main'):
            start = self.advance()
            self.expect('P', '=')
            return A.MainDecl(self.comseq(), pos=start.pos)
        name = self.expect('ID', what='declaration name')
        if self.accept('P', '='):
            return A.MacroDecl(name.value, self.comseq(), pos=name.pos)
        return self.rule_rest(name)

    def rule_rest(self, name: Token) -> A.RuleDecl:
        params: Tuple[A.Param, ...] = ()
        if self.accept('P', '('):
            params = self.params()
            self.expect('P', ')')
        left = self.graph()
        self.expect('P', '=>')
        right = self.graph()
        interface: Tuple[int, ...] = ()
        if self.accept('KW', 'interface'):
            self.expect('P', '=')
            self.expect('P', '{')
            ids = []
            if not self.at('P', '}'):
                ids.append(self.expect('NUM', what='node id').value)
                while self.accept('P', ','):
                    ids.append(self.expect('NUM', what='node id').value)
            self.expect('P', '}')
            interface = tuple(ids)
        condition = None
        if self.accept('KW', 'where'):
            condition = self.cond()
        return A.RuleDecl(name.value, params, left, right, interface, condition, pos=name.pos)

    def params(self) -> Tuple[A.Param, ...]:
        out: List[A.Param] = []
        if self.at('P', ')'):
            return ()
        while True:
            names = [self.expect('ID', what='parameter name')]
            while self.accept('P', ','):
                names.append(self.expect('ID', what='parameter name'))
            self.expect('P', ':')
            ty = self.tok
            if not (self.at('KW', 'int') or self.at('KW', 'string')):
                raise self.error(f"expected type 'int' or 'string', found {ty.describe()}")
            self.advance()
            out.extend(A.Param(n.value, ty.value, pos=n.pos) for n in names)
            if not self.accept('P', ';'):
                return tuple(out)

    def graph(self) -> A.SchemaGraph:
        self.expect('P', '[')
        nodes, edges = [], []
        if not self.at('P', '|') and not self.at('P', ']'):
            nodes.append(self.node())
            while self.accept('P', ','):
                nodes.append(self.node())
        if self.accept('P', '|'):
            if not self.at('P', ']'):
                edges.append(self.edge())
                while self.accept('P', ','):
                    edges.append(self.edge())
        self.expect('P', ']')
        return A.SchemaGraph(tuple(nodes), tuple(edges))

    def node(self) -> A.NodeDecl:
        v = self.expect('NUM', what='node id')
        self.expect('P', ':')
        return A.NodeDecl(v.value, self.label(), pos=v.pos)

    def edge(self) -> A.EdgeDecl:
        s = self.expect('NUM', what='edge source node id')
        self.expect('P', '->')
        t = self.expect('NUM', what='edge target node id')
        self.expect('P', ':')
        return A.EdgeDecl(s.value, t.value, self.label(), pos=s.pos)

    # -- labels and expressions ---------------------------------------------

    def label(self) -> A.LabelExpr:
        start = self.tok
        if self.at('P', ',') or self.at('P', ']') or self.at('P', '|') or self.at('EOF'):
            raise self.error('empty label')
        parts = [self.expr()]
        while self.accept('P', '_'):
            parts.append(self.expr())
        return A.LabelExpr(tuple(parts), pos=start.pos)

    def expr(self) -> A.Expr:
        left = self.term()
        while self.at('P', '+') or self.at('P', '-'):
            op = self.advance()
            left = A.BinOp(op.value, left, self.term(), pos=op.pos)
        return left

    def term(self) -> A.Expr:
        left = self.factor()
        while self.at('P', '*') or self.at('P', '/'):
            op = self.advance()
            left = A.BinOp(op.value, left, self.factor(), pos=op.pos)
        return left

    def factor(self) -> A.Expr:
        t = self.tok
        if self.accept('P', '-'):
            n = self.expect('NUM', what='numeral after unary minus')
            return A.Num(-n.value, pos=t.pos)
        if self.accept('NUM'):
            return A.Num(t.value, pos=t.pos)
        if self.accept('STR'):
            return A.Str(t.value, pos=t.pos)
        if self.accept('ID'):
            return A.Var(t.value, pos=t.pos)
        if self.accept('P', '('):
            e = self.expr()
            self.expect('P', ')')
            return e
        raise self.error(f'expected expression, found {t.describe()}')

    # -- conditions ---------------------------------------------------------

    def cond(self) -> A.Cond:
        left = self.conj()
        while self.at('KW', 'or'):
            op = self.advance()
            left = A.BoolOp('or', left, self.conj(), pos=op.pos)
        return left

    def conj(self) -> A.Cond:
        left = self.neg()
        while self.at('KW', 'and'):
            op = self.advance()
            left = A.BoolOp('and', left, self.neg(), pos=op.pos)
        return left

    def neg(self) -> A.Cond:
        t = self.tok
        if self.accept('KW', 'not'):
            return A.Not(self.neg(), pos=t.pos)
        if self.accept('KW', 'edge'):
            self.expect('P', '(')
            v = self.expect('NUM', what='node id')
            self.expect('P', ',')
            w = self.expect('NUM', what='node id')
            self.expect('P', ')')
            return A.EdgePred(v.value, w.value, pos=t.pos)
        if self.at('P', '('):
            # '(' opens either a boolean group or an arithmetic operand
            saved = self.i
            try:
                self.advance()
                c = self.cond()
                self.expect('P', ')')
                if not self._at_relop():
                    return c
            except ParseError:
                pass
            self.i = saved
        left = self.expr()
        if not self._at_relop():
            raise self.error(f'expected relational operator, found {self.tok.describe()}')
        op = self.advance()
        return A.Rel(op.value, left, self.expr(), pos=op.pos)

    def _at_relop(self) -> bool:
        return self.tok.kind == 'P' and self.tok.value in REL_OPS

    # -- commands -----------------------------------------------------------

    def comseq(self) -> A.ComSeq:
        out = list(self.command())
        while self.accept('P', ';'):
            out.extend(self.command())
        return tuple(out)

    def command(self) -> A.ComSeq:
        start = self.tok
        seq = self.simple()
        while self.at('P', '!'):
            self.advance()
            seq = (A.Bang(seq, pos=start.pos),)
        return seq

    def simple(self) -> A.ComSeq:
        t = self.tok
        if self.accept('KW', 'if'):
            cond = self.comseq()
            self.expect('KW', 'then')
            then = self.command()
            if self.accept('KW', 'else'):
                return (A.IfThenElse(cond, then, self.command(), pos=t.pos),)
            return (A.IfThen(cond, then, pos=t.pos),)
        if self.accept('P', '('):
            seq = self.comseq()
            self.expect('P', ')')
            return seq
        if self.accept('P', '{'):
            names = []
            if not self.at('P', '}'):
                names.append(self.expect('ID', what='rule name').value)
                while self.accept('P', ','):
                    names.append(self.expect('ID', what='rule name').value)
            self.expect('P', '}')
            return (A.RuleSetCall(tuple(names), pos=t.pos),)
        if self.accept('KW', 'skip'):
            return (A.Skip(pos=t.pos),)
        if self.accept('KW', 'fail'):
            return (A.Fail(pos=t.pos),)
        if self.accept('ID'):
            return (_Ident(t.value, pos=t.pos),)
        raise self.error(f'expected command, found {t.describe()}')


class _Ident(A.MacroCall):
    """Bare identifier in command position, resolved once all names are known."""


def _resolve_decl(d: A.Decl, macros) -> A.Decl:
    if isinstance(d, A.MainDecl):
        return A.MainDecl(_resolve(d.body, macros), pos=d.pos)
    if isinstance(d, A.MacroDecl):
        return A.MacroDecl(d.name, _resolve(d.body, macros), pos=d.pos)
    return d


def _resolve(seq: A.ComSeq, macros) -> A.ComSeq:
    return tuple(_resolve_com(c, macros) for c in seq)


def _resolve_com(c: A.Command, macros) -> A.Command:
    if isinstance(c, _Ident):
        if c.name in macros:
            return A.MacroCall(c.name, pos=c.pos)
        return A.RuleSetCall((c.name,), pos=c.pos)
    if isinstance(c, A.IfThenElse):
        return A.IfThenElse(_resolve(c.cond, macros), _resolve(c.then, macros),
                            _resolve(c.else_, macros), pos=c.pos)
    if isinstance(c, A.IfThen):
        return A.IfThen(_resolve(c.cond, macros), _resolve(c.then, macros), pos=c.pos)
    if isinstance(c, A.Bang):
        return A.Bang(_resolve(c.body, macros), pos=c.pos)
    return c


def parse_program(text: str) -> A.Program:
    """Parse GP source text.  Raises :class:`ParseError` with line/column."""
    return Parser(text).program()


def parse_label(text: str) -> A.LabelExpr:
    p = Parser(text)
    lab = p.label()
    p.expect('EOF', what='end of label')
    return lab


def parse_commands(text: str) -> A.ComSeq:
    """Parse a bare command sequence; identifiers become rule-set calls."""
    p = Parser(text)
    seq = p.comseq()
    p.expect('EOF', what='end of command sequence')
    return _resolve(seq, ())


def parse_condition(text: str) -> A.Cond:
    p = Parser(text)
    c = p.cond()
    p.expect('EOF', what='end of condition')
    return c
