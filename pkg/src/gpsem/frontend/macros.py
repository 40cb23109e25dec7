from __future__ import annotations

from typing import Dict, List

from ..errors import MacroError
from . import ast as A


def expand_macros(prog: A.Program) -> A.Program:
    """Replace every macro call by the macro's (expanded) body.

    Macro declarations are dropped from the result.  A call inside a
    sequence is spliced in place, which is equivalent because sequential
    composition is associative.
    """
    bodies = {m.name: m.body for m in prog.macros()}
    expanded: Dict[str, A.ComSeq] = {}

    def expand_macro(name: str, stack: List[str]) -> A.ComSeq:
        if name in expanded:
            return expanded[name]
        if name in stack:
            cycle = tuple(stack[stack.index(name):]) + (name,)
            raise MacroError('recursive macro: ' + ' -> '.join(cycle), cycle)
        if name not in bodies:
            raise MacroError(f'undefined macro {name!r}')
        result = expand_seq(bodies[name], stack + [name])
        expanded[name] = result
        return result

    def expand_seq(seq: A.ComSeq, stack: List[str]) -> A.ComSeq:
        out: List[A.Command] = []
        for c in seq:
            if isinstance(c, A.MacroCall):
                out.extend(expand_macro(c.name, stack))
            elif isinstance(c, A.IfThenElse):
                out.append(A.IfThenElse(expand_seq(c.cond, stack), expand_seq(c.then, stack),
                                        expand_seq(c.else_, stack), pos=c.pos))
            elif isinstance(c, A.IfThen):
                out.append(A.IfThen(expand_seq(c.cond, stack), expand_seq(c.then, stack), pos=c.pos))
            elif isinstance(c, A.Bang):
                out.append(A.Bang(expand_seq(c.body, stack), pos=c.pos))
            else:
                out.append(c)
        return tuple(out)

    # check every macro, including unused ones, so cycles are always reported
    for name in bodies:
        expand_macro(name, [])
    decls = []
    for d in prog.decls:
        if isinstance(d, A.MacroDecl):
            continue
        if isinstance(d, A.MainDecl):
            d = A.MainDecl(expand_seq(d.body, []), pos=d.pos)
        decls.append(d)
    return A.Program(tuple(decls))


def has_macro_calls(seq: A.ComSeq) -> bool:
    for c in seq:
        if isinstance(c, A.MacroCall):
            return True
        if isinstance(c, A.IfThenElse) and (has_macro_calls(c.cond) or has_macro_calls(c.then)
                                            or has_macro_calls(c.else_)):
            return True
        if isinstance(c, A.IfThen) and (has_macro_calls(c.cond) or has_macro_calls(c.then)):
            return True
        if isinstance(c, A.Bang) and has_macro_calls(c.body):
            return True
    return False
