from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

from ..graph import Graph
from . import ast as A
from .check import CheckedProgram, static_check
from .macros import expand_macros
from .parser import parse_program

# Not a valid GP identifier, so user programs cannot name or shadow it.
SKIP_RULE = '%skip'


@dataclass(frozen=True)
class PatternEdge:
    source: int
    target: int
    label: A.LabelExpr


@dataclass(frozen=True)
class CompiledSchema:
    """A rule schema ready for matching.

    Left and right nodes are keyed by their schema node id.  Edges are
    positional (there are no edges in the interface, so left and right
    edges never correspond).
    """
    name: str
    var_types: Mapping[str, str]
    left_nodes: Mapping[int, A.LabelExpr]
    left_edges: Tuple[PatternEdge, ...]
    right_nodes: Mapping[int, A.LabelExpr]
    right_edges: Tuple[PatternEdge, ...]
    interface: FrozenSet[int]
    condition: Optional[A.Cond] = None
    decl: Optional[A.RuleDecl] = field(default=None, compare=False, repr=False)

    def interface_graph(self) -> Graph:
        """K: the discrete, unlabelled interface graph."""
        return Graph((v, None) for v in sorted(self.interface))

    @property
    def deleted_nodes(self) -> Tuple[int, ...]:
        return tuple(v for v in self.left_nodes if v not in self.interface)

    @property
    def created_nodes(self) -> Tuple[int, ...]:
        return tuple(v for v in self.right_nodes if v not in self.interface)


def compile_schema(decl: A.RuleDecl) -> CompiledSchema:
    return CompiledSchema(
        name=decl.name,
        var_types={p.name: p.type for p in decl.params},
        left_nodes={n.id: n.label for n in decl.left.nodes},
        left_edges=tuple(PatternEdge(e.source, e.target, e.label) for e in decl.left.edges),
        right_nodes={n.id: n.label for n in decl.right.nodes},
        right_edges=tuple(PatternEdge(e.source, e.target, e.label) for e in decl.right.edges),
        interface=frozenset(decl.interface),
        condition=decl.condition,
        decl=decl,
    )


SKIP_SCHEMA = CompiledSchema(SKIP_RULE, {}, {}, (), {}, (), frozenset())


@dataclass(frozen=True)
class CompiledProgram:
    main: A.ComSeq
    rules: Mapping[str, CompiledSchema]
    checked: Optional[CheckedProgram] = field(default=None, compare=False, repr=False)


def compile_program(checked: CheckedProgram) -> CompiledProgram:
    rules: Dict[str, CompiledSchema] = {SKIP_RULE: SKIP_SCHEMA}
    for r in checked.program.rules():
        rules[r.name] = compile_schema(r)
    return CompiledProgram(checked.main, rules, checked)


def load_program(text: str) -> CompiledProgram:
    """Parse, expand macros, check and compile GP source text."""
    return compile_program(static_check(expand_macros(parse_program(text))))
