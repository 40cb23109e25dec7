"""Interpreter for GP, a nondeterministic language of conditional graph-rewriting rules."""
from .errors import GPError, HostGraphError, MacroError, ParseError, StaticError
from .frontend import load_program
from .graph import Graph, canonical_key, isomorphic
from .hostgraph import parse_host, serialize_host
from .semantics import Budget, Interpreter, Outcome, ResultSet, run_all, run_sampled

__all__ = [
    'GPError', 'HostGraphError', 'MacroError', 'ParseError', 'StaticError', 'load_program',
    'Graph', 'canonical_key', 'isomorphic', 'parse_host', 'serialize_host', 'Budget',
    'Interpreter', 'Outcome', 'ResultSet', 'run_all', 'run_sampled',
]
