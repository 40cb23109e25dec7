from .ast import Program
from .check import CheckedProgram, diagnose, static_check
from .compile import (SKIP_RULE, SKIP_SCHEMA, CompiledProgram, CompiledSchema, compile_program,
                      compile_schema, load_program)
from .macros import expand_macros
from .parser import parse_commands, parse_condition, parse_label, parse_program
from .printer import program_str, seq_str

__all__ = [
    'Program', 'CheckedProgram', 'diagnose', 'static_check', 'SKIP_RULE', 'SKIP_SCHEMA',
    'CompiledProgram', 'CompiledSchema', 'compile_program', 'compile_schema', 'load_program',
    'expand_macros', 'parse_commands', 'parse_condition', 'parse_label', 'parse_program',
    'program_str', 'seq_str',
]
