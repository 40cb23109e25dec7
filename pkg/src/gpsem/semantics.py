"""Small-step semantics of GP command sequences.

Configurations are ``Running(rest, graph)``, ``Done(graph)`` or ``FAILED``.
One step of a running configuration is computed from its first command,
then lifted through the rest of the sequence with the sequencing rules.
Branching and iteration consult a finite-failure oracle: a bounded
breadth-first exploration of the sub-computation, memoised on
``(rest program, canonical graph key)``.  Because transitions are invariant
under graph isomorphism, a repeated memo key on a path is a genuine infinite
computation, so divergence on finite state spaces is detected exactly.
"""
from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

from .frontend import ast as A
from .frontend.compile import SKIP_RULE, CompiledProgram
from .graph import Graph
from .rewrite import derive_all

log = logging.getLogger(__name__)


# -- configurations -------------------------------------------------------------

@dataclass(frozen=True)
class Running:
    rest: A.ComSeq
    graph: Graph


@dataclass(frozen=True)
class Done:
    graph: Graph


class _Failed:
    __slots__ = ()

    def __repr__(self):
        return 'FAILED'


FAILED = _Failed()
Configuration = Union[Running, Done, _Failed]


@dataclass(frozen=True)
class Budget:
    max_steps_per_path: int = 10_000
    max_configurations: int = 1_000_000
    max_results: int = 256

    def __post_init__(self):
        for name in ('max_steps_per_path', 'max_configurations', 'max_results'):
            if getattr(self, name) < 1:
                raise ValueError(f'{name} must be positive')


# -- traces ---------------------------------------------------------------------

@dataclass(frozen=True)
class TraceEvent:
    """One inference step.  ``children`` holds the sub-computation that
    justified an [If1] or [Alap1] premise."""
    rule: str
    nodes: int
    edges: int
    schema: Optional[str] = None
    match: Optional[str] = None
    seq: Optional[str] = None
    children: Tuple['TraceEvent', ...] = ()

    def lifted(self, seq_rule: str) -> TraceEvent:
        return TraceEvent(self.rule, self.nodes, self.edges, self.schema, self.match, seq_rule,
                          self.children)


def _event(rule: str, g: Graph, **kw) -> TraceEvent:
    return TraceEvent(rule, g.num_nodes(), g.num_edges(), **kw)


def trace_lines(events, prefix: str = '') -> List[str]:
    """Tab-separated lines: index, rule, schema, match, graph size.

    Nested sub-computations get dotted indices (``3.1``, ``3.2``...).
    """
    lines = []
    for i, ev in enumerate(events, 1):
        idx = f'{prefix}{i}'
        rule = f'[{ev.rule}]' + (f'/[{ev.seq}]' if ev.seq else '')
        lines.append('\t'.join((idx, rule, ev.schema or '-', ev.match or '-',
                                f'|V|={ev.nodes} |E|={ev.edges}')))
        lines.extend(trace_lines(ev.children, idx + '.'))
    return lines


def rule_applications(events) -> int:
    """Number of [Call1] steps, sub-computations included."""
    return sum((ev.rule == 'Call1') + rule_applications(ev.children) for ev in events)


# -- outcomes -------------------------------------------------------------------

@dataclass(frozen=True)
class StuckReport:
    command: A.Command
    reason: str
    # True when the exploration that produced the verdict completed, i.e. the
    # configuration is genuinely terminal rather than beyond the budget.
    exact: bool

    def __str__(self):
        from .frontend.printer import command_str
        kind = 'stuck' if self.exact else 'undecided'
        return f'{kind} at `{command_str(self.command)}`: {self.reason}'


class Stuck(Exception):
    def __init__(self, report: StuckReport):
        self.report = report
        super().__init__(str(report))


@dataclass(frozen=True)
class Succeeds:
    witness: Graph
    path: Tuple[TraceEvent, ...] = ()


@dataclass(frozen=True)
class FinitelyFails:
    pass


@dataclass(frozen=True)
class Unknown:
    reason: str  # 'budget-exhausted' | 'divergence-suspected'
    exact: bool = False


CondOutcome = Union[Succeeds, FinitelyFails, Unknown]


@dataclass
class Exploration:
    results: Dict[bytes, Graph] = field(default_factory=dict)
    failed: bool = False
    stuck: List[StuckReport] = field(default_factory=list)
    complete: bool = True
    diverges: bool = False
    # state id -> (parent state id, event); results keep their own origin
    parents: Dict[int, Tuple[Optional[int], Optional[TraceEvent]]] = field(default_factory=dict)
    result_origin: Dict[bytes, Tuple[int, TraceEvent]] = field(default_factory=dict)

    def _path_to_state(self, sid: Optional[int]) -> List[TraceEvent]:
        path = []
        while sid is not None:
            parent, ev = self.parents[sid]
            if ev is not None:
                path.append(ev)
            sid = parent
        path.reverse()
        return path

    def path_to_result(self, key: bytes) -> Tuple[TraceEvent, ...]:
        sid, ev = self.result_origin[key]
        return tuple(self._path_to_state(sid) + [ev])

    @property
    def finitely_fails(self) -> bool:
        return self.complete and not self.results and not self.stuck and not self.diverges


class Outcome(Enum):
    RESULT = 'result'
    FAIL = 'fail'
    STEP_LIMIT = 'step-limit'
    STUCK = 'stuck'


@dataclass
class SampledRun:
    outcome: Outcome
    graph: Optional[Graph]
    trace: List[TraceEvent]
    steps: int
    report: Optional[StuckReport] = None


@dataclass
class ResultSet:
    graphs: List[Graph]
    fail_observed: bool
    bottom_suspected: bool
    stuck_observed: bool
    divergence_observed: bool
    complete: bool
    configurations: int
    diagnostics: List[str] = field(default_factory=list)

    @property
    def keys(self) -> List[bytes]:
        return [g.key for g in self.graphs]


# -- derived commands -----------------------------------------------------------

def lower_derived(c: A.Command) -> A.Command:
    """Rewrite skip, fail and else-less if into core commands."""
    if isinstance(c, A.Skip):
        return A.RuleSetCall((SKIP_RULE,), pos=c.pos)
    if isinstance(c, A.Fail):
        return A.RuleSetCall((), pos=c.pos)
    if isinstance(c, A.IfThen):
        return A.IfThenElse(c.cond, c.then, (A.Skip(),), pos=c.pos)
    return c


_DERIVED_RULE = {A.Skip: 'Skip', A.Fail: 'Fail', A.IfThen: 'If3'}


def _has_cycle(edges: Dict[int, List[int]], count: int) -> bool:
    indegree = [0] * count
    for succs in edges.values():
        for t in succs:
            indegree[t] += 1
    queue = deque(i for i in range(count) if indegree[i] == 0)
    removed = 0
    while queue:
        s = queue.popleft()
        removed += 1
        for t in edges.get(s, ()):
            indegree[t] -= 1
            if indegree[t] == 0:
                queue.append(t)
    return removed < count


class Interpreter:
    """Executes command sequences of one compiled program.

    Memo tables and the configuration budget are shared by all
    sub-explorations of one top-level call (``run_all``, ``run_sampled``,
    ``step`` or ``evaluate_condition_program``) and reset between calls.
    """

    def __init__(self, program: CompiledProgram, budget: Optional[Budget] = None):
        self.program = program
        self.budget = budget or Budget()
        self._reset()

    def _reset(self):
        self._cache: Dict[tuple, Exploration] = {}
        self.configurations = 0
        self.exhausted = False
        self.diagnostics: List[str] = []

    # -- one step -------------------------------------------------------------

    def _head(self, c: A.Command, g: Graph) -> Tuple[List[Tuple[Configuration, TraceEvent]], bool]:
        """Successors of <c, g> for a single command; flag is True if some
        successors may be missing because a sub-exploration hit the budget."""
        if type(c) in _DERIVED_RULE:
            return [(Running((lower_derived(c),), g), _event(_DERIVED_RULE[type(c)], g))], False

        if isinstance(c, A.RuleSetCall):
            rules = [self.program.rules[name] for name in c.rules]
            derivations = derive_all(rules, g, self.diagnostics)
            if not derivations:
                return [(FAILED, _event('Call2', g, schema=','.join(c.rules) or '{}'))], False
            return [(Done(d.result), _event('Call1', d.result, schema=d.schema, match=d.match.summary()))
                    for d in derivations], False

        if isinstance(c, A.IfThenElse):
            outcome = self.evaluate_condition_program(c.cond, g, _fresh=False)
            if isinstance(outcome, Succeeds):
                return [(Running(c.then, g), _event('If1', g, children=outcome.path))], False
            if isinstance(outcome, FinitelyFails):
                return [(Running(c.else_, g), _event('If2', g))], False
            raise Stuck(StuckReport(c, f'condition neither succeeds nor finitely fails ({outcome.reason})',
                                    outcome.exact))

        if isinstance(c, A.Bang):
            ex = self._explore(c.body, g, first_only=False)
            if ex.results:
                succs = [(Running((c,), h), _event('Alap1', h, children=ex.path_to_result(k)))
                         for k, h in ex.results.items()]
                return succs, not ex.complete
            if ex.finitely_fails:
                return [(Done(g), _event('Alap2', g))], False
            reason = 'budget-exhausted' if not ex.complete else 'divergence-suspected'
            raise Stuck(StuckReport(c, f'loop body neither succeeds nor finitely fails ({reason})',
                                    ex.complete))

        raise TypeError(f'unexpected command {c!r}')

    def _successors(self, cfg: Running) -> Tuple[List[Tuple[Configuration, TraceEvent]], bool]:
        head, rest = cfg.rest[0], cfg.rest[1:]
        succs, partial = self._head(head, cfg.graph)
        if not rest:
            return succs, partial
        lifted = []
        for d, ev in succs:
            if isinstance(d, Running):
                lifted.append((Running(d.rest + rest, d.graph), ev.lifted('Seq1')))
            elif isinstance(d, Done):
                lifted.append((Running(rest, d.graph), ev.lifted('Seq2')))
            else:
                lifted.append((FAILED, ev.lifted('Seq3')))
        return lifted, partial

    def step(self, cfg: Running) -> Union[List[Configuration], StuckReport]:
        """All configurations reachable from ``cfg`` in one step, or the
        reason no inference rule applies."""
        self._reset()
        try:
            succs, _ = self._successors(cfg)
        except Stuck as exc:
            return exc.report
        return [d for d, _ in succs]

    # -- exploration ----------------------------------------------------------

    def _explore(self, seq: A.ComSeq, g: Graph, first_only: bool) -> Exploration:
        full_key = (seq, g.key, False)
        if full_key in self._cache:
            return self._cache[full_key]
        cache_key = (seq, g.key, first_only)
        if cache_key in self._cache:
            return self._cache[cache_key]

        budget = self.budget
        ex = Exploration()
        index: Dict[tuple, int] = {(seq, g.key): 0}
        ex.parents[0] = (None, None)
        edges: Dict[int, List[int]] = {}
        frontier = deque([(0, Running(seq, g), 0)])
        self.configurations += 1

        while frontier:
            if self.exhausted:
                ex.complete = False
                break
            sid, cfg, depth = frontier.popleft()
            if depth >= budget.max_steps_per_path:
                ex.complete = False
                continue
            try:
                succs, partial = self._successors(cfg)
            except Stuck as exc:
                if exc.report.exact:
                    ex.stuck.append(exc.report)
                else:
                    ex.complete = False
                continue
            if partial:
                ex.complete = False
            stop = False
            for d, ev in succs:
                self.configurations += 1
                if self.configurations > budget.max_configurations:
                    self.exhausted = True
                    ex.complete = False
                    stop = True
                    break
                if isinstance(d, Done):
                    k = d.graph.key
                    if k in ex.results:
                        continue
                    if len(ex.results) >= budget.max_results:
                        ex.complete = False
                        stop = True
                        break
                    ex.results[k] = d.graph
                    ex.result_origin[k] = (sid, ev)
                    if first_only:
                        ex.complete = False
                        stop = True
                        break
                elif isinstance(d, Running):
                    sk = (d.rest, d.graph.key)
                    tid = index.get(sk)
                    if tid is None:
                        tid = len(index)
                        index[sk] = tid
                        ex.parents[tid] = (sid, ev)
                        frontier.append((tid, d, depth + 1))
                    edges.setdefault(sid, []).append(tid)
                else:
                    ex.failed = True
            if stop:
                break

        ex.diverges = _has_cycle(edges, len(index))
        self._cache[cache_key] = ex
        return ex

    # -- public entry points --------------------------------------------------

    def evaluate_condition_program(self, seq: A.ComSeq, g: Graph, _fresh: bool = True) -> CondOutcome:
        """Three-valued finite-failure oracle for ``seq`` on ``g``."""
        if _fresh:
            self._reset()
        ex = self._explore(seq, g, first_only=True)
        if ex.results:
            k = next(iter(ex.results))
            return Succeeds(ex.results[k], ex.path_to_result(k))
        if ex.finitely_fails:
            return FinitelyFails()
        if not ex.complete:
            return Unknown('budget-exhausted', exact=False)
        return Unknown('divergence-suspected', exact=True)

    def run_all(self, seq: Optional[A.ComSeq] = None, g: Optional[Graph] = None) -> ResultSet:
        """Bounded-exhaustive approximation of the result set of ``seq`` on ``g``.

        When ``complete`` is set, ``graphs`` are exactly the proper results
        (one representative per isomorphism class) and the flags are exact.
        """
        self._reset()
        seq = self.program.main if seq is None else seq
        ex = self._explore(seq, g, first_only=False)
        graphs = sorted(ex.results.values(), key=lambda h: h.key)
        return ResultSet(
            graphs=graphs,
            fail_observed=ex.failed,
            bottom_suspected=(not ex.complete) or bool(ex.stuck) or ex.diverges,
            stuck_observed=bool(ex.stuck),
            divergence_observed=ex.diverges,
            complete=ex.complete,
            configurations=self.configurations,
            diagnostics=list(self.diagnostics),
        )

    def run_sampled(self, seq: Optional[A.ComSeq] = None, g: Optional[Graph] = None,
                    seed: int = 0) -> SampledRun:
        """Follow one computation, choosing successors uniformly with a seeded RNG."""
        self._reset()
        seq = self.program.main if seq is None else seq
        rng = random.Random(seed)
        cfg: Configuration = Running(seq, g)
        trace: List[TraceEvent] = []
        steps = 0
        while isinstance(cfg, Running):
            if steps >= self.budget.max_steps_per_path:
                return SampledRun(Outcome.STEP_LIMIT, cfg.graph, trace, steps)
            try:
                succs, _ = self._successors(cfg)
            except Stuck as exc:
                return SampledRun(Outcome.STUCK, cfg.graph, trace, steps, exc.report)
            cfg, ev = succs[rng.randrange(len(succs))]
            trace.append(ev)
            steps += 1
        if isinstance(cfg, Done):
            return SampledRun(Outcome.RESULT, cfg.graph, trace, steps)
        return SampledRun(Outcome.FAIL, None, trace, steps)


def run_all(program: CompiledProgram, g: Graph, budget: Optional[Budget] = None,
            seq: Optional[A.ComSeq] = None) -> ResultSet:
    return Interpreter(program, budget).run_all(seq, g)


def run_sampled(program: CompiledProgram, g: Graph, seed: int = 0, budget: Optional[Budget] = None,
                seq: Optional[A.ComSeq] = None) -> SampledRun:
    return Interpreter(program, budget).run_sampled(seq, g, seed)


def evaluate_condition_program(program: CompiledProgram, seq: A.ComSeq, g: Graph,
                               budget: Optional[Budget] = None) -> CondOutcome:
    return Interpreter(program, budget).evaluate_condition_program(seq, g)


def step(program: CompiledProgram, cfg: Running, budget: Optional[Budget] = None):
    return Interpreter(program, budget).step(cfg)
