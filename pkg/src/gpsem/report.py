"""Human- and machine-readable summaries of result sets.

Machine-readable form (JSON object)::

    {
      "verdict": "results" | "finitely fails" | "results and bottom"
                 | "bottom" | "unknown (budget)",
      "complete": bool,            # whole computation tree explored
      "count": int,                # number of result graphs
      "results": [{"key": sha256-hex of canonical key, "graph": host text}],
      "fail_observed": bool, "stuck_observed": bool,
      "divergence_observed": bool, "bottom_suspected": bool,
      "budget": {"max_steps_per_path": int, "max_configurations": int,
                 "max_results": int},
      "usage": {"configurations": int},
      "diagnostics": [str]
    }

Results are ordered by canonical key.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass
from typing import Optional

from .hostgraph import serialize_host
from .semantics import Budget, ResultSet


def key_digest(key: bytes) -> str:
    return hashlib.sha256(key).hexdigest()


def verdict(rs: ResultSet) -> str:
    if not rs.complete:
        return 'unknown (budget)'
    bottom = rs.stuck_observed or rs.divergence_observed
    if rs.graphs:
        return 'results and bottom' if bottom else 'results'
    if bottom:
        return 'bottom'
    return 'finitely fails'


@dataclass
class Report:
    data: dict
    text: str

    def json(self) -> str:
        return json.dumps(self.data, indent=2, sort_keys=True)


def semantics_report(rs: ResultSet, budget: Optional[Budget] = None) -> Report:
    budget = budget or Budget()
    results = [{'key': key_digest(g.key), 'graph': serialize_host(g)} for g in rs.graphs]
    data = {
        'verdict': verdict(rs),
        'complete': rs.complete,
        'count': len(results),
        'results': results,
        'fail_observed': rs.fail_observed,
        'stuck_observed': rs.stuck_observed,
        'divergence_observed': rs.divergence_observed,
        'bottom_suspected': rs.bottom_suspected,
        'budget': asdict(budget),
        'usage': {'configurations': rs.configurations},
        'diagnostics': list(rs.diagnostics),
    }
    lines = []
    for i, r in enumerate(results, 1):
        lines.append(f'# result {i} key={r["key"]}')
        lines.append(r['graph'].rstrip('\n'))
    flags = ' '.join(f'{name}={"yes" if data[name] else "no"}'
                     for name in ('fail_observed', 'stuck_observed', 'divergence_observed', 'bottom_suspected'))
    lines.append(f'# {len(results)} result(s); {flags}')
    lines.append(f'# configurations explored: {rs.configurations}')
    lines.append(f'# verdict: {data["verdict"]}')
    return Report(data, '\n'.join(lines) + '\n')
