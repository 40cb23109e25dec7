"""Rule library, micro-programs and small hosts shared by the semantic tests."""
from gpsem.frontend import load_program
from gpsem.graph import Graph

RULES = '''
del(x: int) [1: x] => []
deledge(a, b, x: int) [1: a, 2: b | 1 -> 2: x] => [1: a, 2: b] interface = {1, 2}
inc(x: int) [1: x] => [1: x + 1] interface = {1} where x < 1
same(x: int) [1: x] => [1: x] interface = {1}
toggle(x: int) [1: x] => [1: 1 - x] interface = {1} where x >= 0 and x <= 1
mark(x: int) [1: x] => [1: x_1] interface = {1}
unmark(i, x: int) [1: x_i] => [1: x] interface = {1}
link(x, y: int) [1: x, 2: y] => [1: x, 2: y | 1 -> 2: 0] interface = {1, 2} where not edge(1, 2)
divzero(x: int) [1: x] => [1: x / 0] interface = {1}
halve(x: int) [1: x] => [1: x / 2] interface = {1} where x \\= x / 2
tagstr(s: string) [1: s] => [1: s_"t"] interface = {1}
spawn() [] => [1: 7]
'''

# Every inference rule (calls, sequencing, both conditional branches, both
# loop rules, the derived commands) is exercised, including divergence and
# stuck configurations.
MICRO = [
    'skip',
    'fail',
    'del',
    '{del, deledge}',
    '{}',
    'del; del',
    'del!',
    '{del, deledge}!',
    'inc!',
    'toggle!',
    'same!',
    'if del then mark else fail',
    'if fail then skip else mark',
    'if same! then skip else skip',
    'if mark then del',
    'mark; if mark then fail',
    '(mark; unmark)!',
    '(inc; inc)!',
    'mark!; unmark!',
    '{mark, inc}; {unmark, del}',
    'link!',
    'if link then link! else skip',
    '(if inc then inc else fail)!',
    'divzero; skip',
    'if divzero then skip else mark',
    '(same!)!',
    'del; fail',
    '{del, deledge}!; skip',
    'if (if del then fail else skip) then mark else unmark',
    'inc; toggle!',
    'halve!',
    'tagstr!',
    'if spawn; del! then fail else spawn',
    '(del; spawn)!',
    'if skip then (del; fail) else skip',
    'mark; (toggle!)!',
]

HOSTS = [
    Graph(),
    Graph.from_lists([0]),
    Graph.from_lists([1]),
    Graph.from_lists([0, 1], [(1, 2, 0)]),
    Graph.from_lists([0, 0], [(1, 2, 0), (2, 1, 0)]),
    Graph.from_lists([1, 0, 1], [(1, 2, 0), (2, 3, 1)]),
    Graph.from_lists([0, 'a']),
    Graph.from_lists([5, -3, 0, 1], [(1, 1, 0), (2, 3, 0)]),
    Graph.from_lists([(0, 1), 0]),
]


def program(main: str):
    return load_program(RULES + '\nmain = ' + main + '\n')
