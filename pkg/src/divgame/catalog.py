"""Canonical example games used throughout tests, demos and docs."""

from .games import parse_untimed_game

# 10-vertex game whose SCC structure exercises every solver code path:
# a negative SCC with a -inf vertex, trivial SCCs, a positive SCC, and two
# vertices from which the target is unreachable.
FIG1_WG = """\
game untimed
vertex v1 min
vertex v2 max
vertex v3 min
vertex v4 max
vertex v5 min
vertex v6 min
vertex v7 max
vertex v8 min
vertex v9 max
vertex vt min
target vt
edge v1 a v1 -1
edge v1 b v3 1
edge v2 a v1 -2
edge v2 b v3 -1
edge v2 c v5 -10
edge v3 a v2 0
edge v3 b v4 0
edge v3 c v5 0
edge v4 a v4 -1
edge v4 b v2 0
edge v5 a v6 0
edge v5 b v7 0
edge v6 a v6 1
edge v6 b v8 1
edge v7 a v7 -1
edge v7 b v9 0
edge v8 a v9 -1
edge v8 b vt 0
edge v9 a v8 2
edge v9 b vt 0
edge vt a vt 0
"""

# Single clock, one state: wait into the guard window [1,2] at rate 1.
WAIT1_WTG = """\
game timed
clocks x
bound 2
state s0 min rate 1
state st min rate 0 target
trans s0 st guard "x >= 1 & x <= 2" reset {} weight 0
trans st st guard "x <= 2" reset {} weight 0
"""

# Positive one-clock loop: each turn costs 2*1 - 1 = 1.
LOOPP_WTG = """\
game timed
clocks x
bound 1
state s0 min rate 2
state st min rate 0 target
trans s0 s0 guard "x = 1" reset {x} weight -1
trans s0 st guard "x <= 1" reset {} weight 0
trans st st guard "x <= 1" reset {} weight 0
"""

# Zero-weight one-clock loop (2*1 - 2 = 0): not divergent.
LOOP0_WTG = """\
game timed
clocks x
bound 1
state s0 min rate 2
state st min rate 0 target
trans s0 s0 guard "x = 1" reset {x} weight -2
trans s0 st guard "x <= 1" reset {} weight 0
trans st st guard "x <= 1" reset {} weight 0
"""

# Negative one-clock loop held by Min: value -inf at s0.
LOOPN_WTG = """\
game timed
clocks x
bound 1
state s0 min rate 0
state st min rate 0 target
trans s0 s0 guard "x = 1" reset {x} weight -3
trans s0 st guard "x <= 1" reset {} weight 0
trans st st guard "x <= 1" reset {} weight 0
"""


def fig1():
    return parse_untimed_game(FIG1_WG)


def wait1():
    from .timed_games import parse_timed_game
    return parse_timed_game(WAIT1_WTG)


def loop_positive():
    from .timed_games import parse_timed_game
    return parse_timed_game(LOOPP_WTG)


def loop_zero():
    from .timed_games import parse_timed_game
    return parse_timed_game(LOOP0_WTG)


def loop_negative():
    from .timed_games import parse_timed_game
    return parse_timed_game(LOOPN_WTG)
