"""Finite weighted two-player games: data model, text format, play semantics.

A game is a finite directed graph with integer edge weights.  Vertices are
owned by one of two players, Min or Max; a subset of Min's vertices is
marked as targets.  Min tries to reach a target while keeping the
accumulated edge weight low, Max opposes.  Games are deadlock-free (every
vertex has an outgoing edge) and deterministic (one edge per vertex/action
pair).  Targets conventionally carry a zero-weight self-loop so that
deadlock-freedom holds globally; play values truncate at the first target
visit, so the loop never contributes.
"""

from __future__ import annotations

import shlex
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering

from .errors import ParseError, ValidationError


class Owner(Enum):
    MIN = "min"
    MAX = "max"

    def opponent(self) -> "Owner":
        return Owner.MAX if self is Owner.MIN else Owner.MIN


@total_ordering
class ExtValue:
    """An integer extended with -inf and +inf, with saturating addition.

    The only rejected operation is (+inf) + (-inf), which raises
    ArithmeticError; solver code never produces it.
    """

    __slots__ = ("tag", "magnitude")

    # tag: -1 = -inf, 0 = finite, +1 = +inf
    def __init__(self, tag: int, magnitude=0):
        self.tag = tag
        self.magnitude = magnitude if tag == 0 else 0

    @staticmethod
    def finite(k) -> "ExtValue":
        return ExtValue(0, k)

    @property
    def is_finite(self) -> bool:
        return self.tag == 0

    def __add__(self, other):
        if isinstance(other, int):
            other = ExtValue.finite(other)
        if not isinstance(other, ExtValue):
            return NotImplemented
        if self.tag == 0 and other.tag == 0:
            return ExtValue.finite(self.magnitude + other.magnitude)
        if self.tag == 0:
            return other
        if other.tag == 0:
            return self
        if self.tag != other.tag:
            raise ArithmeticError("+inf and -inf may not be added")
        return self

    __radd__ = __add__

    def __neg__(self):
        if self.tag == 0:
            return ExtValue.finite(-self.magnitude)
        return ExtValue(-self.tag)

    def __eq__(self, other):
        if isinstance(other, int):
            other = ExtValue.finite(other)
        if not isinstance(other, ExtValue):
            return NotImplemented
        return self.tag == other.tag and self.magnitude == other.magnitude

    def __lt__(self, other):
        if isinstance(other, int):
            other = ExtValue.finite(other)
        if not isinstance(other, ExtValue):
            return NotImplemented
        if self.tag != other.tag:
            return self.tag < other.tag
        return self.tag == 0 and self.magnitude < other.magnitude

    def __hash__(self):
        return hash((self.tag, self.magnitude))

    def __repr__(self):
        if self.tag < 0:
            return "-inf"
        if self.tag > 0:
            return "+inf"
        return repr(self.magnitude)

    def to_json(self):
        """JSON form: plain number when finite, "-inf"/"+inf" strings otherwise."""
        if self.tag < 0:
            return "-inf"
        if self.tag > 0:
            return "+inf"
        mag = self.magnitude
        return mag if isinstance(mag, int) else str(mag)

    @staticmethod
    def from_json(value) -> "ExtValue":
        if value == "-inf":
            return NEG_INF
        if value == "+inf":
            return POS_INF
        return ExtValue.finite(int(value))


NEG_INF = ExtValue(-1)
POS_INF = ExtValue(1)


@dataclass(frozen=True, order=True)
class Edge:
    src: str
    action: str
    dst: str
    weight: int


@dataclass(frozen=True)
class WeightedGame:
    """Validated finite weighted game.

    Use :meth:`build` (or the parser) rather than the raw constructor; it
    checks determinism, deadlock-freedom and target ownership, and
    precomputes the adjacency index.
    """

    owner: dict
    targets: frozenset
    edges: tuple
    alphabet: frozenset
    out: dict = field(compare=False, repr=False, default=None)

    @staticmethod
    def build(owner, targets, edges) -> "WeightedGame":
        owner = dict(owner)
        targets = frozenset(targets)
        edges = tuple(sorted(edges))
        for v in targets:
            if v not in owner:
                raise ValidationError(f"target {v} is not a declared vertex")
            if owner[v] is not Owner.MIN:
                raise ValidationError(f"target {v} must be owned by Min")
        seen = {}
        out = {v: [] for v in owner}
        for e in edges:
            if e.src not in owner:
                raise ValidationError(f"edge references unknown vertex {e.src}")
            if e.dst not in owner:
                raise ValidationError(f"edge references unknown vertex {e.dst}")
            if (e.src, e.action) in seen:
                raise ValidationError(
                    f"determinism violation: two edges from {e.src} with action {e.action}")
            seen[(e.src, e.action)] = e
            out[e.src].append(e)
        for v, es in out.items():
            if not es:
                raise ValidationError(f"deadlock: vertex {v} has no outgoing edge")
        alphabet = frozenset(e.action for e in edges)
        game = WeightedGame(owner, targets, edges, alphabet)
        object.__setattr__(game, "out", out)
        return game

    @property
    def vertices(self):
        return sorted(self.owner)

    def out_edges(self, v):
        return self.out[v]

    def edge(self, src, action) -> Edge:
        for e in self.out[src]:
            if e.action == action:
                return e
        raise KeyError((src, action))

    def max_abs_weight(self) -> int:
        return max((abs(e.weight) for e in self.edges), default=0)

    def is_target(self, v) -> bool:
        return v in self.targets

    def __eq__(self, other):
        if not isinstance(other, WeightedGame):
            return NotImplemented
        return (self.owner == other.owner and self.targets == other.targets
                and self.edges == other.edges)

    def __hash__(self):
        return hash((frozenset(self.owner.items()), self.targets, self.edges))


@dataclass(frozen=True)
class Play:
    """A finite play: a start vertex followed by chained edges."""

    start: str
    steps: tuple

    @staticmethod
    def build(start, steps) -> "Play":
        steps = tuple(steps)
        at = start
        for e in steps:
            if e.src != at:
                raise ValidationError(
                    f"play does not chain: expected step from {at}, got {e.src}->{e.dst}")
            at = e.dst
        return Play(start, steps)

    @property
    def end(self) -> str:
        return self.steps[-1].dst if self.steps else self.start

    def __len__(self):
        return len(self.steps)

    def vertices(self):
        yield self.start
        for e in self.steps:
            yield e.dst


def play_weight(game: WeightedGame, play: Play) -> int:
    """Accumulated weight of a play (validated against the game)."""
    _check_play(game, play)
    return sum(e.weight for e in play.steps)


def play_value(game: WeightedGame, play: Play) -> ExtValue:
    """Weight of the prefix up to the first target visit.

    A play that never visits a target evaluates to +inf; a finite play
    here stands for any infinite continuation that avoids targets.
    """
    _check_play(game, play)
    if game.is_target(play.start):
        return ExtValue.finite(0)
    acc = 0
    for e in play.steps:
        acc += e.weight
        if game.is_target(e.dst):
            return ExtValue.finite(acc)
    return POS_INF


def _check_play(game, play):
    if play.start not in game.owner:
        raise ValidationError(f"play starts at unknown vertex {play.start}")
    at = play.start
    for e in play.steps:
        if e.src != at:
            raise ValidationError("play does not chain")
        if game.edge(e.src, e.action) != e:
            raise ValidationError(f"play uses edge not in game: {e}")
        at = e.dst


# ---------------------------------------------------------------------------
# .wg text format
#
#   game untimed
#   vertex <id> (min|max)
#   target <id>
#   edge <src> [<action>] <dst> <int>      # action auto-named a0,a1,... if omitted
#
# '#' starts a comment; tokens are whitespace-separated.
# ---------------------------------------------------------------------------

def parse_untimed_game(text: str) -> WeightedGame:
    lines = _tokenize(text)
    if not lines:
        raise ParseError("empty input")
    lineno, tokens = lines[0]
    if tokens != ["game", "untimed"]:
        raise ParseError("expected header 'game untimed'", lineno, 1)

    owner = {}
    targets = set()
    raw_edges = []
    for lineno, tokens in lines[1:]:
        kind = tokens[0]
        if kind == "vertex":
            if len(tokens) != 3 or tokens[2] not in ("min", "max"):
                raise ParseError("expected 'vertex <id> (min|max)'", lineno, 1)
            if tokens[1] in owner:
                raise ParseError(f"duplicate vertex {tokens[1]}", lineno, 1)
            owner[tokens[1]] = Owner(tokens[2])
        elif kind == "target":
            if len(tokens) != 2:
                raise ParseError("expected 'target <id>'", lineno, 1)
            targets.add(tokens[1])
        elif kind == "edge":
            if len(tokens) == 5:
                src, action, dst, w = tokens[1:]
            elif len(tokens) == 4:
                src, dst, w = tokens[1:]
                action = None
            else:
                raise ParseError("expected 'edge <src> [<action>] <dst> <int>'", lineno, 1)
            try:
                weight = int(w)
            except ValueError:
                raise ParseError(f"bad edge weight {w!r}", lineno, len(tokens)) from None
            raw_edges.append((lineno, src, action, dst, weight))
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno, 1)

    # Auto-name anonymous edges per source, avoiding declared labels.
    used = {}
    for _, src, action, _, _ in raw_edges:
        if action is not None:
            used.setdefault(src, set()).add(action)
    counters = {}
    edges = []
    for lineno, src, action, dst, weight in raw_edges:
        if action is None:
            i = counters.get(src, 0)
            while f"a{i}" in used.get(src, ()):
                i += 1
            action = f"a{i}"
            counters[src] = i + 1
            used.setdefault(src, set()).add(action)
        edges.append(Edge(src, action, dst, weight))

    try:
        return WeightedGame.build(owner, targets, edges)
    except ValidationError:
        raise


def serialize_untimed_game(game: WeightedGame) -> str:
    out = ["game untimed"]
    for v in game.vertices:
        out.append(f"vertex {v} {game.owner[v].value}")
    for v in sorted(game.targets):
        out.append(f"target {v}")
    for e in game.edges:
        out.append(f"edge {e.src} {e.action} {e.dst} {e.weight}")
    return "\n".join(out) + "\n"


def _tokenize(text):
    """Split into (lineno, tokens) pairs, honouring '#' comments and quotes."""
    lines = []
    for i, raw in enumerate(text.splitlines(), start=1):
        try:
            tokens = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise ParseError(str(exc), i, 1) from None
        if tokens:
            lines.append((i, tokens))
    return lines
