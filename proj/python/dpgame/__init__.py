"""Data-protection awareness game: rules, judging, solvers and analytics."""

import json as _json

from ._core import (
    Error,
    Game,
    IllegalMoveError,
    NotFoundError,
    ReplayError,
    StateError,
    replay_moves,
)
from . import _core

__all__ = [
    "Error",
    "Game",
    "IllegalMoveError",
    "NotFoundError",
    "ReplayError",
    "StateError",
    "catalog",
    "hypergame",
    "judge",
    "replay_log",
    "replay_moves",
    "report",
    "score",
    "simulate",
    "solve",
]


def catalog():
    return _json.loads(_core.catalog_json())


def judge(attacker, defender):
    """Verdict for an attacker/defender token pair, by label, alias or id."""
    return _json.loads(_core.judge_json(attacker, defender))


def score(game):
    return _json.loads(game.score_json())


def report(game):
    return _json.loads(game.report_json())


def solve(iterations=100000, tolerance=0.0):
    return _json.loads(_core.solve_json(iterations, tolerance))


def hypergame(attacker_view="true", defender_view="true", iterations=100000):
    return _json.loads(_core.hypergame_json(attacker_view, defender_view, iterations))


def simulate(games, attacker="random", defender="random", seed=0, threads=0):
    return _json.loads(_core.simulate_json(games, attacker, defender, seed, threads))


def replay_log(path):
    """Replays a session's JSONL event log and returns its state and report."""
    return _json.loads(_core.replay_log_json(str(path)))
