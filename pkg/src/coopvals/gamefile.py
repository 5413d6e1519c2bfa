"""JSON game files: exact parsing and canonical serialisation.

A game file is a UTF-8 JSON object:

    {
      "players": 3,
      "labels": ["a", "b", "c"],
      "worths": {"1": 1, "3": 2, "1,2": "7/2", "1,2,3": "2.5"}
    }

Coalition keys list 1-based player indices, comma separated and strictly
increasing.  Worths may be integers, "p/q" strings with q > 0, or decimal
strings; JSON number literals with a fractional part are converted from
their decimal spelling, never through a binary float.  Missing coalitions
default to 0.  Machine pipelines may instead supply "worths_by_mask", a
dense list of 2^players rationals indexed by coalition bitmask; exactly
one of the two keys must be present.

Malformed structure raises ParseError.  Well-formed files violating game
constraints (player cap, nonzero empty worth) raise the matching
DomainError from the game layer.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Union

from .errors import ParseError, PlayerCountExceeded, TooFewPlayers
from .game import TUGame, build_game, members, player_cap

__all__ = ["parse_game_file", "serialise_game", "game_doc"]

_KEY_RE = re.compile(r"^[1-9]\d*(,[1-9]\d*)*$")

_TOP_LEVEL_KEYS = {"players", "labels", "worths", "worths_by_mask"}


def _no_duplicate_keys(pairs):
    doc = {}
    for key, value in pairs:
        if key in doc:
            raise ParseError(f"duplicate key {key!r}")
        doc[key] = value
    return doc


def _no_nonfinite(token):
    raise ParseError(f"non-finite number {token!r} is not a rational")


def _to_fraction(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: {value!r} is not a rational literal") from None
    raise ParseError(f"{where}: expected a rational, got {type(value).__name__}")


def _key_to_mask(key: str, n: int) -> int:
    if not isinstance(key, str) or not _KEY_RE.match(key):
        raise ParseError(f"bad coalition key {key!r}")
    mask = 0
    previous = 0
    for token in key.split(","):
        player = int(token)
        if player <= previous:
            raise ParseError(
                f"coalition key {key!r} is not strictly increasing"
            )
        if player > n:
            raise ParseError(
                f"coalition key {key!r} names player {player} of {n}"
            )
        previous = player
        mask |= 1 << (player - 1)
    return mask


def parse_game_file(data: Union[bytes, str]) -> TUGame:
    """Parse a UTF-8 JSON game file into a TUGame, exactly."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(
            data,
            parse_float=Fraction,
            parse_constant=_no_nonfinite,
            object_pairs_hook=_no_duplicate_keys,
        )
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None

    if not isinstance(doc, dict):
        raise ParseError("top level must be a JSON object")
    unknown = set(doc) - _TOP_LEVEL_KEYS
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(sorted(unknown))}")

    if "players" not in doc:
        raise ParseError("missing required key 'players'")
    n = doc["players"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError("'players' must be an integer")
    if n < 1:
        raise TooFewPlayers(f"need at least one player, got {n}")
    if n > player_cap():
        raise PlayerCountExceeded(f"{n} players exceeds the cap of {player_cap()}")

    labels = None
    if "labels" in doc:
        raw = doc["labels"]
        if not isinstance(raw, list) or len(raw) != n:
            raise ParseError(f"'labels' must be a list of {n} strings")
        if not all(isinstance(s, str) for s in raw):
            raise ParseError("'labels' entries must be strings")
        labels = raw

    has_sparse = "worths" in doc
    has_dense = "worths_by_mask" in doc
    if has_sparse == has_dense:
        raise ParseError("exactly one of 'worths' and 'worths_by_mask' is required")

    if has_sparse:
        table = doc["worths"]
        if not isinstance(table, dict):
            raise ParseError("'worths' must be an object")
        entries = []
        for key, value in table.items():
            mask = _key_to_mask(key, n)
            entries.append((mask, _to_fraction(value, f"worths[{key!r}]")))
        return build_game(n, entries, labels=labels)

    dense = doc["worths_by_mask"]
    if not isinstance(dense, list):
        raise ParseError("'worths_by_mask' must be a list")
    if len(dense) != (1 << n):
        raise ParseError(
            f"'worths_by_mask' must have {1 << n} entries, got {len(dense)}"
        )
    worths = tuple(
        _to_fraction(value, f"worths_by_mask[{index}]")
        for index, value in enumerate(dense)
    )
    return TUGame(n, worths, None if labels is None else tuple(labels))


def game_doc(v: TUGame) -> dict:
    """The canonical sparse JSON document for v (zero worths omitted)."""
    doc: dict = {"players": v.n}
    if v.labels is not None:
        doc["labels"] = list(v.labels)
    worths = {}
    for S in range(1, 1 << v.n):
        w = v.worths[S]
        if w != 0:
            key = ",".join(str(i + 1) for i in members(S))
            worths[key] = str(w)
    doc["worths"] = worths
    return doc


def serialise_game(v: TUGame) -> str:
    """Canonical JSON text for v; parse_game_file round-trips it exactly."""
    return json.dumps(game_doc(v), indent=2) + "\n"
