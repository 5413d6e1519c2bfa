"""Exact TU-game representation and structural transforms.

A game on n players stores one exact rational worth per coalition, with
v(empty) = 0.  A coalition is an int bit pattern: player i (0-based) is a
member iff bit i of the pattern is set, so the full table has 2**n entries
indexed 0 .. 2**n - 1 and the grand coalition is 2**n - 1.

All arithmetic uses fractions.Fraction; there is no floating point here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Tuple, Union

from .errors import (
    CoopvalsError,
    DuplicateCoalition,
    EmptyBaseCoalition,
    InvalidPlayerIndex,
    NonPositiveScale,
    NonzeroEmptyCoalition,
    PlayerCountExceeded,
    TooFewPlayers,
)

__all__ = [
    "DEFAULT_PLAYER_CAP",
    "RationalLike",
    "Allocation",
    "TUGame",
    "ClassReport",
    "player_cap",
    "coalition",
    "members",
    "coalition_size",
    "coalition_total",
    "build_game",
    "worth",
    "dual",
    "individual_worths",
    "zero_normalise",
    "transform",
    "subtract_allocation",
    "base_game",
    "additive_game",
    "unanimity_game",
    "classify",
]

DEFAULT_PLAYER_CAP = 20

# Inputs accepted wherever a rational number is expected.
RationalLike = Union[Fraction, int, str]
Allocation = Tuple[Fraction, ...]


def player_cap() -> int:
    """Player cap: COOPVALS_MAX_PLAYERS if set, else 20."""
    raw = os.environ.get("COOPVALS_MAX_PLAYERS")
    if raw is None:
        return DEFAULT_PLAYER_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise CoopvalsError(
            f"COOPVALS_MAX_PLAYERS must be a positive integer, got {raw!r}"
        ) from None
    if cap < 1:
        raise CoopvalsError(
            f"COOPVALS_MAX_PLAYERS must be a positive integer, got {raw!r}"
        )
    return cap


def coalition(players: Iterable[int]) -> int:
    """Bit pattern of a set of 0-based player indices."""
    mask = 0
    for i in players:
        if i < 0:
            raise InvalidPlayerIndex(f"negative player index {i}")
        mask |= 1 << i
    return mask


def members(S: int) -> Tuple[int, ...]:
    """0-based player indices of a coalition, ascending."""
    out = []
    i = 0
    while S:
        if S & 1:
            out.append(i)
        S >>= 1
        i += 1
    return tuple(out)


def coalition_size(S: int) -> int:
    return S.bit_count()


def coalition_total(x: Sequence[Fraction], S: int) -> Fraction:
    """x(S) = sum of x_i over members i of S."""
    total = Fraction(0)
    i = 0
    while S:
        if S & 1:
            total += x[i]
        S >>= 1
        i += 1
    return total


def _check_coalition(S: int, n: int) -> None:
    if S < 0 or S >> n:
        raise InvalidPlayerIndex(
            f"coalition {bin(S)} mentions players outside 0..{n - 1}"
        )


@dataclass(frozen=True)
class TUGame:
    """A TU-game: player count n and a dense worth table over all coalitions.

    worths[S] is v(S) for the bit-pattern coalition S; worths[0] must be 0.
    Instances are immutable and safe to share across threads.
    """

    n: int
    worths: Tuple[Fraction, ...]
    labels: Tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise TooFewPlayers(f"a game needs at least one player, got n={self.n}")
        cap = player_cap()
        if self.n > cap:
            raise PlayerCountExceeded(f"n={self.n} exceeds the player cap {cap}")
        table = tuple(Fraction(w) for w in self.worths)
        if len(table) != 1 << self.n:
            raise CoopvalsError(
                f"worth table must have {1 << self.n} entries, got {len(table)}"
            )
        if table[0] != 0:
            raise NonzeroEmptyCoalition(f"v(empty) must be 0, got {table[0]}")
        object.__setattr__(self, "worths", table)
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n:
                raise CoopvalsError(
                    f"expected {self.n} player labels, got {len(labels)}"
                )
            object.__setattr__(self, "labels", labels)

    @property
    def grand(self) -> int:
        """Bit pattern of the grand coalition N."""
        return (1 << self.n) - 1

    @property
    def total(self) -> Fraction:
        """v(N)."""
        return self.worths[self.grand]

    def worth(self, S: int) -> Fraction:
        _check_coalition(S, self.n)
        return self.worths[S]


@dataclass(frozen=True)
class ClassReport:
    """Structural class membership flags of a single game.

    M_lower_class means v(N) >= sum of marginal contributions; M_upper_class
    is the reverse inequality.  All quantified predicates run over nonempty
    coalitions only; the empty coalition is vacuous under v(empty) = 0.
    """

    monotonic: bool
    superadditive: bool
    convex: bool
    essential: bool
    weakly_essential: bool
    semi_balanced: bool
    M_lower_class: bool
    M_upper_class: bool


def build_game(
    n: int,
    entries: Union[Mapping[int, RationalLike], Iterable[Tuple[int, RationalLike]]],
    labels: Sequence[str] | None = None,
) -> TUGame:
    """Build a game from sparse (coalition, worth) entries.

    Unspecified coalitions default to worth 0.  Coalitions are int bit
    patterns over 0-based players.
    """
    if isinstance(entries, Mapping):
        items: Iterable[Tuple[int, RationalLike]] = entries.items()
    else:
        items = entries
    table = [Fraction(0)] * (1 << n if 1 <= n <= player_cap() else 1)
    # Delegate the n range checks to TUGame, but validate entries here so the
    # duplicate / index errors name the offending coalition.
    seen = set()
    pending = []
    for S, w in items:
        w = Fraction(w)
        if S in seen:
            raise DuplicateCoalition(f"coalition {bin(S)} given twice")
        seen.add(S)
        if S == 0:
            if w != 0:
                raise NonzeroEmptyCoalition(f"v(empty) must be 0, got {w}")
            continue
        pending.append((S, w))
    probe = TUGame(n, tuple(table))  # validates n and the zero game
    for S, w in pending:
        _check_coalition(S, n)
        table[S] = w
    if not pending and labels is None:
        return probe
    return TUGame(n, tuple(table), None if labels is None else tuple(labels))


def worth(v: TUGame, S: int) -> Fraction:
    """v(S)."""
    return v.worth(S)


def dual(v: TUGame) -> TUGame:
    """The dual game v*(S) = v(N) - v(N minus S)."""
    full = v.grand
    vN = v.total
    table = tuple(vN - v.worths[full ^ S] for S in range(1 << v.n))
    return TUGame(v.n, table, v.labels)


def individual_worths(v: TUGame) -> Allocation:
    """The vector of singleton worths (v_1, ..., v_n)."""
    return tuple(v.worths[1 << i] for i in range(v.n))


def zero_normalise(v: TUGame) -> TUGame:
    """Subtract each member's singleton worth from every coalition."""
    return subtract_allocation(v, individual_worths(v))


def transform(v: TUGame, scale: RationalLike, shift: Sequence[RationalLike]) -> TUGame:
    """The covariance transform: (scale * v + shift)(S) = scale*v(S) + shift(S)."""
    scale = Fraction(scale)
    if scale <= 0:
        raise NonPositiveScale(f"scale must be positive, got {scale}")
    x = tuple(Fraction(s) for s in shift)
    if len(x) != v.n:
        raise CoopvalsError(f"shift must have {v.n} components, got {len(x)}")
    table = tuple(
        scale * v.worths[S] + coalition_total(x, S) for S in range(1 << v.n)
    )
    return TUGame(v.n, table, v.labels)


def subtract_allocation(v: TUGame, x: Sequence[RationalLike]) -> TUGame:
    """The shifted game (v - x)(S) = v(S) - x(S)."""
    neg = tuple(-Fraction(c) for c in x)
    return transform(v, 1, neg)


def base_game(n: int, S: int) -> TUGame:
    """The standard base game b_S: worth 1 on S, 0 elsewhere."""
    if S == 0:
        raise EmptyBaseCoalition("base games need a nonempty coalition")
    _check_coalition(S, n)
    table = [Fraction(0)] * (1 << n)
    table[S] = Fraction(1)
    return TUGame(n, tuple(table))


def additive_game(x: Sequence[RationalLike]) -> TUGame:
    """The additive game v(S) = x(S) for a payoff vector x."""
    payoffs = tuple(Fraction(c) for c in x)
    n = len(payoffs)
    table = tuple(coalition_total(payoffs, S) for S in range(1 << n))
    return TUGame(n, table)


def unanimity_game(n: int, T: int) -> TUGame:
    """The unanimity game u_T: worth 1 iff the coalition contains T."""
    if T == 0:
        raise EmptyBaseCoalition("unanimity games need a nonempty carrier")
    _check_coalition(T, n)
    table = tuple(
        Fraction(1) if S & T == T else Fraction(0) for S in range(1 << n)
    )
    return TUGame(n, table)


def _marginals(v: TUGame) -> Allocation:
    full = v.grand
    vN = v.total
    return tuple(vN - v.worths[full ^ (1 << i)] for i in range(v.n))


def classify(v: TUGame) -> ClassReport:
    """Evaluate all structural class predicates by direct enumeration.

    Monotonicity checks one-player deletions, which chain to all nonempty
    subset pairs.  Superadditivity enumerates disjoint pairs via submask
    iteration.  Convexity uses the pairwise marginal characterisation:
    v(S+i+j) - v(S+j) >= v(S+i) - v(S) for all i != j and S avoiding both,
    which is O(n^2 * 2^n).
    """
    n, W = v.n, v.worths
    size = 1 << n

    monotonic = True
    for T in range(1, size):
        for i in members(T):
            rest = T ^ (1 << i)
            if rest and W[rest] > W[T]:
                monotonic = False
                break
        if not monotonic:
            break

    superadditive = True
    for U in range(3, size):
        S = (U - 1) & U
        while S and superadditive:
            T = U ^ S
            if T and S < T and W[S] + W[T] > W[U]:
                superadditive = False
            S = (S - 1) & U
        if not superadditive:
            break

    convex = True
    for i in range(n):
        if not convex:
            break
        for j in range(i + 1, n):
            bi, bj = 1 << i, 1 << j
            rest = v.grand ^ bi ^ bj
            S = rest
            while True:
                if W[S | bi | bj] - W[S | bj] < W[S | bi] - W[S]:
                    convex = False
                    break
                if S == 0:
                    break
                S = (S - 1) & rest
            if not convex:
                break

    M = _marginals(v)
    vN = v.total
    sum_nu = sum(individual_worths(v))
    sum_M = sum(M)
    weakly_essential = sum_nu <= vN
    essential = weakly_essential and vN <= sum_M
    semi_balanced = all(
        W[S] <= coalition_total(M, S) for S in range(1, size)
    )
    return ClassReport(
        monotonic=monotonic,
        superadditive=superadditive,
        convex=convex,
        essential=essential,
        weakly_essential=weakly_essential,
        semi_balanced=semi_balanced,
        M_lower_class=vN >= sum_M,
        M_upper_class=vN <= sum_M,
    )
