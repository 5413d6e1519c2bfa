"""Independent brute-force oracles, written against frozenset coalitions.

These deliberately share no code or representation with the package: a game
here is a plain dict mapping frozensets of 1-based player numbers to
Fractions.  They exist so the tests can cross-check the bitmask
implementation against a second, slower derivation of the same quantities.
"""

from fractions import Fraction
from itertools import chain, combinations


def subsets(players):
    """All subsets of an iterable of players, as frozensets (empty included)."""
    pool = list(players)
    return [
        frozenset(c)
        for c in chain.from_iterable(
            combinations(pool, r) for r in range(len(pool) + 1)
        )
    ]


def game_from_tugame(v):
    """Convert a package game into the oracle's dict-of-frozensets form."""
    table = {}
    for mask in range(1 << v.n):
        coalition = frozenset(i + 1 for i in range(v.n) if mask & (1 << i))
        table[coalition] = Fraction(v.worths[mask])
    return table


def players_of(table):
    return sorted(frozenset().union(*table.keys()))


def marginal_vector(table):
    everyone = frozenset(players_of(table))
    total = table[everyone]
    return {i: total - table[everyone - {i}] for i in everyone}


def minimal_rights_vector(table):
    """m_i = max over coalitions containing i of the remainder after paying
    every other member their marginal contribution."""
    everyone = players_of(table)
    marginal = marginal_vector(table)
    rights = {}
    for i in everyone:
        best = None
        for coalition in subsets(everyone):
            if i not in coalition:
                continue
            remainder = table[coalition] - sum(
                marginal[j] for j in coalition if j != i
            )
            if best is None or remainder > best:
                best = remainder
        rights[i] = best
    return rights


def tau_vector(table):
    """Balance minimal rights against marginal contributions, efficiently."""
    everyone = players_of(table)
    m = minimal_rights_vector(table)
    M = marginal_vector(table)
    total = table[frozenset(everyone)]
    low = sum(m.values())
    high = sum(M.values())
    if low == high:
        assert total == low
        return dict(m)
    weight = Fraction(total - low, high - low)
    return {i: m[i] + weight * (M[i] - m[i]) for i in everyone}


def is_convex(table):
    """v(S union T) + v(S intersect T) >= v(S) + v(T) for all S, T."""
    everything = subsets(players_of(table))
    for s in everything:
        for t in everything:
            if table[s | t] + table[s & t] < table[s] + table[t]:
                return False
    return True


def dual_table(table):
    everyone = frozenset(players_of(table))
    total = table[everyone]
    return {s: total - table[everyone - s] for s in subsets(everyone)}
