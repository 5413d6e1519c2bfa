"""Shared fixtures: the worked three-player family and common small games."""

from fractions import Fraction

import pytest
from hypothesis import strategies as st

from coopvals import TUGame, build_game


def g_a(A):
    """The worked family: v1=v2=1, v3=2, v(12)=A, v(13)=v(23)=6, v(N)=8."""
    return build_game(
        3,
        {
            0b001: 1,
            0b010: 1,
            0b100: 2,
            0b011: Fraction(A),
            0b101: 6,
            0b110: 6,
            0b111: 8,
        },
    )


@pytest.fixture
def g2():
    return g_a(2)


@pytest.fixture
def g4():
    return g_a(4)


@pytest.fixture
def g6():
    return g_a(6)


@pytest.fixture
def g8():
    return g_a(8)


@pytest.fixture
def zero3():
    return TUGame(3, (Fraction(0),) * 8)


@pytest.fixture
def add123():
    # additive game with x = (1, 2, 3)
    return build_game(
        3, {0b001: 1, 0b010: 2, 0b100: 3, 0b011: 3, 0b101: 4, 0b110: 5, 0b111: 6}
    )


@pytest.fixture
def u12():
    # unanimity game on {1, 2} inside a three-player set
    return build_game(3, {0b011: 1, 0b111: 1})


def games(n_min=1, n_max=4, lo=-6, hi=8, den=3):
    """Hypothesis strategy for small exact games."""

    def build(draw_n, numerators):
        worths = [Fraction(0)]
        worths.extend(numerators[: (1 << draw_n) - 1])
        return TUGame(draw_n, tuple(worths))

    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(
            st.fractions(
                min_value=lo, max_value=hi, max_denominator=den
            ),
            min_size=(1 << n) - 1,
            max_size=(1 << n) - 1,
        ).map(lambda numerators: build(n, numerators))
    )
