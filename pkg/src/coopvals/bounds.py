"""Per-player bound functionals and the two generic bound constructions.

A bound functional maps a game to a vector of exact rationals, one per
player, read as a lower or upper bound on payoffs.  The registry names the
functionals used by the compromise values:

    MarginalContributions  M_i = v(N) - v(N-i)          (utopia vector)
    MinimalRights          m_i = max_{S: i in S} [ v(S) - sum_{j in S-i} M_j ]
    KikutaLower            min_{S: i in S} [ v(S) - v(S-i) ]
    MilnorUpper            max_{S: i in S} [ v(S) - v(S-i) ]
    IndividualWorths       nu_i = v({i})
    ZeroLower              0
    EtaTrivial             eta0_i = v(N)
    EtaPrime               eta'_i = v(N) - sum_{j != i} v_j
    EanscTildeLower        mu~_i = M_i + (v(N) - sum_j M_j) / (n - 1)
    EtaFromM               etaM_i = v(N) - sum_{j != i} M_j
    ConstantOne            1   (intentional negative fixture)

Two constructions derive one side of a pair from the other.  From a lower
bound mu, eta^mu_i = v(N) - sum_{j != i} mu_j.  From a translation covariant
upper bound eta, mu^eta_i = max over nonempty S containing i of
R_i(S, v) = v(S) - sum_{j in S-i} eta_j(v).

A pair (mu, eta) is a bound pair on a game v when (i) mu(v) <= eta(v)
componentwise, (ii-a) mu(v - mu(v)) = 0, and (ii-b) eta(v - mu(v)) =
eta(v) - mu(v), where v - x subtracts the additive game of x.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Tuple, Union

from .errors import (
    CoopvalsError,
    NonCovariantUpperBound,
    NotInClass,
    TooFewPlayers,
    UnknownBoundFunctional,
)
from .game import (
    Allocation,
    TUGame,
    coalition_total,
    individual_worths,
    subtract_allocation,
    transform,
)

__all__ = [
    "BoundVector",
    "BoundFunctional",
    "Witness",
    "CheckOutcome",
    "BoundPairReport",
    "MembershipReport",
    "REGISTRY",
    "functional",
    "evaluate_bound",
    "marginal_contributions",
    "minimal_rights",
    "kikuta_lower",
    "milnor_upper",
    "zero_lower",
    "eta_trivial",
    "eta_prime",
    "eta_from_m",
    "eansc_tilde_lower",
    "eta_from_lower",
    "mu_from_upper",
    "derived_lower_from_upper",
    "derived_upper_from_lower",
    "constant_lower",
    "check_bound_pair",
    "is_regular_lower",
    "check_translation_covariance",
    "membership",
    "is_strongly_upper_bounded",
]

BoundVector = Tuple[Fraction, ...]


def marginal_contributions(v: TUGame) -> BoundVector:
    """M_i(v) = v(N) - v(N-i)."""
    full, vN = v.grand, v.total
    return tuple(vN - v.worths[full ^ (1 << i)] for i in range(v.n))


def kikuta_lower(v: TUGame) -> BoundVector:
    """Per-player minimum marginal contribution over coalitions containing them."""
    return _extreme_marginals(v, min)


def milnor_upper(v: TUGame) -> BoundVector:
    """Per-player maximum marginal contribution over coalitions containing them."""
    return _extreme_marginals(v, max)


def _extreme_marginals(v: TUGame, pick) -> BoundVector:
    W = v.worths
    out = []
    for i in range(v.n):
        bit = 1 << i
        rest = v.grand ^ bit
        best = None
        S = rest
        while True:
            m = W[S | bit] - W[S]
            best = m if best is None else pick(best, m)
            if S == 0:
                break
            S = (S - 1) & rest
        out.append(best)
    return tuple(out)


def zero_lower(v: TUGame) -> BoundVector:
    return (Fraction(0),) * v.n


def eta_trivial(v: TUGame) -> BoundVector:
    """eta0_i(v) = v(N) for every player."""
    return (v.total,) * v.n


def eta_prime(v: TUGame) -> BoundVector:
    """eta'_i(v) = v(N) - sum_{j != i} v_j."""
    return eta_from_lower(v, individual_worths(v))


def eta_from_m(v: TUGame) -> BoundVector:
    """etaM_i(v) = v(N) - sum_{j != i} M_j(v)."""
    return eta_from_lower(v, marginal_contributions(v))


def eansc_tilde_lower(v: TUGame) -> BoundVector:
    """The lower bound solving sum_{j != i} mu~_j(v) = v(N-i) for every i.

    Closed form: mu~_i = M_i(v) + (v(N) - sum_j M_j(v)) / (n - 1).
    """
    if v.n < 2:
        raise TooFewPlayers("the EANSC tilde lower bound needs n >= 2")
    M = marginal_contributions(v)
    residual = (v.total - sum(M)) / (v.n - 1)
    mu = tuple(M_i + residual for M_i in M)
    full, vN = v.grand, v.total
    for i in range(v.n):
        if sum(mu) - mu[i] != v.worths[full ^ (1 << i)]:
            raise CoopvalsError("tilde lower bound failed its defining system")
    return mu


def eta_from_lower(v: TUGame, mu: Sequence[Fraction]) -> BoundVector:
    """The residual upper bound eta^mu_i(v) = v(N) - sum_{j != i} mu_j(v)."""
    mu = tuple(Fraction(x) for x in mu)
    if len(mu) != v.n:
        raise CoopvalsError(f"expected {v.n} bound components, got {len(mu)}")
    vN = v.total
    total = sum(mu)
    return tuple(vN - (total - mu_i) for mu_i in mu)


def _mu_from_upper_vector(v: TUGame, eta: BoundVector) -> BoundVector:
    W = v.worths
    out = []
    for i in range(v.n):
        bit = 1 << i
        rest = v.grand ^ bit
        best = None
        S = rest
        while True:
            T = S | bit
            r = W[T] - (coalition_total(eta, T) - eta[i])
            if best is None or r > best:
                best = r
            if S == 0:
                break
            S = (S - 1) & rest
        out.append(best)
    return tuple(out)


def mu_from_upper(v: TUGame, eta_id: Union[str, "BoundFunctional"]) -> BoundVector:
    """The derived lower bound mu^eta_i(v) = max_{S: i in S} R_i(S, v).

    R_i(S, v) = v(S) - sum_{j in S-i} eta_j(v), with S ranging over nonempty
    coalitions containing i, so mu^eta >= individual worths always.  Requires
    a translation covariant upper bound; the registry flag is checked.
    """
    fn = functional(eta_id)
    if not fn.is_translation_covariant:
        raise NonCovariantUpperBound(
            f"{fn.id} is not translation covariant; cannot derive a lower bound"
        )
    return _mu_from_upper_vector(v, fn.evaluate(v))


def minimal_rights(v: TUGame) -> BoundVector:
    """The minimal rights vector: mu_from_upper with the marginal vector."""
    return _mu_from_upper_vector(v, marginal_contributions(v))


@dataclass(frozen=True)
class BoundFunctional:
    """A named bound functional plus its registry flags.

    is_regular_lower is None when the functional is not meant to serve as a
    lower bound.  Covariance flags are set from proven claims and re-checked
    empirically by the test suite.
    """

    id: str
    evaluate: Callable[[TUGame], BoundVector]
    is_translation_covariant: bool
    is_regular_lower: bool | None = None


def constant_lower(value: int | Fraction = 1, id: str | None = None) -> BoundFunctional:
    """A constant lower bound.  Not regular unless the constant is zero."""
    c = Fraction(value)
    return BoundFunctional(
        id=id or f"Constant({c})",
        evaluate=lambda v: (c,) * v.n,
        is_translation_covariant=False,
        is_regular_lower=(c == 0),
    )


def derived_upper_from_lower(mu_id: Union[str, BoundFunctional]) -> BoundFunctional:
    """Registry wrapper for eta^mu; covariant whenever mu is."""
    fn = functional(mu_id)
    return BoundFunctional(
        id=f"EtaFrom({fn.id})",
        evaluate=lambda v: eta_from_lower(v, fn.evaluate(v)),
        is_translation_covariant=fn.is_translation_covariant,
        is_regular_lower=None,
    )


def derived_lower_from_upper(eta_id: Union[str, BoundFunctional]) -> BoundFunctional:
    """Registry wrapper for mu^eta; requires a covariant upper bound.

    The derived lower bound is itself translation covariant, hence regular.
    """
    fn = functional(eta_id)
    if not fn.is_translation_covariant:
        raise NonCovariantUpperBound(
            f"{fn.id} is not translation covariant; cannot derive a lower bound"
        )
    return BoundFunctional(
        id=f"MuFrom({fn.id})",
        evaluate=lambda v: _mu_from_upper_vector(v, fn.evaluate(v)),
        is_translation_covariant=True,
        is_regular_lower=True,
    )


REGISTRY: dict[str, BoundFunctional] = {
    fn.id: fn
    for fn in (
        BoundFunctional("MarginalContributions", marginal_contributions, True, True),
        BoundFunctional("MinimalRights", minimal_rights, True, True),
        BoundFunctional("KikutaLower", kikuta_lower, True, True),
        BoundFunctional("MilnorUpper", milnor_upper, True, None),
        BoundFunctional("IndividualWorths", individual_worths, True, True),
        BoundFunctional("ZeroLower", zero_lower, False, True),
        BoundFunctional("EtaTrivial", eta_trivial, False, None),
        BoundFunctional("EtaPrime", eta_prime, True, None),
        BoundFunctional("EanscTildeLower", eansc_tilde_lower, True, True),
        BoundFunctional("EtaFromM", eta_from_m, True, None),
        constant_lower(1, id="ConstantOne"),
    )
}


def functional(fn_id: Union[str, BoundFunctional]) -> BoundFunctional:
    if isinstance(fn_id, BoundFunctional):
        return fn_id
    try:
        return REGISTRY[fn_id]
    except KeyError:
        raise UnknownBoundFunctional(fn_id) from None


def evaluate_bound(v: TUGame, fn_id: Union[str, BoundFunctional]) -> BoundVector:
    return functional(fn_id).evaluate(v)


@dataclass(frozen=True)
class Witness:
    """A concrete violation: the first differing component and both sides."""

    component: int
    lhs: Tuple[Fraction, ...]
    rhs: Tuple[Fraction, ...]


@dataclass(frozen=True)
class CheckOutcome:
    """Named property check result.  A witness is present iff not passed."""

    check_id: str
    passed: bool
    witness: Witness | None = None

    def __post_init__(self) -> None:
        if self.passed and self.witness is not None:
            raise CoopvalsError("a passing check cannot carry a witness")
        if not self.passed and self.witness is None:
            raise CoopvalsError("a failing check must carry a witness")


def _first_difference(lhs: BoundVector, rhs: BoundVector) -> Witness | None:
    for i, (a, b) in enumerate(zip(lhs, rhs)):
        if a != b:
            return Witness(i, tuple(lhs), tuple(rhs))
    return None


@dataclass(frozen=True)
class BoundPairReport:
    """Outcome of the three defining bound-pair conditions on one game."""

    mu_id: str
    eta_id: str
    property_i_holds: bool
    property_iia_holds: bool
    property_iib_holds: bool
    witness_i: Witness | None = None
    witness_iia: Witness | None = None
    witness_iib: Witness | None = None

    @property
    def passed(self) -> bool:
        return (
            self.property_i_holds
            and self.property_iia_holds
            and self.property_iib_holds
        )


def check_bound_pair(
    v: TUGame,
    mu_id: Union[str, BoundFunctional],
    eta_id: Union[str, BoundFunctional],
) -> BoundPairReport:
    """Evaluate conditions (i), (ii-a), (ii-b) on v and on v - mu(v).

    Failures are reported as data with witnesses, not raised.
    """
    mu_fn, eta_fn = functional(mu_id), functional(eta_id)
    mu, eta = mu_fn.evaluate(v), eta_fn.evaluate(v)
    shifted = subtract_allocation(v, mu)
    mu_shift = mu_fn.evaluate(shifted)
    eta_shift = eta_fn.evaluate(shifted)
    zero = (Fraction(0),) * v.n
    diff = tuple(e - m for e, m in zip(eta, mu))

    witness_i = None
    for i in range(v.n):
        if mu[i] > eta[i]:
            witness_i = Witness(i, mu, eta)
            break
    witness_iia = _first_difference(mu_shift, zero)
    witness_iib = _first_difference(eta_shift, diff)
    return BoundPairReport(
        mu_id=mu_fn.id,
        eta_id=eta_fn.id,
        property_i_holds=witness_i is None,
        property_iia_holds=witness_iia is None,
        property_iib_holds=witness_iib is None,
        witness_i=witness_i,
        witness_iia=witness_iia,
        witness_iib=witness_iib,
    )


def is_regular_lower(
    v: TUGame, mu_id: Union[str, BoundFunctional]
) -> CheckOutcome:
    """Check mu(v - mu(v)) = 0 for a game in the lower-bound class of mu."""
    fn = functional(mu_id)
    mu = fn.evaluate(v)
    if sum(mu) > v.total:
        raise NotInClass(f"B_l({fn.id})")
    shifted_mu = fn.evaluate(subtract_allocation(v, mu))
    zero = (Fraction(0),) * v.n
    witness = _first_difference(shifted_mu, zero)
    return CheckOutcome(
        check_id=f"regular_lower:{fn.id}",
        passed=witness is None,
        witness=witness,
    )


def check_translation_covariance(
    fn_id: Union[str, BoundFunctional],
    v: TUGame,
    x: Sequence[Fraction],
) -> CheckOutcome:
    """Check fn(v + x) = fn(v) + x exactly for the given probe x."""
    fn = functional(fn_id)
    x = tuple(Fraction(c) for c in x)
    lhs = fn.evaluate(transform(v, 1, x))
    rhs = tuple(a + b for a, b in zip(fn.evaluate(v), x))
    witness = _first_difference(lhs, rhs)
    return CheckOutcome(
        check_id=f"translation_covariance:{fn.id}",
        passed=witness is None,
        witness=witness,
    )


@dataclass(frozen=True)
class MembershipReport:
    """Class membership flags of one game for one candidate bound pair.

    in_proper_upper needs the derived lower bound mu^eta and is therefore
    None when eta is not translation covariant.  in_b_hat and in_b_tilde do
    not depend on the chosen pair.
    """

    in_balanced: bool
    in_lower_class: bool
    in_strong_upper: bool
    in_proper_upper: bool | None
    in_b_hat: bool
    in_b_tilde: bool


def is_strongly_upper_bounded(v: TUGame, eta: Sequence[Fraction]) -> bool:
    """v(S) <= sum_{i in S} eta_i for every nonempty coalition S."""
    eta = tuple(Fraction(c) for c in eta)
    return all(
        v.worths[S] <= coalition_total(eta, S) for S in range(1, 1 << v.n)
    )


def membership(
    v: TUGame,
    mu_id: Union[str, BoundFunctional],
    eta_id: Union[str, BoundFunctional],
) -> MembershipReport:
    """Exact enumeration of all class membership flags for the pair."""
    mu_fn, eta_fn = functional(mu_id), functional(eta_id)
    mu, eta = mu_fn.evaluate(v), eta_fn.evaluate(v)
    vN = v.total
    in_lower = sum(mu) <= vN
    in_balanced = in_lower and vN <= sum(eta)
    in_strong = is_strongly_upper_bounded(v, eta)
    if eta_fn.is_translation_covariant:
        derived = _mu_from_upper_vector(v, eta)
        in_proper: bool | None = in_strong and sum(derived) <= vN
    else:
        in_proper = None

    nu = individual_worths(v)
    slack = vN - sum(nu)
    in_b_hat = all(
        v.worths[S] - coalition_total(nu, S) <= (S.bit_count() - 1) * slack
        for S in range(1, 1 << v.n)
    )
    in_b_tilde = vN <= sum(marginal_contributions(v))
    return MembershipReport(
        in_balanced=in_balanced,
        in_lower_class=in_lower,
        in_strong_upper=in_strong,
        in_proper_upper=in_proper,
        in_b_hat=in_b_hat,
        in_b_tilde=in_b_tilde,
    )
