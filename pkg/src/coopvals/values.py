"""The generic compromise engine and the named compromise values.

Given a lower vector mu and an upper vector eta with mu <= eta and
sum(mu) <= v(N) <= sum(eta), the compromise point is the unique efficient
point on the segment between them:

    gamma = lam * eta + (1 - lam) * mu,
    lam   = (v(N) - sum(mu)) / (sum(eta) - sum(mu)),

with gamma = mu and no mixing weight when mu = eta exactly.

Two constructions feed the engine.  An LBC value starts from a regular
lower bound mu and pairs it with eta^mu; the result collapses to
gamma_i = mu_i + (v(N) - sum(mu)) / n.  A UBC value starts from a
translation covariant upper bound eta and pairs it with the derived
mu^eta.  The named values are tau, chi, Gately, CIS, PANSC, EANSC, the
Egalitarian value, and the KM value; each reports the bound vectors it
used and its class guard failures as NotInClass errors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

from . import bounds
from .bounds import BoundFunctional, BoundVector, functional
from .errors import (
    BoundOrderViolated,
    CoopvalsError,
    DegenerateBounds,
    NonCovariantUpperBound,
    NotBalanced,
    NotInClass,
    NotRegularLowerBound,
)
from .game import TUGame, individual_worths, subtract_allocation

__all__ = [
    "ValueResult",
    "compromise",
    "lbc_value",
    "ubc_value",
    "tau",
    "chi",
    "gately",
    "cis",
    "pansc",
    "egalitarian",
    "eansc",
    "km",
    "VALUES",
    "AXIOM_PAIRS",
    "LBC_FAMILY",
]


@dataclass(frozen=True)
class ValueResult:
    """An allocation plus the bound pair and mixing weight that produced it.

    lam is the weight on the upper bound and is absent when the two bounds
    coincide.  The engine guarantees efficiency and bracketing for results
    it produces; PANSC outside its bracket reports lam > 1 (see pansc).
    """

    value_id: str
    allocation: Tuple[Fraction, ...]
    lam: Fraction | None
    lower_used: Tuple[Fraction, ...]
    upper_used: Tuple[Fraction, ...]
    route: str | None = None

    def __post_init__(self) -> None:
        alloc = tuple(Fraction(x) for x in self.allocation)
        lower = tuple(Fraction(x) for x in self.lower_used)
        upper = tuple(Fraction(x) for x in self.upper_used)
        if not (len(alloc) == len(lower) == len(upper)):
            raise CoopvalsError("allocation and bound vectors disagree in length")
        object.__setattr__(self, "allocation", alloc)
        object.__setattr__(self, "lower_used", lower)
        object.__setattr__(self, "upper_used", upper)
        if self.lam is not None:
            lam = Fraction(self.lam)
            object.__setattr__(self, "lam", lam)
            mix = tuple(
                lam * u + (1 - lam) * m for m, u in zip(lower, upper)
            )
            if mix != alloc:
                raise CoopvalsError("allocation does not match its mixing weight")


def _as_vector(x: Sequence, n: int, what: str) -> BoundVector:
    vec = tuple(Fraction(c) for c in x)
    if len(vec) != n:
        raise CoopvalsError(f"{what} must have {n} components, got {len(vec)}")
    return vec


def compromise(
    v: TUGame,
    mu: Sequence,
    eta: Sequence,
    *,
    value_id: str = "compromise",
    route: str | None = None,
) -> ValueResult:
    """The (mu, eta)-compromise point of v.

    Raises BoundOrderViolated if mu exceeds eta in some component and
    NotBalanced if v(N) falls outside [sum(mu), sum(eta)].
    """
    mu = _as_vector(mu, v.n, "lower bound")
    eta = _as_vector(eta, v.n, "upper bound")
    for i in range(v.n):
        if mu[i] > eta[i]:
            raise BoundOrderViolated(
                f"lower bound exceeds upper bound at player {i + 1}: "
                f"{mu[i]} > {eta[i]}"
            )
    vN = v.total
    s_mu, s_eta = sum(mu), sum(eta)
    if not s_mu <= vN <= s_eta:
        raise NotBalanced(
            f"v(N) = {vN} is outside the bound bracket [{s_mu}, {s_eta}]"
        )
    if mu == eta:
        return ValueResult(value_id, mu, None, mu, eta, route)
    lam = (vN - s_mu) / (s_eta - s_mu)
    alloc = tuple(lam * e + (1 - lam) * m for m, e in zip(mu, eta))
    return ValueResult(value_id, alloc, lam, mu, eta, route)


def lbc_value(
    v: TUGame,
    mu_id: Union[str, BoundFunctional],
    *,
    value_id: str | None = None,
) -> ValueResult:
    """The compromise value built from a regular lower bound.

    Pairs mu with eta^mu and cross-checks the engine result against the
    closed form gamma_i = mu_i + (v(N) - sum(mu)) / n.
    """
    fn = functional(mu_id)
    if fn.is_regular_lower is not True:
        raise NotRegularLowerBound(f"{fn.id} is not flagged as a regular lower bound")
    mu = fn.evaluate(v)
    vN = v.total
    if sum(mu) > vN:
        raise NotInClass(f"B_l({fn.id})")
    shifted_mu = fn.evaluate(subtract_allocation(v, mu))
    if any(c != 0 for c in shifted_mu):
        raise NotRegularLowerBound(
            f"{fn.id} does not vanish on the shifted game v - mu(v)"
        )
    eta = bounds.eta_from_lower(v, mu)
    result = compromise(v, mu, eta, value_id=value_id or f"lbc:{fn.id}")
    residual = (vN - sum(mu)) / v.n
    direct = tuple(m + residual for m in mu)
    if direct != result.allocation:
        raise CoopvalsError("engine and closed form disagree for an LBC value")
    return result


def ubc_value(
    v: TUGame,
    eta_id: Union[str, BoundFunctional],
    *,
    value_id: str | None = None,
    class_name: str | None = None,
) -> ValueResult:
    """The compromise value built from a translation covariant upper bound.

    Requires v(S) <= sum_{i in S} eta_i(v) for every nonempty S; the derived
    lower bound is mu^eta.  NotBalanced signals sum(mu^eta) > v(N), i.e. the
    game lies outside the proper upper-bound class.
    """
    fn = functional(eta_id)
    if not fn.is_translation_covariant:
        raise NonCovariantUpperBound(
            f"{fn.id} is not translation covariant; cannot derive a lower bound"
        )
    eta = fn.evaluate(v)
    if not bounds.is_strongly_upper_bounded(v, eta):
        raise NotInClass(class_name or f"B_u({fn.id})")
    mu = bounds.mu_from_upper(v, fn)
    return compromise(v, mu, eta, value_id=value_id or f"ubc:{fn.id}")


def tau(v: TUGame) -> ValueResult:
    """The compromise of minimal rights and marginal contributions.

    Defined on semi-balanced games, which are exactly the games strongly
    bounded by the marginal vector.
    """
    return ubc_value(
        v, "MarginalContributions", value_id="tau", class_name="semi-balanced"
    )


def chi(v: TUGame) -> ValueResult:
    """The compromise value derived from the Milnor upper bound.

    Every game is strongly bounded by the Milnor vector, and the derived
    lower bound is the vector of individual worths, so the class guard is
    weak essentiality: sum of singleton worths <= v(N).
    """
    if sum(individual_worths(v)) > v.total:
        raise NotInClass("weakly-essential")
    return ubc_value(v, "MilnorUpper", value_id="chi")


def gately(v: TUGame, *, strict: bool = False) -> ValueResult:
    """The compromise of individual worths and marginal contributions.

    Defined on essential games.  The defining formula is evaluated whenever
    the game is essential and sum(M - nu) > 0; strict mode additionally
    rejects games where some nu_i exceeds M_i, keeping bracketing honest.
    """
    nu = individual_worths(v)
    M = bounds.marginal_contributions(v)
    vN = v.total
    if not sum(nu) <= vN <= sum(M):
        raise NotInClass("essential")
    if strict:
        for i in range(v.n):
            if nu[i] > M[i]:
                raise BoundOrderViolated(
                    f"individual worth exceeds marginal contribution at "
                    f"player {i + 1}: {nu[i]} > {M[i]}"
                )
    spread = sum(M) - sum(nu)
    if spread == 0:
        if nu == M:
            return ValueResult("gately", nu, None, nu, M)
        raise DegenerateBounds(
            "sum(M - nu) = 0 with nu != M leaves the formula undefined"
        )
    lam = (vN - sum(nu)) / spread
    alloc = tuple(n_i + lam * (M_i - n_i) for n_i, M_i in zip(nu, M))
    result = ValueResult("gately", alloc, lam, nu, M)
    if all(nu[i] <= M[i] for i in range(v.n)):
        engine = compromise(v, nu, M, value_id="gately")
        if engine.allocation != result.allocation:
            raise CoopvalsError("engine and formula disagree for the Gately value")
    return result


def cis(v: TUGame) -> ValueResult:
    """CIS_i = v_i + (v(N) - sum_j v_j) / n, on games with imputations."""
    return lbc_value(v, "IndividualWorths", value_id="cis")


def pansc(v: TUGame) -> ValueResult:
    """PANSC_i = (M_i / sum_j M_j) * v(N).

    Guards: v(N) >= 0 and M >= 0 componentwise, so that the zero vector and
    M are ordered bounds; sum(M) = 0 is accepted only for v(N) = 0.  The
    proportional formula itself is evaluated even when v(N) > sum(M); the
    reported lam = v(N)/sum(M) then exceeds 1 and the result agrees with
    the bound-pair engine exactly on the bracketed subclass.
    """
    M = bounds.marginal_contributions(v)
    vN = v.total
    if vN < 0:
        raise NotInClass("B_l(ZeroLower)")
    for i in range(v.n):
        if M[i] < 0:
            raise BoundOrderViolated(
                f"marginal contribution of player {i + 1} is negative: {M[i]}"
            )
    zero = (Fraction(0),) * v.n
    s_M = sum(M)
    if s_M == 0:
        if vN == 0:
            return ValueResult("pansc", zero, None, zero, M)
        raise DegenerateBounds("sum(M) = 0 cannot pay out v(N) != 0")
    lam = vN / s_M
    alloc = tuple(lam * M_i for M_i in M)
    result = ValueResult("pansc", alloc, lam, zero, M)
    if vN <= s_M:
        engine = compromise(v, zero, M, value_id="pansc")
        if engine.allocation != result.allocation:
            raise CoopvalsError("engine and formula disagree for the PANSC value")
    return result


def egalitarian(v: TUGame) -> ValueResult:
    """The equal split v(N)/n, defined for v(N) >= 0."""
    return lbc_value(v, "ZeroLower", value_id="egalitarian")


def eansc(v: TUGame) -> ValueResult:
    """EANSC_i = M_i + (v(N) - sum_j M_j) / n, total on all games.

    Route metadata records which bound-pair reconstruction covers the game:
    (mu~, M) when v(N) <= sum(M), (M, eta^M) when v(N) >= sum(M); at least
    one always applies and each applicable one is recomputed and must match
    the formula exactly.
    """
    M = bounds.marginal_contributions(v)
    vN = v.total
    residual = (vN - sum(M)) / v.n
    alloc = tuple(M_i + residual for M_i in M)

    in_tilde = vN <= sum(M)
    in_lower = vN >= sum(M)
    routes = []
    preferred: ValueResult | None = None
    if in_tilde and v.n >= 2:
        mu = bounds.eansc_tilde_lower(v)
        rebuilt = compromise(v, mu, M, value_id="eansc")
        if rebuilt.allocation != alloc:
            raise CoopvalsError("(mu~, M) route disagrees with the EANSC formula")
        routes.append("(mu~, M)")
        preferred = rebuilt
    if in_lower:
        rebuilt = lbc_value(v, "MarginalContributions", value_id="eansc")
        if rebuilt.allocation != alloc:
            raise CoopvalsError("(M, eta^M) route disagrees with the EANSC formula")
        routes.append("(M, eta^M)")
        if preferred is None:
            preferred = rebuilt
    if preferred is None:
        raise CoopvalsError("no EANSC route applies; this cannot happen")
    return ValueResult(
        "eansc",
        preferred.allocation,
        preferred.lam,
        preferred.lower_used,
        preferred.upper_used,
        route=" and ".join(routes),
    )


def km(v: TUGame) -> ValueResult:
    """The compromise of the Kikuta lower and Milnor upper bounds.

    Total on all games: the telescoping chain argument puts v(N) between
    the two bound sums for every game.
    """
    return compromise(
        v, bounds.kikuta_lower(v), bounds.milnor_upper(v), value_id="km"
    )


# CLI and verification registries.  AXIOM_PAIRS names the (mu, eta) pair the
# axiom checks use for each value; LBC_FAMILY marks the values whose
# proportionality axiom is egalitarian division rather than eta-proportionality.
VALUES = {
    "tau": tau,
    "chi": chi,
    "gately": gately,
    "cis": cis,
    "pansc": pansc,
    "eansc": eansc,
    "egal": egalitarian,
    "km": km,
}

AXIOM_PAIRS: dict[str, tuple[Union[str, BoundFunctional], Union[str, BoundFunctional]]] = {
    "tau": ("MinimalRights", "MarginalContributions"),
    "chi": (bounds.derived_lower_from_upper("MilnorUpper"), "MilnorUpper"),
    "km": ("KikutaLower", "MilnorUpper"),
    "pansc": ("ZeroLower", "MarginalContributions"),
    "gately": ("IndividualWorths", "MarginalContributions"),
    "cis": ("IndividualWorths", "EtaPrime"),
    "egal": ("ZeroLower", "EtaTrivial"),
    "eansc": ("MarginalContributions", "EtaFromM"),
}

LBC_FAMILY = frozenset({"cis", "egal", "eansc"})
