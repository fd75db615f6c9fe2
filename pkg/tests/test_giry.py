from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from gcvx import giry
from gcvx.convex import EndoI, SemiCvx, two_space
from gcvx.giry import (
    DistOverDists,
    FinDist,
    MeasurabilityError,
    dirac,
    flatten_oracle,
    integrate,
    map_unit,
    measure_to_functional,
    mix_dists,
    monad_law_report,
    mu,
    pushforward,
    unit_outer,
    wa_check,
    wa_functional,
    functional_to_measure,
)
from gcvx.kernel import DomainError, ONE, ZERO
from gcvx.measurable import FinMeasSpace, MeasFn

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


def disc(n):
    return FinMeasSpace.discrete(tuple("abc"[:n]))


def test_findist_validation():
    X = disc(2)
    with pytest.raises(DomainError):
        FinDist(X, (HALF,))  # wrong arity
    with pytest.raises(DomainError):
        FinDist(X, (HALF, QUARTER))  # does not sum to 1
    with pytest.raises(DomainError):
        FinDist(X, (Fraction(3, 2), Fraction(-1, 2)))  # negative mass


def test_measure_of_sets_and_non_measurable_rejection():
    X = FinMeasSpace(("a", "b", "c"), frozenset({0, 0b001, 0b110, 0b111}))
    P = FinDist(X, (QUARTER, Fraction(3, 4)))
    assert P.measure(0b001) == QUARTER
    assert P.measure(0b111) == ONE
    with pytest.raises(DomainError):
        P.measure(0b010)


def test_dirac_and_pushforward():
    X = disc(3)
    Y = disc(2)
    f = MeasFn(X, Y, ("a", "a", "b"))
    P = FinDist(X, (HALF, QUARTER, QUARTER))
    Q = pushforward(f, P)
    assert Q.mass == (Fraction(3, 4), QUARTER)
    assert pushforward(f, dirac(X, "b")) == dirac(Y, "a")


def test_integrate_checks_atom_constancy():
    X = FinMeasSpace(("a", "b", "c"), frozenset({0, 0b001, 0b110, 0b111}))
    P = FinDist(X, (HALF, HALF))
    assert integrate(P, {"a": ONE, "b": ZERO, "c": ZERO}) == HALF
    with pytest.raises(MeasurabilityError):
        integrate(P, {"a": ONE, "b": ZERO, "c": ONE})
    with pytest.raises(DomainError):
        integrate(P, lambda p: Fraction(2))


def test_dist_over_dists_merges_and_sorts():
    X = disc(2)
    P = dirac(X, "a")
    PP = DistOverDists.of(X, [(HALF, P), (QUARTER, P),
                              (QUARTER, dirac(X, "b"))])
    assert len(PP.support) == 2
    assert PP.weight_of(P) == Fraction(3, 4)


def test_mu_agrees_with_hand_computation():
    X = disc(2)
    P = FinDist(X, (HALF, HALF))
    Q = dirac(X, "a")
    PP = DistOverDists.of(X, [(HALF, P), (HALF, Q)])
    assert mu(PP).mass == (Fraction(3, 4), QUARTER)
    assert flatten_oracle(PP) == mu(PP)


def test_unit_laws_by_hand():
    X = disc(2)
    P = FinDist(X, (QUARTER, Fraction(3, 4)))
    assert mu(unit_outer(P)) == P
    assert mu(map_unit(P)) == P


def test_monad_law_report_all_green():
    X = disc(2)
    f = MeasFn(X, X, ("b", "a"))
    rep = monad_law_report(X, naturality_maps=[f])
    assert rep.ok
    assert rep.instances > 100


def test_monad_law_report_catches_corrupted_mu():
    X = disc(2)

    def bad_mu(PP):
        good = mu(PP)
        if len(PP.support) > 1:
            m = list(good.mass)
            m[0], m[-1] = m[-1], m[0]
            return FinDist(good.space, tuple(m))
        return good

    rep = monad_law_report(X, mu_fn=bad_mu)
    assert not rep.ok
    assert any(f.law == "mu.flatten-oracle" for f in rep.unexpected_failures)


@given(st.fractions(min_value=0, max_value=1, max_denominator=16))
def test_mix_dists_is_coordinatewise(alpha):
    X = disc(2)
    P, Q = dirac(X, "a"), dirac(X, "b")
    M = mix_dists(P, Q, alpha)
    assert M.mass == (ONE - alpha, alpha)


# ---------------------------------------------------------------------------
# weakly averaging functionals


def test_wa_functional_constants_and_equivariance():
    two = two_space()
    F = wa_functional(two, (HALF, HALF), ("0", "1"))
    endos = [EndoI.of(HALF, QUARTER), EndoI.of(-HALF, Fraction(3, 4))]
    fns = [lambda a: ONE if a == "1" else ZERO]
    chk = wa_check(F, endos, fns)
    assert chk["passed"]


def test_wa_check_detects_unnormalized_weights():
    two = two_space()
    bad = giry.WAFunctional.unchecked(two, ((HALF, "0"), (QUARTER, "1")))
    chk = wa_check(bad, [], [])
    assert not chk["passed"]


def test_measure_functional_roundtrip():
    A = SemiCvx.of(("a", "b"), (("a", "a"), ("a", "b")))
    space = FinMeasSpace.discrete(("a", "b"))
    P = FinDist(space, (QUARTER, Fraction(3, 4)))
    F = measure_to_functional(P, A)
    assert functional_to_measure(F, space) == P
    # the functional evaluates indicators to the measure of the set
    chi_b = lambda x: ONE if x == "b" else ZERO
    assert F.apply(chi_b) == Fraction(3, 4)
