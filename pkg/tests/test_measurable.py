import itertools
import random

import pytest

from gcvx.kernel import CapacityError, DomainError
from gcvx.measurable import (
    FinMeasSpace,
    MeasFn,
    coinduced_sigma,
    enumerate_meas_fns,
    generate_sigma,
    induced_sigma,
    is_measurable,
    is_separated,
    mask_of,
)

PTS3 = ("a", "b", "c")


def brute_sigma_algebras(n):
    """All families over an n-point carrier closed under complement and
    union -- the reference definition, with no shortcuts."""
    full = (1 << n) - 1
    subsets = range(1 << n)
    out = []
    for picks in itertools.product((0, 1), repeat=1 << n):
        fam = {u for u, take in zip(subsets, picks) if take}
        if 0 not in fam or full not in fam:
            continue
        if any(full & ~u not in fam for u in fam):
            continue
        if any(u | v not in fam for u in fam for v in fam):
            continue
        out.append(frozenset(fam))
    return out


def brute_least_sigma(n, gens, algebras):
    acc = None
    for fam in algebras:
        if all(g in fam for g in gens):
            acc = fam if acc is None else acc & fam
    return acc


def test_sigma_algebra_counts_match_partition_counts():
    # sigma-algebras on n points correspond to set partitions
    assert len(brute_sigma_algebras(1)) == 1
    assert len(brute_sigma_algebras(2)) == 2
    assert len(brute_sigma_algebras(3)) == 5


def test_space_validation_rejects_non_algebras():
    with pytest.raises(DomainError):
        FinMeasSpace(PTS3, frozenset({0b111}))  # missing empty set
    with pytest.raises(DomainError):
        FinMeasSpace(PTS3, frozenset({0, 0b001, 0b111}))  # no complement
    with pytest.raises(DomainError):
        FinMeasSpace(PTS3, frozenset({0, 0b001, 0b010, 0b110, 0b101, 0b111}))


def test_atoms_are_the_partition_blocks():
    X = FinMeasSpace(PTS3, frozenset({0, 0b001, 0b110, 0b111}))
    assert X.atoms() == (0b001, 0b110)
    assert X.atom_of("a") == 0b001
    assert X.atom_of("b") == 0b110
    assert FinMeasSpace.discrete(PTS3).atoms() == (0b001, 0b010, 0b100)
    assert FinMeasSpace.trivial(PTS3).atoms() == (0b111,)


def test_generate_sigma_small_oracle():
    X = generate_sigma(PTS3, [("a",)])
    assert X.sigma == frozenset({0, 0b001, 0b110, 0b111})
    Y = generate_sigma(PTS3, [("a",), ("b",)])
    assert Y.sigma == frozenset(range(8))


def test_generate_sigma_matches_brute_force_on_random_families():
    rng = random.Random(7)
    for n in (2, 3, 4):
        algebras = brute_sigma_algebras(n)
        points = tuple("pqrs"[:n])
        for _ in range(30):
            gens = [rng.randrange(1 << n) for _ in range(rng.randrange(4))]
            got = generate_sigma(points, gens)
            want = brute_least_sigma(n, gens, algebras)
            assert got.sigma == want


def test_generate_sigma_capacity_guard():
    points = tuple(f"p{i}" for i in range(24))
    gens = [(p,) for p in points]
    with pytest.raises(CapacityError):
        generate_sigma(points, [mask_of(points, g) for g in gens])


def test_measurability_definition_and_witness():
    X = FinMeasSpace(PTS3, frozenset({0, 0b011, 0b100, 0b111}))
    Y = FinMeasSpace.discrete(("0", "1"))
    ok, wit = is_measurable({"a": "0", "b": "0", "c": "1"}, X, Y)
    assert ok and wit is None
    ok, wit = is_measurable({"a": "0", "b": "1", "c": "1"}, X, Y)
    assert not ok
    # the witness set really does have a non-measurable preimage
    pre = 0
    mapping = {"a": "0", "b": "1", "c": "1"}
    for i, p in enumerate(X.points):
        if wit >> Y.points.index(mapping[p]) & 1:
            pre |= 1 << i
    assert pre not in X.sigma


def test_measfn_composition_and_identity():
    X = FinMeasSpace.discrete(("a", "b"))
    Y = FinMeasSpace.discrete(("0", "1"))
    f = MeasFn(X, Y, ("0", "1"))
    g = MeasFn(Y, Y, ("1", "0"))
    assert g.compose(f).mapping == ("1", "0")
    assert MeasFn.identity(X)("a") == "a"
    assert f.preimage_mask(0b01) == 0b01


def test_enumerate_meas_fns_agrees_with_preimage_definition():
    X = FinMeasSpace(PTS3, frozenset({0, 0b001, 0b110, 0b111}))
    Y = FinMeasSpace.discrete(("0", "1"))
    fast = {f.mapping for f in enumerate_meas_fns(X, Y)}
    slow = set()
    for combo in itertools.product(Y.points, repeat=3):
        mapping = dict(zip(X.points, combo))
        if is_measurable(mapping, X, Y)[0]:
            slow.add(combo)
    assert fast == slow
    assert len(fast) == 4  # constant on the {b, c} atom


def test_coinduced_is_largest_making_family_measurable():
    Z = FinMeasSpace.discrete(("x", "y"))
    carrier = ("u", "v", "w")
    fam = [(Z, {"x": "u", "y": "v"})]
    C = coinduced_sigma(carrier, fam)
    # every member has measurable preimage, and any strictly larger
    # sigma-algebra breaks that
    for u in C.sigma:
        pre = 0
        for i, p in enumerate(Z.points):
            target = fam[0][1][p]
            if u >> carrier.index(target) & 1:
                pre |= 1 << i
        assert pre in Z.sigma
    for extra in range(8):
        if extra in C.sigma:
            continue
        pre = 0
        for i, p in enumerate(Z.points):
            if extra >> carrier.index(fam[0][1][p]) & 1:
                pre |= 1 << i
        bigger_is_valid = pre in Z.sigma
        if bigger_is_valid:
            # adding this set alone must fail sigma-algebra closure
            with pytest.raises(DomainError):
                FinMeasSpace(carrier, C.sigma | {extra})


def test_induced_is_smallest_making_family_measurable():
    Y = FinMeasSpace.discrete(("0", "1"))
    carrier = ("u", "v", "w")
    fam = [({"u": "0", "v": "0", "w": "1"}, Y)]
    I = induced_sigma(carrier, fam)
    assert I.sigma == frozenset({0, 0b011, 0b100, 0b111})


def test_separation():
    assert is_separated(FinMeasSpace.discrete(PTS3)) == (True, None)
    ok, pair = is_separated(FinMeasSpace.trivial(PTS3))
    assert not ok and pair == ("a", "b")
