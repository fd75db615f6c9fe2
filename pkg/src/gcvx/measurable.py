"""Finite measurable spaces and sigma-algebra machinery.

Subsets of a carrier are bitmasks over the (fixed, input-order) point
list, and a sigma-algebra is a frozenset of such masks.  On a finite
carrier closure under pairwise union realizes countable union, so these
families are honest sigma-algebras.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .kernel import CapacityError, DomainError

SIGMA_CAPACITY = 2**20


def mask_of(points: tuple[str, ...], subset) -> int:
    m = 0
    index = {p: i for i, p in enumerate(points)}
    for p in subset:
        if p not in index:
            raise DomainError(f"point {p!r} is not in the carrier")
        m |= 1 << index[p]
    return m


def names_of(points: tuple[str, ...], mask: int) -> tuple[str, ...]:
    return tuple(p for i, p in enumerate(points) if mask >> i & 1)


@dataclass(frozen=True)
class FinMeasSpace:
    points: tuple[str, ...]
    sigma: frozenset[int]

    def __post_init__(self):
        full = self.full_mask
        if 0 not in self.sigma or full not in self.sigma:
            raise DomainError("sigma must contain the empty and full sets")
        for u in self.sigma:
            if u & ~full:
                raise DomainError("sigma member is not a subset of the carrier")
        # every member is a union of membership-profile classes, and there
        # are 2^k such unions; equality of sizes is therefore equivalent to
        # closure under complement and (finite = countable) union
        if len(self.sigma) != 1 << len(self.atoms()):
            raise DomainError("sigma is not closed under complement/union")

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    @classmethod
    def discrete(cls, points) -> "FinMeasSpace":
        points = tuple(points)
        if len(points) > 20:
            raise CapacityError("powerset sigma-algebra would exceed capacity")
        return cls(points, frozenset(range(1 << len(points))))

    @classmethod
    def trivial(cls, points) -> "FinMeasSpace":
        points = tuple(points)
        return cls(points, frozenset({0, (1 << len(points)) - 1}))

    def atoms(self) -> tuple[int, ...]:
        """Minimal nonempty measurable sets, ordered by lowest point index."""
        cached = getattr(self, "_atoms", None)
        if cached is None:
            members = sorted(self.sigma)
            profile: dict[tuple[int, ...], int] = {}
            for i in range(len(self.points)):
                key = tuple(u >> i & 1 for u in members)
                profile[key] = profile.get(key, 0) | (1 << i)
            cached = tuple(sorted(profile.values(),
                                  key=lambda m: (m & -m).bit_length()))
            object.__setattr__(self, "_atoms", cached)
        return cached

    def atom_of(self, point: str) -> int:
        i = self.points.index(point)
        for a in self.atoms():
            if a >> i & 1:
                return a
        raise DomainError(f"point {point!r} not found")

    def subset_mask(self, subset) -> int:
        return mask_of(self.points, subset)

    def subset_names(self, mask: int) -> tuple[str, ...]:
        return names_of(self.points, mask)


def _closure(points: tuple[str, ...], seeds) -> frozenset[int]:
    full = (1 << len(points)) - 1
    family = {0, full} | set(seeds)
    # least family closed under complement and pairwise union
    while True:
        new = set()
        for u in family:
            c = full & ~u
            if c not in family:
                new.add(c)
        for u, v in itertools.combinations(family, 2):
            w = u | v
            if w not in family:
                new.add(w)
        if not new:
            return frozenset(family)
        family |= new
        if len(family) > SIGMA_CAPACITY:
            raise CapacityError("generated sigma-algebra exceeds capacity")


def generate_sigma(points, generators) -> FinMeasSpace:
    """Least sigma-algebra on `points` containing every generator."""
    points = tuple(points)
    masks = [mask_of(points, g) if not isinstance(g, int) else g for g in generators]
    full = (1 << len(points)) - 1
    for m in masks:
        if m & ~full:
            raise DomainError("generator is not a subset of the carrier")
    # capacity precheck: the result is the powerset of the partition the
    # generators induce, so count membership classes before materializing
    classes = len({tuple(m >> i & 1 for m in masks) for i in range(len(points))})
    if classes > 20:
        raise CapacityError("generated sigma-algebra exceeds capacity")
    return FinMeasSpace(points, _closure(points, masks))


def coinduced_sigma(points, family) -> FinMeasSpace:
    """Largest sigma-algebra on `points` making every family map measurable.

    `family` is a list of (source_space, mapping) with mapping a dict from
    source point to carrier point.  An empty family yields the powerset.
    """
    points = tuple(points)
    if len(points) > 20:
        raise CapacityError("carrier too large to scan all subsets")
    index = {p: i for i, p in enumerate(points)}
    prepared = []
    for src, mapping in family:
        srcbits = [0] * len(points)
        for i, p in enumerate(src.points):
            q = mapping[p]
            if q not in index:
                raise DomainError(f"map image {q!r} is not in the carrier")
            srcbits[index[q]] |= 1 << i
        prepared.append((src.sigma, srcbits))
    carrier_bits = list(range(len(points)))
    sigma = set()
    for u in range(1 << len(points)):
        ok = True
        for src_sigma, srcbits in prepared:
            pre = 0
            for j in carrier_bits:
                if u >> j & 1:
                    pre |= srcbits[j]
            if pre not in src_sigma:
                ok = False
                break
        if ok:
            sigma.add(u)
    return FinMeasSpace(points, frozenset(sigma))


def induced_sigma(points, family) -> FinMeasSpace:
    """Smallest sigma-algebra on `points` making every family map measurable.

    `family` is a list of (mapping, target_space) with mapping a dict from
    carrier point to target point.
    """
    points = tuple(points)
    gens = []
    for mapping, target in family:
        tindex = {p: i for i, p in enumerate(target.points)}
        for v in target.sigma:
            pre = 0
            for i, p in enumerate(points):
                if v >> tindex[mapping[p]] & 1:
                    pre |= 1 << i
            gens.append(pre)
    return generate_sigma(points, gens)


@dataclass(frozen=True)
class MeasFn:
    """A measurable function between finite measurable spaces.

    `mapping` lists the codomain point for each domain point, aligned with
    dom.points.
    """

    dom: FinMeasSpace
    cod: FinMeasSpace
    mapping: tuple[str, ...]

    def __post_init__(self):
        ok, witness = is_measurable(dict(zip(self.dom.points, self.mapping)),
                                    self.dom, self.cod)
        if not ok:
            names = self.cod.subset_names(witness)
            raise DomainError(f"map is not measurable; witness set {names}")

    def __call__(self, p: str) -> str:
        return self.mapping[self.dom.points.index(p)]

    def preimage_mask(self, cod_mask: int) -> int:
        cindex = {p: i for i, p in enumerate(self.cod.points)}
        pre = 0
        for i, q in enumerate(self.mapping):
            if cod_mask >> cindex[q] & 1:
                pre |= 1 << i
        return pre

    def compose(self, other: "MeasFn") -> "MeasFn":
        """self after other (other's codomain must be self's domain)."""
        if other.cod != self.dom:
            raise DomainError("composition domain mismatch")
        return MeasFn(other.dom, self.cod,
                      tuple(self(q) for q in other.mapping))

    @classmethod
    def identity(cls, space: FinMeasSpace) -> "MeasFn":
        return cls(space, space, space.points)


def is_measurable(mapping, dom: FinMeasSpace, cod: FinMeasSpace):
    """Check measurability; on failure return a witness codomain set.

    `mapping` is a dict from domain point to codomain point.  Returns
    (True, None) or (False, witness_mask) where the witness's preimage is
    not in dom.sigma.
    """
    cindex = {p: i for i, p in enumerate(cod.points)}
    img = []
    for p in dom.points:
        q = mapping[p]
        if q not in cindex:
            raise DomainError(f"image {q!r} not in codomain")
        img.append(cindex[q])
    for u in sorted(cod.sigma):
        pre = 0
        for i, j in enumerate(img):
            if u >> j & 1:
                pre |= 1 << i
        if pre not in dom.sigma:
            return False, u
    return True, None


def enumerate_meas_fns(X: FinMeasSpace, Y: FinMeasSpace) -> list[MeasFn]:
    """All measurable functions X -> Y in lexicographic mapping order.

    A map is measurable exactly when each atom of X lands inside a single
    atom of Y, which keeps the enumeration cheap; the equivalence with the
    preimage definition is covered by tests.
    """
    if len(Y.points) ** len(X.points) > SIGMA_CAPACITY:
        raise CapacityError("function enumeration exceeds capacity")
    xatoms = X.atoms()
    yatoms = Y.atoms()
    atom_of_x = {}
    for ai, a in enumerate(xatoms):
        for i in range(len(X.points)):
            if a >> i & 1:
                atom_of_x[i] = ai
    out = []
    for assignment in itertools.product(range(len(yatoms)), repeat=len(xatoms)):
        choices = []
        for i in range(len(X.points)):
            ya = yatoms[assignment[atom_of_x[i]]]
            choices.append([Y.points[j] for j in range(len(Y.points)) if ya >> j & 1])
        for combo in itertools.product(*choices):
            out.append(MeasFn(X, Y, tuple(combo)))
    out.sort(key=lambda f: f.mapping)
    return out


def is_separated(X: FinMeasSpace):
    """True iff every pair of distinct points is split by some sigma member.

    Returns (True, None) or (False, (p, q)) with an inseparable pair.
    """
    for i, j in itertools.combinations(range(len(X.points)), 2):
        if not any((u >> i & 1) != (u >> j & 1) for u in X.sigma):
            return False, (X.points[i], X.points[j])
    return True, None
