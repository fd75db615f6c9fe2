"""Finitely-supported probability measures and the measure monad.

Measures live on the atoms of their sigma-algebra, not on points: on a
non-separated space distinct point weightings induce the same measure,
and atom masses make equality decidable and canonical.  Distributions
over distributions carry their finite support explicitly with a powerset
sigma-algebra, which is all the multiplication ever reads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .convex import GeomCvx, SemiCvx, free_convex
from .kernel import DomainError, ONE, ZERO, rat, rat_str
from .measurable import FinMeasSpace, MeasFn
from .reports import LawReport

DEFAULT_GRID = (ZERO, Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), ONE)


class MeasurabilityError(DomainError):
    """An integrand is not constant on the atoms of its space."""


@dataclass(frozen=True)
class FinDist:
    """A probability measure, stored as masses on the sigma-algebra atoms."""

    space: FinMeasSpace
    mass: tuple[Fraction, ...]

    def __post_init__(self):
        atoms = self.space.atoms()
        if len(self.mass) != len(atoms):
            raise DomainError("need exactly one mass per atom")
        if any(m < 0 for m in self.mass):
            raise DomainError("masses must be nonnegative")
        if sum(self.mass, ZERO) != ONE:
            raise DomainError("masses must sum to exactly 1")

    @classmethod
    def from_atom_masses(cls, space, masses) -> "FinDist":
        return cls(space, tuple(rat(m) for m in masses))

    def measure(self, mask: int) -> Fraction:
        if mask not in self.space.sigma:
            raise DomainError("set is not measurable")
        return sum((m for a, m in zip(self.space.atoms(), self.mass)
                    if a & ~mask == 0), ZERO)

    def describe(self) -> str:
        parts = []
        for a, m in zip(self.space.atoms(), self.mass):
            names = "|".join(self.space.subset_names(a))
            parts.append(f"{names}:{rat_str(m)}")
        return "{" + ", ".join(parts) + "}"


def dirac(X: FinMeasSpace, x: str) -> FinDist:
    """Unit mass on the atom containing x."""
    if x not in X.points:
        raise DomainError(f"unknown point {x!r}")
    target = X.atom_of(x)
    return FinDist(X, tuple(ONE if a == target else ZERO for a in X.atoms()))


def pushforward(f: MeasFn, P: FinDist) -> FinDist:
    """The image measure: (f_* P)(V) = P(f^-1(V))."""
    if P.space != f.dom:
        raise DomainError("measure does not live on the map's domain")
    masses = [P.measure(f.preimage_mask(a)) for a in f.cod.atoms()]
    return FinDist(f.cod, tuple(masses))


def _atom_values(P: FinDist, f) -> list[Fraction]:
    """Resolve an integrand to one value per atom, checking measurability."""
    atoms = P.space.atoms()
    if callable(f):
        f = {p: f(p) for p in P.space.points}
    if all(isinstance(k, int) for k in f):
        return [rat(f[a]) for a in atoms]
    vals = []
    for a in atoms:
        pts = P.space.subset_names(a)
        got = {rat(f[p]) for p in pts}
        if len(got) != 1:
            raise MeasurabilityError(
                f"integrand is not constant on the atom {pts}")
        vals.append(got.pop())
    return vals


def integrate(P: FinDist, f) -> Fraction:
    """Exact integral of an atom-constant function with values in [0,1].

    `f` may be keyed by atom mask or by point (checked for atom
    constancy), or be a callable on points.
    """
    vals = _atom_values(P, f)
    for v in vals:
        if not (ZERO <= v <= ONE):
            raise DomainError("integrand values must lie in [0, 1]")
    return sum((m * v for m, v in zip(P.mass, vals)), ZERO)


# ---------------------------------------------------------------------------
# distributions over distributions


@dataclass(frozen=True)
class DistOverDists:
    """A finitely-supported distribution whose points are measures.

    The carrier is the support itself with the powerset sigma-algebra.
    """

    base: FinMeasSpace
    support: tuple[FinDist, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.support) != len(self.weights) or not self.support:
            raise DomainError("support and weights must align and be nonempty")
        if len(set(self.support)) != len(self.support):
            raise DomainError("support elements must be distinct")
        if any(w <= 0 for w in self.weights):
            raise DomainError("weights must be positive")
        if sum(self.weights, ZERO) != ONE:
            raise DomainError("weights must sum to 1")
        for q in self.support:
            if q.space != self.base:
                raise DomainError("mixed base spaces in support")

    @classmethod
    def of(cls, base, pairs) -> "DistOverDists":
        """Build from (weight, measure) pairs, merging duplicate measures."""
        acc: dict[FinDist, Fraction] = {}
        for w, q in pairs:
            w = rat(w)
            if w == 0:
                continue
            acc[q] = acc.get(q, ZERO) + w
        support = sorted(acc, key=lambda q: q.mass)
        return cls(base, tuple(support), tuple(acc[q] for q in support))

    def weight_of(self, q: FinDist) -> Fraction:
        for s, w in zip(self.support, self.weights):
            if s == q:
                return w
        return ZERO

    def describe(self) -> str:
        parts = [f"{rat_str(w)}@{q.describe()}"
                 for q, w in zip(self.support, self.weights)]
        return "[" + "; ".join(parts) + "]"


def mu(PP: DistOverDists) -> FinDist:
    """Monad multiplication: mu(PP)(U) integrates ev_U over the support."""
    masses = []
    for a in PP.base.atoms():
        masses.append(sum((w * q.measure(a)
                           for q, w in zip(PP.support, PP.weights)), ZERO))
    return FinDist(PP.base, tuple(masses))


def flatten_oracle(PP: DistOverDists) -> FinDist:
    """Independent route to the multiplication: scale and regroup the
    support's atom-mass lists as formal weighted terms."""
    terms: list[tuple[int, Fraction]] = []
    for q, w in zip(PP.support, PP.weights):
        for a, m in zip(q.space.atoms(), q.mass):
            terms.append((a, w * m))
    acc: dict[int, Fraction] = {}
    for a, wm in terms:
        acc[a] = acc.get(a, ZERO) + wm
    return FinDist(PP.base, tuple(acc.get(a, ZERO) for a in PP.base.atoms()))


def unit_outer(P: FinDist) -> DistOverDists:
    """The dirac at P, one level up."""
    return DistOverDists(P.space, (P,), (ONE,))


def map_unit(P: FinDist) -> DistOverDists:
    """Push P forward along x -> dirac(x); constant on atoms, so the
    resulting support is one dirac per atom with positive mass."""
    pairs = []
    for a, m in zip(P.space.atoms(), P.mass):
        if m > 0:
            rep = P.space.subset_names(a)[0]
            pairs.append((m, dirac(P.space, rep)))
    return DistOverDists.of(P.space, pairs)


def push_outer(f: MeasFn, PP: DistOverDists) -> DistOverDists:
    """Apply the monad's functor action to a distribution of measures."""
    return DistOverDists.of(
        f.cod, [(w, pushforward(f, q)) for q, w in zip(PP.support, PP.weights)])


ThreeLevel = tuple[tuple[Fraction, DistOverDists], ...]


def flatten_outer(PPP: ThreeLevel) -> DistOverDists:
    """Multiplication applied at the outer two levels of a three-level
    measure (the support stays at the middle level)."""
    base = PPP[0][1].base
    acc: dict[FinDist, Fraction] = {}
    for w, PP in PPP:
        for q, v in zip(PP.support, PP.weights):
            acc[q] = acc.get(q, ZERO) + rat(w) * v
    support = sorted(acc, key=lambda q: q.mass)
    return DistOverDists(base, tuple(support), tuple(acc[q] for q in support))


def map_mu(PPP: ThreeLevel, mu_fn=mu) -> DistOverDists:
    """Push a three-level measure down along the multiplication."""
    base = PPP[0][1].base
    return DistOverDists.of(base, [(w, mu_fn(PP)) for w, PP in PPP])


# ---------------------------------------------------------------------------
# measures as a convex space


def P_as_convex(X: FinMeasSpace) -> GeomCvx:
    """The simplex of measures on X, one coordinate per atom."""
    return free_convex(len(X.atoms()))


def dist_to_coords(P: FinDist) -> tuple[Fraction, ...]:
    return P.mass


def coords_to_dist(X: FinMeasSpace, coords) -> FinDist:
    return FinDist(X, tuple(rat(c) for c in coords))


def mix_dists(P: FinDist, Q: FinDist, alpha) -> FinDist:
    alpha = rat(alpha)
    if P.space != Q.space:
        raise DomainError("cannot mix measures on different spaces")
    return FinDist(P.space, tuple((ONE - alpha) * p + alpha * q
                                  for p, q in zip(P.mass, Q.mass)))


# ---------------------------------------------------------------------------
# weakly averaging functionals


@dataclass(frozen=True)
class WAFunctional:
    """A convex combination of evaluation maps over a convex space.

    Acting on a function m (anything with .apply or callable) gives
    sum_i w_i m(a_i); constants go to themselves because the weights sum
    to one.
    """

    base: object
    terms: tuple[tuple[Fraction, object], ...]

    def __post_init__(self):
        ws = [w for w, _ in self.terms]
        if any(w <= 0 for w in ws):
            raise DomainError("weights must be positive")
        if sum(ws, ZERO) != ONE:
            raise DomainError("weights must sum to exactly 1")

    @classmethod
    def unchecked(cls, base, terms) -> "WAFunctional":
        """Bypass the weight-sum validation (for harness self-tests)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "base", base)
        object.__setattr__(obj, "terms", tuple(terms))
        return obj

    def apply(self, m) -> Fraction:
        call = m.apply if hasattr(m, "apply") else m
        return sum((w * rat(call(a)) for w, a in self.terms), ZERO)


def wa_functional(A, weights, points) -> WAFunctional:
    weights = [rat(w) for w in weights]
    if sum(weights, ZERO) != ONE:
        raise DomainError("weights must sum to 1")
    terms = [(w, p) for w, p in zip(weights, points) if w > 0]
    return WAFunctional(A, tuple(terms))


def wa_check(F: WAFunctional, endos, test_fns,
             constants=(ZERO, Fraction(1, 2), ONE)) -> dict:
    """Verify constants map to themselves and scaling equivariance.

    For each interval endomorphism <s,t> and test function m the identity
    F(s*m + t) = s*F(m) + t must hold exactly.
    """
    entries = []
    for c in constants:
        got = F.apply(lambda _a, c=c: c)
        entries.append({"law": "constant", "value": rat_str(rat(c)),
                        "passed": got == rat(c), "got": rat_str(got)})
    for e in endos:
        for i, m in enumerate(test_fns):
            call = m.apply if hasattr(m, "apply") else m
            lhs = F.apply(lambda a, e=e, call=call: e.s * rat(call(a)) + e.t)
            rhs = e.s * F.apply(m) + e.t
            entries.append({
                "law": "equivariance",
                "endo": (rat_str(e.s), rat_str(e.t)),
                "fn": i,
                "passed": lhs == rhs,
            })
    return {"passed": all(x["passed"] for x in entries), "entries": entries}


def measure_to_functional(P: FinDist, A: SemiCvx) -> WAFunctional:
    """phi: a measure on the generated space of A becomes the weakly
    averaging functional evaluating indicators at support points."""
    if tuple(P.space.points) != tuple(A.elements):
        raise DomainError("measure does not live on the carrier of A")
    terms = []
    for a, m in zip(P.space.atoms(), P.mass):
        if m > 0:
            terms.append((m, P.space.subset_names(a)[0]))
    return WAFunctional(A, tuple(terms))


def functional_to_measure(F: WAFunctional, space: FinMeasSpace) -> FinDist:
    """phi inverse: read the measure back off the evaluation terms."""
    acc: dict[int, Fraction] = {}
    for w, a in F.terms:
        atom = space.atom_of(a)
        acc[atom] = acc.get(atom, ZERO) + w
    return FinDist(space, tuple(acc.get(a, ZERO) for a in space.atoms()))


# ---------------------------------------------------------------------------
# monad-law checking


def grid_dists(X: FinMeasSpace, grid=DEFAULT_GRID) -> list[FinDist]:
    """All measures on X whose atom masses come from the grid."""
    k = len(X.atoms())
    out = []
    for combo in itertools.product(grid, repeat=k):
        if sum(combo, ZERO) == ONE:
            out.append(FinDist(X, tuple(combo)))
    return out


def grid_weightings(n: int, grid=DEFAULT_GRID) -> list[tuple[Fraction, ...]]:
    """Strictly positive grid weight vectors of length n summing to one."""
    pos = [g for g in grid if g > 0]
    return [c for c in itertools.product(pos, repeat=n) if sum(c, ZERO) == ONE]


def two_level_dists(X: FinMeasSpace, grid=DEFAULT_GRID,
                    max_support: int = 3) -> list[DistOverDists]:
    """All grid-weighted distributions over grid measures on X, with
    support size up to `max_support`."""
    inner = grid_dists(X, grid)
    out = []
    for size in range(1, max_support + 1):
        for support in itertools.combinations(inner, size):
            for ws in grid_weightings(size, grid):
                out.append(DistOverDists(X, support, ws))
    return out


def monad_law_report(X: FinMeasSpace, grid=DEFAULT_GRID, max_support: int = 3,
                     mu_fn=mu, naturality_maps=(), assoc_outer_limit: int = 25,
                     instance_prefix: str = "") -> LawReport:
    """Check the monad laws with exact equality on grid-valued measures.

    Unit laws and the flatten oracle run over every two-level grid
    measure; associativity runs over three-level measures with outer
    support up to two drawn from a deterministic prefix of the two-level
    family.  `naturality_maps` is a list of MeasFn out of X checked for
    unit and multiplication naturality.  `mu_fn` exists so harness
    self-tests can inject a corrupted multiplication.
    """
    rep = LawReport("giry-monad")
    pre = instance_prefix
    dists = grid_dists(X, grid)
    for i, P in enumerate(dists):
        inst = f"{pre}P{i}"
        got = mu_fn(unit_outer(P))
        rep.record(got == P, "mu.unit-left", inst, witness=got.describe(),
                   detail=P.describe())
        got = mu_fn(map_unit(P))
        rep.record(got == P, "mu.unit-right", inst, witness=got.describe())
    two_level = two_level_dists(X, grid, max_support)
    for i, PP in enumerate(two_level):
        inst = f"{pre}PP{i}"
        lhs = mu_fn(PP)
        rhs = flatten_oracle(PP)
        rep.record(lhs == rhs, "mu.flatten-oracle", inst,
                   witness=(lhs.describe(), rhs.describe()),
                   detail=PP.describe())
    prefix = two_level[:assoc_outer_limit]
    triples = [((ONE, PP),) for PP in prefix]
    for PPa, PPb in itertools.combinations(prefix, 2):
        for w in grid_weightings(2, grid):
            triples.append(((w[0], PPa), (w[1], PPb)))
    for i, PPP in enumerate(triples):
        inst = f"{pre}PPP{i}"
        lhs = mu_fn(flatten_outer(PPP))
        rhs = mu_fn(map_mu(PPP, mu_fn=mu_fn))
        rep.record(lhs == rhs, "mu.associativity", inst,
                   witness=(lhs.describe(), rhs.describe()))
    for j, f in enumerate(naturality_maps):
        for x in X.points:
            inst = f"{pre}nat-eta-f{j}-{x}"
            lhs = pushforward(f, dirac(X, x))
            rhs = dirac(f.cod, f(x))
            rep.record(lhs == rhs, "eta.naturality", inst,
                       witness=(lhs.describe(), rhs.describe()))
        for i, PP in enumerate(two_level):
            inst = f"{pre}nat-mu-f{j}-PP{i}"
            lhs = mu_fn(push_outer(f, PP))
            rhs = pushforward(f, mu_fn(PP))
            rep.record(lhs == rhs, "mu.naturality", inst,
                       witness=(lhs.describe(), rhs.describe()))
    return rep
