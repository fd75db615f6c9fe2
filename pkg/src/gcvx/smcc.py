"""Monoidal structure of finite measurable spaces.

Tensor and product sigma-algebras on cartesian products, function spaces
with the evaluation-induced sigma-algebra, currying, and the threshold /
lower-indicator maps on the unit interval together with the section
property of Lebesgue integration on step functions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .kernel import CapacityError, DomainError, ONE, ZERO, StepFn, rat, rat_str, step_integrate
from .measurable import (
    FinMeasSpace,
    MeasFn,
    coinduced_sigma,
    enumerate_meas_fns,
    generate_sigma,
    induced_sigma,
    is_measurable,
)

TENSOR_POINT_GUARD = 16


def pair_name(x: str, y: str) -> str:
    return f"({x},{y})"


def product_points(X: FinMeasSpace, Y: FinMeasSpace) -> tuple[str, ...]:
    return tuple(pair_name(x, y) for x, y in itertools.product(X.points, Y.points))


@dataclass(frozen=True)
class TensorSpace:
    left: FinMeasSpace
    right: FinMeasSpace
    carrier: FinMeasSpace


@dataclass(frozen=True)
class FnSpace:
    base: FinMeasSpace
    target: FinMeasSpace
    elements: tuple[MeasFn, ...]
    carrier: FinMeasSpace


def _check_tensor_guard(X, Y):
    if len(X.points) * len(Y.points) > TENSOR_POINT_GUARD:
        raise CapacityError("product carrier exceeds the tensor guard")


def tensor_space(X: FinMeasSpace, Y: FinMeasSpace, graphs: str = "all") -> TensorSpace:
    """The largest sigma-algebra making all graph maps measurable.

    With graphs="all" the family contains the graph of every measurable
    cross map in both directions; graphs="constant" restricts to graphs
    of constant maps (a strictly weaker condition, kept for comparison).
    """
    _check_tensor_guard(X, Y)
    if graphs not in ("all", "constant"):
        raise DomainError(f"unknown graph family {graphs!r}")
    carrier = product_points(X, Y)
    family = []
    for f in enumerate_meas_fns(X, Y):
        if graphs == "constant" and len(set(f.mapping)) > 1:
            continue
        family.append((X, {x: pair_name(x, f(x)) for x in X.points}))
    for g in enumerate_meas_fns(Y, X):
        if graphs == "constant" and len(set(g.mapping)) > 1:
            continue
        family.append((Y, {y: pair_name(g(y), y) for y in Y.points}))
    return TensorSpace(X, Y, coinduced_sigma(carrier, family))


def product_space(X: FinMeasSpace, Y: FinMeasSpace) -> FinMeasSpace:
    """The sigma-algebra generated by measurable rectangles."""
    _check_tensor_guard(X, Y)
    carrier = product_points(X, Y)
    index = {p: i for i, p in enumerate(carrier)}
    rects = []
    for u in X.sigma:
        for v in Y.sigma:
            m = 0
            for i, x in enumerate(X.points):
                if not (u >> i & 1):
                    continue
                for j, y in enumerate(Y.points):
                    if v >> j & 1:
                        m |= 1 << index[pair_name(x, y)]
            rects.append(m)
    return generate_sigma(carrier, rects)


def _element_name(f: MeasFn) -> str:
    return ",".join(f.mapping)


def function_space(X: FinMeasSpace, Y: FinMeasSpace) -> FnSpace:
    """The measurable functions X -> Y with the evaluation-induced sigma."""
    elements = tuple(enumerate_meas_fns(X, Y))
    names = tuple(_element_name(f) for f in elements)
    # capacity precheck on the induced partition: elements are identified
    # exactly when their values agree atom-by-atom in the target
    yatoms = Y.atoms()

    def profile(f):
        return tuple(next(k for k, a in enumerate(yatoms)
                          if a >> Y.points.index(f(x)) & 1)
                     for x in X.points)

    if len({profile(f) for f in elements}) > 20:
        raise CapacityError("function-space sigma-algebra exceeds capacity")
    family = []
    for x in X.points:
        mapping = {name: f(x) for name, f in zip(names, elements)}
        family.append((mapping, Y))
    carrier = induced_sigma(names, family)
    return FnSpace(X, Y, elements, carrier)


def eval_map(X: FinMeasSpace, Y: FinMeasSpace) -> MeasFn:
    """(x, f) -> f(x) on the tensor of X with the function space.

    Measurability is asserted; a failure would be a library bug.
    """
    F = function_space(X, Y)
    T = tensor_space(X, F.carrier)
    mapping = []
    lookup = dict(zip(F.carrier.points, F.elements))
    for p in T.carrier.points:
        x, fname = p[1:-1].split(",", 1)
        mapping.append(lookup[fname](x))
    ok, witness = is_measurable(dict(zip(T.carrier.points, mapping)),
                                T.carrier, Y)
    assert ok, f"evaluation map not measurable; witness {witness}"
    return MeasFn(T.carrier, Y, tuple(mapping))


def curry(f: MeasFn, X: FinMeasSpace, Z: FinMeasSpace, Y: FinMeasSpace,
          F: FnSpace = None) -> MeasFn:
    """Transpose a map on the tensor of X and Z into a map Z -> Y^X.

    Pass a precomputed function space to avoid rebuilding it per call.
    """
    if F is None:
        F = function_space(X, Y)
    by_name = {_element_name(el): el for el in F.elements}
    mapping = []
    for z in Z.points:
        section = tuple(f(pair_name(x, z)) for x in X.points)
        name = ",".join(section)
        if name not in by_name:
            raise RuntimeError(
                f"section at {z!r} is not a measurable element of the "
                f"function space")
        mapping.append(name)
    return MeasFn(Z, F.carrier, tuple(mapping))


def uncurry(g: MeasFn, X: FinMeasSpace, Z: FinMeasSpace, Y: FinMeasSpace,
            F: FnSpace = None, T: TensorSpace = None) -> MeasFn:
    """Inverse transpose: a map Z -> Y^X becomes a map on the tensor.

    Precomputed function and tensor spaces avoid rebuilding per call.
    """
    if F is None:
        F = function_space(X, Y)
    if T is None:
        T = tensor_space(X, Z)
    lookup = dict(zip(F.carrier.points, F.elements))
    mapping = []
    for p in T.carrier.points:
        x, z = p[1:-1].split(",", 1)
        mapping.append(lookup[g(z)](x))
    return MeasFn(T.carrier, Y, tuple(mapping))


# ---------------------------------------------------------------------------
# threshold and lower-indicator maps on the interval


def ge_map(u, v) -> int:
    """1 iff v <= u (non-strict at the boundary), else 0."""
    u, v = rat(u), rat(v)
    if not (ZERO <= u <= ONE) or not (ZERO <= v <= ONE):
        raise DomainError("arguments must lie in [0, 1]")
    return 1 if v <= u else 0


def down_map(u) -> StepFn:
    """The indicator of [0, u] as a step function.

    Pieces are right-open, so the single interior point u itself carries
    the value of the following piece; this differs from the closed
    indicator on a set of measure zero and is invisible to integration.
    """
    u = rat(u)
    if not (ZERO <= u <= ONE):
        raise DomainError("argument must lie in [0, 1]")
    if u == ONE:
        return StepFn.constant(ONE)
    if u == ZERO:
        return StepFn.constant(ZERO)
    return StepFn.of((ZERO, u, ONE), (ONE, ZERO), ZERO)


def lebesgue_section_check(samples, functional_values=(), integrator=step_integrate) -> dict:
    """Verify that integrating the lower indicator returns its level.

    `samples` are levels u; `functional_values` are values attributed to a
    probability functional, checked through the identical section
    property.  Failures are report entries, never exceptions.
    """
    entries = []
    for kind, vals in (("sample", samples), ("functional", functional_values)):
        for v in vals:
            v = rat(v)
            got = integrator(down_map(v))
            entries.append({
                "kind": kind,
                "level": rat_str(v),
                "integral": rat_str(got),
                "passed": got == v,
            })
    return {"passed": all(e["passed"] for e in entries), "entries": entries}
