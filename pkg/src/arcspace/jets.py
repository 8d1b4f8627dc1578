"""Jet schemes over prime fields by exhaustive enumeration.

A level-m jet of ``X`` is a tuple of polynomials of degree <= m in ``t``
satisfying X's equations modulo ``t^(m+1)``. We write the unknown
coefficient of ``t^j`` in coordinate ``x`` as ``x_j``.
"""
from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .algebra import GF, AtLeast, Finite, MultiPoly, TruncSeries, poly_eval_series
from .arcs import Arc, ord_along
from .errors import BudgetExceeded
from .schemes import AffinePresentation, MorphismPresentation, ramification_ideal

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class JetSystem:
    scheme: AffinePresentation
    level: int
    unknowns: tuple[str, ...]
    equations: tuple[MultiPoly, ...]


class _PolySeries:
    """Truncated series whose coefficients are polynomials in the jet unknowns."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[MultiPoly]):
        self.coeffs = list(coeffs)

    def __add__(self, other):
        return _PolySeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        if not isinstance(other, _PolySeries):
            return _PolySeries([a * other for a in self.coeffs])
        n = len(self.coeffs)
        out = [self.coeffs[0] * 0 for _ in range(n)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return _PolySeries(out)


def jet_unknowns(X: AffinePresentation, m: int) -> tuple[str, ...]:
    return tuple(f"{v}_{j}" for v in X.variables for j in range(m + 1))


def jet_equations(X: AffinePresentation, m: int) -> JetSystem:
    if m < 0:
        raise ValueError("jet level must be nonnegative")
    unknowns = jet_unknowns(X, m)
    fld = X.field
    zero = MultiPoly.zero(fld, unknowns)
    one = MultiPoly.constant(fld, unknowns, 1)
    generic = [
        _PolySeries([MultiPoly.variable(fld, unknowns, f"{v}_{j}") for j in range(m + 1)])
        for v in X.variables
    ]
    unit = _PolySeries([one] + [zero] * m)
    equations = []
    for eq in X.equations:
        expanded = eq.evaluate(generic, unit, _PolySeries([zero] * (m + 1)))
        equations.extend(expanded.coeffs)
    return JetSystem(X, m, unknowns, tuple(equations))


def _compile(poly: MultiPoly, p: int):
    return [(int(c) % p, [(i, k) for i, k in enumerate(e) if k]) for e, c in poly.terms.items()]


def enumerate_jets(system: JetSystem, p: int, budget: int = DEFAULT_BUDGET) -> list[tuple[int, ...]]:
    """All F_p-points of the jet system, lexicographic in unknown order."""
    k = len(system.unknowns)
    if p**k > budget:
        raise BudgetExceeded(f"{p}^{k} candidates exceed the budget of {budget}")
    fp = GF(p)
    compiled = [_compile(eq.change_field(fp), p) for eq in system.equations]
    compiled = [c for c in compiled if c]
    if not compiled:
        return list(product(range(p), repeat=k))
    points = []
    for pt in product(range(p), repeat=k):
        for terms in compiled:
            total = 0
            for c, mono in terms:
                for i, e in mono:
                    c = c * pow(pt[i], e, p) % p
                total += c
            if total % p:
                break
        else:
            points.append(pt)
    return points


DEEP = "deep"


@dataclass
class FiberReport:
    level: int
    prime: int
    morphism: str
    birational: bool
    buckets: dict = field(default_factory=dict)
    total_jets: int = 0

    def ordered_keys(self) -> list:
        ints = sorted(k for k in self.buckets if k != DEEP)
        return ints + ([DEEP] if DEEP in self.buckets else [])

    def histogram(self, key) -> dict[int, int]:
        """fiber size -> number of image jets with that fiber size."""
        return dict(sorted(Counter(self.buckets[key]).items()))

    def assertion(self, key) -> str:
        if key == DEEP:
            return "deep contact: excluded"
        if not self.birational:
            return "not declared birational: no assertion"
        if self.level < 2 * key:
            return "m < 2e: no assertion"
        expected = self.prime**key
        return "PASS" if all(s == expected for s in self.buckets[key]) else "FAIL"


def reduce_presentation(X: AffinePresentation, fld) -> AffinePresentation:
    return AffinePresentation(fld, X.variables, [e.change_field(fld) for e in X.equations], X.dim)


def reduce_morphism(f: MorphismPresentation, fld) -> MorphismPresentation:
    return MorphismPresentation(reduce_presentation(f.source, fld),
                                reduce_presentation(f.target, fld),
                                [c.change_field(fld) for c in f.components], name=f.name)


def fiber_statistics(f: MorphismPresentation, m: int, p: int,
                     budget: int = DEFAULT_BUDGET, birational: bool = False) -> FiberReport:
    """Fibers of the level-m jet map over F_p, bucketed by contact order with R_f."""
    fp = GF(p)
    fp_map = reduce_morphism(f, fp)
    system = jet_equations(fp_map.source, m)
    jets = enumerate_jets(system, p, budget)
    ram = ramification_ideal(fp_map)
    width = m + 1
    nvars = fp_map.source.ambient_dim
    fibers: dict = defaultdict(Counter)
    for jet in jets:
        coords = tuple(TruncSeries(fp, jet[i * width:(i + 1) * width], width)
                       for i in range(nvars))
        arc = Arc(fp_map.source, coords)
        contact = ord_along(ram, arc)
        key = contact.value if isinstance(contact, Finite) else DEEP
        image = tuple(tuple(int(c) for c in poly_eval_series(comp, coords).coeffs)
                      for comp in fp_map.components)
        fibers[key][image] += 1
    buckets = {key: sorted(counter.values()) for key, counter in fibers.items()}
    return FiberReport(m, p, f.name, birational, buckets, len(jets))


__all__ = [
    "JetSystem", "FiberReport", "jet_equations", "enumerate_jets", "fiber_statistics",
    "DEFAULT_BUDGET", "DEEP", "AtLeast",
]
