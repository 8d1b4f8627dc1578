"""Affine schemes and morphisms given by equations, with their Fitting-ideal loci."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import MultiPoly
from .algebra.fields import Field
from .matrix import Matrix, minors


@dataclass(frozen=True)
class AffinePresentation:
    """A closed subscheme ``V(equations)`` of affine space, of declared pure dimension."""

    field: Field
    variables: tuple[str, ...]
    equations: tuple[MultiPoly, ...] = ()
    dim: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "equations", tuple(self.equations))
        if self.dim is None:
            if self.equations:
                raise ValueError("declared dimension is required when equations are given")
            object.__setattr__(self, "dim", len(self.variables))
        if not 0 <= self.dim <= len(self.variables):
            raise ValueError(
                f"declared dimension {self.dim} exceeds ambient dimension {len(self.variables)}"
            )
        for eq in self.equations:
            if eq.variables != self.variables:
                raise ValueError(f"equation {eq} is not over {self.variables}")
            if eq.field != self.field:
                raise ValueError(f"equation {eq} is over {eq.field}, scheme over {self.field}")

    @classmethod
    def affine_space(cls, field: Field, variables: Sequence[str]) -> AffinePresentation:
        return cls(field, tuple(variables))

    @property
    def ambient_dim(self) -> int:
        return len(self.variables)

    @property
    def is_affine_space(self) -> bool:
        return not self.equations

    def one(self) -> MultiPoly:
        return MultiPoly.constant(self.field, self.variables, 1)

    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.field, self.variables)


@dataclass(frozen=True)
class MorphismPresentation:
    source: AffinePresentation
    target: AffinePresentation
    components: tuple[MultiPoly, ...]
    name: str = field(default="f", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.target.ambient_dim:
            raise ValueError(
                f"{len(self.components)} components for a target in "
                f"A^{self.target.ambient_dim}"
            )
        if self.source.dim != self.target.dim:
            raise ValueError(
                f"source dimension {self.source.dim} differs from target "
                f"dimension {self.target.dim}"
            )
        if self.source.field != self.target.field:
            raise ValueError("source and target are over different fields")
        for c in self.components:
            if c.variables != self.source.variables:
                raise ValueError(f"component {c} is not over {self.source.variables}")

    @property
    def field(self) -> Field:
        return self.source.field


def compose(g: MorphismPresentation, f: MorphismPresentation) -> MorphismPresentation:
    """The morphism ``g o f`` (first ``f``, then ``g``)."""
    if f.target.variables != g.source.variables:
        raise ValueError("f's target and g's source use different coordinates")
    comps = [c.compose(f.components) for c in g.components]
    return MorphismPresentation(f.source, g.target, comps, name=f"{g.name}o{f.name}")


def jacobian(equations: Sequence[MultiPoly], variables: Sequence[str]) -> Matrix:
    """Rows index equations, columns index variables."""
    variables = tuple(variables)
    for eq in equations:
        if eq.variables != variables:
            raise ValueError(f"{eq} is not over {variables}")
    return Matrix.from_rows([[eq.partial(j) for j in range(len(variables))]
                             for eq in equations], ncols=len(variables))


def fitting_ideal(presentation: Matrix, r: int, one: MultiPoly) -> list[MultiPoly]:
    """Generators of Fitt^r of the cokernel of ``presentation`` (b = number of rows).

    ``one`` fixes the ring (field and variables) for the degenerate cases:
    the unit ideal when ``r >= b``, the zero ideal when there are no minors
    of size ``b - r``. Zero minors are dropped and duplicates collapsed.
    """
    if r < 0:
        raise ValueError("Fitting index must be nonnegative")
    b, a = presentation.shape
    size = b - r
    if size <= 0:
        return [one]
    zero = one * 0
    if size > a:
        return [zero]
    gens: list[MultiPoly] = []
    for m in minors(presentation, size, zero):
        if not m.is_zero() and m not in gens:
            gens.append(m)
    return gens or [zero]


def relative_differentials_presentation(f: MorphismPresentation) -> Matrix:
    """Presentation of Omega_{X/Y}: generators dx_i, relations d(f_j) then d(equations)."""
    src = f.source
    comps = jacobian(f.components, src.variables).transpose()
    eqs = jacobian(src.equations, src.variables).transpose()
    return comps.hstack(eqs)


def ramification_ideal(f: MorphismPresentation) -> list[MultiPoly]:
    return fitting_ideal(relative_differentials_presentation(f), 0, f.source.one())


def singular_locus_ideal(Y: AffinePresentation) -> list[MultiPoly]:
    """Equations of ``Y`` together with Fitt^n(Omega_Y), n the declared dimension."""
    if Y.is_affine_space:
        return [Y.one()]
    omega = jacobian(Y.equations, Y.variables).transpose()
    fitt = fitting_ideal(omega, Y.dim, Y.one())
    gens = list(Y.equations)
    for g in fitt:
        if g not in gens:
            gens.append(g)
    return gens
