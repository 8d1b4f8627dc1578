"""Sparse multivariate polynomials over an exact field."""
from __future__ import annotations

import ast
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ..errors import FieldMismatch
from .fields import Field


class MultiPoly:
    """Polynomial stored as ``{exponent tuple: nonzero coefficient}``.

    The variable list is part of the value: polynomials over different
    variable lists must be aligned with :meth:`over` before being combined.
    """

    __slots__ = ("field", "variables", "terms", "_hash")

    def __init__(self, field: Field, variables: Sequence[str],
                 terms: Mapping[tuple[int, ...], object] | None = None):
        self.field = field
        self.variables = tuple(variables)
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != len(self.variables):
                raise ValueError(
                    f"exponent vector {exps} does not match variables {self.variables}"
                )
            c = field(c)
            if c:
                clean[exps] = c
        self.terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, field, variables):
        return cls(field, variables)

    @classmethod
    def constant(cls, field, variables, value):
        return cls(field, variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, field, variables, name):
        variables = tuple(variables)
        exps = tuple(int(v == name) for v in variables)
        if not any(exps):
            raise ValueError(f"unknown variable {name!r}")
        return cls(field, variables, {exps: 1})

    @classmethod
    def parse(cls, text: str, field: Field, variables: Sequence[str]) -> MultiPoly:
        return parse_poly(text, field, variables)

    # basic queries

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def _check(self, other: MultiPoly):
        if self.variables != other.variables:
            raise ValueError(
                f"polynomials over {self.variables} and {other.variables} not aligned"
            )
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def _lift(self, other) -> MultiPoly:
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.field, self.variables, other)

    # arithmetic

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return MultiPoly(self.field, self.variables, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.field, self.variables,
                         {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.field(other)
            return MultiPoly(self.field, self.variables,
                             {e: v * c for e, v in self.terms.items()})
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms[e] + c1 * c2 if e in terms else c1 * c2
        return MultiPoly(self.field, self.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = MultiPoly.constant(self.field, self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (self.variables == other.variables
                    and self.field == other.field
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction)) or self.field.contains(other):
            return self == self._lift(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # calculus and substitution

    def partial(self, index: int) -> MultiPoly:
        """Formal partial derivative; in characteristic p the exponent is a field element."""
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable index {index} out of range")
        terms = {}
        for e, c in self.terms.items():
            k = e[index]
            if k == 0:
                continue
            new = list(e)
            new[index] = k - 1
            terms[tuple(new)] = c * k
        return MultiPoly(self.field, self.variables, terms)

    def evaluate(self, args: Sequence, one, zero=None):
        """Substitute ``args`` (elements of any ring containing the field) for the variables.

        ``one`` is the unit of the target ring; coefficients act by scalar
        multiplication on it. Powers of each argument are computed once.
        """
        if len(args) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments, got {len(args)}")
        powers: list[dict[int, object]] = [{0: one} for _ in args]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * args[i]
            return cache[k]

        total = zero if zero is not None else one * self.field.zero
        for e in sorted(self.terms):
            term = one * self.terms[e]
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def compose(self, components: Sequence[MultiPoly]) -> MultiPoly:
        """Substitute polynomials (over a common variable list) for each variable."""
        if not components:
            raise ValueError("composition with an empty component list")
        inner = components[0]
        return self.evaluate(components,
                             MultiPoly.constant(self.field, inner.variables, 1),
                             MultiPoly.zero(self.field, inner.variables))

    def over(self, variables: Sequence[str]) -> MultiPoly:
        """Re-express over a larger variable list containing all used variables."""
        variables = tuple(variables)
        index = {v: i for i, v in enumerate(variables)}
        terms = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for v, k in zip(self.variables, e):
                if k:
                    if v not in index:
                        raise ValueError(f"variable {v!r} missing from {variables}")
                    new[index[v]] = k
            terms[tuple(new)] = c
        return MultiPoly(self.field, variables, terms)

    def change_field(self, field: Field) -> MultiPoly:
        return MultiPoly(field, self.variables,
                         {e: field(_as_fraction(c)) for e, c in self.terms.items()})

    # printing

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), [-k for k in e])):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.variables, e) if k
            )
            pieces.append(_signed_term(c, mono))
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, vars={self.variables})"


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    return Fraction(int(c))


def _signed_term(c, mono: str) -> str:
    c_text = str(c)
    if not mono:
        return c_text
    if c_text == "1":
        return mono
    if c_text == "-1":
        return f"-{mono}"
    return f"{c_text}*{mono}"


def align(polys: Iterable[MultiPoly]) -> list[MultiPoly]:
    """Bring polynomials over a union of their variable lists (first-seen order)."""
    polys = list(polys)
    variables: list[str] = []
    for p in polys:
        for v in p.variables:
            if v not in variables:
                variables.append(v)
    return [p.over(variables) for p in polys]


class PolyParseError(ValueError):
    pass


def parse_poly(text: str, field: Field, variables: Sequence[str]) -> MultiPoly:
    """Parse an expression like ``"x^2 - 3/2*y*z + 1"``.

    Accepts ``+ - *``, ``^`` or ``**`` with nonnegative integer exponents,
    division by a nonzero constant, parentheses, integer and rational
    literals, and the declared variable names. Anything else is rejected.
    """
    variables = tuple(variables)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise PolyParseError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def const(value) -> MultiPoly:
        return MultiPoly.constant(field, variables, value)

    def walk(node) -> MultiPoly:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) \
                and not isinstance(node.value, bool):
            return const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in variables:
                raise PolyParseError(
                    f"unknown variable {node.id!r} in {text!r}; declared {list(variables)}"
                )
            return MultiPoly.variable(field, variables, node.id)
        if isinstance(node, ast.UnaryOp):
            if isinstance(node.op, ast.USub):
                return -walk(node.operand)
            if isinstance(node.op, ast.UAdd):
                return walk(node.operand)
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exponent = node.right
                if isinstance(exponent, ast.Constant) and isinstance(exponent.value, int) \
                        and exponent.value >= 0:
                    return walk(node.left) ** exponent.value
                raise PolyParseError(f"exponent must be a nonnegative integer in {text!r}")
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if right.degree() > 0 or right.is_zero():
                    raise PolyParseError(f"division by a non-constant or zero in {text!r}")
                return left * (field.one / right.constant_term())
        raise PolyParseError(f"unsupported syntax {ast.dump(node)} in {text!r}")

    return walk(tree)
