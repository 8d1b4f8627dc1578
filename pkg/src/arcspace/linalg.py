"""Exact rank of matrices over Q or F_p by Gaussian elimination."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .algebra.fields import Field, PrimeField


def rank(rows: Sequence[Sequence], field: Field) -> int:
    """Rank of a matrix whose entries are scalars of ``field``."""
    if isinstance(field, PrimeField):
        p = field.p
        return _rank_mod_p([[int(x) % p for x in r] for r in rows], p)
    return _rank_integer([_clear_denominators(r) for r in rows])


def _clear_denominators(row) -> list[int]:
    fracs = [Fraction(x) for x in row]
    den = 1
    for f in fracs:
        den = lcm(den, f.denominator)
    return [int(f * den) for f in fracs]


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for col in range(ncols):
        pivot = next((i for i in range(rk, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rk], rows[pivot] = rows[pivot], rows[rk]
        prow = rows[rk]
        inv = pow(prow[col], -1, p)
        for i in range(rk + 1, len(rows)):
            f = rows[i][col]
            if f:
                f = f * inv % p
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], prow)]
        rk += 1
        if rk == len(rows):
            break
    return rk


def _rank_integer(rows: list[list[int]]) -> int:
    # fraction-free elimination; rows are divided by their content to curb growth
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    for col in range(ncols):
        pivot = next((i for i in range(rk, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rk], rows[pivot] = rows[pivot], rows[rk]
        prow = rows[rk]
        a = prow[col]
        for i in range(rk + 1, len(rows)):
            b = rows[i][col]
            if b:
                g = gcd(a, b)
                ma, mb = a // g, b // g
                new = [ma * x - mb * y for x, y in zip(rows[i], prow)]
                content = 0
                for x in new:
                    if x:
                        content = gcd(content, x)
                        if content == 1:
                            break
                if content > 1:
                    new = [x // content for x in new]
                rows[i] = new
        rk += 1
        if rk == len(rows):
            break
    return rk
