import random
from pathlib import Path

import pytest

from arcspace.algebra import GF, QQ, Finite, TruncSeries, parse_poly
from arcspace.matrix import Matrix, determinant
from arcspace.schemes import AffinePresentation, MorphismPresentation

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "arcspace" / "fixtures"

# filled by test_acceptance, echoed after the run
ACCEPTANCE_LINES = []


def poly(text, variables, field=QQ):
    return parse_poly(text, field, tuple(variables))


def series(coeffs, n, field=QQ):
    return TruncSeries(field, coeffs, n)


def mono(k, n, field=QQ, c=1):
    return TruncSeries.monomial(field, k, n, c)


def series_matrix(rows, n, field=QQ):
    return Matrix.from_rows([[series(c, n, field) if isinstance(c, list) else c for c in r]
                             for r in rows])


def coeff_lists(m: Matrix):
    return [[list(e.coeffs) for e in row] for row in m.rows]


def assert_smith_valid(M, snf):
    """U D V == M to precision, unimodular factors, nondecreasing divisors."""
    field = M[0, 0].field
    N = snf.precision
    zero = TruncSeries.zero(field, N)
    rebuilt = snf.U.matmul(snf.diagonal(field), zero).matmul(snf.V, zero)
    assert rebuilt == M.map(lambda s: s.with_precision(N))
    assert determinant(snf.U, zero).val() == Finite(0)
    assert determinant(snf.V, zero).val() == Finite(0)
    r, c = M.shape
    assert snf.U.matmul(snf.U_inv, zero) == Matrix.identity(r, zero + 1, zero)
    assert snf.V.matmul(snf.V_inv, zero) == Matrix.identity(c, zero + 1, zero)
    exps = snf.finite_exponents
    assert exps == sorted(exps)
    kinds = [isinstance(d, Finite) for d in snf.divisors]
    assert kinds == sorted(kinds, reverse=True)


def affine(variables, field=QQ):
    return AffinePresentation.affine_space(field, tuple(variables))


def morphism(source, target, comps, name="f"):
    return MorphismPresentation(source, target,
                                [poly(c, source.variables, source.field) for c in comps], name)


def random_entry(rng: random.Random, field, n, max_val=3, max_len=4):
    """Random polynomial in t with valuation <= max_val (or zero, rarely)."""
    if rng.random() < 0.1:
        return TruncSeries.zero(field, n)
    v = rng.randint(0, max_val)
    coeffs = [0] * v + [rng.choice([c for c in range(-3, 4) if c])]
    coeffs += [rng.randint(-3, 3) for _ in range(rng.randint(0, max_len))]
    return TruncSeries(field, coeffs, n)


def random_square_matrix(rng, field, n, N, max_val=3):
    return Matrix.from_rows([[random_entry(rng, field, N, max_val) for _ in range(n)]
                             for _ in range(n)])


def randomized_corpus(count=200, N=16, seed=20261014):
    """Square matrices over Q and F_5, sizes 1..4, keeping those with 2*val(det) < N."""
    rng = random.Random(seed)
    corpus = []
    fields = [QQ, GF(5)]
    while len(corpus) < count:
        field = fields[len(corpus) % 2]
        n = rng.randint(1, 4)
        M = random_square_matrix(rng, field, n, N)
        v = determinant(M, TruncSeries.zero(field, N)).val()
        if hasattr(v, "value") and 2 * v.value < N:
            corpus.append(M)
    return corpus


@pytest.fixture(scope="session")
def corpus():
    return randomized_corpus()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
