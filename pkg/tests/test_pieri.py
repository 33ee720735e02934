import json
from collections import Counter
from functools import lru_cache
from math import factorial, prod

import pytest

from hilbpieri.classes import FormalSum, MSTriple
from hilbpieri.golden import WORKED_EXAMPLE, WORKED_EXAMPLE_ROW
from hilbpieri.pieri import (
    PieriRow, divisor_h, enumerate_basis, intersect_with_h, pieri_matrix,
)
from hilbpieri.rewrite import rewrite_to_ms, split_h_product


def betti_total(n):
    """Coefficient of q^n in prod_k (1 - q^k)^-3, by repeated series division."""
    series = [1] + [0] * n
    for k in range(1, n + 1):
        for _ in range(3):
            for d in range(k, n + 1):
                series[d] += series[d - k]
    return series[n]


def h_degree_oracle(alpha):
    """Integral of H^d against sigma_alpha, pulled back to (P^2)^N."""
    d = 2 * alpha.n - alpha.codim
    denom = prod(factorial(x - 1) for x in alpha.a)
    denom *= prod(factorial(x) for x in alpha.b)
    denom *= prod(2 * factorial(x - 1) for x in alpha.c)
    denom *= prod(factorial(k) for k in Counter(alpha.c).values())
    num = factorial(d)
    assert num % denom == 0
    return num // denom


def test_worked_example_row():
    row = intersect_with_h(WORKED_EXAMPLE, check_invariants=True)
    assert row.output == WORKED_EXAMPLE_ROW
    assert row.stats.rule_applications > 0 and row.stats.max_terms >= 3


@pytest.mark.parametrize("alpha, want", [
    (MSTriple((), (2,), ()), ((MSTriple((2,), (), ()), 1),)),
    (MSTriple((1,), (), ()), ()),
    (MSTriple((), (), (1,)), ((MSTriple((), (1,), ()), 1),)),
])
def test_small_rows(alpha, want):
    assert intersect_with_h(alpha).output == want


def test_row_json_round_trip():
    row = intersect_with_h(WORKED_EXAMPLE)
    doc = row.to_json()
    assert doc["n"] == 6 and doc["input"] == {"a": [], "b": [], "c": [3, 2, 1]}
    assert doc["terms"][0] == {"a": [], "b": [1], "c": [3, 2], "coef": 1}
    assert PieriRow.from_json(json.loads(json.dumps(doc))) == row


@pytest.mark.parametrize("n", range(0, 9))
def test_basis_size_matches_generating_function(n):
    basis = enumerate_basis(n)
    assert len(basis) == len(set(basis)) == betti_total(n)
    assert all(t.n == n for t in basis)


def test_basis_small_cases():
    assert enumerate_basis(0) == [MSTriple()]
    assert set(enumerate_basis(1)) == {MSTriple((1,)), MSTriple((), (1,)), MSTriple((), (), (1,))}
    two = enumerate_basis(2)
    assert len(two) == 9
    assert divisor_h(2) in two and MSTriple((), (), (2,)) in two


def test_basis_rejects_negative():
    with pytest.raises(ValueError):
        enumerate_basis(-1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matrix_shape(n):
    rows = pieri_matrix(n, check_invariants=True)
    assert len(rows) == betti_total(n)
    assert [r.input for r in rows] == sorted(r.input for r in rows)
    for r in rows:
        for tri, c in r.output:
            assert c != 0
            assert (tri.n, tri.codim) == (n, r.input.codim + 1)


def test_matrix_rejects_zero():
    with pytest.raises(ValueError):
        pieri_matrix(0)


@pytest.mark.parametrize("n", range(1, 7))
def test_h_squared_row(n):
    row = intersect_with_h(divisor_h(n))
    assert row.output
    assert all(t.codim == 2 for t, _ in row.output)


def test_h_times_fundamental_class():
    for n in range(1, 7):
        assert intersect_with_h(MSTriple((), (), (1,) * n)).output == ((divisor_h(n), 1),)


def _degrees(n):
    rows = {r.input: r.output for r in pieri_matrix(n)}
    top = MSTriple((1,) * n)

    @lru_cache(maxsize=None)
    def deg(alpha):
        if alpha.codim == 2 * n:
            return int(alpha == top)
        return sum(c * deg(t) for t, c in rows[alpha])

    return deg


@pytest.mark.parametrize("n", range(1, 6))
def test_top_power_of_h(n):
    deg = _degrees(n)
    fundamental = MSTriple((), (), (1,) * n)
    assert deg(fundamental) == factorial(2 * n) // (2 ** n * factorial(n))


@pytest.mark.parametrize("n", range(1, 6))
def test_h_degrees_match_pullback_oracle(n):
    deg = _degrees(n)
    for alpha in enumerate_basis(n):
        assert deg(alpha) == h_degree_oracle(alpha), alpha


def test_h_degrees_six_points():
    deg = _degrees(6)
    for alpha in enumerate_basis(6):
        assert deg(alpha) == h_degree_oracle(alpha), alpha


def test_linearity_on_combinations():
    alphas = [(WORKED_EXAMPLE, 2), (MSTriple((1,), (2,), (2, 1)), -3), (MSTriple((), (3,), (3,)), 1)]
    combined = FormalSum()
    for alpha, k in alphas:
        for t, c in split_h_product(alpha).items():
            combined.add(t, k * c)
    want = Counter()
    for alpha, k in alphas:
        for tri, c in intersect_with_h(alpha).output:
            want[tri] += k * c
    assert dict(rewrite_to_ms(combined)) == {t: c for t, c in want.items() if c}


def test_matrix_deterministic_across_workers():
    one = [r.to_json() for r in pieri_matrix(3)]
    two = [r.to_json() for r in pieri_matrix(3, workers=2)]
    assert json.dumps(one, sort_keys=True) == json.dumps(two, sort_keys=True)
