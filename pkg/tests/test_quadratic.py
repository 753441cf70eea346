import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latzero.errors import DimensionMismatch, ValidationError
from latzero.intmat import IntMatrix
from latzero.quadratic import QuadraticPolynomial, evaluate, height, is_regular, restrict

import oracle


def poly(F, L=None, t=0):
    return QuadraticPolynomial(IntMatrix(F), L if L is not None else [0] * len(F), t)


def test_evaluate_examples():
    assert evaluate(poly([[1, 0], [0, 1]], t=-2), (1, 1)) == 0
    assert evaluate(poly([[3, 1], [1, 2]], [1, 1], 7), (0, 0)) == 7
    assert evaluate(poly([[1, 0], [0, -1]], [0, 1], -3), (2, 1)) == 1


def test_evaluate_wrong_length():
    with pytest.raises(DimensionMismatch):
        evaluate(poly([[1, 0], [0, 1]]), (1, 2, 3))


def test_height_examples():
    assert height(poly([[1, 0], [0, 1]], t=-2)) == 2
    assert height(poly([[0, 0], [0, 0]])) == 0
    assert height(poly([[-7, 0], [0, 1]], [3, 0], 5)) == 7


def test_is_regular_examples():
    assert is_regular(poly([[1, 0], [0, 1]]))
    assert not is_regular(poly([[1, 1], [1, 1]]))
    assert is_regular(poly([[1, 0], [0, -1]]))


def test_asymmetric_rejected_with_entries():
    with pytest.raises(ValidationError, match=r"F\[1\]\[0\]=3"):
        poly([[1, 2], [3, 1]])


def test_restrict_identity_basis():
    q = poly([[2, 1], [1, -3]], [4, -1], 6)
    assert restrict(q, IntMatrix.identity(2), (0, 0)) == q


def test_restrict_one_variable():
    g = restrict(poly([[1]]), IntMatrix([[2]]), (1,))
    assert (g.F.tolist(), g.L, g.t) == ([[4]], (4,), 1)


sym = st.integers(1, 4).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(-5, 5), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2),
        st.lists(st.integers(-5, 5), min_size=n, max_size=n),
        st.integers(-5, 5),
    )
)


def build(data):
    upper, lin, t = data
    n = len(lin)
    f = [[0] * n for _ in range(n)]
    it = iter(upper)
    for i in range(n):
        for j in range(i, n):
            f[i][j] = f[j][i] = next(it)
    return QuadraticPolynomial(IntMatrix(f), lin, t), f


@settings(max_examples=300, deadline=None)
@given(sym, st.data())
def test_restriction_identity(data, draw):
    q, f = build(data)
    n = q.dim
    k = draw.draw(st.integers(1, n))
    b = draw.draw(st.lists(st.lists(st.integers(-4, 4), min_size=k, max_size=k), min_size=n, max_size=n))
    c = draw.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    x = draw.draw(st.lists(st.integers(-5, 5), min_size=k, max_size=k))
    g = restrict(q, IntMatrix(b), c)
    point = [c[i] + sum(b[i][j] * x[j] for j in range(k)) for i in range(n)]
    assert evaluate(g, x) == oracle.qvalue(f, q.L, q.t, point)
    assert g.F == g.F.T


@settings(max_examples=100, deadline=None)
@given(sym, st.integers(-4, 4))
def test_scaling_point_scales_form(data, s):
    q, f = build(data)
    form = QuadraticPolynomial.form(q.F)
    x = list(range(1, q.dim + 1))
    assert evaluate(form, [s * v for v in x]) == s * s * evaluate(form, x)
