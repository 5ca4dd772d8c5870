import itertools
import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from dihom.exactlin import (GF, QQ, ZZ, CoefficientRing, ExactLinError, LinearSolver, Matrix, MatrixTooLarge,
                            ModuleMorphism, NotWellDefined, PresentedModule, Subquotient, column_span_basis,
                            invariant_factors, is_exact_at, kernel_basis, same_span, smith_normal_form, snf,
                            span_contains)


def int_matrices(max_rows=5, max_cols=5, bound=12):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def determinantal_divisors(rows):
    """gcd of all k x k minors, for each k; the classical characterisation of the Smith form."""
    M = sympy.Matrix(rows)
    r, c = M.shape
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for I in itertools.combinations(range(r), k):
            for J in itertools.combinations(range(c), k):
                g = math.gcd(g, int(M.extract(list(I), list(J)).det()))
        if g == 0:
            break
        out.append(g)
    return out


def diagonal_from_minors(rows):
    d = determinantal_divisors(rows)
    return [d[0]] + [d[i] // d[i - 1] for i in range(1, len(d))] if d else []


def test_known_smith_form():
    m = Matrix(ZZ, [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]])
    U, D, V = smith_normal_form(m)
    assert [D[i, i] for i in range(4)] == [1, 10, 30, 0]
    assert U @ m @ V == D


def test_torsion_from_boundary_of_projective_plane():
    # the classical Z/2 in the first homology of RP^2 arises from this relation matrix
    m = Matrix(ZZ, [[2, 0], [0, 0]])
    assert invariant_factors(m) == (2,)
    M = PresentedModule(ZZ, 2, m)
    assert M.describe() == "Z + Z/2"


@pytest.mark.parametrize("pivot", ["min", "first"])
@settings(max_examples=60, deadline=None)
@given(rows=int_matrices())
def test_snf_certificate(rows, pivot):
    m = Matrix(ZZ, rows)
    s = snf(m, pivot)
    assert s.U @ m @ s.V == s.D
    assert s.U @ s.Uinv == Matrix.identity(ZZ, m.nrows)
    assert s.Uinv @ s.U == Matrix.identity(ZZ, m.nrows)
    assert abs(sympy.Matrix(s.U.tolist()).det()) == 1
    assert abs(sympy.Matrix(s.V.tolist()).det()) == 1
    diag = list(s.diagonal)
    assert all(d > 0 for d in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    for i in range(m.nrows):
        for j in range(m.ncols):
            if i != j or i >= len(diag):
                assert s.D[i, j] == 0


@settings(max_examples=40, deadline=None)
@given(rows=int_matrices(4, 4, 9))
def test_snf_matches_minor_oracle_and_sympy(rows):
    m = Matrix(ZZ, rows)
    assert list(snf(m).diagonal) == diagonal_from_minors(rows)
    assert list(snf(m, "first").diagonal) == diagonal_from_minors(rows)
    S = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
    theirs = [abs(int(S[i, i])) for i in range(min(S.shape)) if S[i, i] != 0]
    assert list(snf(m).diagonal) == theirs


@settings(max_examples=60, deadline=None)
@given(rows=int_matrices())
def test_kernel_basis(rows):
    m = Matrix(ZZ, rows)
    K = kernel_basis(m)
    assert (m @ K).is_zero()
    assert K.ncols == m.ncols - sympy.Matrix(rows).rank()
    # saturation: any integer vector in the rational kernel is an integer combination
    for v in sympy.Matrix(rows).nullspace():
        den = math.lcm(*[int(x.q) for x in v])
        w = [int(x * den) for x in v]
        g = math.gcd(*w)
        w = [x // g for x in w]
        assert LinearSolver(K).contains(w)


@settings(max_examples=60, deadline=None)
@given(rows=int_matrices(), coeffs=st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_solver_round_trip(rows, coeffs):
    m = Matrix(ZZ, rows)
    x = coeffs[:m.ncols]
    b = m.apply(x)
    sol = LinearSolver(m).solve(b)
    assert sol is not None and m.apply(sol) == b


def test_solver_rejects_non_integral():
    m = Matrix(ZZ, [[2, 0], [0, 3]])
    assert LinearSolver(m).solve((1, 0)) is None
    assert LinearSolver(m).solve((4, 9)) == (2, 3)
    assert Matrix(QQ, [[2, 0], [0, 3]]).rank == 2
    assert LinearSolver(Matrix(QQ, [[2, 0], [0, 3]])).solve((1, 0)) == (Fraction(1, 2), 0)


def test_span_tests():
    a = Matrix.from_columns(ZZ, [(1, 0, 0), (0, 1, 0)], 3)
    b = Matrix.from_columns(ZZ, [(1, 1, 0), (1, -1, 0)], 3)
    assert span_contains(a, b)
    assert not span_contains(b, a)
    assert not same_span(a, b)
    assert same_span(a, Matrix.from_columns(ZZ, [(1, 1, 0), (0, 1, 0)], 3))
    assert column_span_basis(b).ncols == 2


def test_fields():
    F = GF(5)
    m = Matrix(F, [[2, 4], [1, 2]])
    assert m.rank == 1
    assert F.inverse(2) == 3
    assert invariant_factors(m) == ()
    s = snf(m)
    assert s.U @ m @ s.V == s.D and list(s.diagonal) == [1]
    assert QQ.coerce("3/4") == Fraction(3, 4)
    with pytest.raises(ValueError):
        CoefficientRing.parse("fp:4")
    assert CoefficientRing.parse("fp:7") == GF(7)
    assert CoefficientRing.parse("q") == QQ


def test_size_cap(monkeypatch):
    monkeypatch.setenv("DIHOM_MAX_MATRIX", "3")
    with pytest.raises(MatrixTooLarge):
        snf(Matrix.zeros(ZZ, 4, 1), "first")


def test_presented_module_and_subquotient():
    M = PresentedModule(ZZ, 3, Matrix.from_columns(ZZ, [(2, 0, 0), (0, 6, 0)], 3))
    assert M.invariant_factors == (2, 6) and M.free_rank == 1
    assert M.is_zero_element((4, -6, 0))
    assert not M.is_zero_element((1, 0, 0))
    assert M.reduce(M.lift((1, 5, 7))) == (1, 5, 7)
    Q = Subquotient(Matrix.identity(ZZ, 2), Matrix.from_columns(ZZ, [(3, 0)], 2))
    assert Q.describe() == "Z + Z/3"
    assert Q.class_of((3, 0)) == Q.class_of((0, 0))


def test_morphisms():
    Z2 = PresentedModule(ZZ, 1, Matrix(ZZ, [[2]]))
    Z = PresentedModule(ZZ, 1)
    Z4 = PresentedModule(ZZ, 1, Matrix(ZZ, [[4]]))
    with pytest.raises(NotWellDefined):
        ModuleMorphism(Z2, Z, Matrix(ZZ, [[1]]))
    double = ModuleMorphism(Z2, Z4, Matrix(ZZ, [[2]]))
    assert double.is_injective() and not double.is_surjective()
    quo = ModuleMorphism(Z4, Z2, Matrix(ZZ, [[1]]))
    assert quo.is_surjective() and not quo.is_injective()
    assert is_exact_at(double, quo)
    assert not is_exact_at(double, ModuleMorphism(Z4, Z4, Matrix(ZZ, [[1]])))
    assert (quo @ double).is_zero()
    assert double.cokernel().describe() == "Z/2"
    assert ModuleMorphism(Z, Z, Matrix(ZZ, [[-1]])).is_isomorphism()


def test_shape_errors():
    with pytest.raises(ExactLinError):
        Matrix(ZZ, [[1, 2]]) @ Matrix(ZZ, [[1, 2]])
    with pytest.raises(ExactLinError):
        PresentedModule(ZZ, 2, Matrix.zeros(ZZ, 3, 1))
