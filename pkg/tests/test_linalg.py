"""Exact rank machinery and backend equivalence.

The compiled row-reduction kernel and the pure Python twin must agree
bit for bit on every input; canonical echelon bases make span equality
a plain matrix comparison.
"""

import os
import subprocess
import sys
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from ncfourier._accel import BACKEND, rref
from ncfourier._accel._rrefpy import rref as rref_py
from ncfourier.linalg import (Subspace, nullspace, qrref, rank, solve_affine,
                              solve_matrix)

matrices = st.lists(
    st.lists(st.integers(-9, 9), min_size=4, max_size=4),
    min_size=0, max_size=6)


class TestBackends:
    def test_backend_reported(self):
        assert BACKEND in ("c", "python")

    @given(matrices)
    @settings(max_examples=200)
    def test_compiled_equals_pure(self, rows):
        assert rref([list(r) for r in rows], 4) == \
            rref_py([list(r) for r in rows], 4)

    def test_pure_python_env_forces_fallback(self):
        out = subprocess.run(
            [sys.executable, "-c",
             "from ncfourier._accel import BACKEND; print(BACKEND)"],
            env={**os.environ, "NCF_PURE_PYTHON": "1"},
            capture_output=True, text=True, check=True)
        assert out.stdout.strip() == "python"

    def test_known_reduction(self):
        rows, pivots = rref([[2, 4], [1, 2], [0, 2]], 2)
        assert pivots == [0, 1]
        assert rows == [[1, 0], [0, 1]]


class TestSubspace:
    def test_canonical_equality(self):
        a = Subspace.from_vectors([[1, 2, 0], [0, 0, 3]], 3)
        b = Subspace.from_vectors([[2, 4, 6], [0, 0, 1], [1, 2, 3]], 3)
        assert a == b and a.dim == 2

    def test_zero_and_full(self):
        assert Subspace.zero(3).dim == 0
        assert Subspace.full(3).dim == 3
        assert Subspace.full(3).contains([5, -1, 2])

    def test_reduce_and_contains(self):
        s = Subspace.from_vectors([[1, 1, 0]], 3)
        assert s.contains([Fraction(1, 2), Fraction(1, 2), 0])
        assert not s.contains([1, 0, 0])

    def test_coords_roundtrip(self):
        s = Subspace.from_vectors([[1, 0, 1], [0, 2, 0]], 3)
        cs = s.coords([3, 4, 3])
        assert cs is not None
        rebuilt = [sum(c * row[j] for c, row in zip(cs, s.rows))
                   for j in range(3)]
        assert rebuilt == [3, 4, 3]
        assert s.coords([0, 0, 1]) is None

    def test_sum_of(self):
        a = Subspace.from_vectors([[1, 0, 0]], 3)
        b = Subspace.from_vectors([[0, 1, 0]], 3)
        assert Subspace.sum_of([a, b], 3).dim == 2

    @given(matrices, matrices)
    @settings(max_examples=100)
    def test_plus_is_span_union(self, r1, r2):
        a = Subspace.from_vectors(r1, 4)
        b = Subspace.from_vectors(r2, 4)
        assert a.plus(b) == Subspace.from_vectors(list(r1) + list(r2), 4)


class TestSolvers:
    def test_solve_affine_unique(self):
        part, null = solve_affine([([1, 1], 3), ([1, -1], 1)], 2)
        assert part == [2, 1] and null == []

    def test_solve_affine_underdetermined(self):
        part, null = solve_affine([([1, 1], 2)], 2)
        assert part is not None and len(null) == 1
        x, y = null[0]
        assert x + y == 0

    def test_solve_affine_inconsistent(self):
        part, null = solve_affine([([1, 0], 1), ([1, 0], 2)], 2)
        assert part is None

    def test_nullspace(self):
        basis = nullspace([[1, 2, 3]], 3)
        assert len(basis) == 2
        for vec in basis:
            assert vec[0] + 2 * vec[1] + 3 * vec[2] == 0

    def test_solve_matrix(self):
        a = [[1, 0, 1], [0, 1, 1]]  # two independent columns in Q^3
        b = [[2, 3, 5]]
        x = solve_matrix(a, b)
        assert x == [[2], [3]]
        assert solve_matrix(a, [[1, 0, 0]]) is None

    def test_rank(self):
        assert rank([[1, 2], [2, 4], [0, 1]], 2) == 2

    @given(matrices)
    @settings(max_examples=100)
    def test_qrref_idempotent(self, rows):
        red, piv = qrref(rows, 4)
        again, piv2 = qrref([list(r) for r in red], 4)
        assert again == red and piv2 == piv
