"""Contracts of the dense linear-algebra layer."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from epbands.linalg import (
    CubicCoeffs,
    Spectrum,
    eig_dense,
    geometric_multiplicity,
    numerical_rank,
    pair_continuation,
    solve_cubic,
)

RNG = np.random.default_rng(20260810)


def _random_complex_matrix(n: int) -> np.ndarray:
    return RNG.standard_normal((n, n)) + 1j * RNG.standard_normal((n, n))


# ---------------------------------------------------------------- eig_dense

def test_eig_identity_geometric_multiplicity_two():
    spec = eig_dense(np.eye(2))
    assert np.allclose(spec.eigenvalues, [1.0, 1.0])
    # Distinct eigenvectors: the pair spans the full space.
    v = spec.right_eigenvectors
    assert abs(np.linalg.det(v)) > 0.9


def test_eig_diagonal_exact():
    d = np.diag([0.0625, 0.5625, 1.5625])
    spec = eig_dense(d)
    assert np.array_equal(spec.eigenvalues.real, [0.0625, 0.5625, 1.5625])
    assert np.all(spec.eigenvalues.imag == 0.0)


def test_eig_defective_jordan_pair_overlap():
    # [[1,0],[v0^2,1]] with v0=1 is a Jordan block: the two returned
    # eigenvectors of the defective pair must be nearly parallel.
    a = np.array([[1.0, 0.0], [1.0, 1.0]])
    spec = eig_dense(a)
    assert np.allclose(spec.eigenvalues, [1.0, 1.0], atol=1e-7)
    v = spec.right_eigenvectors
    overlap = abs(np.vdot(v[:, 0], v[:, 1]))
    assert overlap > 0.999


def test_eig_rejects_bad_input():
    with pytest.raises(ValueError):
        eig_dense(np.ones((2, 3)))
    with pytest.raises(ValueError):
        eig_dense(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_eig_phase_convention_deterministic():
    a = _random_complex_matrix(5)
    s1 = eig_dense(a)
    s2 = eig_dense(a)
    assert np.array_equal(s1.eigenvalues, s2.eigenvalues)
    assert np.array_equal(s1.right_eigenvectors, s2.right_eigenvectors)
    for j in range(5):
        col = s1.right_eigenvectors[:, j]
        lead = col[np.nonzero(np.abs(col) > 1e-12 * np.abs(col).max())[0][0]]
        assert lead.imag == pytest.approx(0.0, abs=1e-14)
        assert lead.real > 0
        assert np.linalg.norm(col) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=7), st.integers(min_value=0, max_value=2**31 - 1))
def test_eig_residual_invariant(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    spec = eig_dense(a)
    norm = np.linalg.norm(a)
    for i in range(n):
        res = np.linalg.norm(a @ spec.right_eigenvectors[:, i] - spec.eigenvalues[i] * spec.right_eigenvectors[:, i])
        assert res <= 1e-10 * norm


# ---------------------------------------------------------- numerical_rank

def test_rank_zero_matrix():
    assert numerical_rank(np.zeros((3, 3)), 1e-8) == 0


def test_rank_nilpotent_block():
    assert numerical_rank(np.array([[0.0, 0.0], [1.0, 0.0]]), 1e-8) == 1


def test_rank_identity():
    assert numerical_rank(np.eye(3), 1e-8) == 3


def test_rank_requires_positive_tol():
    with pytest.raises(ValueError):
        numerical_rank(np.eye(2), 0.0)


# -------------------------------------------------- geometric_multiplicity

def test_geometric_multiplicity_identity():
    assert geometric_multiplicity(np.eye(2), 1.0, 1e-8) == 2


def test_geometric_multiplicity_jordan():
    a = np.array([[1.0, 0.0], [1.0, 1.0]])
    assert geometric_multiplicity(a, 1.0, 1e-8) == 1


def test_geometric_multiplicity_rejects_non_eigenvalue():
    with pytest.raises(ValueError):
        geometric_multiplicity(np.eye(2), 3.0, 1e-8)


def test_geometric_le_algebraic_on_random_clusters():
    for seed in range(20):
        rng = np.random.default_rng(seed)
        # Orthogonal similarity of a matrix with a forced repeated eigenvalue;
        # orthogonality keeps the defective cluster's numerical split small.
        d = np.diag([1.0, 1.0, rng.uniform(2, 3)])
        if seed % 2:
            d[0, 1] = 1.0  # defective variant
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        a = q @ d @ q.T
        w = np.linalg.eigvals(a.astype(complex))
        cluster = w[np.abs(w - 1.0) < 1e-4]
        omega = complex(w[np.argmin(np.abs(w - 1.0))])
        geo = geometric_multiplicity(a, omega, 1e-5)
        assert geo <= len(cluster)
        assert geo == (1 if seed % 2 else 2)


# ----------------------------------------------------------------- cubic

def test_cubic_rejects_zero_leading():
    with pytest.raises(ValueError):
        CubicCoeffs(0.0, 1.0, 1.0, 1.0)


def test_cubic_roots_of_unity():
    roots = solve_cubic(CubicCoeffs(1.0, 0.0, 0.0, -1.0))
    expected = sorted(
        [1.0 + 0.0j, np.exp(2j * np.pi / 3), np.exp(-2j * np.pi / 3)],
        key=lambda z: (z.real, z.imag),
    )
    assert np.allclose(roots, expected, atol=1e-14)


def test_cubic_double_root_at_one():
    # w(1-w)^2 = 0 expanded: w^3 - 2w^2 + w = 0.
    roots = solve_cubic(CubicCoeffs(1.0, -2.0, 1.0, 0.0))
    assert np.allclose(sorted(r.real for r in roots), [0.0, 1.0, 1.0], atol=1e-6)
    assert all(abs(r.imag) < 1e-8 for r in roots)


def test_cubic_defective_zero_pair():
    # w^3 - w^2 = 0 has roots {0, 0, 1}.
    roots = solve_cubic(CubicCoeffs(1.0, -1.0, 0.0, 0.0))
    assert np.allclose(sorted(r.real for r in roots), [0.0, 0.0, 1.0], atol=1e-7)


def _cubic_residual_ok(c: CubicCoeffs, roots) -> bool:
    cmax = max(abs(c.c3), abs(c.c2), abs(c.c1), abs(c.c0))
    return all(abs(c.evaluate(r)) <= 1e-12 * cmax * (1.0 + abs(r) ** 3) for r in roots)


@settings(max_examples=200, deadline=None)
@given(
    st.floats(min_value=-10, max_value=10, allow_nan=False).filter(lambda x: abs(x) > 1e-3),
    st.floats(min_value=-10, max_value=10, allow_nan=False),
    st.floats(min_value=-10, max_value=10, allow_nan=False),
    st.floats(min_value=-10, max_value=10, allow_nan=False),
)
def test_cubic_residual_and_conjugacy(c3, c2, c1, c0):
    c = CubicCoeffs(c3, c2, c1, c0)
    roots = solve_cubic(c)
    assert len(roots) == 3
    assert _cubic_residual_ok(c, roots)
    # Multiset closed under conjugation, bitwise.
    conj = sorted((r.conjugate() for r in roots), key=lambda z: (z.real, z.imag))
    assert all(a == b for a, b in zip(roots, conj))


def test_cubic_vs_companion_eig_cross_oracle():
    rng = np.random.default_rng(11)
    for _ in range(200):
        c2, c1, c0 = rng.uniform(-5, 5, size=3)
        c = CubicCoeffs(1.0, c2, c1, c0)
        roots = np.array(solve_cubic(c))
        companion = np.array(
            [[0.0, 0.0, -c0], [1.0, 0.0, -c1], [0.0, 1.0, -c2]]
        )
        eig = np.sort_complex(np.linalg.eigvals(companion))
        assert np.max(np.abs(np.sort_complex(roots) - eig)) < 1e-9


# ------------------------------------------------------- pair_continuation

def test_continuation_swap():
    perm = pair_continuation(np.array([0.0, 1.0]), np.array([1.01, 0.02]))
    assert list(perm) == [1, 0]


def test_continuation_identity_conjugates():
    perm = pair_continuation(np.array([1 + 1j, 1 - 1j]), np.array([1 + 1.1j, 1 - 1.1j]))
    assert list(perm) == [0, 1]


def test_continuation_conjugate_crossing_matches_brute_force():
    # Oracle: enumerate both 2-permutations and take the cheaper; ties must
    # preserve index order.
    cases = [
        (np.array([1 + 0.1j, 1 - 0.1j]), np.array([1.05 + 0j, 0.95 + 0j])),
        (np.array([1.0 + 0j, 1.0 + 0j]), np.array([1.0 + 0.1j, 1.0 - 0.1j])),
        (np.array([0.5 + 0j, 1.5 + 0j]), np.array([1.49, 0.51])),
    ]
    for prev, nxt in cases:
        best_cost = None
        best_perm = None
        for perm in itertools.permutations(range(2)):
            cost = sum(abs(nxt[perm[i]] - prev[i]) ** 2 for i in range(2))
            if best_cost is None or cost < best_cost - 1e-15:
                best_cost = cost
                best_perm = perm
        got = tuple(pair_continuation(prev, nxt))
        cost_got = sum(abs(nxt[got[i]] - prev[i]) ** 2 for i in range(2))
        assert cost_got == pytest.approx(best_cost, abs=1e-12)
        if abs(cost_got - sum(abs(nxt[i] - prev[i]) ** 2 for i in range(2))) < 1e-15:
            # Exact tie with the identity: index order must be preserved.
            assert got == (0, 1)


def test_continuation_rejects_length_mismatch():
    with pytest.raises(ValueError):
        pair_continuation(np.array([1.0]), np.array([1.0, 2.0]))


def test_continuation_optimal_for_larger_sets():
    rng = np.random.default_rng(3)
    prev = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    shuffle = rng.permutation(6)
    nxt = (prev + 1e-3 * (rng.standard_normal(6) + 1j * rng.standard_normal(6)))[shuffle]
    perm = pair_continuation(prev, nxt)
    # Inverting the shuffle recovers each band's continuation.
    assert np.max(np.abs(nxt[perm] - prev)) < 1e-2


def test_spectrum_dataclass_roundtrip():
    spec = eig_dense(np.diag([2.0, 1.0]))
    assert isinstance(spec, Spectrum)
    assert spec.n == 2
    assert spec.ordering == "by_real_part"
    assert spec.eigenvalues[0].real <= spec.eigenvalues[1].real


def test_eig_unsorted_keeps_backend_order():
    a = np.diag([2.0, 1.0])
    spec = eig_dense(a, ordering="unsorted")
    assert spec.ordering == "unsorted"
    assert sorted(spec.eigenvalues.real) == [1.0, 2.0]
    with pytest.raises(ValueError):
        eig_dense(a, ordering="fancy")


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=1, max_value=10), st.integers(min_value=0, max_value=2**31 - 1))
def test_continuation_returns_a_permutation(n, seed):
    rng = np.random.default_rng(seed)
    prev = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    nxt = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    perm = pair_continuation(prev, nxt)
    assert sorted(perm) == list(range(n))
