import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sunisb.liealg import build_gell_mann
from sunisb.manifold import (
    ManifoldError,
    ManifoldPoint,
    assemble_unitary,
    frame_from_csv,
    frame_to_csv,
    group_element,
    haar_points,
    haar_sample,
    rotate_point,
    wedge_complement,
)


def test_wedge_identity_frame():
    w = wedge_complement(np.eye(3)[:2])
    assert np.allclose(w, [0, 0, 1])


def test_wedge_su2_layout():
    z1, z2 = 0.6 + 0.0j, 0.48 + 0.64j
    w = wedge_complement([[z1, z2]])
    assert np.allclose(w, [-np.conj(z2), np.conj(z1)])
    U = assemble_unitary(ManifoldPoint([[z1, z2]]))
    assert np.linalg.det(U) == pytest.approx(1)


def test_assemble_unitary_examples():
    assert np.allclose(assemble_unitary(ManifoldPoint(np.eye(4)[:3])), np.eye(4))
    U = assemble_unitary(ManifoldPoint([[0, 1]]))
    assert np.allclose(U[:, 0], [0, 1])
    assert np.allclose(U[:, 1], [-1, 0])


@pytest.mark.parametrize("N", [2, 3, 4, 5])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_haar_frames_are_special_unitary(N, seed):
    p = haar_sample(N, seed)
    assert p.orthonormality_error() < 1e-12
    U = assemble_unitary(p)
    assert np.abs(U.conj().T @ U - np.eye(N)).max() < 1e-10
    assert abs(np.linalg.det(U) - 1) < 1e-10


def test_wedge_rejects_non_orthonormal():
    with pytest.raises(ManifoldError):
        wedge_complement([[1, 0, 0], [1, 0, 0]])
    with pytest.raises(ManifoldError):
        ManifoldPoint([[1, 1, 0], [0, 0, 1]])


def test_wedge_antilinear():
    p = haar_sample(4, 11)
    w = wedge_complement(p.z)
    wc = wedge_complement(p.z.conj())
    assert np.allclose(wc, w.conj())


def test_haar_determinism():
    a, b = haar_sample(3, 42), haar_sample(3, 42)
    assert np.array_equal(a.z, b.z)
    assert not np.array_equal(a.z, haar_sample(3, 43).z)


def test_haar_mean_first_component():
    # |z_1[1]|^2 ~ Beta(1, N-1): mean 1/N, variance (N-1)/(N^2 (N+1))
    N, M = 3, 10_000
    z = haar_points(N, M, np.random.default_rng(5))
    x = np.abs(z[:, 0, 0]) ** 2
    sigma = np.sqrt((N - 1) / (N * N * (N + 1)) / M)
    assert abs(x.mean() - 1 / N) < 3 * sigma


def test_haar_second_moments():
    N, M = 3, 10_000
    z = haar_points(N, M, np.random.default_rng(9))
    for i in range(N - 1):
        for j in range(N - 1):
            for a in range(N):
                for b in range(N):
                    s = z[:, i, a] * z[:, j, b].conj()
                    target = (a == b) * (i == j) / N
                    se = max(s.real.std(), s.imag.std()) / np.sqrt(M)
                    assert abs(s.mean() - target) < 5 * se


def test_rotate_identity_and_pi():
    g2 = build_gell_mann(2)
    p = ManifoldPoint([[1, 0]])
    assert np.array_equal(rotate_point(p, np.zeros(3), g2).z, p.z)
    q = rotate_point(p, [0, np.pi, 0], g2)
    assert np.allclose(q.z, [[0, -1]], atol=1e-15)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2 ** 32), st.lists(st.floats(-2, 2), min_size=15, max_size=15))
def test_rotation_preserves_orthonormality(N, seed, theta):
    g = build_gell_mann(N)
    q = rotate_point(haar_sample(N, seed), theta[: g.dim], g)
    assert q.orthonormality_error() < 1e-12


@pytest.mark.parametrize("N", [2, 3, 4])
def test_rotation_is_left_multiplication(N):
    g = build_gell_mann(N)
    rng = np.random.default_rng(N)
    p = haar_sample(N, 100 + N)
    theta = rng.normal(size=g.dim)
    G = group_element(theta, g)
    U = assemble_unitary(p)
    Urot = assemble_unitary(rotate_point(p, theta, g))
    assert np.abs(Urot - G @ U).max() < 1e-10


def test_frame_csv_round_trip():
    p = haar_sample(4, 3)
    text = frame_to_csv(p)
    assert text.splitlines()[0] == "i,alpha,re,im"
    assert np.array_equal(frame_from_csv(text).z, p.z)
