import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmc_forge import dynamics
from cmc_forge.curves import SampledCurve
from cmc_forge.delaunay import DelaunaySpec, delaunay_profile
from cmc_forge.errors import AxisCollision, BadGrid
from cmc_forge.heart import TwizzlerSpec
from cmc_forge.mesh import (
    discrete_mean_curvature,
    immerse_revolution,
    immerse_twizzler,
    screw_motion,
)


def twizzler_mesh(M, v, nu, nt, span=0.5):
    spec = TwizzlerSpec(M, v)
    prof = dynamics.reconstruct_profile(spec, 1, samples_per_piece=nu - 1)
    return spec, immerse_twizzler(prof, spec.w, (0.0, prof.length * span), nt)


def grid_normals(mesh):
    """Unit normals from cross products of centered grid differences."""
    P = mesh.grid()
    du = P[2:, 1:-1] - P[:-2, 1:-1]
    dt = P[1:-1, 2:] - P[1:-1, :-2]
    n = np.cross(du, dt)
    return n / np.linalg.norm(n, axis=-1, keepdims=True)


def test_shapes_and_faces():
    _, m = twizzler_mesh(0.5, 0.5, 33, 16)
    assert m.vertices.shape == (33 * 16, 3)
    assert m.faces.shape == (32 * 15, 4)
    assert m.triangles.shape == (2 * 32 * 15, 3)
    assert m.faces.min() == 0 and m.faces.max() == 33 * 16 - 1


def test_bad_grids():
    spec = TwizzlerSpec(0.5, 0.5)
    prof = dynamics.reconstruct_profile(spec, 1, samples_per_piece=32)
    with pytest.raises(BadGrid):
        immerse_twizzler(prof, spec.w, nt=4)
    with pytest.raises(BadGrid):
        immerse_twizzler(prof, spec.w, (1.0, 1.0), 16)


def test_revolution_axis_collision():
    s = np.linspace(0, 1, 10)
    with pytest.raises(AxisCollision):
        immerse_revolution(SampledCurve(s, s, s - 0.5))


@pytest.mark.parametrize("M, v", [(0.5, 0.5), (0.0, 0.3), (2.0, 0.7)])
def test_gauss_map_matches_cross_products(M, v):
    _, m = twizzler_mesh(M, v, 1025, 257)
    n_fd = grid_normals(m)
    n = m.grid(m.normals)[1:-1, 1:-1]
    assert np.max(np.linalg.norm(n_fd - n, axis=-1)) < 1e-3
    assert np.allclose(np.linalg.norm(m.normals, axis=1), 1.0)


@settings(max_examples=10)
@given(st.floats(-0.2, 3.0), st.floats(0.1, 0.9), st.floats(-5.0, 5.0))
def test_screw_motion_maps_rows_onto_rows(M, v, dt):
    spec = TwizzlerSpec(M, v)
    prof = dynamics.reconstruct_profile(spec, 1, samples_per_piece=32)
    a = immerse_twizzler(prof, spec.w, (0.0, 1.0), 8).grid()
    b = immerse_twizzler(prof, spec.w, (dt, 1.0 + dt), 8).grid()
    assert np.max(np.abs(screw_motion(a, spec.w, dt) - b)) < 1e-9


def test_screw_motion_preserves_distances():
    rng = np.random.default_rng(3)
    P = rng.normal(size=(20, 3))
    Q = screw_motion(P, 1.7, 0.9)
    d0 = np.linalg.norm(P[:, None] - P[None], axis=-1)
    d1 = np.linalg.norm(Q[:, None] - Q[None], axis=-1)
    assert np.allclose(d0, d1, atol=1e-12)


def test_cylinder_of_radius_half_has_unit_mean_curvature():
    # the M = -1/4 Delaunay: z = 1/2 traversed with theta = pi
    s = np.linspace(0, 2, 81)
    prof = SampledCurve(s, -s, np.full_like(s, 0.5), theta=np.full_like(s, math.pi))
    H = discrete_mean_curvature(immerse_revolution(prof, nt=257))
    assert np.nanmax(np.abs(H - 1.0)) < 1e-3


def test_delaunay_mesh_stays_between_cylinders():
    spec = DelaunaySpec(0.6)
    m = immerse_revolution(delaunay_profile(spec, 1, samples_per_period=256), nt=64)
    r = np.hypot(m.vertices[:, 1], m.vertices[:, 2])
    zmin, zmax = spec.z_range
    assert r.min() >= zmin - 1e-8 and r.max() <= zmax + 1e-8


def test_delaunay_mesh_mean_curvature():
    prof = delaunay_profile(DelaunaySpec(-0.15), 1, samples_per_period=512)
    H = discrete_mean_curvature(immerse_revolution(prof, nt=256))
    assert np.nanmax(np.abs(H - 1.0)) < 0.02


def test_twizzler_mesh_mean_curvature_converges():
    errs = []
    for nu, nt in [(128, 64), (256, 128)]:
        _, m = twizzler_mesh(0.5, 0.5, nu, nt)
        errs.append(np.nanmax(np.abs(discrete_mean_curvature(m) - 1.0)))
    assert errs[1] < 0.02
    assert errs[1] < 0.75 * errs[0]


def test_point_profile_gives_helix_with_radial_normals():
    s = np.arange(8.0)
    prof = SampledCurve(s, np.full(8, 0.3), np.zeros(8))
    m = immerse_twizzler(prof, 1.0, (0.0, 6.0), 16)
    radial = m.vertices * [1, 0, 1]
    radial /= np.linalg.norm(radial, axis=1, keepdims=True)
    assert np.allclose(m.normals, radial)


def fd_tangents(mesh):
    from cmc_forge.numerics import derivative

    P = mesh.grid()
    du = np.stack([np.apply_along_axis(derivative, 0, P[..., k], 1.0) for k in range(3)], axis=-1)
    dt = np.stack([np.apply_along_axis(derivative, 1, P[..., k], 1.0) for k in range(3)], axis=-1)
    return du, dt


def test_normals_orthogonal_to_tangents_and_unit():
    _, m = twizzler_mesh(0.7, 0.4, 1025, 257)
    du, dt = fd_tangents(m)
    N = m.grid(m.normals)
    for T in (du, dt):
        T = T / np.linalg.norm(T, axis=-1, keepdims=True)
        assert np.max(np.abs(np.einsum("ijk,ijk->ij", T, N))[2:-2, 2:-2]) < 1e-6
    assert np.max(np.abs(np.linalg.norm(m.normals, axis=1) - 1.0)) < 1e-9
    n_fd = np.cross(du, dt)
    n_fd /= np.linalg.norm(n_fd, axis=-1, keepdims=True)
    assert np.max(np.linalg.norm(n_fd - N, axis=-1)[2:-2, 2:-2]) < 1e-5


def test_distance_to_axis_is_profile_radius():
    spec = TwizzlerSpec(1.0, 0.3)
    prof = dynamics.reconstruct_profile(spec, 1, samples_per_piece=64)
    m = immerse_twizzler(prof, spec.w, None, 16)
    r = np.hypot(m.grid()[..., 0], m.grid()[..., 2])
    assert np.max(np.abs(r - prof.radius[:, None])) < 1e-12


def test_nodoid_mesh_between_one_and_two():
    m = immerse_revolution(delaunay_profile(DelaunaySpec(2.0), 1, samples_per_period=256), nt=32)
    r = np.hypot(m.vertices[:, 1], m.vertices[:, 2])
    assert r.min() >= 1 - 1e-8 and r.max() <= 2 + 1e-8
    with pytest.raises(BadGrid):
        immerse_revolution(delaunay_profile(DelaunaySpec(2.0), 1), (1.0, 1.0))
