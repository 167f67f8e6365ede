"""Surface meshes of the helicoidal and rotational immersions.

Twizzlers use phi(s, t) = (x cos wt + z sin wt, t, -x sin wt + z cos wt): the
screw axis is the second coordinate, which matches y-up viewers. Delaunays
use phi(s, t) = (x, z sin t, z cos t) with the axis along the first
coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .curves import SampledCurve, turning_angle
from .errors import AxisCollision, BadGrid


@dataclass
class SurfaceMesh:
    """Structured ``nu x nt`` grid of vertices with unit normals.

    ``vertices`` and ``normals`` have shape ``(nu * nt, 3)`` in row-major
    (s-major) order; ``faces`` holds 0-based quad indices.
    """

    vertices: np.ndarray
    normals: np.ndarray
    shape: tuple[int, int]
    provenance: dict = field(default_factory=dict)

    @property
    def faces(self) -> np.ndarray:
        nu, nt = self.shape
        i, j = np.meshgrid(np.arange(nu - 1), np.arange(nt - 1), indexing="ij")
        a = (i * nt + j).ravel()
        return np.column_stack([a, a + nt, a + nt + 1, a + 1])

    @property
    def triangles(self) -> np.ndarray:
        q = self.faces
        return np.vstack([q[:, [0, 1, 2]], q[:, [0, 2, 3]]])

    def grid(self, arr: np.ndarray | None = None) -> np.ndarray:
        arr = self.vertices if arr is None else arr
        return arr.reshape(self.shape + arr.shape[1:])


def _grid_t(t_range, nt):
    t0, t1 = t_range
    if nt < 2 or not t1 > t0:
        raise BadGrid(f"bad t grid: range {t_range!r}, nt={nt}")
    return np.linspace(t0, t1, nt)


def _profile_angle(profile: SampledCurve) -> np.ndarray:
    if profile.theta is not None:
        return profile.theta
    return turning_angle(profile)[1]


def immerse_twizzler(
    profile: SampledCurve,
    w: float,
    t_range: tuple[float, float] | None = None,
    nt: int = 64,
) -> SurfaceMesh:
    """Sweep the profile by the screw motion of pitch 1/w.

    Normals are the closed-form Gauss map
    (sin(wt - theta), w xi1, cos(wt - theta)) / sqrt(1 + w^2 xi1^2).
    A profile collapsed to one point yields a helix; its normals then point
    away from the axis.
    """
    if nt < 8:
        raise BadGrid("nt must be at least 8")
    if t_range is None:
        t_range = (0.0, 2.0 * math.pi / w)
    t = _grid_t(t_range, nt)
    x, z = profile.x[:, None], profile.z[:, None]
    c, s = np.cos(w * t)[None, :], np.sin(w * t)[None, :]
    X = x * c + z * s
    Y = np.broadcast_to(t[None, :], X.shape)
    Z = -x * s + z * c
    verts = np.stack([X, Y, Z], axis=-1)
    if np.ptp(profile.x) == 0.0 and np.ptp(profile.z) == 0.0:
        radial = np.stack([X, np.zeros_like(X), Z], axis=-1)
        norm = np.linalg.norm(radial, axis=-1, keepdims=True)
        normals = np.where(norm > 0, radial / np.where(norm > 0, norm, 1.0), [0.0, 0.0, 1.0])
    else:
        theta = _profile_angle(profile)[:, None]
        xi1 = x * np.cos(theta) + z * np.sin(theta)
        d = np.sqrt(1.0 + w * w * xi1 * xi1)
        ang = w * t[None, :] - theta
        normals = np.stack(
            [np.sin(ang) / d, np.broadcast_to(w * xi1 / d, ang.shape), np.cos(ang) / d], axis=-1
        )
    shape = (len(profile), nt)
    return SurfaceMesh(
        verts.reshape(-1, 3),
        normals.reshape(-1, 3),
        shape,
        {"surface": "twizzler", "w": w, "t_range": list(t_range), "nu": shape[0], "nt": nt},
    )


def immerse_revolution(
    profile: SampledCurve,
    t_range: tuple[float, float] = (0.0, 2.0 * math.pi),
    nt: int = 64,
) -> SurfaceMesh:
    """Rotate the profile about the first coordinate axis."""
    if np.any(profile.z <= 0.0):
        raise AxisCollision("surface of revolution needs z > 0 along the profile")
    t = _grid_t(t_range, nt)
    theta = _profile_angle(profile)[:, None]
    x, z = profile.x[:, None], profile.z[:, None]
    st, ct = np.sin(t)[None, :], np.cos(t)[None, :]
    verts = np.stack([np.broadcast_to(x, (len(profile), nt)), z * st, z * ct], axis=-1)
    normals = np.stack(
        [np.broadcast_to(-np.sin(theta), verts.shape[:2]), np.cos(theta) * st, np.cos(theta) * ct],
        axis=-1,
    )
    shape = (len(profile), nt)
    return SurfaceMesh(
        verts.reshape(-1, 3),
        normals.reshape(-1, 3),
        shape,
        {"surface": "revolution", "t_range": list(t_range), "nu": shape[0], "nt": nt},
    )


def screw_motion(points: np.ndarray, w: float, dt: float) -> np.ndarray:
    """The helicoidal motion that carries phi(s, t) to phi(s, t + dt)."""
    c, s = math.cos(w * dt), math.sin(w * dt)
    X, Y, Z = points[..., 0], points[..., 1], points[..., 2]
    return np.stack([X * c + Z * s, Y + dt, -X * s + Z * c], axis=-1)


def _cot(u, v):
    cross = np.linalg.norm(np.cross(u, v), axis=-1)
    return np.einsum("ij,ij->i", u, v) / cross


def discrete_mean_curvature(mesh: SurfaceMesh) -> np.ndarray:
    """Cotangent-Laplacian mean curvature per vertex, signed by the mesh normals.

    Uses the mixed Voronoi area. Boundary vertices are returned as NaN.
    """
    P = mesh.vertices
    T = mesh.triangles
    n = len(P)
    lap = np.zeros((n, 3))
    area = np.zeros(n)
    p = [P[T[:, k]] for k in range(3)]
    cots = []
    for k in range(3):
        a, b, c = p[k], p[(k + 1) % 3], p[(k + 2) % 3]
        cots.append(_cot(b - a, c - a))  # angle at corner k
    tri_area = 0.5 * np.linalg.norm(np.cross(p[1] - p[0], p[2] - p[0]), axis=-1)
    obtuse = np.stack(cots, axis=1) < 0
    any_obtuse = obtuse.any(axis=1)
    for k in range(3):
        i, j, l = T[:, k], T[:, (k + 1) % 3], T[:, (k + 2) % 3]
        # edge (j, l) is opposite corner k
        wgt = cots[k][:, None] * (P[l] - P[j])
        np.add.at(lap, j, wgt)
        np.add.at(lap, l, -wgt)
        # Voronoi area of corner k
        pij = np.sum((P[j] - P[i]) ** 2, axis=1)
        pil = np.sum((P[l] - P[i]) ** 2, axis=1)
        vor = (pij * cots[(k + 2) % 3] + pil * cots[(k + 1) % 3]) / 8.0
        mixed = np.where(any_obtuse, np.where(obtuse[:, k], tri_area / 2.0, tri_area / 4.0), vor)
        np.add.at(area, i, mixed)
    lap /= (2.0 * area)[:, None]
    H = 0.5 * np.einsum("ij,ij->i", lap, mesh.normals)
    g = H.reshape(mesh.shape)
    g[0, :] = g[-1, :] = g[:, 0] = g[:, -1] = np.nan
    return g
