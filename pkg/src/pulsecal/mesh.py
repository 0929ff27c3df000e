"""Simplicial mesh over reference points.

Construction delegates to scipy's Delaunay triangulation. Regular
parameter grids are maximally degenerate for Delaunay (many co-spherical
point groups), so the points are perturbed by a tiny deterministic
jitter before triangulating; simplex volumes are then re-checked on the
*unperturbed* coordinates and slivers dropped. The result is stored in a
canonical form (sorted vertex tuples, lexicographically ordered rows) so
identical inputs give bit-identical meshes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import Delaunay, QhullError

from .errors import DomainError

_JITTER_SEED = 0x5EED
_JITTER_SCALE = 1e-6
_MIN_VOLUME = 1e-12
_LOCATE_TOL = 1e-9


@dataclass(frozen=True)
class BarycentricLocation:
    """A point expressed inside one simplex of a mesh."""

    simplex: int
    coords: np.ndarray  # (d+1,), non-negative up to tolerance, sums to 1


@dataclass(frozen=True)
class SimplicialMesh:
    vertices: np.ndarray  # (n, d)
    simplices: np.ndarray  # (m, d+1) vertex-index rows, canonical order
    _t_inv: np.ndarray = field(repr=False)  # (m, d, d) inverse affine maps
    _origins: np.ndarray = field(repr=False)  # (m, d) first vertex of each simplex
    _neighbor_sets: tuple = field(repr=False)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]


def _simplex_volumes(vertices: np.ndarray, simplices: np.ndarray) -> np.ndarray:
    d = vertices.shape[1]
    edges = vertices[simplices[:, 1:]] - vertices[simplices[:, :1]]
    return np.abs(np.linalg.det(edges)) / math.factorial(d)


def _neighbor_sets_from(simplices: np.ndarray, n_vertices: int) -> tuple:
    sets = [set() for _ in range(n_vertices)]
    for row in simplices:
        for i in range(len(row)):
            for j in range(i + 1, len(row)):
                sets[row[i]].add(int(row[j]))
                sets[row[j]].add(int(row[i]))
    return tuple(frozenset(s) for s in sets)


def from_simplices(vertices, simplices) -> SimplicialMesh:
    """Assemble a mesh from explicit vertex-index rows.

    Used when reloading a stored landscape, so interpolation never
    depends on re-triangulating. Rows are canonicalized the same way
    build_mesh emits them.
    """
    vertices = np.asarray(vertices, dtype=float)
    simplices = np.asarray(simplices, dtype=int)
    if vertices.ndim != 2 or simplices.ndim != 2:
        raise DomainError("vertices and simplices must be 2-d arrays")
    n, d = vertices.shape
    if simplices.shape[1] != d + 1:
        raise DomainError(f"simplices must have {d + 1} vertices each")
    if simplices.min() < 0 or simplices.max() >= n:
        raise DomainError("simplex vertex index out of range")
    if np.any(_simplex_volumes(vertices, simplices) <= _MIN_VOLUME):
        raise DomainError("degenerate simplex (volume below threshold)")
    simplices = np.sort(simplices, axis=1)
    simplices = simplices[np.lexsort(simplices.T[::-1])]

    origins = vertices[simplices[:, 0]]
    spans = (vertices[simplices[:, 1:]] - origins[:, None, :]).transpose(0, 2, 1)
    return SimplicialMesh(
        vertices=vertices,
        simplices=simplices,
        _t_inv=np.linalg.inv(spans),
        _origins=origins,
        _neighbor_sets=_neighbor_sets_from(simplices, n),
    )


def build_mesh(points) -> SimplicialMesh:
    """Triangulate the reference points into a simplicial mesh.

    Deterministic for a fixed input order. Raises DomainError when the
    points are degenerate (e.g. all coplanar in 3D): no nonzero-volume
    simplices can be generated from such a set.
    """
    vertices = np.asarray(points, dtype=float)
    if vertices.ndim != 2:
        raise DomainError("points must be a 2-d array of coordinates")
    n, d = vertices.shape
    if n < d + 1:
        raise DomainError(f"need at least {d + 1} points in {d}-d, got {n}")

    rng = np.random.default_rng(_JITTER_SEED)
    extent = float(np.ptp(vertices, axis=0).max())
    if extent == 0.0:
        raise DomainError("all points coincide; mesh is degenerate")
    jitter = rng.uniform(-1.0, 1.0, vertices.shape) * _JITTER_SCALE * extent
    try:
        raw = Delaunay(vertices + jitter).simplices
    except QhullError as exc:
        raise DomainError(f"degenerate point set, triangulation failed: {exc}") from exc

    volumes = _simplex_volumes(vertices, raw)
    kept = raw[volumes > _MIN_VOLUME]
    if kept.shape[0] == 0:
        raise DomainError("all candidate simplices are degenerate (points coplanar?)")
    return from_simplices(vertices, kept)


def neighbors(mesh: SimplicialMesh, i: int) -> frozenset:
    """Vertices joined to vertex i by a mesh edge (symmetric, excludes i)."""
    if not 0 <= i < mesh.n_vertices:
        raise IndexError(f"vertex index {i} out of range [0, {mesh.n_vertices})")
    return mesh._neighbor_sets[i]


def _coords_all(mesh: SimplicialMesh, p: np.ndarray) -> np.ndarray:
    b_rest = np.einsum("mij,mj->mi", mesh._t_inv, p[None, :] - mesh._origins)
    b0 = 1.0 - b_rest.sum(axis=1)
    return np.concatenate([b0[:, None], b_rest], axis=1)


def locate(mesh: SimplicialMesh, p) -> BarycentricLocation:
    """Find a simplex containing p and its barycentric coordinates.

    Points outside the convex hull (beyond a 1e-9 tolerance) raise
    DomainError. On shared faces the lowest-index matching simplex is
    returned; interpolation is consistent either way because off-face
    coordinates vanish.
    """
    p = np.asarray(p, dtype=float)
    if p.shape != (mesh.dim,):
        raise DomainError(f"point has shape {p.shape}, expected ({mesh.dim},)")
    b_all = _coords_all(mesh, p)
    hits = np.flatnonzero(b_all.min(axis=1) >= -_LOCATE_TOL)
    if hits.size == 0:
        raise DomainError(f"point {tuple(float(c) for c in p)} lies outside the mesh")
    si = int(hits[0])
    b = b_all[si].copy()
    b[np.abs(b) < 1e-12] = 0.0
    return BarycentricLocation(simplex=si, coords=b / b.sum())
