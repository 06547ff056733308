"""Homogeneous coordinate primitives, cameras, and subspace-angle metric.

Points of the projective plane / space are plain numpy vectors of length 3
or 4, never all zero, considered equal up to a nonzero scale factor.
Cameras are 3x4 matrices of rank 3 with the left 3x3 block invertible so
the focal point is finite. Fundamental matrices are 3x3 matrices up to
scale, rank <= 2 when valid.
"""

import numpy as np

from .exceptions import (
    FocalPointProjection,
    LengthMismatch,
    RankDeficientCamera,
    ZeroMatrix,
)

# Default relative tolerance threaded through all numerical predicates.
DEFAULT_TOL = 1e-10


def as_point(p, dim):
    """Validate a homogeneous point and return it as a float vector."""
    v = np.asarray(p, dtype=float).reshape(-1)
    if v.shape != (dim,):
        raise ValueError(f"expected a {dim}-vector, got shape {v.shape}")
    if not np.any(v):
        raise ValueError("homogeneous point must have a nonzero coordinate")
    return v


def as_points(pts, dim):
    """Stack a sequence of homogeneous points into an (n, dim) array."""
    arr = np.atleast_2d(np.asarray(pts, dtype=float))
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise ValueError(f"expected (n, {dim}) points, got shape {arr.shape}")
    if not np.all(np.any(arr != 0.0, axis=1)):
        raise ValueError("every homogeneous point needs a nonzero coordinate")
    return arr


def canon(v, tol=1e-12):
    """Canonical projective representative: unit norm, first nonzero entry > 0."""
    v = np.asarray(v, dtype=float)
    nrm = np.linalg.norm(v)
    if nrm == 0.0:
        raise ZeroMatrix("cannot canonicalize the zero vector")
    out = v / nrm
    flat = out.reshape(-1)
    lead = flat[np.abs(flat) > tol][0]
    if lead < 0:
        out = -out
    return out


def proj_equal(a, b, tol=1e-9):
    """Equality of projective objects (vectors or matrices) up to scale."""
    return np.allclose(canon(a), canon(b), atol=tol, rtol=0.0)


def dehomogenize(pts):
    """(n, d) homogeneous points -> (n, d-1) affine points."""
    arr = np.atleast_2d(np.asarray(pts, dtype=float))
    w = arr[:, -1]
    if np.any(np.abs(w) < 1e-14 * np.linalg.norm(arr, axis=1)):
        raise ValueError("point at infinity cannot be dehomogenized")
    return arr[:, :-1] / w[:, None]


def homogenize(pts):
    """(n, d) affine points -> (n, d+1) homogeneous points with last coord 1."""
    arr = np.atleast_2d(np.asarray(pts, dtype=float))
    return np.hstack([arr, np.ones((arr.shape[0], 1))])


def project(camera, p):
    """Project a world point through a 3x4 camera.

    Raises FocalPointProjection when p is the camera center.
    """
    A = np.asarray(camera, dtype=float)
    v = as_point(p, 4)
    img = A @ v
    if np.linalg.norm(img) <= 1e-12 * np.linalg.norm(A) * np.linalg.norm(v):
        raise FocalPointProjection("point projects to the zero vector")
    return img


def project_all(camera, P):
    """Project an (n, 4) world configuration; returns (n, 3) image points."""
    P = as_points(P, 4)
    return np.vstack([project(camera, p) for p in P])


def focal_point(camera, rank_tol=DEFAULT_TOL):
    """Camera center: the unique point (up to scale) with camera @ p = 0."""
    A = np.asarray(camera, dtype=float)
    if A.shape != (3, 4):
        raise ValueError(f"camera must be 3x4, got {A.shape}")
    _, s, vt = np.linalg.svd(A)
    if s[2] <= rank_tol * s[0]:
        raise RankDeficientCamera("camera matrix has rank < 3")
    return canon(vt[3])


def canonical_fmatrix(F):
    """Unit Frobenius norm, first nonzero entry positive."""
    F = np.asarray(F, dtype=float)
    if F.shape != (3, 3):
        raise ValueError(f"fundamental matrix must be 3x3, got {F.shape}")
    return canon(F)


def is_valid_fmatrix(F, tol=1e-9):
    """Rank-2 validity predicate on the unit-scaled matrix."""
    return abs(np.linalg.det(canonical_fmatrix(F))) <= tol


def epipolar_residual(F, X, Y):
    """Scale-invariant algebraic residual sum((Y_i^T F X_i)^2).

    F is normalized to unit Frobenius norm and every point to unit
    Euclidean norm before evaluating the bilinear forms.
    """
    Fn = canonical_fmatrix(F)
    X = as_points(X, 3)
    Y = as_points(Y, 3)
    if len(X) != len(Y):
        raise LengthMismatch(f"|X|={len(X)} but |Y|={len(Y)}")
    if len(X) < 1:
        raise ValueError("need at least one correspondence")
    Xu = X / np.linalg.norm(X, axis=1)[:, None]
    Yu = Y / np.linalg.norm(Y, axis=1)[:, None]
    r = np.einsum("ij,jk,ik->i", Yu, Fn, Xu)
    return float(np.sum(r**2))


def grassmann_angle(F1, F2):
    """Angle in [0, pi/2] between the vectorizations of two matrices."""
    a = np.asarray(F1, dtype=float).reshape(-1)
    b = np.asarray(F2, dtype=float).reshape(-1)
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ZeroMatrix("grassmann_angle needs two nonzero matrices")
    u, v = a / na, b / nb
    d = float(u @ v)
    # arctan2 formulation of arccos(|d|): exact near 0 where arccos
    # saturates at sqrt(eps).
    return float(np.arctan2(np.linalg.norm(v - d * u), abs(d)))
