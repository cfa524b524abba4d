"""Blind event-by-event classification with a learned separating segment.

The classifier keeps a line segment (hyperplane segment in K dimensions)
whose support points are dragged toward each incoming point with a
distance-weighted step, so the segment tracks the principal direction of
a drifting stream without storing any data.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass
class SegmentState:
    """Mid-point and unit direction of the learned 2-D segment."""

    mid: np.ndarray
    dir: np.ndarray
    alpha: float

    @classmethod
    def initial(cls, first_point, alpha: float) -> "SegmentState":
        # Deterministic default: mid at the first event, horizontal direction.
        return cls(np.asarray(first_point, dtype=float).copy(),
                   np.array([1.0, 0.0]), alpha)


def _pull(v: np.ndarray, y: np.ndarray, alpha: float, linear: bool) -> np.ndarray:
    d = y - v
    if linear:
        return v + (1.0 - alpha) * d
    return v + (1.0 - alpha) * d * np.linalg.norm(d)


def segment_side(st: SegmentState, y) -> int:
    """+1 / -1 by the sign of cross(y - mid, dir); boundary counts as +1."""
    y = np.asarray(y, dtype=float)
    r = y - st.mid
    cross = r[0] * st.dir[1] - r[1] * st.dir[0]
    return 1 if cross >= 0.0 else -1


def step_segment(st: SegmentState, y, linear: bool = False) -> tuple[int, SegmentState]:
    """Classify ``y`` and update the segment.

    Support points sit at mid -+ dir/2; each moves toward ``y`` by
    ``(1-alpha)|y-v|`` times the offset (the farther point moves more).
    ``linear=True`` selects the plain, unweighted variant for comparison
    runs.  If the updated support points coincide the previous direction
    is kept.
    """
    y = np.asarray(y, dtype=float)
    side = segment_side(st, y)
    v1 = st.mid - 0.5 * st.dir
    v2 = st.mid + 0.5 * st.dir
    w1 = _pull(v1, y, st.alpha, linear)
    w2 = _pull(v2, y, st.alpha, linear)
    mid = 0.5 * (w1 + w2)
    diff = w2 - w1
    nrm = np.linalg.norm(diff)
    direction = st.dir if nrm < 1e-12 else diff / nrm
    return side, SegmentState(mid, direction, st.alpha)


@lru_cache(maxsize=8)
def _canonical_simplex(k: int) -> np.ndarray:
    """Vertices of a regular (k-1)-simplex, edge 1, centroid 0, as a
    (k, k-1) coordinate array.  k=2 is pinned so that the simplex machine
    reduces exactly to the segment machine."""
    if k < 2:
        raise ValueError("need at least two vertices")
    if k == 2:
        return np.array([[-0.5], [0.5]])
    pts = np.eye(k) / math.sqrt(2.0)
    pts -= pts.mean(axis=0)
    u, s, _ = np.linalg.svd(pts, full_matrices=False)
    return u[:, : k - 1] * s[: k - 1]


def _mgs(rows: np.ndarray) -> np.ndarray:
    """Modified Gram-Schmidt orthonormalization of the row vectors."""
    q = rows.astype(float).copy()
    for i in range(q.shape[0]):
        for j in range(i):
            q[i] -= (q[j] @ q[i]) * q[j]
        n = np.linalg.norm(q[i])
        if n < 1e-12:
            raise ValueError("rank-deficient direction set")
        q[i] /= n
    return q


def _null_direction(dirs: np.ndarray) -> np.ndarray:
    _, _, vt = np.linalg.svd(dirs)
    n = vt[-1]
    # Deterministic sign: first component of largest magnitude positive.
    k = int(np.argmax(np.abs(n)))
    return n if n[k] >= 0 else -n


@dataclass
class SimplexState:
    """K-dimensional hyperplane segment: mid-point, K-1 orthonormal
    directions (rows), and the oriented normal used for side decisions."""

    mid: np.ndarray
    dirs: np.ndarray
    normal: np.ndarray
    alpha: float

    @classmethod
    def initial(cls, first_point, alpha: float) -> "SimplexState":
        mid = np.asarray(first_point, dtype=float).copy()
        k = mid.size
        dirs = np.eye(k)[: k - 1]
        if k == 2:
            # Match the segment convention: normal = (dir_y, -dir_x).
            normal = np.array([dirs[0][1], -dirs[0][0]])
        else:
            normal = _null_direction(dirs)
        return cls(mid, dirs, normal, alpha)

    @property
    def points(self) -> np.ndarray:
        """The K support points, pairwise distance one, centered on mid."""
        return self.mid + _canonical_simplex(self.mid.size) @ self.dirs


def step_simplex(st: SimplexState, y, linear: bool = False) -> tuple[int, SimplexState]:
    """K-dimensional analogue of :func:`step_segment`.

    All K support points are pulled toward ``y``; the new directions are
    re-orthonormalized by modified Gram-Schmidt and the normal keeps its
    orientation by continuity.  On rank deficiency the previous basis is
    kept.
    """
    y = np.asarray(y, dtype=float)
    side = 1 if (y - st.mid) @ st.normal >= 0.0 else -1
    pts = st.points
    new_pts = np.stack([_pull(v, y, st.alpha, linear) for v in pts])
    mid = new_pts.mean(axis=0)
    diffs = new_pts[1:] - new_pts[0]
    try:
        dirs = _mgs(diffs)
    except ValueError:
        dirs = st.dirs
    normal = _null_direction(dirs)
    if normal @ st.normal < 0.0:
        normal = -normal
    return side, SimplexState(mid, dirs, normal, st.alpha)


def generate_rotating_gaussians(gamma: float, n: int, rng) -> np.ndarray:
    """One sample from the two-cluster rotating-Gaussian stream.

    The two cluster centers are antipodal on the unit circle and complete
    a rotation every 2/gamma events; the noise is N(0, 1/2) per axis.
    """
    s = float(rng.integers(0, 2))
    ang = (gamma * n + s) * math.pi
    r = rng.normal(0.0, math.sqrt(0.5), size=2)
    return np.array([math.cos(ang) + r[0], math.sin(ang) + r[1]])


def pca_oracle(points) -> np.ndarray:
    """Principal direction of a 2-D point cloud via the closed-form
    2x2 eigenproblem.  Comparison baseline for the streaming classifier."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
        raise ValueError("need at least two 2-D points")
    centered = pts - pts.mean(axis=0)
    if np.max(np.abs(centered)) < 1e-12:
        raise ValueError("all points identical")
    cxx, cyy = np.mean(centered[:, 0] ** 2), np.mean(centered[:, 1] ** 2)
    cxy = np.mean(centered[:, 0] * centered[:, 1])
    theta = 0.5 * math.atan2(2.0 * cxy, cxx - cyy)
    return np.array([math.cos(theta), math.sin(theta)])


def pca_separatrix(points) -> np.ndarray:
    """Separating direction of a 2-D point cloud: perpendicular to the
    principal direction.  The learned segment settles along this line."""
    d = pca_oracle(points)
    return np.array([-d[1], d[0]])


def pca_eigengap(points) -> float:
    """Difference of the two covariance eigenvalues; near zero means the
    principal direction is ill-determined."""
    pts = np.asarray(points, dtype=float)
    centered = pts - pts.mean(axis=0)
    cxx, cyy = np.mean(centered[:, 0] ** 2), np.mean(centered[:, 1] ** 2)
    cxy = np.mean(centered[:, 0] * centered[:, 1])
    return math.hypot(cxx - cyy, 2.0 * cxy)


def axis_angle_between(u, v) -> float:
    """Unsigned angle in radians between two undirected axes (mod pi)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = abs(float(u @ v)) / (np.linalg.norm(u) * np.linalg.norm(v))
    return math.acos(min(1.0, c))
