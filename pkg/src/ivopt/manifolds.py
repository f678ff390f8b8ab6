"""Three geometries with closed-form geodesics.

* ``Euclidean(dim)`` -- R^n with straight-line geodesics.
* ``Circle()`` -- the unit circle through the chart angle theta in [0, 2*pi];
  geodesics interpolate the chart angle directly, with no shortest-arc
  wrapping, so convexity verdicts are chart verdicts.
* ``Spd(dim)`` -- symmetric positive definite matrices with the affine
  invariant metric g_p(X, Y) = tr(p^-1 X p^-1 Y).

Points and tangents are immutable; every operation returns fresh objects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, ManifoldMismatchError, NonPositiveDefiniteError

SYM_TOL = 1e-8
EIG_FLOOR = 1e-12
ANGLE_SLACK = 1e-9
TWO_PI = 2.0 * math.pi


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def symmetrize(mat: np.ndarray) -> np.ndarray:
    """Return (A + A^T)/2, rejecting asymmetry beyond SYM_TOL."""
    arr = np.asarray(mat, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {arr.shape}")
    gap = float(np.max(np.abs(arr - arr.T))) if arr.size else 0.0
    if gap > SYM_TOL:
        raise DomainError(f"matrix asymmetry {gap:.3e} exceeds tolerance {SYM_TOL:.1e}")
    return 0.5 * (arr + arr.T)


def _pd_eig(mat: np.ndarray):
    sym = symmetrize(mat)
    vals, vecs = np.linalg.eigh(sym)
    if vals.min() <= EIG_FLOOR:
        raise NonPositiveDefiniteError(
            f"matrix is not positive definite (min eigenvalue {vals.min():.3e})"
        )
    return vals, vecs


def sym_power(mat: np.ndarray, s: float) -> np.ndarray:
    """Matrix power of an SPD matrix via eigendecomposition."""
    vals, vecs = _pd_eig(mat)
    return (vecs * vals**s) @ vecs.T


def sym_log(mat: np.ndarray) -> np.ndarray:
    """Matrix logarithm of an SPD matrix."""
    vals, vecs = _pd_eig(mat)
    return (vecs * np.log(vals)) @ vecs.T


def sym_exp(mat: np.ndarray) -> np.ndarray:
    """Matrix exponential of a symmetric matrix."""
    sym = symmetrize(mat)
    vals, vecs = np.linalg.eigh(sym)
    return (vecs * np.exp(vals)) @ vecs.T


@dataclass(frozen=True, eq=False)
class Point:
    manifold: "Manifold"
    value: Union[float, np.ndarray]

    def close_to(self, other: "Point", tol: float = 1e-9) -> bool:
        if self.manifold != other.manifold:
            return False
        return self.manifold.distance(self, other) <= tol

    def to_json(self):
        return self.manifold.point_to_json(self)


@dataclass(frozen=True, eq=False)
class TangentDirection:
    base: Point
    value: Union[float, np.ndarray]

    def scaled(self, a: float) -> "TangentDirection":
        if isinstance(self.value, float):
            return TangentDirection(self.base, a * self.value)
        return TangentDirection(self.base, _readonly(a * np.asarray(self.value)))


@dataclass(frozen=True, eq=False)
class Geodesic:
    start: Point
    end: Point

    def __post_init__(self):
        if self.start.manifold != self.end.manifold:
            raise ManifoldMismatchError("geodesic endpoints live on different manifolds")

    def at(self, s: float) -> Point:
        return self.start.manifold.geodesic_point(self.start, self.end, s)


class Manifold:
    """Common surface for the three geometries."""

    name: str = ""
    feature_names: tuple = ()

    # -- construction -------------------------------------------------
    def point(self, raw) -> Point:
        raise NotImplementedError

    def tangent(self, base: Point, raw) -> TangentDirection:
        raise NotImplementedError

    # -- geometry ------------------------------------------------------
    def geodesic(self, p: Point, q: Point) -> Geodesic:
        self._check(p)
        self._check(q)
        return Geodesic(p, q)

    def geodesic_point(self, p: Point, q: Point, s: float) -> Point:
        raise NotImplementedError

    def chord_point(self, p: Point, q: Point, s: float) -> Point:
        """Interpolation in ambient coordinates (straight-line mixing)."""
        raise NotImplementedError

    def log(self, p: Point, q: Point) -> TangentDirection:
        raise NotImplementedError

    def exp(self, p: Point, x: TangentDirection, s: float = 1.0) -> Point:
        raise NotImplementedError

    def distance(self, p: Point, q: Point) -> float:
        raise NotImplementedError

    def inner(self, p: Point, x: TangentDirection, y: TangentDirection) -> float:
        raise NotImplementedError

    def features(self, p: Point) -> dict:
        raise NotImplementedError

    def random_point(self, rng: np.random.Generator, scale: float = 0.7) -> Point:
        raise NotImplementedError

    def point_to_json(self, p: Point):
        raise NotImplementedError

    # -- helpers --------------------------------------------------------
    def _check(self, p: Point) -> None:
        if p.manifold != self:
            raise ManifoldMismatchError(
                f"point from {p.manifold.name} used on {self.name}"
            )

    def _check_tangent(self, p: Point, x: TangentDirection) -> None:
        self._check(p)
        if x.base.manifold != self:
            raise ManifoldMismatchError("tangent direction from a different manifold")
        if self.distance(x.base, p) > 1e-9:
            raise ManifoldMismatchError("tangent direction is based at a different point")


@dataclass(frozen=True)
class Euclidean(Manifold):
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")

    @property
    def name(self) -> str:
        return f"Euclidean({self.dim})"

    @property
    def feature_names(self) -> tuple:
        return tuple(f"x{i + 1}" for i in range(self.dim))

    def point(self, raw) -> Point:
        arr = np.asarray(raw, dtype=float).reshape(-1)
        if arr.shape != (self.dim,):
            raise DomainError(f"expected a length-{self.dim} vector, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("point coordinates must be finite")
        return Point(self, _readonly(arr))

    def tangent(self, base: Point, raw) -> TangentDirection:
        self._check(base)
        arr = np.asarray(raw, dtype=float).reshape(-1)
        if arr.shape != (self.dim,):
            raise DomainError(f"expected a length-{self.dim} vector, got shape {arr.shape}")
        return TangentDirection(base, _readonly(arr))

    def geodesic_point(self, p: Point, q: Point, s: float) -> Point:
        self._check(p)
        self._check(q)
        return self.point((1.0 - s) * p.value + s * q.value)

    def chord_point(self, p: Point, q: Point, s: float) -> Point:
        return self.geodesic_point(p, q, s)

    def log(self, p: Point, q: Point) -> TangentDirection:
        self._check(p)
        self._check(q)
        return TangentDirection(p, _readonly(q.value - p.value))

    def exp(self, p: Point, x: TangentDirection, s: float = 1.0) -> Point:
        self._check_tangent(p, x)
        return self.point(p.value + s * x.value)

    def distance(self, p: Point, q: Point) -> float:
        self._check(p)
        self._check(q)
        return float(np.linalg.norm(q.value - p.value))

    def inner(self, p: Point, x: TangentDirection, y: TangentDirection) -> float:
        self._check_tangent(p, x)
        self._check_tangent(p, y)
        return float(np.dot(x.value, y.value))

    def features(self, p: Point) -> dict:
        self._check(p)
        return {f"x{i + 1}": float(v) for i, v in enumerate(p.value)}

    def random_point(self, rng: np.random.Generator, scale: float = 0.7) -> Point:
        return self.point(rng.normal(0.0, scale, size=self.dim))

    def point_to_json(self, p: Point):
        return [float(v) for v in p.value]


@dataclass(frozen=True)
class Circle(Manifold):
    """Unit circle through the chart angle theta in [0, 2*pi].

    Geodesics interpolate the chart angle; there is no wrap-around, so the
    chart boundary is a hard boundary for geodesic extensions.
    """

    @property
    def name(self) -> str:
        return "Circle"

    @property
    def feature_names(self) -> tuple:
        return ("theta",)

    def point(self, raw) -> Point:
        theta = float(raw)
        if not math.isfinite(theta):
            raise DomainError("angle must be finite")
        if theta < -ANGLE_SLACK or theta > TWO_PI + ANGLE_SLACK:
            raise DomainError(
                f"angle {theta} outside the chart range [0, {TWO_PI:.6f}]"
            )
        return Point(self, min(max(theta, 0.0), TWO_PI))

    def tangent(self, base: Point, raw) -> TangentDirection:
        self._check(base)
        return TangentDirection(base, float(raw))

    def geodesic_point(self, p: Point, q: Point, s: float) -> Point:
        self._check(p)
        self._check(q)
        return self.point((1.0 - s) * p.value + s * q.value)

    def chord_point(self, p: Point, q: Point, s: float) -> Point:
        return self.geodesic_point(p, q, s)

    def log(self, p: Point, q: Point) -> TangentDirection:
        self._check(p)
        self._check(q)
        return TangentDirection(p, q.value - p.value)

    def exp(self, p: Point, x: TangentDirection, s: float = 1.0) -> Point:
        self._check_tangent(p, x)
        return self.point(p.value + s * x.value)

    def distance(self, p: Point, q: Point) -> float:
        self._check(p)
        self._check(q)
        return abs(q.value - p.value)

    def inner(self, p: Point, x: TangentDirection, y: TangentDirection) -> float:
        self._check_tangent(p, x)
        self._check_tangent(p, y)
        return x.value * y.value

    def features(self, p: Point) -> dict:
        self._check(p)
        return {"theta": p.value}

    def random_point(self, rng: np.random.Generator, scale: float = 0.7) -> Point:
        return self.point(rng.uniform(0.0, TWO_PI))

    def point_to_json(self, p: Point):
        return {"theta": p.value}


@dataclass(frozen=True)
class Spd(Manifold):
    """Symmetric positive definite matrices with the affine invariant metric.

    geodesic_point: p^(1/2) (p^(-1/2) q p^(-1/2))^s p^(1/2)
    log:            p^(1/2) logm(p^(-1/2) q p^(-1/2)) p^(1/2)
    distance:       Frobenius norm of logm(p^(-1/2) q p^(-1/2))
    """

    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")

    @property
    def name(self) -> str:
        return f"Spd({self.dim})"

    @property
    def feature_names(self) -> tuple:
        return ("logdet", "trace")

    def point(self, raw) -> Point:
        arr = np.asarray(raw, dtype=float)
        if arr.shape != (self.dim, self.dim):
            raise DomainError(
                f"expected a {self.dim}x{self.dim} matrix, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise DomainError("matrix entries must be finite")
        sym = symmetrize(arr)
        vals = np.linalg.eigvalsh(sym)
        if vals.min() <= EIG_FLOOR:
            raise NonPositiveDefiniteError(
                f"matrix is not positive definite (min eigenvalue {vals.min():.3e})"
            )
        return Point(self, _readonly(sym))

    def tangent(self, base: Point, raw) -> TangentDirection:
        self._check(base)
        arr = np.asarray(raw, dtype=float)
        if arr.shape != (self.dim, self.dim):
            raise DomainError(
                f"expected a {self.dim}x{self.dim} matrix, got shape {arr.shape}"
            )
        return TangentDirection(base, _readonly(symmetrize(arr)))

    def _roots(self, p: Point):
        vals, vecs = _pd_eig(p.value)
        half = (vecs * np.sqrt(vals)) @ vecs.T
        inv_half = (vecs / np.sqrt(vals)) @ vecs.T
        return half, inv_half

    def geodesic_point(self, p: Point, q: Point, s: float) -> Point:
        self._check(p)
        self._check(q)
        half, inv_half = self._roots(p)
        inner_mat = sym_power(inv_half @ q.value @ inv_half, s)
        return self.point(half @ inner_mat @ half)

    def chord_point(self, p: Point, q: Point, s: float) -> Point:
        self._check(p)
        self._check(q)
        return self.point((1.0 - s) * p.value + s * q.value)

    def log(self, p: Point, q: Point) -> TangentDirection:
        self._check(p)
        self._check(q)
        half, inv_half = self._roots(p)
        mid = sym_log(inv_half @ q.value @ inv_half)
        return TangentDirection(p, _readonly(half @ mid @ half))

    def exp(self, p: Point, x: TangentDirection, s: float = 1.0) -> Point:
        self._check_tangent(p, x)
        half, inv_half = self._roots(p)
        mid = sym_exp(s * (inv_half @ x.value @ inv_half))
        return self.point(half @ mid @ half)

    def distance(self, p: Point, q: Point) -> float:
        self._check(p)
        self._check(q)
        _, inv_half = self._roots(p)
        vals, _ = _pd_eig(inv_half @ q.value @ inv_half)
        return float(np.sqrt(np.sum(np.log(vals) ** 2)))

    def inner(self, p: Point, x: TangentDirection, y: TangentDirection) -> float:
        self._check_tangent(p, x)
        self._check_tangent(p, y)
        a = np.linalg.solve(p.value, x.value)
        b = np.linalg.solve(p.value, y.value)
        return float(np.trace(a @ b))

    def features(self, p: Point) -> dict:
        self._check(p)
        sign, logdet = np.linalg.slogdet(p.value)
        if sign <= 0:
            raise NonPositiveDefiniteError("determinant is not positive")
        return {"logdet": float(logdet), "trace": float(np.trace(p.value))}

    def random_point(self, rng: np.random.Generator, scale: float = 0.7) -> Point:
        raw = rng.normal(0.0, scale, size=(self.dim, self.dim))
        return self.point(sym_exp(0.5 * (raw + raw.T)))

    def point_to_json(self, p: Point):
        return [[float(v) for v in row] for row in p.value]


# -- module-level operation surface -------------------------------------


def geodesic_at(geod: Geodesic, s: float) -> Point:
    """Point at parameter s along the geodesic (0 -> start, 1 -> end)."""
    return geod.at(s)


def log_map(p: Point, q: Point) -> TangentDirection:
    """Initial velocity of the geodesic running from p to q."""
    return p.manifold.log(p, q)


def exp_map(p: Point, x: TangentDirection, s: float = 1.0) -> Point:
    """Point reached after parameter s along the geodesic with velocity x."""
    return p.manifold.exp(p, x, s)


def distance(p: Point, q: Point) -> float:
    return p.manifold.distance(p, q)


def inner(p: Point, x: TangentDirection, y: TangentDirection) -> float:
    return p.manifold.inner(p, x, y)
