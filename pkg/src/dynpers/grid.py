"""Scalar fields on regular grids and the strict total vertex order.

A field is a flat array of finite values over an n-dimensional box, read in
row-major order.  Vertices are identified by their linear index.  All
comparisons between vertices go through the lexicographic key
``(value, linear index)``, which turns any stored data into a field with
"unique critical values" without perturbing the values themselves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as _dc_field
from enum import Enum

import numpy as np

from .errors import UsageError


class Connectivity(Enum):
    """Neighborhood used on the grid: 2n axis neighbors or the full 3^n - 1."""

    AXIS = "axis"
    FULL = "full"


def _as_connectivity(value) -> Connectivity:
    if isinstance(value, Connectivity):
        return value
    try:
        return Connectivity(value)
    except ValueError:
        raise UsageError(f"unknown connectivity {value!r}; use 'axis' or 'full'") from None


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Immutable scalar field on a regular grid.

    Parameters
    ----------
    shape : tuple of int
        Extent per axis, every extent >= 1.
    values : ndarray
        Flat float64 array of finite values, row-major, one per vertex.
    connectivity : Connectivity or str
        Neighborhood rule, ``axis`` (default) or ``full``.
    """

    shape: tuple
    values: np.ndarray
    connectivity: Connectivity = Connectivity.AXIS
    _neighbor_cache: list = _dc_field(default=None, repr=False, compare=False)

    def __init__(self, shape, values, connectivity=Connectivity.AXIS):
        shape = tuple(int(e) for e in shape)
        if len(shape) < 1:
            raise UsageError("field shape needs at least one axis")
        if any(e < 1 for e in shape):
            raise UsageError(f"every extent must be >= 1, got {shape}")
        vals = np.asarray(values, dtype=np.float64).reshape(-1)
        n = int(np.prod(shape))
        if vals.size != n:
            raise UsageError(
                f"value count {vals.size} does not match shape {shape} ({n} vertices)"
            )
        if not np.all(np.isfinite(vals)):
            raise UsageError("field values must all be finite")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "shape", shape)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "connectivity", _as_connectivity(connectivity))
        object.__setattr__(self, "_neighbor_cache", None)

    @property
    def n_vertices(self) -> int:
        return self.values.size

    @property
    def ndim(self) -> int:
        return len(self.shape)

    def check_vertex(self, v: int) -> int:
        v = int(v)
        if not 0 <= v < self.n_vertices:
            raise UsageError(f"vertex {v} out of range for field with {self.n_vertices} vertices")
        return v

    def neighbor_lists(self) -> list:
        """All neighbor lists at once (cached); ``lists[v]`` is sorted ascending."""
        if self._neighbor_cache is None:
            object.__setattr__(
                self, "_neighbor_cache", _build_neighbor_lists(self.shape, self.connectivity)
            )
        return self._neighbor_cache


def _offsets(ndim: int, connectivity: Connectivity):
    if connectivity is Connectivity.AXIS:
        offs = []
        for i in range(ndim):
            for d in (-1, 1):
                off = [0] * ndim
                off[i] = d
                offs.append(tuple(off))
        return offs
    return [off for off in itertools.product((-1, 0, 1), repeat=ndim) if any(off)]


def _build_neighbor_lists(shape, connectivity) -> list:
    n = int(np.prod(shape))
    lin = np.arange(n).reshape(shape)
    lists = [[] for _ in range(n)]
    for off in _offsets(len(shape), connectivity):
        src = tuple(
            slice(max(0, -d), e - max(0, d)) for d, e in zip(off, shape)
        )
        dst = tuple(
            slice(max(0, d), e - max(0, -d)) for d, e in zip(off, shape)
        )
        for v, u in zip(lin[src].ravel().tolist(), lin[dst].ravel().tolist()):
            lists[v].append(u)
    for l in lists:
        l.sort()
    return lists


def order_key(field: ScalarField, v: int) -> tuple:
    """Total-order key of a vertex: ``(value, linear index)``."""
    v = field.check_vertex(v)
    return (float(field.values[v]), v)


def precedes(field: ScalarField, a: int, b: int) -> bool:
    """Strict total order: does ``a`` come before ``b``?

    Smaller value wins; ties are broken by the linear index, so the order is
    total on any stored data.
    """
    a = field.check_vertex(a)
    b = field.check_vertex(b)
    if a == b:
        raise UsageError("precedes() is a strict order; the two vertices must differ")
    return (float(field.values[a]), a) < (float(field.values[b]), b)


def sort_vertices(field: ScalarField, vertices) -> list:
    """Sort a vertex collection ascending by the total order."""
    vals = field.values
    return sorted((field.check_vertex(v) for v in vertices), key=lambda v: (float(vals[v]), v))


def neighbors(field: ScalarField, v: int) -> list:
    """Grid neighbors of ``v`` under the field's connectivity, sorted ascending."""
    v = field.check_vertex(v)
    return list(field.neighbor_lists()[v])


def local_minima(field: ScalarField) -> list:
    """Vertices all of whose neighbors come later in the total order.

    Returned sorted by the total order.  On a field with all-distinct values
    this is exactly the set of strict value minima.
    """
    vals = field.values
    lists = field.neighbor_lists()
    out = []
    for v in range(field.n_vertices):
        key = (float(vals[v]), v)
        if all(key < (float(vals[u]), u) for u in lists[v]):
            out.append(v)
    out.sort(key=lambda v: (float(vals[v]), v))
    return out


def filtration_order(field: ScalarField) -> list:
    """All vertices sorted ascending by the total order.

    The first k entries are the discrete sublevel set after k insertions.
    """
    return np.argsort(field.values, kind="stable").tolist()
