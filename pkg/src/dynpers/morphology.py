"""Dynamics-threshold simplification, watershed, granulometry and saliency.

The connected filter cancels every pair below a threshold by raising the dying
sublevel component to its death level; the watershed floods one basin per
minimum; the granulometric curve counts surviving minima per threshold; the
saliency map assigns each watershed boundary edge the threshold at which its
two basins become one.

Cancellation creates flat zones, so minima here are plateau regions: a
connected set of equal values with no strictly lower border.  On a field with
all-distinct values this coincides with the vertex-wise definition in
:mod:`dynpers.grid`.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .grid import Connectivity, ScalarField, filtration_order
from .pairing import pair_by_persistence


def minimal_regions(field: ScalarField) -> list:
    """Representative vertices of the minimal plateaus, sorted by total order.

    A plateau is a connected region of equal value; it is minimal when no
    neighbor of the region has a strictly smaller value.  The representative
    is the region's total-order-least vertex.
    """
    vals = field.values
    nbrs = field.neighbor_lists()
    seen = [False] * field.n_vertices
    reps = []
    for start in range(field.n_vertices):
        if seen[start]:
            continue
        level = float(vals[start])
        plateau = [start]
        seen[start] = True
        is_min = True
        q = deque([start])
        while q:
            v = q.popleft()
            for u in nbrs[v]:
                fu = float(vals[u])
                if fu == level:
                    if not seen[u]:
                        seen[u] = True
                        plateau.append(u)
                        q.append(u)
                elif fu < level:
                    is_min = False
        if is_min:
            reps.append(min(plateau))
    reps.sort(key=lambda v: (float(vals[v]), v))
    return reps


@dataclass(frozen=True)
class WatershedLabels:
    """Per-vertex basin labels; a basin is named by its minimum's vertex id."""

    labels: tuple
    shape: tuple
    connectivity: Connectivity

    @property
    def region_count(self) -> int:
        return len(set(self.labels))

    def boundary_edges(self, field: ScalarField) -> set:
        """Edges (u, v), u < v, whose endpoints carry different labels."""
        out = set()
        for u, v in iter_edges(field):
            if self.labels[u] != self.labels[v]:
                out.add((u, v))
        return out


def iter_edges(field: ScalarField):
    """All grid edges as (u, v) with u < v, in ascending order."""
    lists = field.neighbor_lists()
    for u in range(field.n_vertices):
        for v in lists[u]:
            if v > u:
                yield (u, v)


def watershed_from_markers(field: ScalarField, markers) -> WatershedLabels:
    """Flood the field from the given marker vertices.

    Markers are labeled with themselves, then vertices are popped from a
    priority queue in ascending total order of the frontier; each takes the
    label of its total-order-least already-labeled neighbor.  Deterministic.
    """
    vals = field.values
    nbrs = field.neighbor_lists()
    labels = [-1] * field.n_vertices
    heap = []
    for m in markers:
        m = field.check_vertex(m)
        labels[m] = m
    for m in markers:
        for u in nbrs[m]:
            if labels[u] < 0:
                heapq.heappush(heap, (float(vals[u]), u))
    while heap:
        _, v = heapq.heappop(heap)
        if labels[v] >= 0:
            continue
        best = None
        for u in nbrs[v]:
            if labels[u] >= 0:
                k = (float(vals[u]), u)
                if best is None or k < best:
                    best = k
        assert best is not None, "queued vertices always have a labeled neighbor"
        labels[v] = labels[best[1]]
        for u in nbrs[v]:
            if labels[u] < 0:
                heapq.heappush(heap, (float(vals[u]), u))
    if any(l < 0 for l in labels):
        raise UsageError("markers did not cover the field (empty marker set?)")
    return WatershedLabels(labels=tuple(labels), shape=field.shape, connectivity=field.connectivity)


def watershed(field: ScalarField) -> WatershedLabels:
    """One basin per minimal plateau, flooding in filtration order."""
    return watershed_from_markers(field, minimal_regions(field))


def filter_dynamics(field: ScalarField, t: float) -> ScalarField:
    """Cancel every pair with value below ``t`` (connected filter).

    Pairs are cancelled in ascending value order; each cancellation raises the
    dying sublevel component -- the component of the pair's minimum strictly
    below the death level, in the current field state -- to the death value.
    Values never decrease; the output has no surviving minimum with dynamics
    below ``t``.

    ``t`` must be positive and must not equal any finite pair value, because
    the boundary case would be ambiguous; such a collision is rejected.
    """
    t = float(t)
    if not (t > 0.0 and math.isfinite(t)):
        raise UsageError(f"filter threshold must be positive and finite, got {t}")
    pairs = [p for p in pair_by_persistence(field) if not p.is_essential]
    for p in pairs:
        if p.value == t:
            raise UsageError(
                f"threshold {t} collides with the pair value {p.value} of minimum "
                f"{p.min_vertex}; pick a value strictly between pair values"
            )
    vals = field.values.copy()
    nbrs = field.neighbor_lists()
    for p in pairs:  # already ascending by value
        if p.value >= t:
            continue
        death_key = (p.death, p.saddle_vertex)
        component = [p.min_vertex]
        seen = {p.min_vertex}
        q = deque(component)
        while q:
            v = q.popleft()
            for u in nbrs[v]:
                if u not in seen and (float(vals[u]), u) < death_key:
                    seen.add(u)
                    component.append(u)
                    q.append(u)
        vals[component] = p.death
    return ScalarField(field.shape, vals, field.connectivity)


@dataclass(frozen=True)
class GranulometricCurve:
    """Surviving-minima count as a function of the cancellation threshold.

    ``breakpoints`` are the distinct finite pair values, ascending;
    ``counts[k]`` is the number of minima with dynamics >= t on the interval
    up to and including ``breakpoints[k]`` (``counts[-1]`` is the count beyond
    the last breakpoint, 1 on a connected grid).
    """

    breakpoints: tuple
    counts: tuple

    def value_at(self, t: float) -> int:
        """Number of minima with dynamics >= t (t positive)."""
        if not t > 0.0:
            raise UsageError(f"granulometric curve is defined for t > 0, got {t}")
        k = 0
        while k < len(self.breakpoints) and self.breakpoints[k] < t:
            k += 1
        return self.counts[k]

    def to_json(self) -> dict:
        return {"breakpoints": list(self.breakpoints), "counts": list(self.counts)}


def granulometric_curve(pairs) -> GranulometricCurve:
    """Curve from a pairing: total minima minus pairs cancelled below t."""
    finite = sorted(p.value for p in pairs if not p.is_essential)
    total = len(pairs)  # one pair per minimum, essential included
    breakpoints = sorted(set(finite))
    counts = [total]
    for b in breakpoints:
        cancelled = sum(1 for v in finite if v <= b)
        counts.append(total - cancelled)
    return GranulometricCurve(breakpoints=tuple(breakpoints), counts=tuple(counts))


@dataclass(frozen=True)
class SaliencyMap:
    """Extinction value per grid edge: the largest threshold still separating it.

    Zero on edges interior to a basin; on a watershed boundary edge it is the
    pair value at which the two basins become one under progressive
    cancellation.
    """

    edge_values: tuple  # ((u, v), value) sorted by edge
    shape: tuple
    connectivity: Connectivity

    def as_dict(self) -> dict:
        return dict(self.edge_values)

    def edges_at_least(self, t: float) -> set:
        return {e for e, val in self.edge_values if val >= t}

    def to_json(self) -> dict:
        return {f"{u},{v}": val for (u, v), val in self.edge_values}


def _absorption_tree(field: ScalarField, labels: WatershedLabels):
    """Where each cancelled basin's water goes, and at which threshold.

    Replays the sublevel filtration; at a merge vertex the dying component's
    future water exits over that saddle and follows the saddle's least
    preceding neighbor on the still-separate elder side, so the dying minimum
    is absorbed by that neighbor's watershed basin.  Returns
    ``(parent, weight)`` maps over minima: ``parent[m]`` is the absorbing
    basin and ``weight[m]`` the pair value of ``m``.
    """
    vals = field.values
    nbrs = field.neighbor_lists()
    parent_uf = list(range(field.n_vertices))
    comp_min = [-1] * field.n_vertices
    inserted = [False] * field.n_vertices
    parent = {}
    weight = {}

    def find(x):
        while parent_uf[x] != x:
            parent_uf[x] = parent_uf[parent_uf[x]]
            x = parent_uf[x]
        return x

    for v in filtration_order(field):
        by_root = {}
        for u in nbrs[v]:
            if inserted[u]:
                by_root.setdefault(find(u), []).append(u)
        inserted[v] = True
        if not by_root:
            comp_min[v] = v
            continue
        if len(by_root) > 1:
            level = float(vals[v])
            comps = sorted(
                by_root.items(), key=lambda kv: (float(vals[comp_min[kv[0]]]), comp_min[kv[0]])
            )
            elder_side = list(comps[0][1])
            for root, side in comps[1:]:
                dying = comp_min[root]
                gate = min(elder_side, key=lambda u: (float(vals[u]), u))
                parent[dying] = labels.labels[gate]
                weight[dying] = level - float(vals[dying])
                elder_side.extend(side)
        roots = list(by_root)
        r0 = roots[0]
        survivor = min(
            (comp_min[r] for r in roots), key=lambda m: (float(vals[m]), m)
        )
        for r in roots[1:]:
            parent_uf[r] = r0
        parent_uf[v] = r0
        comp_min[r0] = survivor
    return parent, weight


def saliency(field: ScalarField) -> SaliencyMap:
    """Closed-form saliency from the cancellation hierarchy.

    The saliency of a boundary edge between basins a and b is the largest
    weight on the path from a to b in the absorption tree: the threshold at
    which progressive cancellation finally fuses their regions.
    """
    labels = watershed(field)
    parent, weight = _absorption_tree(field, labels)

    def fuse_level(a: int, b: int) -> float:
        seen = {}
        x, run = a, 0.0
        while True:
            seen[x] = run
            if x not in parent:
                break
            run = max(run, weight[x])
            x = parent[x]
        x, run = b, 0.0
        while x not in seen:
            run = max(run, weight[x])
            x = parent[x]
        return max(run, seen[x])

    edge_values = []
    cache = {}
    for u, v in iter_edges(field):
        a, b = labels.labels[u], labels.labels[v]
        if a == b:
            edge_values.append(((u, v), 0.0))
            continue
        key = (a, b) if a < b else (b, a)
        if key not in cache:
            cache[key] = fuse_level(*key)
        edge_values.append(((u, v), cache[key]))
    return SaliencyMap(
        edge_values=tuple(edge_values), shape=field.shape, connectivity=field.connectivity
    )


def saliency_to_field(sal: SaliencyMap) -> ScalarField:
    """Saliency on the doubled-resolution interleaved grid.

    Axis-edge values land at the odd coordinate between their endpoints; all
    other positions are zero.  Only defined for axis connectivity, where every
    edge has such a position.
    """
    if sal.connectivity is not Connectivity.AXIS:
        raise UsageError("the interleaved-grid form needs axis connectivity; use the edge list")
    doubled = tuple(2 * e - 1 for e in sal.shape)
    out = np.zeros(doubled, dtype=np.float64)
    for (u, v), val in sal.edge_values:
        cu = np.unravel_index(u, sal.shape)
        cv = np.unravel_index(v, sal.shape)
        pos = tuple(a + b for a, b in zip(cu, cv))
        out[pos] = val
    return ScalarField(doubled, out.reshape(-1), Connectivity.AXIS)


def segment_pipeline(field: ScalarField, t: float):
    """Simplify at ``t``, then watershed, pair and count the filtered field.

    Returns ``(filtered field, labels, pairs of the filtered field,
    granulometric curve of the filtered field)``.  The region count equals the
    number of minima of the input whose dynamics is at least ``t``.
    """
    filtered = filter_dynamics(field, t)
    labels = watershed(filtered)
    pairs = pair_by_persistence(filtered)
    curve = granulometric_curve(pairs)
    return filtered, labels, pairs, curve
