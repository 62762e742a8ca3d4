"""Orbit partitions: a small union-find and the pair-orbit sweep used by tensor products."""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

__all__ = ["UnionFind", "pair_orbit_labels", "canonical_labels"]


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path compression and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        if self.size[x] < self.size[y]:
            x, y = y, x
        self.parent[y] = x
        self.size[x] += self.size[y]
        return True

    def groups(self) -> list[list[int]]:
        """The sets as sorted lists, ordered by their least element."""
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values())

    def __len__(self):
        return sum(1 for x in range(len(self.parent)) if self.parent[x] == x)


def canonical_labels(labels: np.ndarray) -> np.ndarray:
    """Renumber component labels so ids follow the order of each component's least index."""
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    return rank[inverse.reshape(-1)]


def pair_orbit_labels(table: np.ndarray, batch: int = 8) -> np.ndarray:
    """Orbit ids of the pairs ``(a, b)`` under ``(a, b) -> (a * y, b * y)`` for all ``y``.

    Pair ``(a, b)`` has flat index ``a * n + b``; the returned array has length
    ``n * n`` and numbers orbits ``0, 1, ...`` in order of their least pair.

    The generators are swept in batches.  Each batch contributes the edges
    between the current orbit labels of a pair and of its image, and the graph
    of labels is collapsed by a connected-components pass, so memory stays at
    ``O(n^2 * batch)`` regardless of ``n``.
    """
    t = np.asarray(table, dtype=np.int64)
    n = t.shape[0]
    labels = np.arange(n * n, dtype=np.int64)
    a = np.repeat(np.arange(n), n)
    b = np.tile(np.arange(n), n)
    for start in range(0, n, batch):
        ys = np.arange(start, min(start + batch, n))
        images = (t[a[:, None], ys] * n + t[b[:, None], ys]).ravel()
        src = np.repeat(labels, len(ys))
        dst = labels[images]
        keep = src != dst
        if not keep.any():
            continue
        labels = _collapse(src[keep], dst[keep], labels)[labels]
    return canonical_labels(labels)


def _collapse(src, dst, labels):
    size = int(labels.max()) + 1
    data = np.ones(len(src), dtype=np.int8)
    graph = coo_matrix((data, (src, dst)), shape=(size, size)).tocsr()
    _, comp = connected_components(graph, directed=True, connection="weak")
    return comp
