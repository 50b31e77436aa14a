"""Minimal union-find used for quotient constructions."""

from __future__ import annotations

from typing import Hashable, Iterable


class UnionFind:
    def __init__(self, items: Iterable[Hashable] = ()):
        self._parent: dict = {x: x for x in items}

    def add(self, x) -> None:
        self._parent.setdefault(x, x)

    def find(self, x):
        parent = self._parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self._parent[rx] = ry
        return True

    def classes(self) -> list[frozenset]:
        buckets: dict = {}
        for x in self._parent:
            buckets.setdefault(self.find(x), set()).add(x)
        return [frozenset(group) for group in buckets.values()]
