"""Stallings subgroup graphs for finitely generated subgroups of free groups."""

from __future__ import annotations

import math
from typing import Sequence

from .errors import AlphabetMismatch
from .words import Alphabet, Word

INFINITE = math.inf


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def add(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, v: int) -> int:
        p = self.parent
        root = v
        while p[root] != root:
            root = p[root]
        while p[v] != root:
            p[v], v = root, p[v]
        return root


class SubgroupGraph:
    """Folded core graph with a basepoint.

    ``out[v]`` maps a signed letter code to the target vertex.  Positive codes
    are genuine edges, negative codes the reversed traversal, so the graph is
    folded exactly when each ``out[v]`` is a function.
    """

    def __init__(self, alphabet: Alphabet, out: list[dict[int, int]], base: int = 0):
        self.alphabet = alphabet
        self.out = out
        self.base = base

    @property
    def num_vertices(self) -> int:
        return len(self.out)

    @property
    def num_edges(self) -> int:
        return sum(1 for d in self.out for c in d if c > 0)

    def edges(self) -> list[tuple[int, int, int]]:
        return sorted((v, c, t) for v, d in enumerate(self.out) for c, t in d.items() if c > 0)

    def read(self, w: Word) -> int | None:
        """Follow ``w`` from the basepoint; None if the path leaves the graph."""
        v = self.base
        for c in w.code:
            v = self.out[v].get(c)
            if v is None:
                return None
        return v

    def is_folded(self) -> bool:
        seen = set()
        for v, d in enumerate(self.out):
            for c, t in d.items():
                if self.out[t].get(-c) != v:
                    return False
                if c > 0:
                    seen.add((v, c))
        return True

    def __repr__(self) -> str:
        return f"SubgroupGraph(V={self.num_vertices}, E={self.num_edges})"


def build(generators: Sequence[Word], alphabet: Alphabet | None = None) -> SubgroupGraph:
    """Fold the wedge of loops spelled by ``generators``."""
    if alphabet is None:
        if not generators:
            raise ValueError("an alphabet is needed to build from an empty list")
        alphabet = generators[0].alphabet
    for w in generators:
        if w.alphabet is not alphabet and w.alphabet != alphabet:
            raise AlphabetMismatch("generators must share one alphabet")

    # adj[v][c] is the set of targets along signed letter c
    adj: list[dict[int, set[int]]] = [{}]
    base = 0
    for w in generators:
        v = base
        for k, c in enumerate(w.code):
            if k == len(w.code) - 1:
                t = base
            else:
                adj.append({})
                t = len(adj) - 1
            adj[v].setdefault(c, set()).add(t)
            adj[t].setdefault(-c, set()).add(v)
            v = t

    uf = _UnionFind()
    for _ in adj:
        uf.add()

    def merge(a: int, b: int) -> int:
        a, b = uf.find(a), uf.find(b)
        if a == b:
            return a
        if len(adj[a]) < len(adj[b]):
            a, b = b, a
        uf.parent[b] = a
        for c, ts in adj[b].items():
            for t in ts:
                back = adj[t if t != b else a].setdefault(-c, set())
                back.discard(b)
                back.add(a)
            adj[a].setdefault(c, set()).update(a if t == b else t for t in ts)
        adj[b] = {}
        return a

    todo = list(range(len(adj)))
    while todo:
        v = uf.find(todo.pop())
        for c in list(adj[v]):
            ts = adj[v].get(c)
            if ts is None or len(ts) < 2:
                continue
            it = iter(list(ts))
            keep = next(it)
            for t in it:
                keep = merge(keep, t)
            v = uf.find(v)
            todo.append(keep)
            todo.append(v)
            break

    out: dict[int, dict[int, int]] = {}
    for v in range(len(adj)):
        if uf.find(v) != v:
            continue
        d = {}
        for c, ts in adj[v].items():
            roots = {uf.find(t) for t in ts}
            if roots:
                assert len(roots) == 1
                d[c] = roots.pop()
        out[v] = d
    root = uf.find(base)
    return _prune_and_relabel(alphabet, out, root)


def _prune_and_relabel(alphabet: Alphabet, out: dict[int, dict[int, int]], root: int) -> SubgroupGraph:
    # restrict to the component of the basepoint
    seen = {root}
    todo = [root]
    while todo:
        v = todo.pop()
        for t in out[v].values():
            if t not in seen:
                seen.add(t)
                todo.append(t)
    out = {v: dict(out[v]) for v in seen}
    # strip hanging trees (degree-one vertices other than the basepoint)
    leaves = [v for v in out if v != root and len(out[v]) <= 1]
    while leaves:
        v = leaves.pop()
        if v not in out or v == root or len(out[v]) > 1:
            continue
        for c, t in out[v].items():
            out[t].pop(-c, None)
            if t != root and len(out[t]) <= 1:
                leaves.append(t)
        del out[v]
    # deterministic relabel by BFS from the basepoint in letter order
    order = [root]
    label = {root: 0}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for c in sorted(out[v], key=lambda c: (abs(c), -c)):
            t = out[v][c]
            if t not in label:
                label[t] = len(order)
                order.append(t)
    adj = [{c: label[t] for c, t in out[v].items()} for v in order]
    return SubgroupGraph(alphabet, adj, 0)


def member(g: SubgroupGraph, w: Word) -> bool:
    if w.alphabet is not g.alphabet and w.alphabet != g.alphabet:
        raise AlphabetMismatch("word and graph use different alphabets")
    return g.read(w) == g.base


def rank(g: SubgroupGraph) -> int:
    if g.num_edges == 0:
        return 0
    return g.num_edges - g.num_vertices + 1


def index(g: SubgroupGraph):
    """Number of cosets, or ``INFINITE`` when the graph is not a covering."""
    r = len(g.alphabet)
    if r == 0:
        return 1
    full = {c for k in range(1, r + 1) for c in (k, -k)}
    for d in g.out:
        if set(d) != full:
            return INFINITE
    return g.num_vertices


def basis(g: SubgroupGraph) -> list[Word]:
    """Free basis read off a BFS spanning tree."""
    parent: dict[int, tuple[int, int]] = {g.base: (g.base, 0)}
    order = [g.base]
    tree = set()
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for c in sorted(g.out[v], key=lambda c: (abs(c), -c)):
            t = g.out[v][c]
            if t not in parent:
                parent[t] = (v, c)
                tree.add((v, c))
                tree.add((t, -c))
                order.append(t)

    def path(v: int) -> list[int]:
        out = []
        while v != g.base:
            p, c = parent[v]
            out.append(c)
            v = p
        return out[::-1]

    result = []
    for v, c, t in g.edges():
        if (v, c) in tree:
            continue
        code = path(v) + [c] + [-x for x in reversed(path(t))]
        result.append(Word(g.alphabet, code))
    return result
