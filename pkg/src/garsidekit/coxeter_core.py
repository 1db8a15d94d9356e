"""Simply-laced Coxeter graphs, their root systems and exact Weyl group arithmetic.

Weyl group elements are integer matrices acting on root-lattice coordinates
(column vectors).  The simple reflection ``s_i`` sends ``x`` to
``x - (C x)_i e_i`` where ``C`` is the Cartan matrix.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, NonSpherical

Matrix = tuple[tuple[int, ...], ...]


def _edge(i: int, j: int) -> frozenset:
    return frozenset((i, j))


@dataclass(frozen=True)
class CoxeterGraph:
    """A finite simple graph whose vertices label Artin generators.

    Construction validates that every connected component is of type
    A, D or E.  Disconnected graphs are rejected unless
    ``allow_disconnected`` is set.
    """

    vertices: tuple[int, ...]
    edges: frozenset
    name: str = field(default="", compare=False)
    allow_disconnected: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", frozenset(frozenset(e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        vs = set(self.vertices)
        for e in self.edges:
            if len(e) != 2:
                raise NonSpherical("graph has a loop", tuple(e))
            if not e <= vs:
                raise ValueError(f"edge {sorted(e)} uses an unknown vertex")
        comps = self.components()
        if len(comps) > 1 and not self.allow_disconnected:
            raise NonSpherical(
                "graph is disconnected (pass allow_disconnected=True to accept it)",
                self.vertices,
            )
        types = tuple(_classify_component(self, c) for c in comps)
        object.__setattr__(self, "_types", types)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], name: str = "", allow_disconnected=False):
        return cls(tuple(range(1, n + 1)), frozenset(_edge(*e) for e in edges), name, allow_disconnected)

    @property
    def rank(self) -> int:
        return len(self.vertices)

    @property
    def component_types(self) -> tuple[str, ...]:
        return self._types

    @property
    def type_name(self) -> str:
        return "x".join(self._types) if self._types else "empty"

    def adjacent(self, i: int, j: int) -> bool:
        return _edge(i, j) in self.edges

    def neighbours(self, v: int) -> list[int]:
        return [u for u in self.vertices if _edge(u, v) in self.edges]

    def components(self) -> list[tuple[int, ...]]:
        seen: set[int] = set()
        out = []
        for v in self.vertices:
            if v in seen:
                continue
            comp, queue = [], deque([v])
            seen.add(v)
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in self.neighbours(x):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            out.append(tuple(sorted(comp, key=self.vertices.index)))
        return out

    def induced(self, subset: Iterable[int]) -> "CoxeterGraph":
        """Induced subgraph on ``subset``; vertex labels are kept."""
        sub = [v for v in self.vertices if v in set(subset)]
        missing = set(subset) - set(sub)
        if missing:
            raise ValueError(f"unknown vertices {sorted(missing)}")
        es = frozenset(e for e in self.edges if e <= set(sub))
        return CoxeterGraph(tuple(sub), es, allow_disconnected=True)

    def is_standard(self) -> bool:
        return self.vertices == tuple(range(1, self.rank + 1))

    def cartan(self) -> Matrix:
        idx = {v: k for k, v in enumerate(self.vertices)}
        n = self.rank
        rows = [[0] * n for _ in range(n)]
        for v, k in idx.items():
            rows[k][k] = 2
        for e in self.edges:
            a, b = tuple(e)
            rows[idx[a]][idx[b]] = rows[idx[b]][idx[a]] = -1
        return tuple(tuple(r) for r in rows)

    def to_text(self) -> str:
        lines = [f"vertices: {self.rank}"]
        for e in sorted(tuple(sorted(e)) for e in self.edges):
            lines.append(f"{e[0]} {e[1]}")
        return "\n".join(lines) + "\n"


def _classify_component(graph: CoxeterGraph, comp: tuple[int, ...]) -> str:
    """ADE type of a connected component, or raise NonSpherical with a witness."""
    cs = set(comp)
    adj = {v: [u for u in graph.neighbours(v) if u in cs] for v in comp}
    n_edges = sum(len(a) for a in adj.values()) // 2
    if n_edges != len(comp) - 1:
        raise NonSpherical("graph contains a cycle", _find_cycle(adj))
    for v in comp:
        if len(adj[v]) >= 4:
            raise NonSpherical(f"vertex {v} has degree {len(adj[v])}", (v, *adj[v][:4]))
    branch = [v for v in comp if len(adj[v]) == 3]
    if not branch:
        return f"A{len(comp)}"
    if len(branch) > 1:
        path = _tree_path(adj, branch[0], branch[1])
        extra = [u for b in (branch[0], branch[1]) for u in adj[b] if u not in path]
        raise NonSpherical("two branch vertices (affine D)", tuple(path) + tuple(extra))
    centre = branch[0]
    arms = sorted((_arm(adj, centre, u) for u in adj[centre]), key=len)
    p, q, r = (len(a) for a in arms)
    if p == 1 and q == 1:
        return f"D{len(comp)}"
    if p == 1 and q == 2 and r <= 4:
        return f"E{len(comp)}"
    # minimal affine witness: E~6 (2,2,2), E~7 (1,3,3), E~8 (1,2,5)
    if p >= 2:
        keep = (2, 2, 2)
    elif q >= 3:
        keep = (1, 3, 3)
    else:
        keep = (1, 2, 5)
    witness = (centre,) + tuple(x for a, k in zip(arms, keep) for x in a[:k])
    raise NonSpherical("branch arms too long (affine E)", witness)


def _arm(adj, centre, start):
    arm, prev, cur = [start], centre, start
    while len(adj[cur]) == 2:
        nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
        arm.append(nxt)
        prev, cur = cur, nxt
    return arm


def _tree_path(adj, a, b):
    parent = {a: None}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                queue.append(y)
    path = [b]
    while path[-1] != a:
        path.append(parent[path[-1]])
    return path[::-1]


def _find_cycle(adj):
    parent = {}
    for root in adj:
        if root in parent:
            continue
        parent[root] = None
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y == parent[x]:
                    continue
                if y in parent:
                    # climb both ends to the common ancestor
                    px, py = [x], [y]
                    while px[-1] is not None:
                        px.append(parent[px[-1]])
                    while py[-1] is not None:
                        py.append(parent[py[-1]])
                    common = next(v for v in px if v in py)
                    return tuple(px[: px.index(common) + 1]) + tuple(reversed(py[: py.index(common)]))
                parent[y] = x
                stack.append(y)
    return tuple(adj)


_NAME_RE = re.compile(r"^([ADE])(\d+)$")


def named_graph(name: str) -> CoxeterGraph:
    """Built-in graphs A1..A9, D4..D9, E6..E8 in Bourbaki numbering."""
    m = _NAME_RE.match(name.strip().upper())
    if not m:
        raise ValueError(f"unknown graph type {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "A" and 1 <= n <= 9:
        edges = [(i, i + 1) for i in range(1, n)]
    elif kind == "D" and 4 <= n <= 9:
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 2, n)]
    elif kind == "E" and 6 <= n <= 8:
        edges = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, n)]
    else:
        raise ValueError(f"unknown graph type {name!r}")
    return CoxeterGraph.from_edges(n, edges, name=f"{kind}{n}")


def parse_graph_text(text: str) -> CoxeterGraph:
    """Parse ``vertices: n`` followed by one ``i j`` edge per line (1-based)."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            m = re.match(r"^vertices\s*:\s*(\d+)$", line)
            if not m:
                raise ValueError(f"line {lineno}: expected 'vertices: n'")
            n = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ValueError(f"line {lineno}: expected an edge 'i j'")
        i, j = int(parts[0]), int(parts[1])
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"line {lineno}: vertex out of range 1..{n}")
        if i == j:
            raise NonSpherical(f"line {lineno}: loop at vertex {i}", (i,))
        if _edge(i, j) in {_edge(*e) for e in edges}:
            raise NonSpherical(f"line {lineno}: repeated edge {i} {j}", (i, j))
        edges.append((i, j))
    if n is None:
        raise ValueError("empty graph file")
    return CoxeterGraph.from_edges(n, edges, name="file")


# ---------------------------------------------------------------------------
# root systems and Weyl group elements


@dataclass(frozen=True, eq=False)
class RootSystem:
    graph: CoxeterGraph
    rank: int
    cartan: Matrix
    positive_roots: tuple[tuple[int, ...], ...]

    @property
    def simple_roots(self):
        return self.positive_roots[: self.rank]

    @cached_property
    def _root_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    @cached_property
    def reflections(self) -> tuple["CoxeterElement", ...]:
        n = self.rank
        out = []
        for i in range(n):
            rows = [tuple(int(r == c) for c in range(n)) for r in range(n)]
            rows[i] = tuple(int(i == j) - self.cartan[i][j] for j in range(n))
            out.append(CoxeterElement(tuple(rows), self))
        return tuple(out)

    @cached_property
    def identity(self) -> "CoxeterElement":
        n = self.rank
        return CoxeterElement(tuple(tuple(int(r == c) for c in range(n)) for r in range(n)), self)

    def is_positive(self, v: Sequence[int]) -> bool:
        return tuple(v) in self._root_set

    def __repr__(self):
        return f"RootSystem({self.graph.type_name}, {len(self.positive_roots)} positive roots)"


def build_root_system(graph: CoxeterGraph) -> RootSystem:
    """All positive roots, by closing the simple roots under simple reflections.

    Ordering: by height, then lexicographically descending, so the simple
    roots come first in index order.
    """
    if not graph.is_standard():
        raise ValueError("root systems need vertices labelled 1..n")
    n = graph.rank
    cartan = graph.cartan()
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        for i in range(n):
            c = sum(cartan[i][j] * r[j] for j in range(n))
            if c == 0:
                continue
            s = list(r)
            s[i] -= c
            s = tuple(s)
            if min(s) >= 0 and s not in seen:
                seen.add(s)
                queue.append(s)
    roots = sorted(seen, key=lambda v: (sum(v), tuple(-x for x in v)))
    return RootSystem(graph, n, cartan, tuple(roots))


@dataclass(frozen=True)
class CoxeterElement:
    """An element of the finite Coxeter group, stored as its action on roots."""

    matrix: Matrix
    roots: RootSystem = field(compare=False, repr=False)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.matrix)

    def __mul__(self, other: "CoxeterElement") -> "CoxeterElement":
        cols = list(zip(*other.matrix))
        return CoxeterElement(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.matrix),
            self.roots,
        )

    @cached_property
    def _negated_simple(self) -> frozenset:
        """Indices i with -alpha_i in the image of the positive roots."""
        out = set()
        for beta in self.roots.positive_roots:
            img = self.apply(beta)
            if min(img) < 0 and sum(img) == -1:
                out.add(img.index(-1) + 1)
        return frozenset(out)

    def inverse(self) -> "CoxeterElement":
        out = self.roots.identity
        for i in reversed(reduced_word(self)):
            out = out * self.roots.reflections[i - 1]
        # reduced_word(u) = i1..ik means u = s_i1...s_ik, so u^-1 = s_ik...s_i1
        return out

    def __repr__(self):
        return f"CoxeterElement({reduced_word(self)})"


def element_from_word(roots: RootSystem, letters: Iterable[int]) -> CoxeterElement:
    """Product s_{i1} s_{i2} ... of simple reflections (1-based indices)."""
    out = roots.identity
    for i in letters:
        if not 1 <= i <= roots.rank:
            raise IndexOutOfRange(f"generator index {i} not in 1..{roots.rank}")
        out = out * roots.reflections[i - 1]
    return out


def length(u: CoxeterElement) -> int:
    return sum(1 for beta in u.roots.positive_roots if min(u.apply(beta)) < 0)


def left_descents(u: CoxeterElement) -> frozenset:
    """Generators i with u^-1(alpha_i) negative, i.e. l(s_i u) < l(u)."""
    return u._negated_simple


def right_descents(u: CoxeterElement) -> frozenset:
    return frozenset(i + 1 for i in range(u.roots.rank) if min(row[i] for row in u.matrix) < 0)


def reduced_word(u: CoxeterElement) -> tuple[int, ...]:
    """Lexicographically smallest reduced word (strip smallest left descent)."""
    word = []
    refl = u.roots.reflections
    while True:
        d = left_descents(u)
        if not d:
            return tuple(word)
        i = min(d)
        word.append(i)
        u = refl[i - 1] * u


def longest_element(roots: RootSystem) -> CoxeterElement:
    """Grow u by right multiplication while some generator is not a right descent."""
    u = roots.identity
    refl = roots.reflections
    while True:
        ascents = [i for i in range(1, roots.rank + 1) if i not in right_descents(u)]
        if not ascents:
            return u
        u = u * refl[ascents[0] - 1]


def meet_left(u: CoxeterElement, v: CoxeterElement) -> CoxeterElement:
    """Greatest common left divisor in the prefix (weak) order."""
    refl = u.roots.reflections
    acc = u.roots.identity
    while True:
        common = left_descents(u) & left_descents(v)
        if not common:
            return acc
        s = refl[min(common) - 1]
        acc, u, v = acc * s, s * u, s * v


def right_complement(roots: RootSystem, u: CoxeterElement) -> CoxeterElement:
    """u^-1 w0: the simple element completing u to the longest element."""
    return u.inverse() * longest_element(roots)


def left_divides(u: CoxeterElement, v: CoxeterElement) -> bool:
    return length(u) + length(u.inverse() * v) == length(v)


def all_elements(roots: RootSystem) -> list[CoxeterElement]:
    """Breadth-first enumeration of W; only sensible for small types."""
    seen = {roots.identity.matrix: roots.identity}
    queue = deque([roots.identity])
    while queue:
        u = queue.popleft()
        for s in roots.reflections:
            x = u * s
            if x.matrix not in seen:
                seen[x.matrix] = x
                queue.append(x)
    return list(seen.values())
