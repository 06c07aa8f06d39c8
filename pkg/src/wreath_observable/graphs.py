"""Graph input and the hidden subgroup H = Aut(G1 + G2) inside S_n wr S_2."""
from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import GraphFormatError, InvalidArgumentError
from .group import (MAX_DEGREE, Perm, WreathElement, compose, embed_s2n, indexer,
                    inverse, is_involutive_swap, perm_inverse)

# above this order, product closure is sampled rather than exhaustive
CLOSURE_CHECK_FULL = 400
CLOSURE_SAMPLES = 20_000


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[frozenset[int]]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArgumentError("a graph needs at least one vertex")
        for e in self.edges:
            if len(e) != 2 or any(not 0 <= v < self.n for v in e):
                raise InvalidArgumentError(f"bad edge {sorted(e)} for n={self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        return cls(n, frozenset(frozenset((u, v)) for u, v in edges))

    def has_edge(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edges

    def neighbours(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in map(tuple, self.edges):
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.neighbours()]

    def is_connected(self) -> bool:
        adj = self.neighbours()
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def complement(self) -> Graph:
        return Graph.from_edges(self.n, ((u, v) for u, v in itertools.combinations(range(self.n), 2)
                                         if not self.has_edge(u, v)))

    def relabel(self, p: Perm) -> Graph:
        """Image graph under the vertex map ``v -> p[v]``."""
        return Graph.from_edges(self.n, ((p[u], p[v]) for u, v in map(tuple, self.edges)))

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def to_text(self) -> str:
        lines = [f"n {self.n}"] + [f"e {u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"


def parse_graph(text: str | bytes) -> Graph:
    """Parse the ``n <int>`` / ``e <u> <v>`` line format.

    ``#`` lines are comments, tokens are separated by single spaces, and both
    LF and CRLF line endings are accepted.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise GraphFormatError(f"not UTF-8: {exc}") from None
    n = None
    edges: set[frozenset[int]] = set()
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        if line == "" or line.startswith("#"):
            continue
        tokens = line.split(" ")
        if n is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise GraphFormatError("expected 'n <int>' header", lineno)
            n = _parse_int(tokens[1], lineno)
            if not 1 <= n <= MAX_DEGREE:
                raise GraphFormatError(f"vertex count {n} outside 1..{MAX_DEGREE}", lineno)
            continue
        if len(tokens) != 3 or tokens[0] != "e":
            raise GraphFormatError(f"expected 'e <u> <v>', got {line!r}", lineno)
        u, v = _parse_int(tokens[1], lineno), _parse_int(tokens[2], lineno)
        for w in (u, v):
            if not 0 <= w < n:
                raise GraphFormatError(f"vertex index {w} out of range for n={n}", lineno)
        if u == v:
            raise GraphFormatError(f"loop edge at vertex {u}", lineno)
        e = frozenset((u, v))
        if e in edges:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        edges.add(e)
    if n is None:
        raise GraphFormatError("missing 'n <int>' header")
    return Graph(n, frozenset(edges))


def _parse_int(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise GraphFormatError(f"expected a non-negative integer, got {token!r}", lineno)
    return int(token)


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_bytes())


class Connectivity(enum.Enum):
    BOTH_CONNECTED = "both-connected"
    COMPLEMENTED = "complemented"
    TRIVIALLY_NONISOMORPHIC = "trivially-nonisomorphic"


@dataclass(frozen=True)
class GraphPair:
    g1: Graph
    g2: Graph
    connectivity_note: Connectivity

    @property
    def n(self) -> int:
        return self.g1.n

    @property
    def simulable(self) -> bool:
        return self.connectivity_note is not Connectivity.TRIVIALLY_NONISOMORPHIC


def normalize_pair(g1: Graph, g2: Graph) -> GraphPair:
    """Bring a pair into the connected setting where H sits inside S_n wr S_2.

    Two disconnected graphs are replaced by their complements (which are then
    connected); a connected/disconnected mix cannot be isomorphic.
    """
    if g1.n != g2.n:
        raise InvalidArgumentError(f"vertex counts differ: {g1.n} vs {g2.n}")
    c1, c2 = g1.is_connected(), g2.is_connected()
    if c1 and c2:
        return GraphPair(g1, g2, Connectivity.BOTH_CONNECTED)
    if c1 != c2:
        return GraphPair(g1, g2, Connectivity.TRIVIALLY_NONISOMORPHIC)
    h1, h2 = g1.complement(), g2.complement()
    # the complement of a disconnected graph is always connected
    assert h1.is_connected() and h2.is_connected()
    return GraphPair(h1, h2, Connectivity.COMPLEMENTED)


def isomorphisms(g1: Graph, g2: Graph) -> list[Perm]:
    """All vertex bijections ``g`` with ``{g(u), g(v)} in E2  <=>  {u, v} in E1``.

    Backtracking over vertices of ``g1`` in order, pruned by degree and by
    adjacency consistency with the already-mapped vertices.  Results come out
    in lexicographic order.
    """
    if g1.n != g2.n:
        raise InvalidArgumentError(f"vertex counts differ: {g1.n} vs {g2.n}")
    if len(g1.edges) != len(g2.edges) or sorted(g1.degrees()) != sorted(g2.degrees()):
        return []
    n = g1.n
    adj1, adj2 = g1.neighbours(), g2.neighbours()
    deg1, deg2 = g1.degrees(), g2.degrees()
    image = [-1] * n
    used = [False] * n
    found: list[Perm] = []

    def extend(u: int) -> None:
        if u == n:
            found.append(tuple(image))
            return
        for w in range(n):
            if used[w] or deg2[w] != deg1[u]:
                continue
            if any((image[v] in adj2[w]) != (v in adj1[u]) for v in range(u)):
                continue
            image[u] = w
            used[w] = True
            extend(u + 1)
            used[w] = False
        image[u] = -1

    extend(0)
    return found


def automorphisms(g: Graph) -> list[Perm]:
    return isomorphisms(g, g)


@dataclass(frozen=True)
class HiddenSubgroup:
    n: int
    elements: tuple[WreathElement, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x: WreathElement) -> bool:
        return x in self._members

    @property
    def _members(self) -> frozenset[WreathElement]:
        cached = self.__dict__.get("_member_set")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_member_set", cached)
        return cached

    def ranks(self) -> list[int]:
        ix = indexer(self.n)
        return [ix.rank(h) for h in self.elements]

    @classmethod
    def trivial(cls, n: int) -> HiddenSubgroup:
        return cls(n, (WreathElement.identity(n),))


def disjoint_union_edges(g1: Graph, g2: Graph) -> frozenset[frozenset[int]]:
    n = g1.n
    return g1.edges | frozenset(frozenset(v + n for v in e) for e in g2.edges)


def preserves_union(x: WreathElement, union_edges: frozenset[frozenset[int]]) -> bool:
    p = embed_s2n(x)
    return all(frozenset(p[v] for v in e) in union_edges for e in union_edges)


def build_hidden_subgroup(pair: GraphPair, verify: bool = True) -> HiddenSubgroup:
    """H = {(s, t, 0): s in Aut(g1), t in Aut(g2)} + {(s, t, 1): s: g1->g2, t: g2->g1}.

    With ``verify`` the edge-preservation invariant and closure under
    products and inverses are checked on the explicit element list.
    """
    if not pair.simulable:
        raise InvalidArgumentError("pair is trivially nonisomorphic; H is not formed")
    g1, g2 = pair.g1, pair.g2
    elems = [WreathElement(s, t, 0) for s in automorphisms(g1) for t in automorphisms(g2)]
    forward = isomorphisms(g1, g2)
    if forward:
        backward = isomorphisms(g2, g1)
        elems += [WreathElement(s, t, 1) for s in forward for t in backward]
    ix = indexer(pair.n)
    elems.sort(key=ix.rank)
    h = HiddenSubgroup(pair.n, tuple(elems))
    if verify:
        _verify_subgroup(h, disjoint_union_edges(g1, g2))
    return h


def _verify_subgroup(h: HiddenSubgroup, union_edges) -> None:
    members = set(h.elements)
    if WreathElement.identity(h.n) not in members:
        raise AssertionError("H lacks the identity")
    for x in h.elements:
        if not preserves_union(x, union_edges):
            raise AssertionError(f"{x} does not preserve the disjoint union")
        if inverse(x) not in members:
            raise AssertionError(f"H not closed under inverse at {x}")
    if h.order <= CLOSURE_CHECK_FULL:
        pairs = itertools.product(h.elements, repeat=2)
    else:
        rng = random.Random(h.order)
        pairs = ((rng.choice(h.elements), rng.choice(h.elements)) for _ in range(CLOSURE_SAMPLES))
    for x, y in pairs:
        if compose(x, y) not in members:
            raise AssertionError("H not closed under products")
    if (2 * indexer(h.n).fact ** 2) % h.order:
        raise AssertionError("|H| does not divide |G|")


def contains_involutive_swap(h: HiddenSubgroup) -> bool:
    return any(is_involutive_swap(x) for x in h.elements)


def swap_witness(h: HiddenSubgroup) -> WreathElement | None:
    """First involutive swap in H, if any; ``(g, g^-1, 1)`` with ``g`` an isomorphism."""
    for x in h.elements:
        if is_involutive_swap(x):
            return x
    return None


def swap_from_isomorphism(g: Perm) -> WreathElement:
    return WreathElement(tuple(g), perm_inverse(tuple(g)), 1)
