"""Finite directed multigraphs and the ideal/K-theory combinatorics of
their algebras.

Vertex sets closed forward along edges (hereditary) and closed under
"every emitted edge lands inside" (saturated) index the invariant ideals;
this module enumerates them, builds the inclusion lattice and the
primitive-ideal poset, and computes K-groups of subquotients from the
vertex matrix: K0 = coker(A_X^T - I) and K1 = ker(A_X^T - I) on the
vertices X of the subquotient.  Graphs must be sink-free (every vertex
emits at least one edge) and the poset computation additionally requires
every vertex to lie on a cycle; both are the regime in which these
formulas hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .abelian import (
    FGAbelianGroup,
    IntMatrix,
    group_from_presentation,
    smith_normal_form,
)
from .colimit import ColimitDescription
from .kcrossed import KTheoryData, pv_crossed_product

VertexSet = frozenset


@dataclass(frozen=True)
class Graph:
    """Directed multigraph: adjacency[v][w] counts the edges from v to w."""

    vertices: tuple[str, ...]
    adjacency: IntMatrix

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        n = len(self.vertices)
        if len(set(self.vertices)) != n:
            raise ValueError("duplicate vertex names")
        if (self.adjacency.rows, self.adjacency.cols) != (n, n):
            raise ValueError("adjacency matrix shape does not match the vertex list")
        for i, name in enumerate(self.vertices):
            row = self.adjacency.row(i)
            if any(x < 0 for x in row):
                raise ValueError(f"negative edge multiplicity at vertex {name}")
            if sum(row) == 0:
                raise ValueError(f"vertex {name} emits no edges (sinks are not supported)")

    @classmethod
    def from_adjacency(cls, vertices: Iterable[str], rows) -> "Graph":
        vertices = tuple(vertices)
        return cls(vertices, IntMatrix.from_rows(rows, cols=len(vertices)))

    @cached_property
    def _index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def _out_masks(self) -> tuple[int, ...]:
        masks = []
        for i in range(len(self.vertices)):
            m = 0
            for j, count in enumerate(self.adjacency.row(i)):
                if count > 0:
                    m |= 1 << j
            masks.append(m)
        return tuple(masks)

    def mask_of(self, subset: Iterable[str]) -> int:
        mask = 0
        for name in subset:
            i = self._index.get(str(name))
            if i is None:
                raise ValueError(f"unknown vertex {name}")
            mask |= 1 << i
        return mask

    def set_of(self, mask: int) -> VertexSet:
        return frozenset(v for i, v in enumerate(self.vertices) if mask >> i & 1)

    def format_set(self, subset: Iterable[str]) -> str:
        mask = self.mask_of(subset)
        names = [v for i, v in enumerate(self.vertices) if mask >> i & 1]
        return "{" + ",".join(names) + "}"


def _closure_mask(graph: Graph, mask: int) -> int:
    out = graph._out_masks
    n = len(graph.vertices)
    while True:
        new = mask
        for v in range(n):
            if new >> v & 1:
                new |= out[v]  # hereditary: heads of emitted edges
        for v in range(n):
            if not (new >> v & 1) and out[v] & ~new == 0:
                new |= 1 << v  # saturated: all emitted edges land inside
        if new == mask:
            return mask
        mask = new


def hereditary_saturated_closure(graph: Graph, subset: Iterable[str]) -> VertexSet:
    """Smallest hereditary and saturated vertex set containing the input."""
    return graph.set_of(_closure_mask(graph, graph.mask_of(subset)))


def _is_hereditary_saturated(graph: Graph, mask: int) -> bool:
    return _closure_mask(graph, mask) == mask


def _family_sort_key(mask: int):
    indices = tuple(i for i in range(mask.bit_length()) if mask >> i & 1)
    return (len(indices), indices)


def enumerate_hereditary_saturated(graph: Graph) -> list[VertexSet]:
    """All hereditary and saturated subsets, sorted by size then vertex order.

    Every such set is the join (closure of the union) of closures of its
    singletons, so closing {empty set} under joins with the singleton
    closures generates the complete family without scanning 2^|V| subsets.
    """
    n = len(graph.vertices)
    atoms = sorted({_closure_mask(graph, 1 << v) for v in range(n)})
    family = {0}
    frontier = [0]
    while frontier:
        current = frontier.pop()
        for atom in atoms:
            joined = _closure_mask(graph, current | atom)
            if joined not in family:
                family.add(joined)
                frontier.append(joined)
    return [graph.set_of(m) for m in sorted(family, key=_family_sort_key)]


# ---------------------------------------------------------------------------
# Posets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PosetDiagram:
    """Hasse diagram: elements plus the covering pairs (lower, upper).

    Construction validates that the covers are acyclic and free of
    transitive shortcuts, so the diagram really is a transitive reduction.
    """

    elements: tuple[str, ...]
    covers: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(str(e) for e in self.elements))
        object.__setattr__(self, "covers",
                           tuple((str(a), str(b)) for a, b in self.covers))
        known = set(self.elements)
        if len(known) != len(self.elements):
            raise ValueError("duplicate poset elements")
        succ: dict[str, set[str]] = {e: set() for e in self.elements}
        for lower, upper in self.covers:
            if lower not in known or upper not in known:
                raise ValueError(f"cover ({lower}, {upper}) uses unknown elements")
            if lower == upper:
                raise ValueError("covers must relate distinct elements")
            succ[lower].add(upper)
        indegree = {e: 0 for e in self.elements}
        for targets in succ.values():
            for t in targets:
                indegree[t] += 1
        queue = [e for e in self.elements if indegree[e] == 0]
        processed = 0
        while queue:
            node = queue.pop()
            processed += 1
            for nxt in succ[node]:
                indegree[nxt] -= 1
                if indegree[nxt] == 0:
                    queue.append(nxt)
        if processed != len(self.elements):
            raise ValueError("cover relation contains a cycle")
        for lower, upper in self.covers:
            # acyclicity holds, so a second route to upper must skip the edge
            stack = [s for s in succ[lower] if s != upper]
            seen = set(stack)
            while stack:
                node = stack.pop()
                if node == upper:
                    raise ValueError(f"cover ({lower}, {upper}) is a transitive edge")
                for nxt in succ[node]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)

    def undirected_cover_edges(self) -> frozenset:
        return frozenset(frozenset(pair) for pair in self.covers)

    def minimal_elements(self) -> tuple[str, ...]:
        uppers = {b for _, b in self.covers}
        return tuple(e for e in self.elements if e not in uppers)

    def maximal_elements(self) -> tuple[str, ...]:
        lowers = {a for a, _ in self.covers}
        return tuple(e for e in self.elements if e not in lowers)

    def to_dot(self) -> str:
        lines = ["digraph {"]
        for e in sorted(self.elements):
            lines.append(f'  "{e}";')
        for lower, upper in sorted(self.covers):
            lines.append(f'  "{lower}" -> "{upper}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def ideal_lattice_hasse(graph: Graph) -> PosetDiagram:
    """Hasse diagram of the inclusion order on hereditary&saturated sets."""
    family = [graph.mask_of(s) for s in enumerate_hereditary_saturated(graph)]
    labels = {m: graph.format_set(graph.set_of(m)) for m in family}
    covers = []
    for a in family:
        for b in family:
            if a != b and a & ~b == 0:  # a proper subset of b
                if not any(c != a and c != b and a & ~c == 0 and c & ~b == 0
                           for c in family):
                    covers.append((labels[a], labels[b]))
    return PosetDiagram(tuple(labels[m] for m in family), tuple(sorted(covers)))


def _strongly_connected_components(n: int, edges: list[list[int]]) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components come out sorted by their
    smallest vertex for determinism."""
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack: list[int] = []
    components: list[list[int]] = []
    counter = [1]

    for root in range(n):
        if visited[root]:
            continue
        work = [(root, iter(edges[root]))]
        visited[root] = True
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if not visited[nxt]:
                    visited[nxt] = True
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack[nxt] = True
                    work.append((nxt, iter(edges[nxt])))
                    advanced = True
                    break
                if on_stack[nxt]:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack[member] = False
                    component.append(member)
                    if member == node:
                        break
                components.append(sorted(component))
    return sorted(components)


def prim_poset(graph: Graph) -> PosetDiagram:
    """Primitive-ideal poset from strongly connected components.

    Requires every vertex to lie on a cycle.  The order is fixed as
    a <= b when b reaches a; the undirected cover graph plus the extremes
    are the orientation-independent content.
    """
    n = len(graph.vertices)
    edges = [[j for j in range(n) if graph.adjacency[i, j] > 0 and j != i]
             for i in range(n)]
    components = _strongly_connected_components(n, edges)
    comp_of = {}
    for ci, comp in enumerate(components):
        for v in comp:
            comp_of[v] = ci
    for ci, comp in enumerate(components):
        if len(comp) == 1 and graph.adjacency[comp[0], comp[0]] == 0:
            raise ValueError("prim computation requires every vertex on a cycle")

    def label(comp: list[int]) -> str:
        names = [graph.vertices[v] for v in comp]
        return names[0] if len(names) == 1 else "{" + ",".join(names) + "}"

    k = len(components)
    succ = [set() for _ in range(k)]
    for v in range(n):
        for w in edges[v]:
            if comp_of[v] != comp_of[w]:
                succ[comp_of[v]].add(comp_of[w])
    reaches = [set() for _ in range(k)]
    for start in range(k):
        stack = [start]
        while stack:
            node = stack.pop()
            for nxt in succ[node]:
                if nxt not in reaches[start]:
                    reaches[start].add(nxt)
                    stack.append(nxt)
    covers = []
    for upper in range(k):
        for lower in reaches[upper]:
            if not any(mid != upper and mid != lower
                       and mid in reaches[upper] and lower in reaches[mid]
                       for mid in range(k)):
                covers.append((label(components[lower]), label(components[upper])))
    return PosetDiagram(tuple(label(c) for c in components), tuple(sorted(covers)))


# ---------------------------------------------------------------------------
# Subquotient K-theory
# ---------------------------------------------------------------------------

def _checked_nested_pair(graph: Graph, zset: Iterable[str], yset: Iterable[str]) -> list[int]:
    zmask = graph.mask_of(zset)
    ymask = graph.mask_of(yset)
    if ymask & ~zmask:
        raise ValueError("Y is not contained in Z")
    if not _is_hereditary_saturated(graph, zmask):
        raise ValueError("Z is not hereditary and saturated")
    if not _is_hereditary_saturated(graph, ymask):
        raise ValueError("Y is not hereditary and saturated")
    xmask = zmask & ~ymask
    indices = [i for i in range(len(graph.vertices)) if xmask >> i & 1]
    for i in indices:
        if graph._out_masks[i] & xmask == 0:
            raise ValueError(
                f"vertex {graph.vertices[i]} emits no edge within the subquotient")
    return indices


def subquotient_k(graph: Graph, zset: Iterable[str],
                  yset: Iterable[str]) -> tuple[FGAbelianGroup, FGAbelianGroup]:
    """K-groups of the subquotient supported on X = Z minus Y.

    With A_X the vertex matrix restricted to X, K0 is the cokernel and K1
    the kernel of A_X^T - I acting on Z^X.
    """
    indices = _checked_nested_pair(graph, zset, yset)
    size = len(indices)
    restricted = graph.adjacency.select_rows(indices).select_columns(indices)
    relations = restricted - IntMatrix.identity(size)  # rows of (A_X^T - I)^T
    k0 = group_from_presentation(size, relations)
    k1 = FGAbelianGroup.free(size - smith_normal_form(relations).rank())
    return k0, k1


def crossed_subquotient_k(graph: Graph, zset: Iterable[str], yset: Iterable[str]
                          ) -> tuple[ColimitDescription, ColimitDescription]:
    """K-groups of the crossed product of a subquotient by an endomorphism
    acting as the identity on K-theory.

    K1 of a subquotient is free (a kernel inside Z^X), so the six-term
    extensions split and the result is (K0 + K1, K0 + K1); for loop-rich
    graphs K1 vanishes and this collapses to (K0, K0)."""
    k0, k1 = subquotient_k(graph, zset, yset)
    result = pv_crossed_product(KTheoryData.with_identity_maps(k0, k1))
    return result.k0_description(), result.k1_description()
