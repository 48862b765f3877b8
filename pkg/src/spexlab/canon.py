"""Canonical labelling via lexicographically maximal adjacency strings.

The canonical representative of an isomorphism class is the labelling whose
upper-triangle adjacency bits, read column by column (the graph6 bit order),
form the lexicographically largest string. Two graphs are isomorphic exactly
when their canonical strings agree.

The search assigns labels 0, 1, ... one at a time. Placing vertex v at label
d fixes column d of the string (the adjacency bits of v against the already
placed labels), so branches can be compared against the best known string
column by column: branches whose column falls short are cut, ties descend,
and a branch that strictly exceeds the best is completed greedily and
installed as the new best. Complete ties are automorphisms; they are
collected and used to skip sibling labels in the same orbit, which is what
keeps highly symmetric graphs (cliques, complete bipartite graphs, unions of
isolated vertices) from exploding.

``is_canonically_labeled`` runs the same engine with the identity labelling
as a fixed target and answers whether the graph as labelled already attains
the maximum. That is the acceptance test of the orderly enumeration in
``search``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import graph6
from .graphs import Graph

__all__ = [
    "CanonicalForm",
    "canonical_form",
    "canonical_graph",
    "canonical_g6",
    "is_canonically_labeled",
]


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical byte string plus one labelling that attains it.

    ``data`` encodes (n, canonical triangle bits); ``relabeling[v]`` is the
    canonical label of input vertex v, so relabelling the input graph with it
    yields the canonical representative.
    """

    data: bytes
    relabeling: tuple[int, ...]


class _Search:
    """Branch-and-bound over labellings for the maximal column string."""

    __slots__ = ("rows", "n", "gens", "_genset", "best_cols", "best_assigned", "updating", "exceeded")

    def __init__(self, rows: Sequence[int], n: int):
        self.rows = rows
        self.n = n
        self.gens: list[tuple[int, ...]] = []
        self._genset: set[tuple[int, ...]] = set()
        self.updating = False
        self.exceeded = False

    def run_test(self) -> bool:
        """True iff the identity labelling is lexicographically maximal."""
        self.best_cols = self._identity_cols()
        self.best_assigned = tuple(range(self.n))
        self.updating = False
        self.exceeded = False
        self._recurse(0, [], [(v, 0) for v in range(self.n)])
        return not self.exceeded

    def run_max(self) -> tuple[list[int], tuple[int, ...]]:
        """Maximal column string and one labelling attaining it."""
        self.updating = True
        root = [(v, 0) for v in range(self.n)]
        self.best_cols, self.best_assigned = self._greedy(0, [], root, None, None)
        self._recurse(0, [], root)
        return self.best_cols, self.best_assigned

    def _identity_cols(self) -> list[int]:
        cols = []
        for d in range(self.n):
            val = 0
            row = self.rows[d]
            for i in range(d):
                val = (val << 1) | ((row >> i) & 1)
            cols.append(val)
        return cols

    def _greedy(self, depth, assigned, cands, forced, forced_val):
        """Complete a labelling by always taking the largest column value."""
        cols = list(self.best_cols[:depth]) if depth else []
        asg = list(assigned)
        cur = cands
        while len(asg) < self.n:
            if forced is not None:
                v, val = forced, forced_val
                forced = None
            else:
                v, val = cur[0]
                for u, uval in cur[1:]:
                    if uval > val:
                        v, val = u, uval
            cols.append(val)
            asg.append(v)
            cur = [(u, (uval << 1) | ((self.rows[u] >> v) & 1)) for u, uval in cur if u != v]
        return cols, tuple(asg)

    def _record_automorphism(self, assigned):
        phi = [0] * self.n
        for lbl in range(self.n):
            phi[self.best_assigned[lbl]] = assigned[lbl]
        perm = tuple(phi)
        if perm != tuple(range(self.n)) and perm not in self._genset:
            self._genset.add(perm)
            self.gens.append(perm)

    def _orbit_hit(self, v, explored, assigned):
        """Is v mapped into an explored sibling by automorphisms fixing the prefix?"""
        if not explored or not self.gens:
            return False
        gens_here = [g for g in self.gens if all(g[a] == a for a in assigned)]
        if not gens_here:
            return False
        reach = set(explored)
        stack = list(explored)
        while stack:
            x = stack.pop()
            for g in gens_here:
                y = g[x]
                if y not in reach:
                    if y == v:
                        return True
                    reach.add(y)
                    stack.append(y)
        return v in reach

    def _recurse(self, depth, assigned, cands):
        if depth == self.n:
            self._record_automorphism(assigned)
            return
        order = sorted(cands, key=lambda t: (-t[1], t[0]))
        explored: list[int] = []
        for v, val in order:
            target = self.best_cols[depth]
            if val < target:
                break
            if val > target:
                if not self.updating:
                    self.exceeded = True
                    return
                self.best_cols, self.best_assigned = self._greedy(depth, assigned, cands, v, val)
            if self._orbit_hit(v, explored, assigned):
                continue
            explored.append(v)
            assigned.append(v)
            child = [(u, (uval << 1) | ((self.rows[u] >> v) & 1)) for u, uval in cands if u != v]
            self._recurse(depth + 1, assigned, child)
            assigned.pop()
            if self.exceeded:
                return


def is_canonically_labeled(rows: Sequence[int], n: int) -> bool:
    """True iff the labelled graph equals its own canonical representative."""
    if n <= 1:
        return True
    return _Search(rows, n).run_test()


def _pack(n: int, cols: list[int]) -> bytes:
    acc = 0
    for d in range(n):
        acc = (acc << d) | cols[d]
    nbits = n * (n - 1) // 2
    return n.to_bytes(2, "big") + acc.to_bytes((nbits + 7) // 8 or 1, "big")


def canonical_form(g: Graph) -> CanonicalForm:
    if g.n == 1:
        return CanonicalForm(_pack(1, [0]), (0,))
    cols, assigned = _Search(g.rows, g.n).run_max()
    relab = [0] * g.n
    for label, v in enumerate(assigned):
        relab[v] = label
    return CanonicalForm(_pack(g.n, cols), tuple(relab))


def canonical_graph(g: Graph) -> Graph:
    """The canonical representative of g's isomorphism class."""
    return g.relabel(canonical_form(g).relabeling)


def canonical_g6(g: Graph) -> str:
    """graph6 text of the canonical representative (n <= 62)."""
    return graph6.encode(canonical_graph(g))
