"""Exhaustive enumeration of numerical semigroups by genus.

All semigroups form a tree rooted at the full semigroup of every
non-negative integer: the children of a node are obtained by removing
one "effective" generator (a minimal generator exceeding the Frobenius
number), which raises the genus by one, and the parent is recovered by
adding the Frobenius number back.  A depth-first walk of the tree down
to depth g therefore visits every semigroup of genus g exactly once.

Traversal state is a fixed window bitset over [0, 3*g + 2), which is
enough because a genus-g semigroup has conductor at most 2g and minimal
generators at most 3g.  Minimal generator sets are maintained
incrementally: removing lam keeps every other generator minimal and can
only create new generators in (lam, lam + multiplicity].
"""

import multiprocessing
from dataclasses import dataclass

from .errors import ResourceLimit
from .semigroup import NumericalSemigroup

__all__ = [
    "TreeNode",
    "root_node",
    "children",
    "enumerate_genus",
    "count_by_genus",
    "map_reduce_genus",
    "tuple_add",
    "DEFAULT_NODE_BUDGET",
]

DEFAULT_NODE_BUDGET = 10 ** 8


@dataclass(frozen=True)
class TreeNode:
    """One semigroup as positioned in the enumeration tree."""

    bits: int
    frobenius: int
    genus: int
    min_generators: tuple[int, ...]
    multiplicity: int

    @property
    def effective_generators(self) -> tuple[int, ...]:
        """Minimal generators above the Frobenius number."""
        return tuple(g for g in self.min_generators if g > self.frobenius)

    def semigroup(self) -> NumericalSemigroup:
        conductor = self.frobenius + 1
        bitmap = self.bits & ((1 << conductor) - 1)
        return NumericalSemigroup(self.min_generators, conductor, self.genus, bitmap)


def root_node(max_genus: int) -> TreeNode:
    """The full semigroup, with a bit window sized for ``max_genus``."""
    # floor of 8 keeps children() usable even on a genus-0 window
    window = max(3 * max_genus + 2, 8)
    return TreeNode(bits=(1 << window) - 1, frobenius=-1, genus=0,
                    min_generators=(1,), multiplicity=1)


def _lowest_nonzero_member(bits: int) -> int:
    t = bits & ~1
    return (t & -t).bit_length() - 1


def children(node: TreeNode) -> list[TreeNode]:
    """Child semigroups, in increasing removed-generator order."""
    out = []
    gens = node.min_generators
    gens_set = set(gens)
    for lam in gens:
        if lam <= node.frobenius:
            continue
        cbits = node.bits & ~(1 << lam)
        m = node.multiplicity if lam != node.multiplicity else _lowest_nonzero_member(cbits)
        kept = [g for g in gens if g != lam]
        new = []
        # New minimal generators can only appear in (lam, lam + m].
        for x in range(lam + 1, lam + m + 1):
            if x in gens_set:
                continue
            reducible = False
            for y in range(m, x // 2 + 1):
                if (cbits >> y) & 1 and (cbits >> (x - y)) & 1:
                    reducible = True
                    break
            if not reducible:
                new.append(x)
        out.append(TreeNode(bits=cbits, frobenius=lam, genus=node.genus + 1,
                            min_generators=tuple(sorted(kept + new)),
                            multiplicity=m))
    return out


def _walk(start: TreeNode, target_genus: int, budget: int,
          leaf_fn=None, node_fn=None) -> tuple[int, int]:
    """Depth-first walk from ``start`` down to ``target_genus``.

    Returns (leaves, nodes): semigroups seen at the target genus and
    total tree nodes touched.  Raises ResourceLimit as soon as the node
    count would exceed ``budget``.
    """
    leaves = 0
    nodes = 0
    stack = [start]
    while stack:
        node = stack.pop()
        nodes += 1
        if nodes > budget:
            raise ResourceLimit(f"node budget of {budget} exceeded")
        if node_fn is not None:
            node_fn(node)
        if node.genus >= target_genus:
            leaves += 1
            if leaf_fn is not None:
                leaf_fn(node)
            continue
        stack.extend(reversed(children(node)))
    return leaves, nodes


def enumerate_genus(g: int, visitor=None, *, node_budget: int | None = None) -> int:
    """Visit every numerical semigroup of genus exactly ``g`` once.

    ``visitor`` (when given) receives each semigroup as a
    NumericalSemigroup, in depth-first order with children taken in
    increasing removed-generator order.  Returns the number of
    semigroups visited.
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    budget = node_budget if node_budget is not None else DEFAULT_NODE_BUDGET
    leaf_fn = None if visitor is None else (lambda node: visitor(node.semigroup()))
    leaves, _ = _walk(root_node(g), g, budget, leaf_fn=leaf_fn)
    return leaves


def count_by_genus(g_max: int, *, node_budget: int | None = None) -> list[int]:
    """Number of numerical semigroups of each genus 0..g_max."""
    if g_max < 0:
        raise ValueError("genus must be non-negative")
    budget = node_budget if node_budget is not None else DEFAULT_NODE_BUDGET
    counts = [0] * (g_max + 1)

    def tally(node):
        counts[node.genus] += 1

    _walk(root_node(g_max), g_max, budget, node_fn=tally)
    return counts


def tuple_add(x: tuple, y: tuple) -> tuple:
    """Elementwise sum; the merge operation for tuple-shaped aggregates."""
    return tuple(a + b for a, b in zip(x, y))


def _fold_subtree(args):
    node, target, map_fn, add_fn, zero, budget = args
    acc = zero

    def leaf(n):
        nonlocal acc
        acc = add_fn(acc, map_fn(n.semigroup()))

    _, nodes = _walk(node, target, budget, leaf_fn=leaf)
    return acc, nodes


def map_reduce_genus(g: int, map_fn, zero, add_fn=tuple_add, *,
                     workers: int = 1, split_depth: int | None = None,
                     node_budget: int | None = None):
    """Fold ``map_fn`` over every semigroup of genus ``g``.

    The aggregate must be mergeable: ``add_fn`` has to be commutative
    and associative so that splitting the tree into subtrees cannot
    change the result.  With ``workers`` > 1 the subtrees rooted at
    ``split_depth`` are processed by a process pool and merged in a
    fixed order, so results are identical for any worker count.

    Returns (aggregate, nodes_walked).
    """
    if g < 0:
        raise ValueError("genus must be non-negative")
    budget = node_budget if node_budget is not None else DEFAULT_NODE_BUDGET
    depth = split_depth if split_depth is not None else min(4, g)

    if workers <= 1 or depth >= g or depth < 1:
        acc = zero

        def leaf(node):
            nonlocal acc
            acc = add_fn(acc, map_fn(node.semigroup()))

        _, nodes = _walk(root_node(g), g, budget, leaf_fn=leaf)
        return acc, nodes

    units: list[TreeNode] = []
    _, split_nodes = _walk(root_node(g), depth, budget, leaf_fn=units.append)
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=workers) as pool:
        results = pool.map(_fold_subtree,
                           [(u, g, map_fn, add_fn, zero, budget) for u in units])
    acc = zero
    # Subtree roots are re-counted by their own walks; drop the duplicates.
    total = split_nodes - len(units)
    for part, nodes in results:
        acc = add_fn(acc, part)
        total += nodes
    if total > budget:
        raise ResourceLimit(f"node budget of {budget} exceeded")
    return acc, total
