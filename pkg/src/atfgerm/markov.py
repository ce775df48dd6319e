"""Markov triples ``a^2 + b^2 + c^2 = 3abc`` and their mutation tree."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InvalidPath, NonPositiveEntry, NotMarkov

Triple = tuple[int, int, int]


def is_markov(t: Sequence[int]) -> bool:
    if len(t) != 3:
        raise ValueError("a Markov triple has three entries")
    if any(x <= 0 for x in t):
        raise NonPositiveEntry(f"entries must be positive, got {tuple(t)}")
    a, b, c = t
    return a * a + b * b + c * c == 3 * a * b * c


def mutate_triple(t: Sequence[int], slot: int) -> Triple:
    """Replace entry ``slot`` (1-based) by the other root of the quadratic."""
    if not is_markov(t):
        raise NotMarkov(f"{tuple(t)} is not a Markov triple")
    if slot not in (1, 2, 3):
        raise ValueError(f"slot must be 1, 2 or 3, got {slot}")
    out = list(t)
    i = slot - 1
    others = [t[j] for j in range(3) if j != i]
    out[i] = 3 * others[0] * others[1] - t[i]
    return tuple(out)


def canonical(t: Sequence[int]) -> Triple:
    return tuple(sorted(t))


@dataclass(frozen=True)
class TreeNode:
    triple: Triple
    parent: Optional[int]
    slot: Optional[int]
    depth: int


def markov_tree(max_entry: int) -> list[TreeNode]:
    """Breadth-first tree of sorted triples with every entry at most ``max_entry``.

    Children are generated by mutating slots 1, 2, 3 of the (sorted) parent
    in that order; permutations of an already seen triple are dropped.
    """
    if max_entry < 1:
        raise ValueError("max_entry must be at least 1")
    root = (1, 1, 1)
    nodes = [TreeNode(root, None, None, 0)]
    seen = {root}
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        node = nodes[idx]
        for slot in (1, 2, 3):
            child = canonical(mutate_triple(node.triple, slot))
            if max(child) > max_entry or child in seen:
                continue
            seen.add(child)
            nodes.append(TreeNode(child, idx, slot, node.depth + 1))
            queue.append(len(nodes) - 1)
    return nodes


def triples_to_depth(depth: int) -> list[TreeNode]:
    """All tree nodes with depth at most ``depth``."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    nodes = [TreeNode((1, 1, 1), None, None, 0)]
    seen = {(1, 1, 1)}
    frontier = [0]
    for d in range(1, depth + 1):
        nxt = []
        for idx in frontier:
            for slot in (1, 2, 3):
                child = canonical(mutate_triple(nodes[idx].triple, slot))
                if child in seen:
                    continue
                seen.add(child)
                nodes.append(TreeNode(child, idx, slot, d))
                nxt.append(len(nodes) - 1)
        frontier = nxt
    return nodes


def path_to(triple: Sequence[int]) -> list[int]:
    """Slot sequence leading from ``(1, 1, 1)`` to ``triple`` in the tree."""
    if not is_markov(triple):
        raise NotMarkov(f"{tuple(triple)} is not a Markov triple")
    target = canonical(triple)
    nodes = markov_tree(max(target))
    idx = next(i for i, n in enumerate(nodes) if n.triple == target)
    slots = []
    while nodes[idx].parent is not None:
        slots.append(nodes[idx].slot)
        idx = nodes[idx].parent
    return slots[::-1]


def follow_path(path: Sequence[int]) -> Triple:
    """Sorted triple reached from the root by mutating the given sorted slots."""
    t = (1, 1, 1)
    for s in path:
        if s not in (1, 2, 3):
            raise InvalidPath(f"invalid slot {s}")
        t = canonical(mutate_triple(t, s))
    return t


def tree_to_json(nodes: Sequence[TreeNode]) -> dict:
    return {
        "root": [1, 1, 1],
        "nodes": [
            {"triple": list(n.triple), "parent": n.parent, "slot": n.slot, "depth": n.depth}
            for n in nodes
        ],
    }
