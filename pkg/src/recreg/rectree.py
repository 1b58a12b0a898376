"""Regularity trees and recursive regularity."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

from recreg.complex import Complex
from recreg.regularity import finest_regular_coarsening, is_regular, restrict

Status = Literal["internal", "leaf-regular", "leaf-completely-non-regular"]


@dataclass(frozen=True)
class RegularityTree:
    cells: tuple[int, ...]
    """Cell indices of the root complex covered by this node."""
    status: Status
    children: tuple["RegularityTree", ...] = ()
    relaxed_walls: frozenset[str] = frozenset()

    @property
    def depth(self) -> int:
        return 0 if not self.children else 1 + max(c.depth for c in self.children)

    def leaves(self) -> list["RegularityTree"]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]

    def internal_nodes(self) -> list["RegularityTree"]:
        if not self.children:
            return []
        return [self] + [n for c in self.children for n in c.internal_nodes()]

    def to_json(self) -> dict:
        out = {"cells": list(self.cells), "status": self.status}
        if self.children:
            out["relaxed_walls"] = sorted(self.relaxed_walls)
            out["children"] = [c.to_json() for c in self.children]
        return out


@dataclass
class _Counter:
    frc_calls: int = 0
    trace: list = field(default_factory=list)


def _build(c: Complex, cells: tuple[int, ...], counter: _Counter) -> RegularityTree:
    if len(c.cells) == 1 or is_regular(c).regular:
        return RegularityTree(cells, "leaf-regular")
    counter.frc_calls += 1
    frc = finest_regular_coarsening(c)
    groups = frc.coarsening.groups
    if len(groups) == 1:
        return RegularityTree(cells, "leaf-completely-non-regular", relaxed_walls=frc.relaxed_walls)
    children = []
    for g in groups:
        sub = restrict(c, g)
        children.append(_build(sub, tuple(cells[i] for i in g), counter))
    return RegularityTree(cells, "internal", tuple(children), frc.relaxed_walls)


def regularity_tree(c: Complex, stats: dict | None = None) -> RegularityTree:
    """Recursive finest-regular-coarsening tree of ``c``.

    Pass a dict as ``stats`` to receive the number of FRC computations.
    """
    counter = _Counter()
    tree = _build(c, tuple(range(len(c.cells))), counter)
    if stats is not None:
        stats["frc_calls"] = counter.frc_calls
    return tree


def is_recursively_regular(c: Complex) -> tuple[bool, RegularityTree]:
    tree = regularity_tree(c)
    return all(leaf.status == "leaf-regular" for leaf in tree.leaves()), tree
