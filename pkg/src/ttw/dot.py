"""Hasse diagrams as DOT text."""

from __future__ import annotations

from .orderkit import FinPoset, Semilattice


def render_dot(poset: FinPoset | Semilattice, name: str = "poset") -> str:
    """A Hasse diagram: nodes in element order, one edge per cover pair,
    drawn bottom-up."""
    if isinstance(poset, Semilattice):
        poset = poset.poset
    lines = [f'digraph "{name}" {{', "  rankdir=BT;"]
    for i, label in enumerate(poset.elements):
        lines.append(f'  n{i} [label="{label}"];')
    for i, j in poset.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
