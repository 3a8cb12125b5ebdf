"""Graphviz DOT rendering of a skeleton.

Nodes are the members of the extended image set; boxes group equivalence
classes, rectangles mark chosen representatives, shaded boxes mark classes
with a nontrivial holonomy group.  Arrows run from each representative to
its tiles, labelled by a generator word taking the set to the tile when one
exists; dotted arrows mark tiles that are not images.  A spine on the left
indicates depth levels.
"""

from __future__ import annotations

from .holonomy import HolonomyDecomposition
from .skeleton import Skeleton


def skeleton_dot(sk: Skeleton, dec: HolonomyDecomposition | None = None) -> str:
    lines = [
        "digraph skeleton {",
        "  graph [newrank=true];",
        "  rankdir=TB;",
        '  node [fontname="Helvetica"];',
    ]
    nontrivial = set()
    if dec is not None:
        nontrivial = {rep for rep, grp in dec.groups.items() if not grp.is_trivial}
    for cid, members in enumerate(sk.classes):
        rep = members[0]
        lines.append(f"  subgraph cluster_{cid} {{")
        lines.append("    style=filled;")
        color = "gray85" if rep in nontrivial else "white"
        lines.append(f"    fillcolor={color};")
        for u in members:
            shape = "box" if u == rep else "ellipse"
            lines.append(f'    n{u} [label="{sk.set_str(u)}", shape={shape}];')
        lines.append("  }")
    for members in sk.classes:
        rep = members[0]
        if sk.card(rep) <= 1:
            continue
        for t in sk.tiles_of(rep):
            attrs = []
            word = sk.word_to(rep, t)
            if word:
                attrs.append(f'label="{sk.ts.word_str(word)}"')
            if t not in sk.image_set:
                attrs.append("style=dotted")
            suffix = f" [{', '.join(attrs)}]" if attrs else ""
            lines.append(f"  n{rep} -> n{t}{suffix};")
    depths = sorted({sk.depth[i] for i in range(len(sk.sets))})
    for d in depths:
        lines.append(f'  depth{d} [label="depth {d}", shape=plaintext];')
    for a, b in zip(depths, depths[1:]):
        lines.append(f"  depth{a} -> depth{b} [style=invis];")
    for d in depths:
        same = " ".join(f"n{i};" for i in range(len(sk.sets)) if sk.depth[i] == d)
        lines.append(f"  {{rank=same; depth{d}; {same}}}")
    lines.append("}")
    return "\n".join(lines) + "\n"
