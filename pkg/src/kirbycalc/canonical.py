"""Canonical relabeling and the versioned canonical byte form.

`canonical_form` serializes the diagram after renaming dots to
g0, g1, ... and handles to h0, h1, ... along a label-independent order,
so equal byte sequences decide labeled-diagram isomorphism (same words,
framings, linkings up to renaming and reordering).

The order comes from iterated partition refinement over structural
fingerprints (framing, word shape, linking rows), followed by
branch-and-bound over the remaining symmetric choices; branches whose
candidates are related by a provable transposition automorphism are
explored once.  The minimal serialized text wins, which is itself a
label-free choice.
"""

from __future__ import annotations

import hashlib

from . import lang
from .diagram import FreeWord, HandleDiagram, LinkingData, TwoHandle, validate

_HEADER = b"KD1\n"


class InvalidDiagramError(ValueError):
    """Raised when a structurally broken diagram reaches canonicalization."""


def canonical_form(d: HandleDiagram) -> bytes:
    problems = validate(d)
    if problems:
        raise InvalidDiagramError("; ".join(problems))
    return _HEADER + lang.serialize_diagram(canonical_relabel(d)).encode("utf-8")


def canonical_hash(d: HandleDiagram) -> str:
    return hashlib.sha256(canonical_form(d)).hexdigest()


def canonical_relabel(d: HandleDiagram) -> HandleDiagram:
    """The isomorphic copy whose serialization is the canonical text."""
    dot_order, handle_order = _canonical_orders(d)
    return _relabel_ordered(d, dot_order, handle_order)


def _relabel_ordered(d: HandleDiagram, dot_order: list[str], handle_order: list[str]) -> HandleDiagram:
    dmap = {g: f"g{i}" for i, g in enumerate(dot_order)}
    hmap = {h: f"h{i}" for i, h in enumerate(handle_order)}
    by_id = {h.id: h for h in d.handles}
    dots = tuple(dmap[g] for g in dot_order)
    handles = tuple(
        TwoHandle(
            hmap[hid],
            FreeWord(tuple((dmap[g], s) for g, s in by_id[hid].word.letters)),
            by_id[hid].framing,
        )
        for hid in handle_order
    )
    linking = LinkingData.of(
        {(hmap[a], hmap[b]): v for (a, b), v in d.linking.as_dict().items()}
    )
    return HandleDiagram(dots, handles, linking, d.n3, d.n4)


def _renumber(col: dict) -> dict:
    ranks = {c: i for i, c in enumerate(sorted(set(col.values())))}
    return {v: ranks[c] for v, c in col.items()}


def _canonical_orders(d: HandleDiagram) -> tuple[list[str], list[str]]:
    dot_names = list(d.dots)
    hids = [h.id for h in d.handles]
    by_id = {h.id: h for h in d.handles}
    link = d.linking.get
    dverts = [("d", g) for g in dot_names]
    hverts = [("h", hid) for hid in hids]
    verts = dverts + hverts
    if not verts:
        return [], []

    words = {hid: by_id[hid].word.letters for hid in hids}
    occurrences = {
        (g, hid): tuple((pos, s) for pos, (gg, s) in enumerate(words[hid]) if gg == g)
        for g in dot_names
        for hid in hids
    }

    def word_shape(hid: str):
        # positions of equal letters with generator identity abstracted away
        first: dict[str, int] = {}
        return tuple((first.setdefault(g, len(first)), s) for g, s in words[hid])

    def refine(col: dict) -> dict:
        nclasses = len(set(col.values()))
        while True:
            sig = {}
            for g in dot_names:
                occ = tuple(
                    sorted(
                        (col[("h", hid)], occurrences[(g, hid)])
                        for hid in hids
                        if occurrences[(g, hid)]
                    )
                )
                sig[("d", g)] = (0, col[("d", g)], occ)
            for hid in hids:
                letter_sig = tuple((s, col[("d", g)]) for g, s in words[hid])
                link_sig = tuple(
                    sorted((link(hid, o), col[("h", o)]) for o in hids if o != hid)
                )
                sig[("h", hid)] = (1, col[("h", hid)], letter_sig, link_sig)
            col = _renumber(sig)
            n = len(set(col.values()))
            if n == nclasses:
                return col
            nclasses = n

    def swap_is_automorphism(u, v) -> bool:
        # Is transposing u and v (same sort) an automorphism of the labeled data?
        if u[0] == "h":
            a, b = by_id[u[1]], by_id[v[1]]
            if a.framing != b.framing or a.word != b.word:
                return False
            return all(
                link(u[1], m) == link(v[1], m) for m in hids if m not in (u[1], v[1])
            )
        x, y = u[1], v[1]
        for hid in hids:
            w = words[hid]
            swapped = tuple((y if g == x else x if g == y else g, s) for g, s in w)
            if swapped != w:
                return False
        return True

    initial = {}
    for g in dot_names:
        initial[("d", g)] = (0,)
    for hid in hids:
        initial[("h", hid)] = (1, by_id[hid].framing, word_shape(hid))
    base = refine(_renumber(initial))

    best: list[tuple[str, list[str], list[str]] | None] = [None]

    def leaf(col: dict) -> None:
        dorder = [v[1] for v in sorted(dverts, key=col.__getitem__)]
        horder = [v[1] for v in sorted(hverts, key=col.__getitem__)]
        text = lang.serialize_diagram(_relabel_ordered(d, dorder, horder))
        if best[0] is None or text < best[0][0]:
            best[0] = (text, dorder, horder)

    def descend(col: dict) -> None:
        classes: dict[int, list] = {}
        for v in verts:
            classes.setdefault(col[v], []).append(v)
        cell = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                cell = classes[c]
                break
        if cell is None:
            leaf(col)
            return
        reps: list = []
        for v in sorted(cell):
            if not any(swap_is_automorphism(v, r) for r in reps):
                reps.append(v)
        for v in reps:
            marked = {w: (c, 1 if w == v else 0) for w, c in col.items()}
            descend(refine(_renumber(marked)))

    descend(base)
    assert best[0] is not None
    return best[0][1], best[0][2]
