"""Core handle-diagram model: reduced free words, framed 2-handles,
symmetric linking data, and well-formedness checking.

A diagram presents a compact smooth 4-manifold in dotted-circle notation:
each dot is a 1-handle and doubles as a free-group generator of the
fundamental group of the 1-skeleton, each 2-handle records the homotopy
class of its attaching circle as a reduced word together with an integer
framing, and the symmetric linking table completes the Gram data of the
attaching link.  3- and 4-handles carry no attaching data and are only
counted.

All values are immutable; operations elsewhere in the package build new
diagrams rather than mutating existing ones.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Mapping

Letter = tuple[str, int]


class UnknownGeneratorError(ValueError):
    """A word letter references a generator the diagram does not declare."""


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for gen, sign in letters:
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign!r}")
        if out and out[-1][0] == gen and out[-1][1] == -sign:
            out.pop()
        else:
            out.append((gen, sign))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word in the dotted-circle generators.

    The constructor insists on an already-reduced letter sequence; use
    :meth:`make` (or :func:`reduce_word`) to reduce raw input.  Products
    and inverses reduce automatically, so every reachable value stays
    reduced.
    """

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        prev: Letter | None = None
        for gen, sign in self.letters:
            if sign not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {sign!r}")
            if prev is not None and prev == (gen, -sign):
                raise ValueError("letters are not freely reduced; use FreeWord.make")
            prev = (gen, sign)

    @classmethod
    def make(cls, letters: Iterable[Letter]) -> "FreeWord":
        return cls(_reduce(letters))

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(_reduce(self.letters + other.letters))

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -s) for g, s in reversed(self.letters)))

    def power(self, sign: int) -> "FreeWord":
        """The word itself for sign +1, its inverse for sign -1."""
        if sign == 1:
            return self
        if sign == -1:
            return self.inverse()
        raise ValueError("power expects sign +1 or -1")

    def exponent(self, gen: str) -> int:
        """Signed count of `gen` letters (the abelianized coefficient)."""
        return sum(s for g, s in self.letters if g == gen)

    def generators(self) -> set[str]:
        return {g for g, _ in self.letters}

    def __len__(self) -> int:
        return len(self.letters)


def reduce_word(letters: Iterable[Letter], generators: Iterable[str] | None = None) -> FreeWord:
    """Freely reduce a raw letter sequence into a :class:`FreeWord`.

    When `generators` is given, letters outside it raise
    :class:`UnknownGeneratorError`.
    """
    letters = tuple(letters)
    if generators is not None:
        known = set(generators)
        for g, _ in letters:
            if g not in known:
                raise UnknownGeneratorError(f"unknown generator id {g!r}")
    return FreeWord.make(letters)


def exponent_vector(word: FreeWord, dots: Iterable[str]) -> tuple[int, ...]:
    """Abelianization of `word`: one signed letter count per dot, in dot order."""
    dots = tuple(dots)
    counts = dict.fromkeys(dots, 0)
    for g, s in word.letters:
        if g in counts:
            counts[g] += s
    return tuple(counts[g] for g in dots)


def _pair_key(a: str, b: str) -> tuple[str, str]:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class LinkingData:
    """Symmetric pairwise linking numbers between 2-handles.

    An absent pair means linking number zero.  `entries` keeps raw
    (i, j, value) triples so that ill-formed input (self pairs, asymmetric
    duplicates) survives construction and is reported by :func:`validate`;
    the :meth:`of` builder normalizes well-formed data (sorted keys, zero
    entries dropped).
    """

    entries: tuple[tuple[str, str, int], ...] = ()

    @classmethod
    def of(cls, pairs: Mapping[tuple[str, str], int]) -> "LinkingData":
        norm: dict[tuple[str, str], int] = {}
        for (i, j), v in pairs.items():
            if i == j:
                raise ValueError(f"self-linking entry for {i!r}; framings live on the handle")
            key = _pair_key(i, j)
            if key in norm and norm[key] != v:
                raise ValueError(f"conflicting symmetric entries for pair {key}")
            norm[key] = v
        return cls(tuple((i, j, v) for (i, j), v in sorted(norm.items()) if v != 0))

    @cached_property
    def _table(self) -> dict[tuple[str, str], int]:
        t: dict[tuple[str, str], int] = {}
        for i, j, v in self.entries:
            t[(i, j)] = v
            t[(j, i)] = v
        return t

    def get(self, i: str, j: str) -> int:
        if i == j:
            return 0
        return self._table.get((i, j), 0)

    def as_dict(self) -> dict[tuple[str, str], int]:
        """Normalized nonzero entries keyed by sorted id pair."""
        return {_pair_key(i, j): v for i, j, v in self.entries if v != 0}

    def without(self, hid: str) -> "LinkingData":
        return LinkingData.of({k: v for k, v in self.as_dict().items() if hid not in k})


@dataclass(frozen=True)
class TwoHandle:
    id: str
    word: FreeWord = FreeWord()
    framing: int = 0


@dataclass(frozen=True)
class HandleDiagram:
    """A handle presentation: dots, framed 2-handles, linking, and counts
    of 3-handles (n3 >= 0) and 4-handles (n4 in {0, 1})."""

    dots: tuple[str, ...] = ()
    handles: tuple[TwoHandle, ...] = ()
    linking: LinkingData = LinkingData()
    n3: int = 0
    n4: int = 0

    def handle_ids(self) -> tuple[str, ...]:
        return tuple(h.id for h in self.handles)

    def handle(self, hid: str) -> TwoHandle:
        for h in self.handles:
            if h.id == hid:
                return h
        raise KeyError(hid)

    def has_handle(self, hid: str) -> bool:
        return any(h.id == hid for h in self.handles)

    def has_dot(self, g: str) -> bool:
        return g in self.dots

    def link(self, i: str, j: str) -> int:
        return self.linking.get(i, j)

    def replace_handle(self, hid: str, new: TwoHandle) -> "HandleDiagram":
        handles = tuple(new if h.id == hid else h for h in self.handles)
        return replace(self, handles=handles)


def validate(d: HandleDiagram) -> list[str]:
    """Check every structural invariant; returns violations, never raises.

    An empty list means the diagram is well formed.  Every operation in
    the package maps valid diagrams to valid diagrams.
    """
    problems: list[str] = []
    dot_set: set[str] = set()
    for g in d.dots:
        if not isinstance(g, str) or not g:
            problems.append(f"bad generator id {g!r}")
            continue
        if g in dot_set:
            problems.append(f"duplicate generator {g}")
        dot_set.add(g)

    handle_set: set[str] = set()
    for h in d.handles:
        if not isinstance(h.id, str) or not h.id:
            problems.append(f"bad handle id {h.id!r}")
            continue
        if h.id in handle_set:
            problems.append(f"duplicate handle {h.id}")
        handle_set.add(h.id)
        if not isinstance(h.framing, int):
            problems.append(f"handle {h.id} framing is not an integer")
        for g, _s in h.word.letters:
            if g not in dot_set:
                problems.append(f"handle {h.id} word uses undeclared generator {g}")
                break

    seen_pairs: dict[tuple[str, str], int] = {}
    for i, j, v in d.linking.entries:
        if i == j:
            problems.append(f"self-linking entry for {i}")
            continue
        for x in (i, j):
            if x not in handle_set:
                problems.append(f"linking entry references absent handle {x}")
        if not isinstance(v, int):
            problems.append(f"linking entry {i},{j} is not an integer")
            continue
        key = _pair_key(i, j)
        if key in seen_pairs and seen_pairs[key] != v:
            problems.append(f"asymmetric linking entries for {key[0]},{key[1]}")
        seen_pairs[key] = v

    if not isinstance(d.n3, int) or d.n3 < 0:
        problems.append("3-handle count must be a nonnegative integer")
    if d.n4 not in (0, 1):
        problems.append("4-handle count must be 0 or 1")
    return problems


def relabel(
    d: HandleDiagram,
    dot_map: Mapping[str, str] | None = None,
    handle_map: Mapping[str, str] | None = None,
) -> HandleDiagram:
    """Rename generators and/or handles, preserving order.

    Maps may be partial; unmapped ids keep their names.  Renaming must
    stay injective on the diagram or the result will fail validation.
    """
    dm = dict(dot_map or {})
    hm = dict(handle_map or {})
    dname = lambda g: dm.get(g, g)
    hname = lambda h: hm.get(h, h)
    dots = tuple(dname(g) for g in d.dots)
    handles = tuple(
        TwoHandle(hname(h.id), FreeWord(tuple((dname(g), s) for g, s in h.word.letters)), h.framing)
        for h in d.handles
    )
    linking = LinkingData.of({(hname(a), hname(b)): v for (a, b), v in d.linking.as_dict().items()})
    return HandleDiagram(dots, handles, linking, d.n3, d.n4)
