"""Seeded random diagrams, moves, and certificates for the property suites.

Distribution bounds (at most 6 dots, 10 handles, framings and linkings
in [-5, 5], words up to 6 letters) match what the acceptance suite runs
over, so the unit property tests and the acceptance runs sample the
same population.
"""

from __future__ import annotations

import random

from kirbycalc import (
    CancelPair12,
    CertTerm,
    FreeWord,
    HandleDiagram,
    IntroducePair12,
    LinkingData,
    SlideDot,
    SlideHandle,
    SphericalClassCertificate,
    TwoHandle,
)


def random_word(rng: random.Random, dots: tuple[str, ...], max_len: int = 6) -> FreeWord:
    if not dots:
        return FreeWord()
    letters = [(rng.choice(dots), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))]
    return FreeWord.make(letters)


def random_diagram(rng: random.Random, force_trivial_words: int = 0) -> HandleDiagram:
    """A valid random diagram inside the acceptance-suite bounds.

    `force_trivial_words` pins at least that many handles (when present)
    to the empty word, which certificate generation needs.
    """
    dots = tuple(f"a{i}" for i in range(rng.randint(0, 6)))
    n_handles = rng.randint(0, 10)
    handles = []
    for i in range(n_handles):
        word = FreeWord() if i < force_trivial_words else random_word(rng, dots)
        handles.append(TwoHandle(f"h{i}", word, rng.randint(-5, 5)))
    pairs = {}
    ids = [h.id for h in handles]
    for a in range(len(ids)):
        for b in range(a + 1, len(ids)):
            if rng.random() < 0.4:
                pairs[(ids[a], ids[b])] = rng.randint(-5, 5)
    return HandleDiagram(
        dots=dots,
        handles=tuple(handles),
        linking=LinkingData.of(pairs),
        n3=rng.randint(0, 2),
        n4=rng.randint(0, 1),
    )


def random_identity_moves(rng: random.Random, d: HandleDiagram, length: int):
    """A random applicable sequence of summary-preserving moves: handle
    slides, dot slides, and 1-/2-handle pair introductions/cancellations.
    """
    moves = []
    cur = d
    fresh = 0
    from kirbycalc import apply_move

    for _ in range(length):
        options = []
        ids = cur.handle_ids()
        if len(ids) >= 2:
            options.append("slide")
        if len(cur.dots) >= 2:
            options.append("slidedot")
        options.append("intro12")
        cancellable = [
            (h.word.letters[0][0], h.id)
            for h in cur.handles
            if len(h.word) == 1
        ]
        if cancellable:
            options.append("cancel12")
        kind = rng.choice(options)
        if kind == "slide":
            i, j = rng.sample(ids, 2)
            move = SlideHandle(i, j, rng.choice((1, -1)), random_word(rng, cur.dots, 2))
        elif kind == "slidedot":
            a, b = rng.sample(cur.dots, 2)
            move = SlideDot(a, b, rng.choice((1, -1)))
        elif kind == "intro12":
            move = IntroducePair12(f"ng{fresh}", f"nh{fresh}")
            fresh += 1
        else:
            g, h = rng.choice(cancellable)
            move = CancelPair12(g, h)
        cur = apply_move(cur, move)
        moves.append(move)
    return tuple(moves), cur


def random_certificate(rng: random.Random, d: HandleDiagram) -> SphericalClassCertificate:
    """A valid certificate over `d`: free terms on trivial-word handles
    plus adjacently-cancelling term pairs on arbitrary handles, so the
    boundary word is trivial by construction.
    """
    trivial = [h.id for h in d.handles if h.word.is_trivial]
    ids = d.handle_ids()
    terms = []
    for _ in range(rng.randint(0, 4)):
        if trivial and rng.random() < 0.6:
            terms.append(CertTerm(rng.choice(trivial), rng.choice((1, -1)), random_word(rng, d.dots, 2)))
        elif ids:
            h = rng.choice(ids)
            sign = rng.choice((1, -1))
            u = random_word(rng, d.dots, 2)
            terms.append(CertTerm(h, sign, u))
            terms.append(CertTerm(h, -sign, u))
    return SphericalClassCertificate(tuple(terms))


def with_sphere(rng: random.Random, d: HandleDiagram, sphere: str = "S") -> HandleDiagram:
    """Adjoin a 0-framed trivial-word handle with a random linking row."""
    pairs = d.linking.as_dict()
    for m in d.handle_ids():
        v = rng.randint(-5, 5)
        if v:
            pairs[(min(m, sphere), max(m, sphere))] = v
    return HandleDiagram(
        dots=d.dots,
        handles=d.handles + (TwoHandle(sphere, FreeWord(), 0),),
        linking=LinkingData.of(pairs),
        n3=d.n3,
        n4=d.n4,
    )
