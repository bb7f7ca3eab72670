"""Gluck twisting and its companions: surgery along a sphere handle,
building a handle that represents a given spherical homology class, the
odd-self-intersection hypothesis checker, and a bounded search for a
move script trivializing a twist.

Positive answers are always *certified*: they come with a move script
whose hash-chained log can be replayed by :func:`moves.replay_log`.  The
checker and the search are semi-decisions — `unknown` never means "no".
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, replace

from . import lang, moves
from .canonical import canonical_form, canonical_hash
from .diagram import FreeWord, HandleDiagram, LinkingData, TwoHandle, _pair_key
from .moves import (
    GluckTwist,
    IntroducePair23,
    Move,
    MoveError,
    MoveLog,
    MoveScript,
    SlideHandle,
    Surger,
    apply_script,
    exchange_zero_to_dot,
)


class CertificateError(Exception):
    """A spherical-class certificate that fails validation."""


@dataclass(frozen=True)
class CertTerm:
    handle: str
    sign: int
    conjugator: FreeWord = FreeWord()


@dataclass(frozen=True)
class SphericalClassCertificate:
    """Evidence that a class Σ sign_t·[handle_t] is represented by an
    immersed sphere: the conjugated attaching words must multiply to the
    trivial word, so the composite circle bounds a disk in the 1-skeleton.
    """

    terms: tuple[CertTerm, ...]

    def boundary_word(self, d: HandleDiagram) -> FreeWord:
        w = FreeWord()
        for t in self.terms:
            wt = d.handle(t.handle).word
            w = w * t.conjugator * wt.power(t.sign) * t.conjugator.inverse()
        return w

    def coefficients(self, d: HandleDiagram) -> dict[str, int]:
        """Net signed count per handle id (the homology class)."""
        c = dict.fromkeys(d.handle_ids(), 0)
        for t in self.terms:
            c[t.handle] += t.sign
        return c


def _validate_certificate(d: HandleDiagram, cert: SphericalClassCertificate) -> None:
    for t in cert.terms:
        if t.sign not in (1, -1):
            raise CertificateError(f"term sign must be +1 or -1, got {t.sign!r}")
        if not d.has_handle(t.handle):
            raise CertificateError(f"certificate references unknown handle {t.handle!r}")
        stray = t.conjugator.generators() - set(d.dots)
        if stray:
            raise CertificateError(f"conjugator uses undeclared generators {sorted(stray)}")
    w = cert.boundary_word(d)
    if not w.is_trivial:
        raise CertificateError(f"boundary word {lang.format_word(w)} is not freely trivial")


@dataclass(frozen=True)
class Verdict:
    """Outcome of a semi-decision: `certified` with a witness and a
    replayable script/log, or `unknown`."""

    certified: bool
    witness: str | None = None
    script: MoveScript = ()
    log: MoveLog = ()

    def render(self) -> str:
        if not self.certified:
            return "verdict: unknown\n"
        out = ["verdict: certified", f"witness: {self.witness}", "script:"]
        out.extend("  " + moves.format_move(m) for m in self.script)
        out.append("chain:")
        out.extend(f"  {s.pre_hash} -> {s.post_hash}" for s in self.log)
        return "".join(line + "\n" for line in out)


UNKNOWN = Verdict(certified=False)


def _require_sphere_handle(d: HandleDiagram, sphere: str) -> None:
    try:
        h = d.handle(sphere)
    except KeyError:
        raise MoveError(f"unknown handle {sphere!r}") from None
    if not h.word.is_trivial or h.framing != 0:
        raise MoveError(f"handle {sphere} is not a 0-framed trivial-word handle")


def gluck_twist(d: HandleDiagram, sphere: str, sign: int = 1) -> HandleDiagram:
    """Twist along the 2-sphere described by a 0-framed trivial-word
    handle S: with v_m = L_mS,

        f_m <- f_m + sign * v_m^2          (m != S)
        L_mn <- L_mn + sign * v_m * v_n    (m != n, both != S)

    Words, dots, S's own data, and the 3-/4-handle counts are unchanged;
    twisting again with the opposite sign restores the diagram exactly.
    """
    if sign not in (1, -1):
        raise MoveError(f"sign must be +1 or -1, got {sign!r}")
    _require_sphere_handle(d, sphere)
    v = {m: d.link(m, sphere) for m in d.handle_ids()}
    handles = tuple(
        h if h.id == sphere else TwoHandle(h.id, h.word, h.framing + sign * v[h.id] ** 2)
        for h in d.handles
    )
    pairs = d.linking.as_dict()
    others = [m for m in d.handle_ids() if m != sphere]
    for a, m in enumerate(others):
        for n in others[a + 1:]:
            pairs[_pair_key(m, n)] = d.link(m, n) + sign * v[m] * v[n]
    return replace(d, handles=handles, linking=LinkingData.of(pairs))


def surger_sphere(d: HandleDiagram, sphere: str, dot: str) -> HandleDiagram:
    """Surger out the sphere S: trade its handle for a fresh dot.

    Same rewrite as :func:`moves.exchange_zero_to_dot`; kept as its own
    move so logs show where a surgery (rather than a generic exchange)
    happened.
    """
    return exchange_zero_to_dot(d, sphere, dot)


def _fresh_id(taken: set[str], prefix: str) -> str:
    n = 0
    while f"{prefix}{n}" in taken:
        n += 1
    return f"{prefix}{n}"


def _fresh_dot(d: HandleDiagram) -> str:
    return _fresh_id(set(d.dots) | set(d.handle_ids()), "g")


def _fresh_handle(d: HandleDiagram) -> str:
    return _fresh_id(set(d.dots) | set(d.handle_ids()), "h")


def _self_intersection(d: HandleDiagram, c: dict[str, int]) -> int:
    ids = d.handle_ids()
    total = 0
    for a, m in enumerate(ids):
        total += c[m] * c[m] * d.handle(m).framing
        for n in ids[a + 1:]:
            total += 2 * c[m] * c[n] * d.link(m, n)
    return total


def represent_spherical_class(
    d: HandleDiagram, cert: SphericalClassCertificate, h: str | None = None
) -> tuple[HandleDiagram, str]:
    """Build a 2-handle representing the certified class.

    A cancelling 2-/3-handle pair contributes a fresh blank handle h,
    which is then slid over each certificate term (with the term's sign
    and conjugator band).  The certificate guarantees w_h ends up freely
    trivial, and the slide bookkeeping makes f_h the self-intersection
    number of the class — both are asserted on the result.
    """
    _validate_certificate(d, cert)
    if h is None:
        h = _fresh_handle(d)
    elif d.has_handle(h):
        raise MoveError(f"handle {h!r} already present")
    c = cert.coefficients(d)
    script: list[Move] = [IntroducePair23(h)]
    script.extend(SlideHandle(h, t.handle, t.sign, t.conjugator) for t in cert.terms)
    out = d
    for m in script:
        out = moves.apply_move(out, m)
    built = out.handle(h)
    assert built.word.is_trivial
    assert built.framing == _self_intersection(d, c)
    return out, h


def check_gluck_triviality_hypothesis(
    d: HandleDiagram,
    sphere: str,
    cert: SphericalClassCertificate | None = None,
    dot: str | None = None,
) -> Verdict:
    """Semi-decide the sufficient condition for a Gluck twist along S to
    not change the manifold: the surgered diagram must contain a
    spherical class of odd self-intersection.

    After surgering S out, the checker certifies either (a) a surviving
    handle with trivial word and odd framing, or (b) a caller-supplied
    spherical-class certificate whose built handle has odd framing.
    `unknown` means neither route succeeded, not that the condition
    fails.
    """
    _require_sphere_handle(d, sphere)
    if dot is None:
        dot = _fresh_dot(d)
    surgered = surger_sphere(d, sphere, dot)
    prefix: MoveScript = (Surger(sphere, dot),)

    for h in surgered.handles:
        if h.word.is_trivial and h.framing % 2 != 0:
            _, log = apply_script(d, prefix)
            return Verdict(True, f"handle {h.id}", prefix, log)

    if cert is not None:
        _validate_certificate(surgered, cert)
        hid = _fresh_handle(surgered)
        built, _ = represent_spherical_class(surgered, cert, hid)
        if built.handle(hid).framing % 2 != 0:
            script = prefix + (IntroducePair23(hid),) + tuple(
                SlideHandle(hid, t.handle, t.sign, t.conjugator) for t in cert.terms
            )
            _, log = apply_script(d, script)
            return Verdict(True, "certificate", script, log)

    return UNKNOWN


def _is_meridian(d: HandleDiagram, j: str) -> bool:
    """A 0-framed trivial-word handle whose linking row is one ±1 entry."""
    h = d.handle(j)
    if not h.word.is_trivial or h.framing != 0:
        return False
    nonzero = [d.link(j, m) for m in d.handle_ids() if m != j and d.link(j, m) != 0]
    return len(nonzero) == 1 and abs(nonzero[0]) == 1


def _profile(d: HandleDiagram) -> tuple:
    framings = sorted(h.framing for h in d.handles)
    words = sorted(len(h.word) for h in d.handles)
    links = sorted(abs(v) for _, _, v in d.linking.entries)
    return (len(d.dots), len(d.handles), d.n3, d.n4, framings, words, links)


def _multiset_gap(a: list[int], b: list[int]) -> int:
    pad = max(len(a), len(b))
    aa = sorted(a + [0] * (pad - len(a)))
    bb = sorted(b + [0] * (pad - len(b)))
    return sum(abs(x - y) for x, y in zip(aa, bb))


def _distance(p: tuple, q: tuple) -> int:
    return (
        6 * abs(p[0] - q[0])
        + 6 * abs(p[1] - q[1])
        + 3 * abs(p[2] - q[2])
        + 3 * abs(p[3] - q[3])
        + _multiset_gap(p[4], q[4])
        + _multiset_gap(p[5], q[5])
        + _multiset_gap(p[6], q[6])
    )


def _search_moves(d: HandleDiagram, k: str) -> list[Move]:
    """Candidate moves at one search node, in a fixed deterministic order."""
    out: list[Move] = []
    ids = d.handle_ids()
    bases = [j for j in ids if j == k or _is_meridian(d, j)]
    for j in bases:
        for i in ids:
            if i == j:
                continue
            out.append(SlideHandle(i, j, 1))
            out.append(SlideHandle(i, j, -1))
    for h in d.handles:
        if h.word.is_trivial and h.framing == 0:
            out.append(moves.ExchangeZeroToDot(h.id, _fresh_dot(d)))
    for g in d.dots:
        out.append(moves.ExchangeDotToZero(g, _fresh_handle(d)))
    out.append(moves.IntroducePair12(_fresh_dot(d), _fresh_handle(d)))
    for h in d.handles:
        if len(h.word) == 1 and d.has_dot(h.word.letters[0][0]):
            out.append(moves.CancelPair12(h.word.letters[0][0], h.id))
    out.append(IntroducePair23(_fresh_handle(d)))
    if d.n3 > 0:
        for h in d.handles:
            if h.word.is_trivial and h.framing == 0 and all(d.link(h.id, m) == 0 for m in ids):
                out.append(moves.CancelPair23(h.id))
    for a in d.dots:
        for b in d.dots:
            if a != b:
                out.append(moves.SlideDot(a, b, 1))
                out.append(moves.SlideDot(a, b, -1))
    return out


def trivialize_gluck(
    d: HandleDiagram,
    sphere: str,
    k: str,
    budget: int = 10_000,
    max_depth: int | None = None,
) -> Verdict:
    """Search for a move script taking the twisted diagram back to the
    original, certifying that this particular twist does not change the
    manifold.

    The search runs best-first from gluck_twist(d, sphere, +1) toward
    canonical_form(d), expanding slides over `k` and over meridians,
    exchanges, pair moves, and dot slides; states are deduplicated and
    tie-broken by canonical hash, so results are reproducible.  `budget`
    bounds the number of nodes taken from the frontier (0 gives
    `unknown` immediately).  A certified script starts with the twist
    itself, so it replays from `d`; the endpoint is re-verified before
    returning.
    """
    _require_sphere_handle(d, sphere)
    if k == sphere or not d.has_handle(k):
        raise MoveError(f"designated handle {k!r} must exist and differ from the sphere")
    if not d.handle(k).word.is_trivial or d.handle(k).framing % 2 == 0:
        raise MoveError(f"designated handle {k} must have a trivial word and odd framing")
    if budget < 0:
        raise ValueError("budget must be nonnegative")

    target_form = canonical_form(d)
    target_profile = _profile(d)
    start = gluck_twist(d, sphere, 1)
    start_hash = canonical_hash(start)

    # Frontier entries: (distance, canonical hash, insertion seq, diagram, script).
    frontier: list[tuple[int, str, int, HandleDiagram, MoveScript]] = []
    seq = 0
    heapq.heappush(frontier, (_distance(_profile(start), target_profile), start_hash, seq, start, ()))
    seen = {start_hash}
    popped = 0

    while frontier and popped < budget:
        _, _, _, cur, script = heapq.heappop(frontier)
        popped += 1
        if canonical_form(cur) == target_form:
            full = (GluckTwist(sphere, 1),) + script
            end, log = apply_script(d, full)
            assert canonical_form(end) == target_form
            return Verdict(True, "script", full, log)
        if max_depth is not None and len(script) >= max_depth:
            continue
        for move in _search_moves(cur, k):
            try:
                nxt = moves.apply_move(cur, move)
            except MoveError:
                continue
            h = canonical_hash(nxt)
            if h in seen:
                continue
            seen.add(h)
            seq += 1
            heapq.heappush(
                frontier,
                (_distance(_profile(nxt), target_profile), h, seq, nxt, script + (move,)),
            )
    return UNKNOWN
