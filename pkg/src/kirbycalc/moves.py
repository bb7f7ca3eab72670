"""Handle moves with exact word, framing, and linking bookkeeping.

Every move is a pure function from diagram to diagram; inapplicable
moves raise :class:`MoveError`.  Scripts are tuples of move values and
replay deterministically; `apply_script` additionally returns a log
whose steps chain canonical-form hashes, so any claimed rewrite can be
re-verified independently.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import lang
from .canonical import canonical_hash
from .diagram import FreeWord, HandleDiagram, LinkingData, TwoHandle, _pair_key


class MoveError(Exception):
    """A move whose preconditions fail on the given diagram."""

    def __init__(self, message: str, step: int | None = None):
        self.step = step
        super().__init__(message if step is None else f"step {step + 1}: {message}")


@dataclass(frozen=True)
class SlideHandle:
    i: str
    j: str
    sign: int
    band: FreeWord = FreeWord()


@dataclass(frozen=True)
class SlideDot:
    a: str
    b: str
    sign: int


@dataclass(frozen=True)
class IntroducePair12:
    g: str
    h: str


@dataclass(frozen=True)
class CancelPair12:
    g: str
    h: str


@dataclass(frozen=True)
class IntroducePair23:
    h: str


@dataclass(frozen=True)
class CancelPair23:
    h: str


@dataclass(frozen=True)
class ExchangeZeroToDot:
    h: str
    g: str


@dataclass(frozen=True)
class ExchangeDotToZero:
    g: str
    h: str


@dataclass(frozen=True)
class GluckTwist:
    sphere: str
    sign: int


@dataclass(frozen=True)
class Surger:
    sphere: str
    dot: str


Move = (
    SlideHandle
    | SlideDot
    | IntroducePair12
    | CancelPair12
    | IntroducePair23
    | CancelPair23
    | ExchangeZeroToDot
    | ExchangeDotToZero
    | GluckTwist
    | Surger
)

MoveScript = tuple[Move, ...]


@dataclass(frozen=True)
class LogStep:
    move: Move
    pre_hash: str
    post_hash: str


MoveLog = tuple[LogStep, ...]


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise MoveError(f"sign must be +1 or -1, got {sign!r}")


def _get_handle(d: HandleDiagram, hid: str) -> TwoHandle:
    try:
        return d.handle(hid)
    except KeyError:
        raise MoveError(f"unknown handle {hid!r}") from None


def slide_two_handle(d: HandleDiagram, i: str, j: str, sign: int, band: FreeWord = FreeWord()) -> HandleDiagram:
    """Slide handle i over handle j along a band word u.

        w_i <- w_i * u * w_j^sign * u^-1
        f_i <- f_i + f_j + 2*sign*L_ij
        L_im <- L_im + sign*L_jm   (m not in {i, j})
        L_ij <- L_ij + sign*f_j

    Handle j and every other pair are untouched; the inverse slide with
    the same band and opposite sign restores the diagram exactly.
    """
    if i == j:
        raise MoveError("cannot slide a handle over itself")
    _check_sign(sign)
    hi = _get_handle(d, i)
    hj = _get_handle(d, j)
    stray = band.generators() - set(d.dots)
    if stray:
        raise MoveError(f"band uses undeclared generators {sorted(stray)}")
    new_word = hi.word * band * hj.word.power(sign) * band.inverse()
    lij = d.link(i, j)
    new_framing = hi.framing + hj.framing + 2 * sign * lij
    pairs = d.linking.as_dict()
    for m in d.handle_ids():
        if m in (i, j):
            continue
        pairs[_pair_key(i, m)] = d.link(i, m) + sign * d.link(j, m)
    pairs[_pair_key(i, j)] = lij + sign * hj.framing
    return replace(
        d,
        handles=tuple(TwoHandle(i, new_word, new_framing) if h.id == i else h for h in d.handles),
        linking=LinkingData.of(pairs),
    )


def slide_dot(d: HandleDiagram, a: str, b: str, sign: int) -> HandleDiagram:
    """Slide dot a over dot b: every word substitutes a -> a * b^(-sign).

    Framings and linking numbers are unchanged; the abelianized data
    transforms by the corresponding elementary operation.
    """
    if a == b:
        raise MoveError("cannot slide a dot over itself")
    _check_sign(sign)
    for g in (a, b):
        if not d.has_dot(g):
            raise MoveError(f"unknown generator {g!r}")

    def subst(w: FreeWord) -> FreeWord:
        out = []
        for g, s in w.letters:
            if g != a:
                out.append((g, s))
            elif s == 1:
                out.extend([(a, 1), (b, -sign)])
            else:
                out.extend([(b, sign), (a, -1)])
        return FreeWord.make(out)

    handles = tuple(TwoHandle(h.id, subst(h.word), h.framing) for h in d.handles)
    return replace(d, handles=handles)


def introduce_cancelling_pair(d: HandleDiagram, kind: int, g: str | None = None, h: str | None = None) -> HandleDiagram:
    """Introduce a cancelling 1-/2-handle pair (kind 12) or 2-/3-handle
    pair (kind 23) with fresh ids.

    Kind 12 adds dot g and a 0-framed handle h with word g and no
    linking; kind 23 adds a 0-framed trivial-word unlinked handle h and
    increments the 3-handle count.
    """
    if kind == 12:
        if g is None or h is None:
            raise MoveError("kind 12 needs a generator id and a handle id")
        if d.has_dot(g):
            raise MoveError(f"generator {g!r} already present")
        if d.has_handle(h):
            raise MoveError(f"handle {h!r} already present")
        return replace(
            d,
            dots=d.dots + (g,),
            handles=d.handles + (TwoHandle(h, FreeWord(((g, 1),)), 0),),
        )
    if kind == 23:
        if h is None or g is not None:
            raise MoveError("kind 23 needs exactly a handle id")
        if d.has_handle(h):
            raise MoveError(f"handle {h!r} already present")
        return replace(d, handles=d.handles + (TwoHandle(h, FreeWord(), 0),), n3=d.n3 + 1)
    raise MoveError(f"pair kind must be 12 or 23, got {kind!r}")


def cancel_pair_12(d: HandleDiagram, g: str, h: str) -> HandleDiagram:
    """Cancel a 1-/2-handle pair: the word of h must reduce to g^(+-1).

    Every other occurrence of g is removed by sliding its handle over h
    (sign and band chosen so the new conjugate freely cancels the last
    occurrence), inheriting all framing/linking bookkeeping from
    :func:`slide_two_handle`; then g and h are deleted.
    """
    hh = _get_handle(d, h)
    if not d.has_dot(g):
        raise MoveError(f"unknown generator {g!r}")
    if len(hh.word.letters) != 1 or hh.word.letters[0][0] != g:
        raise MoveError(f"word of {h} must be a single {g} letter")
    delta = hh.word.letters[0][1]

    cur = d
    for hid in (x.id for x in d.handles if x.id != h):
        while True:
            letters = cur.handle(hid).word.letters
            pos = next((p for p in range(len(letters) - 1, -1, -1) if letters[p][0] == g), None)
            if pos is None:
                break
            sigma = letters[pos][1]
            suffix = letters[pos + 1:]
            band = FreeWord(tuple((gg, -ss) for gg, ss in reversed(suffix)))
            cur = slide_two_handle(cur, hid, h, -sigma * delta, band)
    return replace(
        cur,
        dots=tuple(x for x in cur.dots if x != g),
        handles=tuple(x for x in cur.handles if x.id != h),
        linking=cur.linking.without(h),
    )


def cancel_pair_23(d: HandleDiagram, h: str) -> HandleDiagram:
    """Cancel a 2-/3-handle pair: h must be a 0-framed, trivial-word,
    completely unlinked handle, and a 3-handle must be available."""
    hh = _get_handle(d, h)
    if d.n3 < 1:
        raise MoveError("no 3-handle available to cancel")
    if not hh.word.is_trivial or hh.framing != 0:
        raise MoveError(f"handle {h} is not a 0-framed trivial-word handle")
    if any(d.link(h, m) != 0 for m in d.handle_ids()):
        raise MoveError(f"handle {h} has nonzero linking")
    return replace(
        d,
        handles=tuple(x for x in d.handles if x.id != h),
        linking=d.linking.without(h),
        n3=d.n3 - 1,
    )


def exchange_zero_to_dot(d: HandleDiagram, h: str, g: str) -> HandleDiagram:
    """Replace a 0-framed trivial-word handle h by a fresh dot g
    (surgery on the embedded sphere it describes).

    Every other handle m picks up g^(L_mh) at the end of its word; all
    framings and remaining linkings are unchanged.
    """
    hh = _get_handle(d, h)
    if not hh.word.is_trivial or hh.framing != 0:
        raise MoveError(f"handle {h} is not a 0-framed trivial-word handle")
    if d.has_dot(g):
        raise MoveError(f"generator {g!r} already present")
    handles = []
    for m in d.handles:
        if m.id == h:
            continue
        lk = d.link(m.id, h)
        if lk == 0:
            handles.append(m)
        else:
            s = 1 if lk > 0 else -1
            word = FreeWord(m.word.letters + ((g, s),) * abs(lk))
            handles.append(TwoHandle(m.id, word, m.framing))
    return replace(
        d,
        dots=d.dots + (g,),
        handles=tuple(handles),
        linking=d.linking.without(h),
    )


def exchange_dot_to_zero(d: HandleDiagram, g: str, h: str) -> HandleDiagram:
    """Replace dot g by a fresh 0-framed trivial-word handle h.

    The new handle links each m by the g-exponent of w_m, and every word
    drops its g letters (then reduces).  Inverse to
    :func:`exchange_zero_to_dot` up to the fresh-handle name.
    """
    if not d.has_dot(g):
        raise MoveError(f"unknown generator {g!r}")
    if d.has_handle(h):
        raise MoveError(f"handle {h!r} already present")
    pairs = d.linking.as_dict()
    handles = []
    for m in d.handles:
        e = m.word.exponent(g)
        if e:
            pairs[_pair_key(m.id, h)] = e
        word = FreeWord.make(tuple(l for l in m.word.letters if l[0] != g))
        handles.append(TwoHandle(m.id, word, m.framing))
    handles.append(TwoHandle(h, FreeWord(), 0))
    return replace(
        d,
        dots=tuple(x for x in d.dots if x != g),
        handles=tuple(handles),
        linking=LinkingData.of(pairs),
    )


def apply_move(d: HandleDiagram, move: Move) -> HandleDiagram:
    match move:
        case SlideHandle(i=i, j=j, sign=sign, band=band):
            return slide_two_handle(d, i, j, sign, band)
        case SlideDot(a=a, b=b, sign=sign):
            return slide_dot(d, a, b, sign)
        case IntroducePair12(g=g, h=h):
            return introduce_cancelling_pair(d, 12, g, h)
        case CancelPair12(g=g, h=h):
            return cancel_pair_12(d, g, h)
        case IntroducePair23(h=h):
            return introduce_cancelling_pair(d, 23, h=h)
        case CancelPair23(h=h):
            return cancel_pair_23(d, h)
        case ExchangeZeroToDot(h=h, g=g):
            return exchange_zero_to_dot(d, h, g)
        case ExchangeDotToZero(g=g, h=h):
            return exchange_dot_to_zero(d, g, h)
        case GluckTwist(sphere=s, sign=sign):
            from . import gluck

            return gluck.gluck_twist(d, s, sign)
        case Surger(sphere=s, dot=g):
            from . import gluck

            return gluck.surger_sphere(d, s, g)
    raise MoveError(f"unknown move {move!r}")


def apply_script(d: HandleDiagram, script: MoveScript) -> tuple[HandleDiagram, MoveLog]:
    """Apply moves in order; the log chains canonical hashes step by step.

    The first inapplicable move raises :class:`MoveError` carrying its
    step index.
    """
    cur = d
    log: list[LogStep] = []
    for t, move in enumerate(script):
        pre = canonical_hash(cur)
        try:
            nxt = apply_move(cur, move)
        except MoveError as e:
            raise MoveError(str(e), step=t) from None
        log.append(LogStep(move, pre, canonical_hash(nxt)))
        cur = nxt
    return cur, tuple(log)


def replay_log(d: HandleDiagram, log: MoveLog) -> bool:
    """Re-run a log from its starting diagram, re-checking every hash."""
    cur = d
    for step in log:
        if canonical_hash(cur) != step.pre_hash:
            return False
        try:
            cur = apply_move(cur, step.move)
        except MoveError:
            return False
        if canonical_hash(cur) != step.post_hash:
            return False
    return True


def format_move(move: Move) -> str:
    """Render a move in script syntax (inverse of script parsing)."""
    sgn = lambda s: "+" if s > 0 else "-"
    match move:
        case SlideHandle(i=i, j=j, sign=sign, band=band):
            return f"slide {i} over {j} sign {sgn(sign)} band {lang.format_word(band)}"
        case SlideDot(a=a, b=b, sign=sign):
            return f"slidedot {a} over {b} sign {sgn(sign)}"
        case IntroducePair12(g=g, h=h):
            return f"intro12 {g} {h}"
        case CancelPair12(g=g, h=h):
            return f"cancel12 {g} {h}"
        case IntroducePair23(h=h):
            return f"intro23 {h}"
        case CancelPair23(h=h):
            return f"cancel23 {h}"
        case ExchangeZeroToDot(h=h, g=g):
            return f"zerotodot {h} {g}"
        case ExchangeDotToZero(g=g, h=h):
            return f"dottozero {g} {h}"
        case GluckTwist(sphere=s, sign=sign):
            return f"gluck {s} sign {sgn(sign)}"
        case Surger(sphere=s, dot=g):
            return f"surger {s} {g}"
    raise ValueError(f"unknown move {move!r}")


def format_script(script: MoveScript) -> str:
    return "".join(format_move(m) + "\n" for m in script)
