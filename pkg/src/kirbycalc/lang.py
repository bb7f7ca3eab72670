"""Line-oriented textual formats: diagram files, move scripts, and
class certificates, with precise source spans on every parse error.

The diagram grammar (one directive per line, `#` starts a comment):

    diagram <name>
    dots <id> ...
    handle <id> word <word-expr> framing <int>
    link <id> <id> = <int>
    threehandles <int>
    fourhandles <0|1>

A word-expr is `1` (the empty word) or juxtaposed atoms `a`, `a^-1`,
`a^3`.  Line order is free; duplicate declarations are errors.
Serialization is deterministic and `parse(serialize(d)) == d` exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .diagram import FreeWord, HandleDiagram, Letter, LinkingData, TwoHandle, validate

_ID_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_ATOM_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?\Z")
_INT_RE = re.compile(r"[+-]?\d+\Z")


@dataclass(frozen=True)
class SourceSpan:
    """1-based line/column location of a token, with its length."""

    line: int
    column: int
    length: int


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan, expected: tuple[str, ...] = ()):
        super().__init__(message)
        self.message = message
        self.span = span
        self.expected = expected


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int

    @property
    def span(self) -> SourceSpan:
        return SourceSpan(self.line, self.column, len(self.text))


def _tokenize(text: str) -> list[list[_Token]]:
    lines = []
    for ln, raw in enumerate(text.split("\n"), start=1):
        body = raw.split("#", 1)[0]
        toks = [_Token(m.group(), ln, m.start() + 1) for m in re.finditer(r"\S+", body)]
        if toks:
            lines.append(toks)
    return lines


class _Line:
    """Cursor over one line of tokens."""

    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def _end_span(self) -> SourceSpan:
        last = self.tokens[-1]
        return SourceSpan(last.line, last.column + len(last.text), 1)

    def take(self, what: str, *expected: str) -> _Token:
        if self.pos >= len(self.tokens):
            raise ParseError(f"missing {what}", self._end_span(), expected)
        tok = self.tokens[self.pos]
        self.pos += 1
        if expected and tok.text not in expected:
            raise ParseError(f"expected {what}, got {tok.text!r}", tok.span, expected)
        return tok

    def take_id(self, what: str) -> _Token:
        tok = self.take(what)
        if not _ID_RE.match(tok.text):
            raise ParseError(f"malformed {what} {tok.text!r}", tok.span, ("identifier",))
        return tok

    def take_int(self, what: str) -> tuple[int, _Token]:
        tok = self.take(what)
        if not _INT_RE.match(tok.text):
            raise ParseError(f"malformed {what} {tok.text!r}", tok.span, ("integer",))
        return int(tok.text), tok

    def take_sign(self) -> int:
        tok = self.take("sign", "+", "-")
        return 1 if tok.text == "+" else -1

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def rest(self) -> list[_Token]:
        out = self.tokens[self.pos:]
        self.pos = len(self.tokens)
        return out

    def finish(self) -> None:
        if self.pos < len(self.tokens):
            tok = self.tokens[self.pos]
            raise ParseError(f"unexpected trailing token {tok.text!r}", tok.span)


def _word_atoms(tokens: list[_Token], what: str, end_span: SourceSpan) -> list[tuple[_Token, list[Letter]]]:
    """Expand word-expr tokens into letters, keeping each atom's token."""
    if not tokens:
        raise ParseError(f"missing {what}", end_span, ("word",))
    if len(tokens) == 1 and tokens[0].text == "1":
        return []
    out = []
    for tok in tokens:
        if tok.text == "1":
            raise ParseError("empty-word marker 1 must stand alone", tok.span)
        m = _ATOM_RE.match(tok.text)
        if not m:
            raise ParseError(f"malformed word atom {tok.text!r}", tok.span, ("atom",))
        gen, exp = m.group(1), int(m.group(2)) if m.group(2) is not None else 1
        if exp == 0:
            raise ParseError("zero exponent in word atom", tok.span)
        sign = 1 if exp > 0 else -1
        out.append((tok, [(gen, sign)] * abs(exp)))
    return out


def parse_word(tokens: list[_Token], what: str, end_span: SourceSpan) -> FreeWord:
    letters: list[Letter] = []
    for _tok, ls in _word_atoms(tokens, what, end_span):
        letters.extend(ls)
    return FreeWord.make(letters)


def parse_diagram(text: str) -> HandleDiagram:
    """Parse diagram text; raises :class:`ParseError` with a source span."""
    lines = _tokenize(text)
    dots: list[str] = []
    dot_spans: dict[str, SourceSpan] = {}
    handles: list[tuple[_Token, list[tuple[_Token, list[Letter]]], int]] = []
    handle_ids: dict[str, _Token] = {}
    links: list[tuple[_Token, _Token, int]] = []
    header = None
    n3 = n4 = None

    for toks in lines:
        line = _Line(toks)
        kw = line.take("directive")
        if kw.text == "diagram":
            name = line.take_id("diagram name")
            if header is not None:
                raise ParseError("duplicate diagram header", name.span)
            header = name.text
            line.finish()
        elif kw.text == "dots":
            first = line.peek()
            if first is None:
                raise ParseError("missing generator ids", line._end_span(), ("identifier",))
            while line.peek() is not None:
                tok = line.take_id("generator id")
                if tok.text in dot_spans:
                    raise ParseError(f"duplicate generator {tok.text}", tok.span)
                dot_spans[tok.text] = tok.span
                dots.append(tok.text)
        elif kw.text == "handle":
            hid = line.take_id("handle id")
            if hid.text in handle_ids:
                raise ParseError(f"duplicate handle {hid.text}", hid.span)
            line.take("word keyword", "word")
            word_toks = []
            while line.peek() is not None and line.peek().text != "framing":
                word_toks.append(line.take("word atom"))
            atoms = _word_atoms(word_toks, "word expression", line._end_span())
            line.take("framing keyword", "framing")
            framing, _ = line.take_int("framing")
            line.finish()
            handle_ids[hid.text] = hid
            handles.append((hid, atoms, framing))
        elif kw.text == "link":
            a = line.take_id("handle id")
            b = line.take_id("handle id")
            line.take("'='", "=")
            v, _ = line.take_int("linking number")
            line.finish()
            if a.text == b.text:
                raise ParseError(f"self-linking entry for {a.text}", b.span)
            links.append((a, b, v))
        elif kw.text == "threehandles":
            if n3 is not None:
                raise ParseError("duplicate threehandles line", kw.span)
            n3, tok = line.take_int("3-handle count")
            if n3 < 0:
                raise ParseError("3-handle count must be nonnegative", tok.span)
            line.finish()
        elif kw.text == "fourhandles":
            if n4 is not None:
                raise ParseError("duplicate fourhandles line", kw.span)
            n4, tok = line.take_int("4-handle count")
            if n4 not in (0, 1):
                raise ParseError("4-handle count must be 0 or 1", tok.span)
            line.finish()
        else:
            raise ParseError(
                f"unknown directive {kw.text!r}",
                kw.span,
                ("diagram", "dots", "handle", "link", "threehandles", "fourhandles"),
            )

    dot_set = set(dots)
    built: list[TwoHandle] = []
    for hid, atoms, framing in handles:
        letters: list[Letter] = []
        for tok, ls in atoms:
            if ls[0][0] not in dot_set:
                raise ParseError(f"unknown generator {ls[0][0]!r} in word", tok.span)
            letters.extend(ls)
        built.append(TwoHandle(hid.text, FreeWord.make(letters), framing))

    pairs: dict[tuple[str, str], int] = {}
    for a, b, v in links:
        for tok in (a, b):
            if tok.text not in handle_ids:
                raise ParseError(f"link references unknown handle {tok.text!r}", tok.span)
        key = (a.text, b.text) if a.text <= b.text else (b.text, a.text)
        if key in pairs:
            raise ParseError(f"duplicate link entry for {a.text},{b.text}", a.span)
        pairs[key] = v

    return HandleDiagram(
        dots=tuple(dots),
        handles=tuple(built),
        linking=LinkingData.of(pairs),
        n3=n3 or 0,
        n4=n4 or 0,
    )


def format_word(w: FreeWord) -> str:
    """Render a reduced word; runs of one generator collapse to powers."""
    if not w.letters:
        return "1"
    parts = []
    i = 0
    letters = w.letters
    while i < len(letters):
        g, s = letters[i]
        j = i
        while j < len(letters) and letters[j] == (g, s):
            j += 1
        e = s * (j - i)
        parts.append(g if e == 1 else f"{g}^{e}")
        i = j
    return " ".join(parts)


def serialize_diagram(d: HandleDiagram) -> str:
    """Deterministic text for a valid diagram.

    Dots and handles are written in diagram order, link lines sorted by
    handle position, counts omitted when zero; one pass is idempotent and
    round-trips exactly through :func:`parse_diagram`.
    """
    problems = validate(d)
    if problems:
        raise ValueError("cannot serialize invalid diagram: " + "; ".join(problems))
    lines = ["diagram X"]
    if d.dots:
        lines.append("dots " + " ".join(d.dots))
    for h in d.handles:
        lines.append(f"handle {h.id} word {format_word(h.word)} framing {h.framing}")
    index = {h.id: k for k, h in enumerate(d.handles)}
    ordered = []
    for (a, b), v in d.linking.as_dict().items():
        i, j = sorted((a, b), key=index.__getitem__)
        ordered.append((index[i], index[j], i, j, v))
    for _, _, i, j, v in sorted(ordered):
        lines.append(f"link {i} {j} = {v}")
    if d.n3:
        lines.append(f"threehandles {d.n3}")
    if d.n4:
        lines.append(f"fourhandles {d.n4}")
    return "\n".join(lines) + "\n"


def parse_script(text: str):
    """Parse a move script (one move per line) into a move tuple.

    Handle/generator ids are resolved when the script is applied to a
    diagram, not at parse time.
    """
    from . import moves as m

    out = []
    for toks in _tokenize(text):
        line = _Line(toks)
        kw = line.take("move keyword")
        if kw.text == "slide":
            i = line.take_id("handle id").text
            line.take("'over'", "over")
            j = line.take_id("handle id").text
            line.take("'sign'", "sign")
            sign = line.take_sign()
            line.take("'band'", "band")
            band = parse_word(line.rest(), "band word", line._end_span())
            out.append(m.SlideHandle(i, j, sign, band))
        elif kw.text == "slidedot":
            a = line.take_id("generator id").text
            line.take("'over'", "over")
            b = line.take_id("generator id").text
            line.take("'sign'", "sign")
            sign = line.take_sign()
            line.finish()
            out.append(m.SlideDot(a, b, sign))
        elif kw.text == "intro12":
            g = line.take_id("generator id").text
            h = line.take_id("handle id").text
            line.finish()
            out.append(m.IntroducePair12(g, h))
        elif kw.text == "cancel12":
            g = line.take_id("generator id").text
            h = line.take_id("handle id").text
            line.finish()
            out.append(m.CancelPair12(g, h))
        elif kw.text == "intro23":
            h = line.take_id("handle id").text
            line.finish()
            out.append(m.IntroducePair23(h))
        elif kw.text == "cancel23":
            h = line.take_id("handle id").text
            line.finish()
            out.append(m.CancelPair23(h))
        elif kw.text == "zerotodot":
            h = line.take_id("handle id").text
            g = line.take_id("generator id").text
            line.finish()
            out.append(m.ExchangeZeroToDot(h, g))
        elif kw.text == "dottozero":
            g = line.take_id("generator id").text
            h = line.take_id("handle id").text
            line.finish()
            out.append(m.ExchangeDotToZero(g, h))
        elif kw.text == "gluck":
            s = line.take_id("handle id").text
            line.take("'sign'", "sign")
            sign = line.take_sign()
            line.finish()
            out.append(m.GluckTwist(s, sign))
        elif kw.text == "surger":
            s = line.take_id("handle id").text
            g = line.take_id("generator id").text
            line.finish()
            out.append(m.Surger(s, g))
        else:
            raise ParseError(
                f"unknown move {kw.text!r}",
                kw.span,
                ("slide", "slidedot", "intro12", "cancel12", "intro23",
                 "cancel23", "zerotodot", "dottozero", "gluck", "surger"),
            )
    return tuple(out)


def parse_certificate(text: str):
    """Parse certificate lines `term <handle> sign <+|-> conj <word-expr>`."""
    from .gluck import CertTerm, SphericalClassCertificate

    terms = []
    for toks in _tokenize(text):
        line = _Line(toks)
        kw = line.take("term keyword", "term")
        hid = line.take_id("handle id").text
        line.take("'sign'", "sign")
        sign = line.take_sign()
        line.take("'conj'", "conj")
        conj = parse_word(line.rest(), "conjugator word", line._end_span())
        terms.append(CertTerm(hid, sign, conj))
    return SphericalClassCertificate(tuple(terms))
