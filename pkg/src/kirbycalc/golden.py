"""Embedded golden corpus: small diagrams with hand-computed outcomes.

`run_all` re-derives every expected value through the public API and is
wired to the `selftest` CLI subcommand, so a built installation can
prove its own arithmetic.  Expected values were computed by hand from
the move/twist formulas before the code existed; they are frozen here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from . import gluck, moves
from .canonical import canonical_form
from .diagram import FreeWord
from .gluck import CertTerm, SphericalClassCertificate
from .invariants import congruence_diagonalize, invariant_summary
from .lang import parse_diagram, parse_script

S2XS2 = """\
diagram s2xs2
handle S word 1 framing 0
handle K word 1 framing 0
link S K = 1
"""

EMPTY = "diagram empty\n"

ODD_SPLIT = """\
diagram odd_split
handle S word 1 framing 0
handle K word 1 framing 0
handle E word 1 framing 3
link S K = 1
"""

HOPF = """\
diagram hopf
handle A word 1 framing 0
handle B word 1 framing 0
link A B = 1
"""

CERT_DEMO = """\
diagram cert_demo
dots a
handle S word 1 framing 0
handle A word a framing 1
handle B word a framing 0
"""

TWIST_SPLIT = """\
diagram twist_split
handle S word 1 framing 0
handle K word 1 framing 1
handle C word 1 framing 0
link C K = 1
"""

TWIST_MERIDIAN = """\
diagram twist_meridian
handle S word 1 framing 0
handle K word 1 framing 3
handle C word 1 framing 0
link S K = 2
link C K = 1
"""

TWIST_BYSTANDER = """\
diagram twist_bystander
dots a
handle S word 1 framing 0
handle K word 1 framing 1
handle C word 1 framing 0
handle B word a framing 2
link S K = 2
link C K = 1
"""

TWIST_TWO_MERIDIANS = """\
diagram twist_two_meridians
handle S word 1 framing 0
handle K word 1 framing 1
handle L word 1 framing 3
handle C word 1 framing 0
handle D word 1 framing 0
link S K = 2
link S L = 2
link C K = 1
link D L = 1
"""

TRIVIALIZE_CORPUS: tuple[tuple[str, str, str, str], ...] = (
    # (name, diagram text, sphere id, designated odd handle id)
    ("split", TWIST_SPLIT, "S", "K"),
    ("meridian", TWIST_MERIDIAN, "S", "K"),
    ("bystander", TWIST_BYSTANDER, "S", "K"),
    ("two-meridians", TWIST_TWO_MERIDIANS, "S", "K"),
)

E8_EDGES = ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8))


def e8_gram() -> list[list[int]]:
    """The rank-8 even unimodular Gram matrix: 2s on the diagonal, -1
    for each edge of the E8 tree."""
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = 2
    for a, b in E8_EDGES:
        g[a - 1][b - 1] = -1
        g[b - 1][a - 1] = -1
    return g


def _summary_tuple(text: str):
    s = invariant_summary(parse_diagram(text))
    return (s.h1_invariant_factors, s.h2_rank, s.form_rank, s.signature, s.parity, s.gram_torsion)


def _check_empty_invariants() -> tuple[bool, str]:
    got = _summary_tuple(EMPTY)
    want = ((), 0, 0, 0, "even", ())
    return got == want, f"got {got}"


def _check_even_form() -> tuple[bool, str]:
    got = _summary_tuple(S2XS2)
    want = ((), 2, 2, 0, "even", (1, 1))
    return got == want, f"got {got}"


def _check_twist_makes_odd() -> tuple[bool, str]:
    d = parse_diagram(S2XS2)
    details = []
    ok = True
    for sphere in ("S", "K"):
        s = invariant_summary(gluck.gluck_twist(d, sphere, 1))
        got = (s.h2_rank, s.form_rank, s.signature, s.parity, s.gram_torsion)
        ok = ok and got == (2, 2, 0, "odd", (1, 1))
        details.append(f"along {sphere}: parity {s.parity}")
    return ok, "; ".join(details)


def _check_twist_inverse() -> tuple[bool, str]:
    d = parse_diagram(TWIST_MERIDIAN)
    back = gluck.gluck_twist(gluck.gluck_twist(d, "S", 1), "S", -1)
    return back == d, "twist then untwist" + ("" if back == d else " differs")


def _check_surger_cancels() -> tuple[bool, str]:
    d = parse_diagram(S2XS2)
    surgered = gluck.surger_sphere(d, "S", "g")
    out = moves.cancel_pair_12(surgered, "g", "K")
    ok = canonical_form(out) == canonical_form(parse_diagram(EMPTY))
    return ok, f"{len(out.handles)} handles, {len(out.dots)} dots left"


def _check_exchange_round_trip() -> tuple[bool, str]:
    d = parse_diagram(S2XS2)
    there = moves.exchange_zero_to_dot(d, "S", "g")
    back = moves.exchange_dot_to_zero(there, "g", "S2")
    ok = canonical_form(back) == canonical_form(d)
    return ok, "round trip" + ("" if ok else " differs")


def _check_slide_bookkeeping() -> tuple[bool, str]:
    d = parse_diagram(HOPF)
    out = moves.slide_two_handle(d, "A", "B", 1)
    got = (out.handle("A").framing, out.handle("B").framing, out.link("A", "B"))
    return got == (2, 0, 1), f"framings/link {got}"


def _check_represent_class() -> tuple[bool, str]:
    d = parse_diagram(S2XS2)
    cert = SphericalClassCertificate((CertTerm("S", 1), CertTerm("K", 1)))
    out, h = gluck.represent_spherical_class(d, cert)
    got = out.handle(h).framing
    return got == 2, f"built handle framing {got}"


def _check_checker_unknown() -> tuple[bool, str]:
    v = gluck.check_gluck_triviality_hypothesis(parse_diagram(S2XS2), "S")
    return not v.certified, f"certified={v.certified}"


def _check_checker_odd_handle() -> tuple[bool, str]:
    v = gluck.check_gluck_triviality_hypothesis(parse_diagram(ODD_SPLIT), "S")
    ok = v.certified and v.witness == "handle E"
    return ok, f"witness {v.witness!r}"


def _check_checker_certificate() -> tuple[bool, str]:
    cert = SphericalClassCertificate((CertTerm("A", 1), CertTerm("B", -1)))
    v = gluck.check_gluck_triviality_hypothesis(parse_diagram(CERT_DEMO), "S", cert)
    ok = v.certified and v.witness == "certificate"
    return ok, f"witness {v.witness!r}"


def _check_trivialize(text: str, sphere: str, k: str) -> tuple[bool, str]:
    d = parse_diagram(text)
    v = gluck.trivialize_gluck(d, sphere, k)
    if not v.certified:
        return False, "verdict unknown"
    end, _ = moves.apply_script(d, v.script)
    ok = canonical_form(end) == canonical_form(d) and moves.replay_log(d, v.log)
    return ok, f"script of {len(v.script)} moves replays"


def _check_meridian_slide_script() -> tuple[bool, str]:
    d = gluck.gluck_twist(parse_diagram(TWIST_MERIDIAN), "S", 1)
    script = parse_script("slide K over C sign - band 1\nslide K over C sign - band 1\n")
    out, _ = moves.apply_script(d, script)
    ok = canonical_form(out) == canonical_form(parse_diagram(TWIST_MERIDIAN))
    return ok, f"framing of K: {d.handle('K').framing} -> {out.handle('K').framing}"


def _check_e8_signature() -> tuple[bool, str]:
    diag, _ = congruence_diagonalize(e8_gram())
    sig = sum(1 if x > 0 else -1 if x < 0 else 0 for x in diag)
    det = Fraction(1)
    for x in diag:
        det *= x
    return sig == 8 and det == 1, f"signature {sig}, det {det}"


def run_all() -> list[tuple[str, bool, str]]:
    """Run every golden check; returns (name, passed, detail) triples."""
    checks: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
        ("empty-invariants", _check_empty_invariants),
        ("even-form", _check_even_form),
        ("twist-makes-odd", _check_twist_makes_odd),
        ("twist-inverse", _check_twist_inverse),
        ("surger-cancels", _check_surger_cancels),
        ("exchange-round-trip", _check_exchange_round_trip),
        ("slide-bookkeeping", _check_slide_bookkeeping),
        ("represent-class", _check_represent_class),
        ("checker-unknown", _check_checker_unknown),
        ("checker-odd-handle", _check_checker_odd_handle),
        ("checker-certificate", _check_checker_certificate),
        ("meridian-slide-script", _check_meridian_slide_script),
        ("e8-signature", _check_e8_signature),
    ]
    checks.extend(
        (f"trivialize-{name}", lambda t=text, s=sphere, kk=k: _check_trivialize(t, s, kk))
        for name, text, sphere, k in TRIVIALIZE_CORPUS
    )
    results = []
    for name, fn in checks:
        try:
            ok, detail = fn()
        except Exception as e:  # a crash is a failure, not a hard stop
            ok, detail = False, f"{type(e).__name__}: {e}"
        results.append((name, ok, detail))
    return results
