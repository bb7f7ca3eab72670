"""Acceptance suite: one test per shipped guarantee, each printing a
single ACCEPTANCE pass/fail line (to the real stdout, so it survives
pytest capture) and enforcing its stated time budget.
"""

from __future__ import annotations

import random
import sys
import time
from contextlib import contextmanager

from kirbycalc import (
    IntMatrix,
    apply_script,
    canonical_form,
    cancel_pair_12,
    congruence_diagonalize,
    exchange_dot_to_zero,
    exchange_zero_to_dot,
    full_gram,
    gluck_twist,
    intersection_form,
    invariant_summary,
    parse_diagram,
    replay_log,
    represent_spherical_class,
    serialize_diagram,
    slide_two_handle,
    smith_normal_form,
    surger_sphere,
    trivialize_gluck,
)
from kirbycalc.cli import run
from kirbycalc.golden import EMPTY, ODD_SPLIT, S2XS2, TRIVIALIZE_CORPUS, TWIST_MERIDIAN, e8_gram
import kirbycalc.golden as golden_texts

from corpus import random_certificate, random_diagram, random_identity_moves, random_word, with_sphere
from oracles import naive_smith_diagonal
from test_lang import MALFORMED_DIAGRAMS, MALFORMED_SCRIPTS, _span_in_bounds


REPORT: list[str] = []


def _report(line: str) -> None:
    REPORT.append(line)
    print(line, file=sys.stdout, flush=True)


@contextmanager
def criterion(num: int, name: str, limit: float | None = None):
    t0 = time.perf_counter()
    try:
        yield
    except BaseException:
        _report(f"ACCEPTANCE {num:02d} {name}: FAIL")
        raise
    dt = time.perf_counter() - t0
    _report(f"ACCEPTANCE {num:02d} {name}: PASS ({dt:.2f}s)")
    if limit is not None:
        assert dt < limit, f"{name} took {dt:.2f}s, limit {limit}s"


def test_criterion_01_twist_flips_parity():
    with criterion(1, "twist-flips-parity", limit=1.0):
        d = parse_diagram(S2XS2)
        before = intersection_form(d)
        assert (before.form_rank, before.signature, before.parity, before.gram_torsion) == (
            2, 0, "even", (1, 1),
        )
        for sphere in ("S", "K"):
            after = intersection_form(gluck_twist(d, sphere, 1))
            assert (after.form_rank, after.signature, after.parity, after.gram_torsion) == (
                2, 0, "odd", (1, 1),
            )


def test_criterion_02_surgery_cancels_to_empty():
    with criterion(2, "surgery-cancels-to-empty", limit=1.0):
        d = parse_diagram(S2XS2)
        out = cancel_pair_12(surger_sphere(d, "S", "g"), "g", "K")
        assert canonical_form(out) == canonical_form(parse_diagram(EMPTY))


def test_criterion_03_moves_preserve_summary():
    with criterion(3, "moves-preserve-summary", limit=60.0):
        rng = random.Random(101)
        for _ in range(1000):
            d = random_diagram(rng)
            before = invariant_summary(d)
            _, end = random_identity_moves(rng, d, rng.randint(0, 15))
            assert invariant_summary(end) == before


def test_criterion_04_slide_inverse_and_exchange_round_trip():
    with criterion(4, "slide-inverse-and-exchange-round-trip"):
        rng = random.Random(103)
        slides = trips = 0
        while slides < 1000 or trips < 1000:
            d = random_diagram(rng)
            if len(d.handles) >= 2 and slides < 1000:
                i, j = rng.sample(d.handle_ids(), 2)
                sign = rng.choice((1, -1))
                band = random_word(rng, d.dots, 3)
                assert slide_two_handle(slide_two_handle(d, i, j, sign, band), i, j, -sign, band) == d
                slides += 1
            if trips < 1000:
                ds = with_sphere(rng, d)
                back = exchange_dot_to_zero(exchange_zero_to_dot(ds, "S", "zz"), "zz", "zzh")
                assert canonical_form(back) == canonical_form(ds)
                trips += 1


def test_criterion_05_certificates_hit_quadratic_form():
    with criterion(5, "certificates-hit-quadratic-form"):
        rng = random.Random(107)
        done = 0
        while done < 200:
            d = random_diagram(rng, force_trivial_words=2)
            if not d.handles:
                continue
            cert = random_certificate(rng, d)
            out, h = represent_spherical_class(d, cert)
            ids = d.handle_ids()
            c = cert.coefficients(d)
            col = IntMatrix(len(ids), 1, tuple((c[i],) for i in ids))
            assert out.handle(h).framing == (col.transpose() @ full_gram(d) @ col)[0, 0]
            done += 1


def test_criterion_06_double_twist_preserves_form():
    with criterion(6, "double-twist-preserves-form"):
        rng = random.Random(109)
        for _ in range(500):
            d = with_sphere(rng, random_diagram(rng))
            twice = gluck_twist(gluck_twist(d, "S", 1), "S", 1)
            assert intersection_form(twice) == intersection_form(d)


def test_criterion_07_smith_form_matches_oracle():
    with criterion(7, "smith-form-matches-oracle"):
        rng = random.Random(113)
        for _ in range(500):
            nr, nc = rng.randint(0, 6), rng.randint(0, 6)
            rows = [[rng.randint(-4, 4) for _ in range(nc)] for _ in range(nr)]
            m = IntMatrix(nr, nc, tuple(tuple(r) for r in rows))
            D, U, V = smith_normal_form(m)
            assert (U @ m @ V).entries == D.entries
            assert abs(U.det()) == 1 and abs(V.det()) == 1
            assert [D[i, i] for i in range(min(nr, nc))] == naive_smith_diagonal(rows)


def test_criterion_08_signature_spot_checks():
    with criterion(8, "signature-spot-checks"):
        def sig(rows):
            diag, _ = congruence_diagonalize(rows)
            return sum(1 if x > 0 else -1 for x in diag if x)

        assert sig([[1, 0, 0], [0, -1, 0], [0, 0, 2]]) == 1
        assert sig([[0, 1], [1, 0]]) == 0
        assert sig(e8_gram()) == 8


def test_criterion_09_trivialization_corpus():
    for name, text, sphere, k in TRIVIALIZE_CORPUS:
        with criterion(9, f"trivialize-{name}", limit=30.0):
            d = parse_diagram(text)
            v = trivialize_gluck(d, sphere, k, budget=10_000)
            assert v.certified
            end, _ = apply_script(d, v.script)
            assert canonical_form(end) == canonical_form(d)
            assert replay_log(d, v.log)


def test_criterion_10_parser_and_exit_codes(tmp_path):
    with criterion(10, "parser-and-exit-codes"):
        from kirbycalc import ParseError

        corpus = [
            getattr(golden_texts, n)
            for n in ("S2XS2", "EMPTY", "ODD_SPLIT", "HOPF", "CERT_DEMO",
                      "TWIST_SPLIT", "TWIST_MERIDIAN", "TWIST_BYSTANDER",
                      "TWIST_TWO_MERIDIANS")
        ]
        rng = random.Random(127)
        corpus += [serialize_diagram(random_diagram(rng)) for _ in range(500)]
        for text in corpus:
            d = parse_diagram(text)
            again = serialize_diagram(d)
            assert parse_diagram(again) == d
            assert serialize_diagram(parse_diagram(again)) == again

        from kirbycalc.lang import parse_script as ps
        for text in MALFORMED_DIAGRAMS:
            try:
                parse_diagram(text)
                assert False, f"parsed malformed fixture {text!r}"
            except ParseError as e:
                assert _span_in_bounds(text, e)
        for text in MALFORMED_SCRIPTS:
            try:
                ps(text)
                assert False, f"parsed malformed script {text!r}"
            except ParseError as e:
                assert _span_in_bounds(text, e)

        good = tmp_path / "good.kd"
        good.write_text(S2XS2)
        odd = tmp_path / "odd.kd"
        odd.write_text(ODD_SPLIT)
        bad = tmp_path / "bad.kd"
        bad.write_text("handle h word ghost framing 0\n")
        badmoves = tmp_path / "bad.ks"
        badmoves.write_text("cancel12 g K\n")
        assert run(["invariants", str(good)], *_sinks()) == 0
        assert run(["check", str(odd), "--sphere", "S"], *_sinks()) == 0
        assert run(["check", str(good), "--sphere", "S"], *_sinks()) == 1
        assert run(["invariants", str(bad)], *_sinks()) == 2
        assert run(["invariants", str(tmp_path / "missing.kd")], *_sinks()) == 2
        assert run(["nonsense"], *_sinks()) == 2
        assert run(["apply", str(good), str(badmoves)], *_sinks()) == 3


def _sinks():
    import io

    return io.StringIO(), io.StringIO()
