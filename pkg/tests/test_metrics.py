from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lyrics_eval import (
    EditCounts,
    PRF,
    TokenType,
    aggregate,
    align,
    case_error_rate,
    evaluate_pair,
    normalize,
    prf,
    tokenize,
    word_error_rate,
    words_only,
)

W = TokenType.WORD
P = TokenType.PUNCTUATION
B = TokenType.PARENTHESIS
L = TokenType.LINE_BREAK
S = TokenType.SECTION_BREAK


def word_seq(text: str):
    return words_only(tokenize(normalize(text)))


# --- word_error_rate ---------------------------------------------------------

def test_wer_counts_and_rate():
    result = word_error_rate(word_seq("a b c"), word_seq("a x c d"))
    assert (result.substitutions, result.insertions, result.deletions, result.hits) == (1, 1, 0, 2)
    assert result.reference_words == 3
    assert result.wer == pytest.approx(2 / 3)


def test_wer_identity_is_zero():
    assert word_error_rate(word_seq("la la la"), word_seq("la la la")).wer == 0.0


def test_wer_is_case_insensitive():
    assert word_error_rate(word_seq("Hello world"), word_seq("hello world")).wer == 0.0


def test_wer_empty_reference_empty_hypothesis():
    assert word_error_rate(word_seq(""), word_seq("")).wer == 0.0


def test_wer_empty_reference_nonempty_hypothesis_is_undefined():
    result = word_error_rate(word_seq(""), word_seq("a b"))
    assert result.wer is None
    assert result.insertions == 2


# --- case_error_rate ----------------------------------------------------------

def test_case_errors_among_hits():
    ref = word_seq("Hello world Oh yeah Bye")
    hyp = word_seq("hello world oh yeah Bye")
    script = align(ref, hyp)
    result = case_error_rate(script, ref, hyp)
    assert result.case_errors == 2
    assert result.reference_words == 5
    assert result.rate == pytest.approx(0.4)


def test_case_identical_texts():
    ref = word_seq("Ho Ho Ho")
    script = align(ref, ref)
    assert case_error_rate(script, ref, ref).rate == 0.0


def test_no_hits_means_no_case_errors():
    ref = word_seq("A B")
    hyp = word_seq("x y")
    script = align(ref, hyp)
    result = case_error_rate(script, ref, hyp)
    assert result.case_errors == 0
    assert result.rate == 0.0
    assert word_error_rate(ref, hyp).wer == 1.0


# --- prf -----------------------------------------------------------------------

def _counts(**kwargs) -> EditCounts:
    counts = EditCounts()
    for name, pairs in kwargs.items():
        for token_type, value in pairs.items():
            getattr(counts, name)[token_type] = value
    return counts


def test_prf_line_break_example():
    counts = _counts(hits={L: 1}, insertions={L: 1})
    result = prf(counts, L)
    assert result.precision == 0.5
    assert result.recall == 1.0
    assert result.f1 == pytest.approx(2 / 3)


def test_prf_undefined_precision_zero_recall():
    counts = _counts(deletions={P: 1})
    result = prf(counts, P)
    assert result.precision is None
    assert result.recall == 0.0
    assert result.f1 is None


def test_prf_perfect():
    counts = _counts(hits={W: 7})
    assert prf(counts, W) == PRF(1.0, 1.0, 1.0)


def test_prf_zero_precision_and_recall_leaves_f1_undefined():
    counts = _counts(substitutions={P: 2})
    result = prf(counts, P)
    assert result.precision == 0.0
    assert result.recall == 0.0
    assert result.f1 is None


def test_prf_zero_hits_with_tokens_on_both_sides():
    counts = _counts(substitutions={L: 1}, insertions={L: 1})
    result = prf(counts, L)
    assert result.precision == 0.0
    assert result.recall == 0.0
    assert result.f1 is None


# --- evaluate_pair ---------------------------------------------------------------

REF_TEXT = "Hello, world\n(Oh yeah)\n\nBye"
HYP_TEXT = "hello world\noh yeah\nBye"


def test_evaluate_pair_worked_example():
    report = evaluate_pair(REF_TEXT, HYP_TEXT, "en", "demo")
    assert report.words.wer == 0.0
    assert report.case.rate == pytest.approx(0.4)
    assert report.token_metrics[L].f1 == pytest.approx(2 / 3)
    assert report.token_metrics[P].recall == 0.0
    assert report.token_metrics[B].recall == 0.0
    assert report.token_metrics[S].recall == 0.0
    assert report.token_metrics[P].precision is None
    assert report.token_metrics[P].f1 is None


def test_evaluate_pair_identity():
    report = evaluate_pair(REF_TEXT, REF_TEXT, "en")
    assert report.words.wer == 0.0
    assert report.case.rate == 0.0
    for token_type in TokenType:
        f1 = report.token_metrics[token_type].f1
        assert f1 is None or f1 == 1.0


def test_evaluate_pair_empty_hypothesis():
    report = evaluate_pair(REF_TEXT, "", "en")
    assert report.words.wer == 1.0
    assert report.words.deletions == report.words.reference_words
    for token_type in TokenType:
        recall = report.token_metrics[token_type].recall
        assert recall is None or recall == 0.0


# --- aggregate --------------------------------------------------------------------

def test_aggregate_pools_raw_counts():
    # (substitutions+deletions+insertions, reference words) = (1, 4) and (3, 6).
    first = evaluate_pair("a b c d", "a b c x", "en", "one")
    second = evaluate_pair("a b c d e f", "a b c x y z", "en", "two")
    assert first.words.wer == pytest.approx(1 / 4)
    assert second.words.wer == pytest.approx(3 / 6)
    report = aggregate([first, second])
    assert report.rows[0].label == "All"
    assert report.rows[0].wer == pytest.approx(4 / 10)


def test_aggregate_single_song_is_identity():
    song = evaluate_pair(REF_TEXT, HYP_TEXT, "en", "demo")
    report = aggregate([song])
    for row in report.rows:
        assert row.num_songs == 1
        assert row.wer == song.words.wer
        assert row.case_error_rate == song.case.rate
        for token_type in TokenType:
            assert row.token_metrics(token_type) == song.token_metrics[token_type]


def test_aggregate_empty_errors():
    with pytest.raises(ValueError, match="no songs matched"):
        aggregate([])


def test_aggregate_groups_by_language_plus_all():
    reports = [
        evaluate_pair("A b", "a b", "en", "one"),
        evaluate_pair("C d", "c d", "de", "two"),
    ]
    report = aggregate(reports)
    assert [row.label for row in report.rows] == ["All", "de", "en"]
    overall = aggregate(reports, "overall")
    assert [row.label for row in overall.rows] == ["All"]


def test_aggregate_unknown_grouping():
    song = evaluate_pair("A", "A", "en")
    with pytest.raises(ValueError):
        aggregate([song], "per-song")


def test_aggregate_section_breaks_absent_everywhere_stay_undefined():
    reports = [evaluate_pair("One line", "one line", "en", "solo")]
    report = aggregate(reports)
    assert report.rows[0].token_metrics(S) == PRF(None, None, None)


# --- invariants ---------------------------------------------------------------------

_TEXTS = st.text(
    alphabet=st.sampled_from("abcAB ,.()\n'é"),
    max_size=60,
)


@given(_TEXTS, _TEXTS)
def test_case_rate_bounded_by_hit_share(ref_text, hyp_text):
    report = evaluate_pair(ref_text, hyp_text)
    n = report.words.reference_words
    if n > 0:
        rate = report.case.rate
        assert 0.0 <= rate <= report.words.hits / n <= 1.0


@given(_TEXTS, _TEXTS)
def test_wer_zero_iff_matched_word_sequences_equal(ref_text, hyp_text):
    ref_words = word_seq(ref_text)
    hyp_words = word_seq(hyp_text)
    result = word_error_rate(ref_words, hyp_words)
    matched_equal = [t.matched for t in ref_words] == [t.matched for t in hyp_words]
    assert (result.wer == 0.0) == matched_equal


@given(_TEXTS, _TEXTS)
def test_prf_values_bounded_and_f1_between(ref_text, hyp_text):
    report = evaluate_pair(ref_text, hyp_text)
    for token_type in TokenType:
        values = report.token_metrics[token_type]
        for value in (values.precision, values.recall, values.f1):
            if value is not None:
                assert 0.0 <= value <= 1.0
        if values.f1 is not None:
            low = min(values.precision, values.recall)
            high = max(values.precision, values.recall)
            assert low - 1e-12 <= values.f1 <= high + 1e-12


@given(_TEXTS, _TEXTS)
def test_role_swap_keeps_alignment_cost(ref_text, hyp_text):
    forward = evaluate_pair(ref_text, hyp_text)
    backward = evaluate_pair(hyp_text, ref_text)
    fw = forward.words
    bw = backward.words
    assert fw.substitutions + fw.deletions + fw.insertions == (
        bw.substitutions + bw.deletions + bw.insertions
    )


def test_role_swap_duality_on_unambiguous_fixture():
    # Unique optimal alignment: one deletion, one insertion, two hits.
    ref_text = "One two, three"
    hyp_text = "One two\nthree"
    forward = evaluate_pair(ref_text, hyp_text)
    backward = evaluate_pair(hyp_text, ref_text)
    assert dict(forward.token_counts.deletions) == dict(backward.token_counts.insertions)
    assert dict(forward.token_counts.insertions) == dict(backward.token_counts.deletions)
    assert dict(forward.token_counts.hits) == dict(backward.token_counts.hits)
