import random
from pathlib import Path

import pytest
from hypothesis import given

from gen import fstructures, random_fstructure
from itlex.extraction import (
    DEFAULT_CATEGORY_MAP,
    CategoryMap,
    ExtractDiagnostics,
    SamplePair,
    align,
    extract_samples,
    format_category_map,
    parse_category_map,
    samples_from_corpus,
)
from itlex.fstructure import has_head, head_of, load_corpus, parse, serialize

DATA = Path(__file__).parent / "data"

EN = (
    "[sentence [subj I] would [xcomp [subj I] like "
    "[xcomp [subj I] register [pp-adj for the conference]]]]"
)
DE = (
    "[sentence [subj Ich] werde [xcomp [subj Ich] [adj gerne] "
    "[xcomp [subj Ich] anmelden [pp-adj fuer der Konferenz]]]]"
)


def test_registration_pair_aligns_xcomp():
    pairs, _ = align(parse(EN), parse(DE))
    found = [
        (serialize(s), head_of(t))
        for s, t in pairs
        if s.label == "xcomp" and has_head(t)
    ]
    assert ("[xcomp [subj i] register [pp-adj for the conference]]", "anmelden") in found


def test_identity_alignment():
    rng = random.Random(3)
    for _ in range(50):
        fs = random_fstructure(rng)
        pairs, diag = align(fs, fs)
        assert [s for s, _ in pairs] == list(fs.walk())
        assert all(s is t for s, t in pairs)
        assert diag.skipped == 0


def test_unmatched_slot_is_skipped():
    # brute force: every source child either finds an unused target child
    # with the same label or is skipped
    src = parse("[vp go [subj a] [obj b]]")
    tgt = parse("[vp gehen [subj x]]")
    pairs, diag = align(src, tgt)
    assert [(s.label, t.label) for s, t in pairs] == [("vp", "vp"), ("subj", "subj")]
    assert diag.skipped == 1


def test_repeated_labels_match_in_order():
    src = parse("[s v [adj a1] [adj a2] [adj a3]]")
    tgt = parse("[s w [adj b1] [adj b2]]")
    pairs, diag = align(src, tgt)
    assert [(head_of(s), head_of(t)) for s, t in pairs[1:]] == [("a1", "b1"), ("a2", "b2")]
    assert diag.skipped == 1


def test_target_side_unmatched_counts_too():
    pairs, diag = align(parse("[s v]"), parse("[s w [obj x] [adj y]]"))
    assert len(pairs) == 1 and diag.skipped == 2


def test_extract_registration_sample():
    src = parse("[xcomp [subj I] register [pp-adj for the conference]]")
    tgt = parse("[xcomp [subj Ich] anmelden [pp-adj fuer der Konferenz]]")
    samples = extract_samples([(src, tgt)], DEFAULT_CATEGORY_MAP)
    assert samples == [SamplePair("vp", frozenset({"i", "register", "conference"}), "anmelden")]
    assert samples[0].source_head == "register"


def test_extract_trivial():
    samples = extract_samples([(parse("[np dog]"), parse("[np hund]"))], DEFAULT_CATEGORY_MAP)
    assert samples == [SamplePair("np", frozenset({"dog"}), "hund")]


def test_extract_skips_headless_children_and_collapses_duplicates():
    # three children, two with heads; one of those repeats the source head
    src = parse("[vp eat [subj]  [obj apple] [adj eat]]")
    tgt = parse("[vp essen]")
    expected = {head_of(src)} | {head_of(c) for c in src.subs if has_head(c)}
    [sample] = extract_samples([(src, tgt)], DEFAULT_CATEGORY_MAP)
    assert sample.inputs == expected == {"eat", "apple"}


def test_extract_diagnostics():
    diag = ExtractDiagnostics()
    pairs = [
        (parse("[np dog]"), parse("[np]")),
        (parse("[np [det]]"), parse("[np hund]")),
        (parse("[np [det the]]"), parse("[np hund]")),
    ]
    samples = extract_samples(pairs, DEFAULT_CATEGORY_MAP, diag)
    assert len(samples) == 1 and samples[0].inputs == {"the"}
    assert samples[0].source_head is None
    assert (diag.no_target_head, diag.no_source_head, diag.samples) == (1, 1, 1)


def test_category_map_default_and_file_format():
    assert DEFAULT_CATEGORY_MAP("xcomp") == "vp"
    assert DEFAULT_CATEGORY_MAP("PP-ADJ") == "pp"
    assert DEFAULT_CATEGORY_MAP("whatever") == "other"
    cmap = parse_category_map("xcomp\tvp\nsubj\tnp\n*\tmisc\n")
    assert cmap("subj") == "np" and cmap("foo") == "misc"
    assert parse_category_map(format_category_map(cmap)) == cmap
    with pytest.raises(ValueError):
        parse_category_map("xcomp vp\n")
    with pytest.raises(ValueError):
        CategoryMap({"a": ""})


def test_sample_pair_invariants():
    assert SamplePair("vp", ["a", "a", "b"], "x").inputs == {"a", "b"}
    with pytest.raises(ValueError):
        SamplePair("vp", [], "x")
    with pytest.raises(ValueError):
        SamplePair("vp", ["a"], "")


@given(fstructures(), fstructures())
def test_extraction_properties(src, tgt):
    pairs, _ = align(src, tgt)
    samples = extract_samples(pairs, DEFAULT_CATEGORY_MAP)
    assert len(samples) <= len(pairs)
    source_heads = {head_of(fs) for fs in src.walk() if has_head(fs)}
    for sample in samples:
        assert sample.inputs <= source_heads
    assert extract_samples(align(src, tgt)[0], DEFAULT_CATEGORY_MAP) == samples


def test_registration_corpus_samples():
    corpus = load_corpus(DATA / "registration.txt")
    samples = samples_from_corpus(corpus, DEFAULT_CATEGORY_MAP)
    vp = [s for s in samples if s.category == "vp"]
    assert SamplePair("vp", frozenset({"i", "register", "conference"}), "anmelden") in vp
