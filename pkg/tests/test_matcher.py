import random

import pytest

from randomized import oracle_disagreements, random_ta, random_word
from tempomatch.automata import build_skip_tables, compile_tre
from tempomatch.core import Event, TimedWord
from tempomatch.matcher import MatchEngine, match_brute, match_fjs, run_trial
from tempomatch.oracle import accepts_restriction
from tempomatch.zones import Bound, MatchZone, normalize_zone

W = TimedWord.of(("a", 0.5), ("b", 1.0), ("a", 1.7), ("b", 4.0))
PAIR = compile_tre("(ab)%(0,2)")
PAIR_ZONE = normalize_zone(
    MatchZone.of((Bound(0.0), Bound(0.5, True)), (Bound(1.0, True), Bound(1.7)), (Bound(0, True), Bound(2, True)))
)


def tables_for(ta):
    return build_skip_tables(ta)


def test_pair_zone_shape():
    assert (PAIR_ZONE.d_lo, PAIR_ZONE.d_hi) == (Bound(0.5, True), Bound(1.7))


def test_run_trial_examples():
    first = run_trial(PAIR, W, 1)
    assert first.zones == [PAIR_ZONE]
    assert first.progress == 2
    second = run_trial(PAIR, W, 2)
    assert (second.zones, second.progress) == ([], 0)
    third = run_trial(PAIR, W, 3)
    assert (third.zones, third.progress) == ([], 2)


def test_run_trial_rejects_bad_segment():
    with pytest.raises(ValueError):
        run_trial(PAIR, W, 0)
    with pytest.raises(ValueError):
        run_trial(PAIR, W, 7)


def test_brute_and_fjs_on_example():
    brute = match_brute(PAIR, W)
    fjs = match_fjs(PAIR, tables_for(PAIR), W)
    assert brute.zones == fjs.zones == [PAIR_ZONE]
    assert brute.stats.trials_run == 5
    assert (fjs.stats.trials_run, fjs.stats.trials_gate_skipped) == (2, 0)
    assert brute.stats.events_read == fjs.stats.events_read == 4
    assert fjs.matches[0].start == 1 and fjs.matches[0].end == 2


def test_gate_skips_whole_text():
    ta = compile_tre("aaaa")
    word = TimedWord.of(*[("b", float(k)) for k in range(1, 21)])
    report = match_fjs(ta, tables_for(ta), word)
    assert report.zones == []
    assert report.stats.trials_run == 0
    assert report.stats.trials_gate_skipped == 5
    assert report.stats.events_read == 20


def test_single_atom_zone():
    ta = compile_tre("a")
    zones = match_brute(ta, TimedWord.of(("a", 1.0))).zones
    assert zones == [normalize_zone(MatchZone.of((Bound(0.0), Bound(1.0, True)), (Bound(1.0, True), Bound(float("inf"), True))))]


def test_empty_word_runs_one_trial():
    report = match_brute(compile_tre("a*"), TimedWord(()))
    assert report.stats.trials_run == 1
    # a* accepts the empty restriction of every interval (t, t')
    assert report.zones == [normalize_zone(MatchZone())]


def test_oracle_examples():
    assert accepts_restriction(PAIR, W, 0.2, 1.5)
    assert not accepts_restriction(PAIR, W, 0.2, 2.3)
    assert not accepts_restriction(PAIR, W, 0.5, 1.5)
    with pytest.raises(ValueError):
        accepts_restriction(PAIR, W, 1.0, 1.0)


def test_zones_agree_with_oracle_on_example():
    assert oracle_disagreements(PAIR, W, match_brute(PAIR, W).zones) == []


def test_unordered_stream_invalidates_report():
    events = [Event("a", 0.5), Event("b", 1.0), Event("a", 1.7), Event("b", 0.2)]
    for report in (match_brute(PAIR, events), match_fjs(PAIR, tables_for(PAIR), events)):
        assert not report.valid
        assert "0.2" in report.error or "order" in report.error


def test_zones_are_emitted_before_the_stream_ends():
    pulled = []
    seen_at = []

    def stream():
        for ev in W:
            pulled.append(ev)
            yield ev

    engine = MatchEngine(PAIR, tables_for(PAIR))
    engine.run(stream(), lambda m: seen_at.append(len(pulled)))
    # the zone needs event 3 for its t' bound and nothing later
    assert seen_at == [3]


def test_buffer_stays_bounded_for_finite_language():
    rng = random.Random(5)

    def word(n):
        now = 0.0
        for _ in range(n):
            now += rng.choice((0.25, 0.5, 1.0))
            yield Event(rng.choice("ab"), now)

    peaks = []
    for n in (2_000, 20_000):
        engine = MatchEngine(PAIR, tables_for(PAIR))
        stats = engine.run(word(n), lambda m: None)
        assert stats.events_read == n
        peaks.append(stats.peak_buffer)
    assert peaks[0] == peaks[1] <= 4


def test_runs_are_deterministic():
    rng = random.Random(11)
    ta, w = random_ta(rng), random_word(rng, 40)
    first = match_fjs(ta, tables_for(ta), w)
    second = match_fjs(ta, tables_for(ta), w)
    assert first.zones == second.zones
    assert first.stats == second.stats


@pytest.mark.parametrize("seed", range(40))
def test_fjs_equals_brute_on_random_cases(seed):
    rng = random.Random(seed)
    ta, w = random_ta(rng), random_word(rng)
    brute = match_brute(ta, w)
    fjs = match_fjs(ta, tables_for(ta), w)
    assert fjs.zones == brute.zones
    assert fjs.stats.trials_run <= brute.stats.trials_run
    assert fjs.stats.trials_run + fjs.stats.trials_gate_skipped <= brute.stats.trials_run
    assert oracle_disagreements(ta, w, brute.zones) == []
