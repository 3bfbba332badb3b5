import pytest
from hypothesis import assume, given, strategies as st

from tempomatch.core import (
    Event,
    EventStream,
    ParseError,
    StreamOrderError,
    TimedWord,
    format_event,
    parse_event_line,
    read_events,
    restrict,
)

W = TimedWord.of(("a", 0.5), ("b", 1.0), ("a", 1.7), ("b", 4.0))


@pytest.mark.parametrize(
    "line, expected",
    [
        ("a 0.5", Event("a", 0.5)),
        ("b   1.0", Event("b", 1.0)),
        ("  Z\t3 \n", Event("Z", 3.0)),
        ("7 0", Event("7", 0.0)),
    ],
)
def test_parse_event_line(line, expected):
    assert parse_event_line(line) == expected


@pytest.mark.parametrize("line", ["", "   ", "# comment", "#a 1.0"])
def test_parse_event_line_no_event(line):
    assert parse_event_line(line) is None


@pytest.mark.parametrize("line", ["ab 1.0", "a", "a 1 2", "- 1.0", "a x", "a -1.0", "a inf", "a nan"])
def test_parse_event_line_errors(line):
    with pytest.raises(ParseError) as info:
        parse_event_line(line, 12)
    assert info.value.lineno == 12
    assert "line 12" in str(info.value)


def test_read_events_reports_line_numbers():
    lines = ["# header", "a 0.5", "", "bb 1"]
    events = read_events(lines)
    assert next(events) == Event("a", 0.5)
    with pytest.raises(ParseError) as info:
        next(events)
    assert info.value.lineno == 4


def test_event_invariants():
    with pytest.raises(ValueError):
        Event("ab", 1.0)
    with pytest.raises(ValueError):
        Event("a", -0.1)
    with pytest.raises(ValueError):
        Event("a", float("inf"))


def test_timed_word_rejects_decreasing_times():
    with pytest.raises(StreamOrderError):
        TimedWord.of(("a", 1.0), ("b", 0.5))
    assert len(TimedWord.of(("a", 1.0), ("b", 1.0))) == 2


def test_stream_detects_disorder_at_pull_time():
    stream = EventStream([Event("a", 1.0), Event("b", 2.0), Event("a", 1.5), Event("b", 3.0)])
    assert next(stream).time == 1.0
    assert next(stream).time == 2.0
    with pytest.raises(StreamOrderError) as info:
        next(stream)
    assert info.value.index == 3
    with pytest.raises(StopIteration):
        next(stream)


def test_restrict_examples():
    assert restrict(W, 0.6, 1.7).pairs() == [("b", pytest.approx(0.4))]
    assert restrict(W, 0.5, 0.6).pairs() == []
    assert restrict(W, 0.0, 5.0).pairs() == W.pairs()


def test_restrict_argument_error():
    with pytest.raises(ValueError):
        restrict(W, 1.0, 1.0)
    with pytest.raises(ValueError):
        restrict(W, 2.0, 1.0)


grid_times = st.integers(0, 80).map(lambda k: k / 8)


@st.composite
def words(draw):
    stamps = sorted(draw(st.lists(grid_times, max_size=15)))
    labels = draw(st.lists(st.sampled_from("abc"), min_size=len(stamps), max_size=len(stamps)))
    return TimedWord(tuple(Event(a, t) for a, t in zip(labels, stamps)))


@st.composite
def word_and_interval(draw):
    w = draw(words())
    t = draw(grid_times)
    t_prime = draw(grid_times.filter(lambda x: x > t))
    return w, t, t_prime


@given(word_and_interval())
def test_restrict_is_a_timed_word(case):
    w, t, tp = case
    r = restrict(w, t, tp)
    assert all(e.time >= 0 for e in r)
    assert all(r[k].time <= r[k + 1].time for k in range(len(r) - 1))


@given(word_and_interval())
def test_restrict_idempotent_at_zero_shift(case):
    w, t, tp = case
    r = restrict(w, t, tp)
    assert restrict(r, 0, tp - t) == r


@given(word_and_interval(), st.data())
def test_restrict_left_piece_contained(case, data):
    w, t, tp = case
    assume(tp - t > 1 / 8)
    s = data.draw(st.integers(int(t * 8) + 1, int(tp * 8) - 1).map(lambda k: k / 8))
    whole = restrict(w, t, tp).events
    for ev in restrict(w, t, s):
        assert ev in whole


@given(st.sampled_from("abcXYZ019"), st.floats(min_value=0, max_value=1e12, allow_nan=False))
def test_parse_inverts_format(label, time):
    ev = Event(label, time)
    assert parse_event_line(format_event(ev)) == ev
