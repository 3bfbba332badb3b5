import itertools
import json
import math
import re

import pytest

from randomized import oracle_disagreements
from tempomatch.automata import (
    Atom,
    ClockGuard,
    Concat,
    InvalidAutomatonError,
    Plus,
    TRESyntaxError,
    Union,
    Within,
    compile_tre,
    dump_ta,
    load_ta,
    make_ta,
    parse_tre,
    ta_from_dict,
    ta_to_dict,
    untimed_projection,
    validate_ta,
)
from tempomatch.core import TimedWord
from tempomatch.gear import GEAR_TRE
from tempomatch.matcher import match_brute
from tempomatch.zones import Bound, MatchZone, normalize_zone


def cat(word):
    return Concat(tuple(Atom(a) for a in word))


def test_parse_gear_pattern():
    shifts = Union(tuple(cat(w) for w in ("1234H", "123H4", "12H34", "1H234", "H1234")))
    cruise = Plus(Union(tuple(Atom(a) for a in "34LH")))
    expected = Concat(
        (
            Within(shifts, 0, True, 10, True),
            Within(cruise, 1, True, 1000, True),
        )
    )
    assert parse_tre(GEAR_TRE) == expected


def test_parse_skips_whitespace_and_closed_brackets():
    assert parse_tre(" ( a b ) % [1, 3] ") == Within(cat("ab"), 1, False, 3, False)
    assert parse_tre("a%[2,inf)") == Within(Atom("a"), 2, False, math.inf, True)


@pytest.mark.parametrize(
    "text, position",
    [
        ("a|", 3),
        ("", 1),
        ("()", 2),
        ("a%(2,1)", 3),
        ("a%(1,inf]", 9),
        ("a%(-1,2)", 4),
        ("a$", 2),
        ("(ab", 4),
    ],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(TRESyntaxError) as info:
        parse_tre(text)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)


def test_point_interval_is_allowed_but_open_point_is_empty():
    assert parse_tre("a%[2,2]") == Within(Atom("a"), 2, False, 2, False)
    with pytest.raises(TRESyntaxError):
        parse_tre("a%[2,2)")


def edges(ta):
    return sorted((t.source, t.target, t.label, tuple(map(str, t.guards)), tuple(sorted(t.resets))) for t in ta.transitions)


def test_compile_single_atom():
    ta = compile_tre("a")
    assert ta.clock_count == 0
    assert edges(ta) == [(0, 1, "a", (), ()), (1, 2, "$", (), ())]
    assert ta.initial == [0] and ta.accepting == {2}


def test_compile_bounded_pair():
    ta = compile_tre("(ab)%(0,2)")
    assert ta.clock_count == 1
    assert edges(ta) == [
        (0, 1, "a", (), ()),
        (1, 2, "b", (), ()),
        (2, 3, "$", ("x0 > 0", "x0 < 2"), ()),
    ]


def test_compile_two_windows():
    ta = compile_tre("(a)%(1,2)(b)%(0,3)")
    assert edges(ta) == [
        (0, 1, "a", (), ()),
        (1, 2, "b", ("x0 > 1", "x0 < 2"), (1,)),
        (2, 3, "$", ("x1 > 0", "x1 < 3"), ()),
    ]


def test_compile_two_windows_semantics():
    w = TimedWord.of(("a", 1.0), ("b", 2.5))
    ta = compile_tre("(a)%(1,2)(b)%(0,3)")
    zones = match_brute(ta, w).zones
    # 2.5 - t in (1, 2) with a inside the window, and t' - 2.5 in (0, 3)
    expected = normalize_zone(MatchZone.of((Bound(0.5, True), Bound(1.0, True)), (Bound(2.5, True), Bound(5.5, True))))
    assert zones == [expected]
    assert (expected.d_lo, expected.d_hi) == (Bound(1.5, True), Bound(5.0, True))
    assert oracle_disagreements(ta, w, zones) == []


def test_compile_star_has_nullable_exit():
    ta = compile_tre("a*")
    assert (0, 2, "$", (), ()) in edges(ta)
    assert (1, 1, "a", (), ()) in edges(ta)


def test_compiled_automata_validate():
    for text in (GEAR_TRE, "((ab)%(0,3))+c", "(a|b)*%[1,2]b", "a%(0,1)%(0,2)"):
        assert validate_ta(compile_tre(text)) == []


def test_validate_reports_dangling_location():
    ta = make_ta("ab", 0, [(0, True, False), (1, False, True)], [(0, 7, "a")])
    kinds = [d.kind for d in validate_ta(ta)]
    assert "dangling-location" in kinds
    assert any("7" in d.message for d in validate_ta(ta))


def test_validate_reports_terminal_reset():
    ta = make_ta("a", 1, [(0, True, False), (1, False, True)], [(0, 1, "a"), (1, 1, "$", [], [0])])
    assert [d.kind for d in validate_ta(ta)] == ["terminal-reset"]


def test_validate_reports_several_problems():
    ta = make_ta("a", 1, [(0, False, False), (0, False, False)], [(0, 0, "b", [(3, "<", 1)])])
    kinds = {d.kind for d in validate_ta(ta)}
    assert {"duplicate-location", "no-initial", "label-outside-alphabet", "unknown-clock"} <= kinds


def test_json_round_trip(tmp_path):
    ta = compile_tre(GEAR_TRE)
    assert ta_from_dict(json.loads(json.dumps(ta_to_dict(ta)))) == ta
    path = tmp_path / "gear.json"
    dump_ta(ta, path)
    assert load_ta(path) == ta


def test_load_rejects_invalid_automaton(tmp_path):
    doc = ta_to_dict(compile_tre("ab"))
    doc["transitions"][0]["to"] = 42
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(InvalidAutomatonError) as info:
        load_ta(path)
    assert info.value.diagnostics[0].kind == "dangling-location"


def test_clock_guard_semantics():
    assert ClockGuard(0, "<", 2).holds(1.99) and not ClockGuard(0, "<", 2).holds(2)
    assert ClockGuard(0, ">=", 2).holds(2) and not ClockGuard(0, ">", 2).holds(2)


# untimed language against Python's regex engine, with timing constraints erased

INTERVAL = re.compile(r"%[\(\[][^\)\]]*[\)\]]")


@pytest.mark.parametrize(
    "text",
    [
        "a",
        "ab|ba",
        "(ab)*c",
        "(a|b)+a",
        "a*b*",
        "((ab)%(0,3))+c%[1,2]",
        "(a%(0,1)b)%[0,4]*a",
        "(ab|c)%[1,inf)c*",
        "((a|c)(b|c)*)+",
    ],
)
def test_untimed_language_matches_regex(text):
    nfa = untimed_projection(compile_tre(text))
    pattern = re.compile(INTERVAL.sub("", text))
    for n in range(7):
        for letters in itertools.product("abc", repeat=n):
            word = "".join(letters)
            assert nfa.accepts(word) == bool(pattern.fullmatch(word)), word
