import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from deltachanges import (
    ApproximationTrace,
    ParseError,
    TraceError,
    TraceKind,
    change_lower_experiment,
    change_profile,
    is_g_change,
    left_ce_change_bound,
    omega_trace,
    parse_trace,
    serialize_trace,
    verify_kind,
)
from deltachanges.generate import random_left_ce_trace

from oracles import naive_profile

SAMPLE = ["000", "100", "110", "110"]


@st.composite
def traces(draw, max_s=12, max_n=10, kind="general"):
    s = draw(st.integers(1, max_s))
    n = draw(st.integers(1, max_n))
    rows = draw(st.lists(st.text("01", min_size=n, max_size=n), min_size=s, max_size=s))
    return ApproximationTrace(rows, kind)


@st.composite
def left_ce_traces(draw, max_s=12, max_n=10):
    n = draw(st.integers(1, max_n))
    vals = sorted(draw(st.lists(st.integers(0, 2**n - 1), min_size=1, max_size=max_s)))
    return ApproximationTrace([format(v, f"0{n}b") for v in vals], TraceKind.LEFT_CE)


def test_rejects_malformed_rows():
    with pytest.raises(TraceError):
        ApproximationTrace(["01", "0"])
    with pytest.raises(TraceError):
        ApproximationTrace(["02"])
    with pytest.raises(TraceError):
        ApproximationTrace([])


def test_trace_is_immutable():
    t = ApproximationTrace(SAMPLE)
    with pytest.raises(ValueError):
        t.bits[0, 0] = 1


@pytest.mark.parametrize(
    "rows, expected",
    [
        (SAMPLE, (1, 2, 2)),
        (["010", "010", "010"], (0, 0, 0)),
        (["0", "1"], (1,)),
    ],
)
def test_change_profile_examples(rows, expected):
    assert change_profile(ApproximationTrace(rows)).counts == expected


def test_g_change_examples():
    t = ApproximationTrace(SAMPLE)
    assert is_g_change(t, [1, 2, 2])
    v = is_g_change(t, [0, 2, 2])
    assert not v and v.where == 1
    assert is_g_change(t, [t.stages - 1] * 3)
    with pytest.raises(TraceError):
        is_g_change(t, [5, 5])


def test_verify_kind_examples():
    assert verify_kind(ApproximationTrace(["010", "110", "111"], "leftce"))
    v = verify_kind(ApproximationTrace(["010", "001"], "leftce"))
    assert not v and v.where == 1
    assert not verify_kind(ApproximationTrace(["010", "000"], "ce"))
    assert verify_kind(ApproximationTrace(["010", "000"], "general"))


def test_left_ce_bound_on_m0(m0):
    rep = left_ce_change_bound(omega_trace(m0, 6, 3), 1)
    assert rep.t == 2
    assert rep.checks == ((3, 3, 6, True),)


def test_left_ce_bound_trivial_cases():
    rep = left_ce_change_bound(ApproximationTrace(["01", "01"], "leftce"), 1)
    assert rep.t == 0 and rep.all_hold
    assert [c[:3] for c in rep.checks] == [(1, 0, 1), (2, 0, 2)]
    rep = left_ce_change_bound(ApproximationTrace(["0", "1"], "leftce"), 1)
    assert rep.t == 1 and rep.checks == ()


def test_left_ce_bound_requires_left_ce():
    with pytest.raises(TraceError):
        left_ce_change_bound(ApproximationTrace(["1", "0"], "leftce"), 1)
    with pytest.raises(TraceError):
        left_ce_change_bound(ApproximationTrace(["0", "1"], "general"), 1)


def test_change_lower_examples():
    assert all(r.respected for r in change_lower_experiment(ApproximationTrace(["01"] * 3), ["1/4", "1/4"]))
    rows = change_lower_experiment(ApproximationTrace(SAMPLE), [1, 1, 1])
    assert [r.bound for r in rows] == [2, 4, 8] and all(r.respected for r in rows)
    (row,) = change_lower_experiment(ApproximationTrace(["0", "1", "0", "1"]), ["1/2"])
    assert (row.count, row.bound, row.respected) == (3, 1, False)
    with pytest.raises(ValueError):
        change_lower_experiment(ApproximationTrace(SAMPLE), [1, 2, 2])


def test_file_roundtrip_and_kind_tokens():
    text = "# sample\ntrace 4 3 leftce\n000\n# mid comment\n100\n110\n110\n"
    t = parse_trace(text)
    assert t.kind is TraceKind.LEFT_CE and t.rows() == SAMPLE
    assert serialize_trace(t) == "trace 4 3 leftce\n000\n100\n110\n110\n"
    assert parse_trace(serialize_trace(t)) == t
    assert parse_trace("trace 1 2 left-ce\n01\n").kind is TraceKind.LEFT_CE


@pytest.mark.parametrize(
    "text",
    ["", "trace 2 3 ce\n000\n", "trace 1 3 ce\n0101\n", "trace 1 2 weird\n01\n", "tr 1 1 ce\n0\n", "trace 1 2 ce\n0a\n"],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_trace(text)


@given(traces())
def test_profile_matches_naive_rescan_and_is_monotone(t):
    counts = change_profile(t).counts
    assert list(counts) == naive_profile(t.rows())
    assert all(a <= b for a, b in zip(counts, counts[1:]))
    assert all(c <= t.stages - 1 for c in counts)


@given(traces(), st.lists(st.integers(0, 12), min_size=10, max_size=10))
def test_g_change_equivalent_to_pointwise_comparison(t, g):
    naive = naive_profile(t.rows())
    expected = next((n for n in range(1, t.width + 1) if naive[n - 1] > g[n - 1]), None)
    v = is_g_change(t, g[: t.width])
    assert v.holds == (expected is None)
    assert v.where == expected


@given(traces())
def test_serialization_roundtrip(t):
    assert parse_trace(serialize_trace(t)) == t


@given(traces(kind="ce"))
def test_ce_verification_implies_growing_final_row(t):
    if verify_kind(t):
        ones = [r.count("1") for r in t.rows()]
        assert all(o <= ones[-1] for o in ones)


@settings(max_examples=200)
@given(left_ce_traces(), st.data())
def test_left_ce_bound_always_holds(t, data):
    assert verify_kind(t)
    k = data.draw(st.integers(1, t.width))
    assert left_ce_change_bound(t, k).all_hold


def test_generated_left_ce_traces_verify():
    rng = np.random.default_rng(0)
    for _ in range(20):
        assert verify_kind(random_left_ce_trace(rng, 30, 20))
