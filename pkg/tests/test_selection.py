import math

import pytest

from slicescan import (
    ContactSequence,
    NoValidSlicing,
    OptimizerConfig,
    ScanRecord,
    ScanResult,
    corrected_scan,
    gen_hidden_cliques,
    gen_time_separated_cliques,
    select,
)

FAST = OptimizerConfig(runs=2, seed=5)


def _rec(i, m_n):
    if m_n is None:
        return ScanRecord(i, skipped="empty slice 0")
    return ScanRecord(i, m_n, 0.0)


@pytest.mark.parametrize(
    "values, expect",
    [([0.1, 0.3, 0.3], 2), ([0.5], 1), ([0.2, None, 0.4], 3), ([-0.2, -0.1], 2)],
)
def test_select(values, expect):
    assert select([_rec(i + 1, v) for i, v in enumerate(values)]) == expect


def test_select_all_skipped():
    with pytest.raises(NoValidSlicing, match="no valid slicing"):
        select([_rec(1, None), _rec(2, None)])


def test_record_invariants():
    r = ScanRecord(3, 0.5, 0.2)
    assert r.m_n == 0.5 - 0.2
    with pytest.raises(ValueError):
        ScanRecord(3, 0.5, 0.2, m_n=0.1)
    with pytest.raises(ValueError):
        ScanRecord(3, 0.5, 0.2, skipped="empty slice 1")
    with pytest.raises(ValueError):
        ScanRecord(3)


def test_single_candidate():
    cs, _ = gen_hidden_cliques(2, 4, 0.3, seed=0)
    res = corrected_scan(cs, 1, FAST)
    assert res.selected == 1
    assert len(res.records) == 1


def test_n_max_zero_rejected():
    cs, _ = gen_hidden_cliques(2, 4, 0.3, seed=0)
    with pytest.raises(ValueError):
        corrected_scan(cs, 0, FAST)


def test_empty_slices_are_skipped():
    cs = ContactSequence.from_events(
        [(0, 1, 0.0), (1, 2, 0.1), (0, 2, 0.2), (3, 4, 10.0), (4, 5, 9.9), (3, 5, 9.8)]
    )
    res = corrected_scan(cs, 4, FAST, attempts_per_edge=5)
    assert [r.skipped is None for r in res.records] == [True, True, False, False]
    assert res.records[2].skipped == "empty slice 1"
    assert res.selected in (1, 2)


def test_single_event_file():
    cs = ContactSequence.from_events([(0, 1, 3.0)])
    res = corrected_scan(cs, 3, FAST)
    assert [r.skipped is None for r in res.records] == [True, False, False]
    assert res.selected == 1


def test_records_are_consistent_and_deterministic():
    cs, truth = gen_hidden_cliques(3, 5, 0.2, seed=2)
    a = corrected_scan(cs, 6, FAST, truth=truth)
    b = corrected_scan(cs, 6, FAST, truth=truth)
    assert a == b
    for r in a.records:
        assert r.m_n == r.m_o - r.m_r
        assert 0.0 <= r.nmi <= 1.0
    assert [r.n_slices for r in a.records] == list(range(1, 7))


def test_parallel_matches_sequential():
    cs, _ = gen_hidden_cliques(3, 5, 0.2, seed=4)
    assert corrected_scan(cs, 5, FAST, workers=2) == corrected_scan(cs, 5, FAST)


def test_replicates_average_m_r():
    cs, _ = gen_hidden_cliques(2, 5, 0.2, seed=4)
    one = corrected_scan(cs, 2, FAST)
    three = corrected_scan(cs, 2, FAST, replicates=3)
    assert [r.m_o for r in one.records] == [r.m_o for r in three.records]
    with pytest.raises(ValueError):
        corrected_scan(cs, 2, FAST, replicates=0)


def test_time_separated_cliques_pick_one():
    cs, truth = gen_time_separated_cliques(5, 6, seed=1)
    res = corrected_scan(cs, 5, OptimizerConfig(runs=3, seed=1), truth=truth)
    assert res.selected == 1
    assert res.records[0].nmi == pytest.approx(1.0)
    # a lone clique per slice cannot be rewired away
    assert res.records[4].m_n == pytest.approx(0.0, abs=1e-12)


def test_csv_and_json_roundtrip():
    records = [
        ScanRecord(1, 0.1, 0.05, nmi=0.5),
        ScanRecord(2, skipped="empty slice 1"),
        ScanRecord(3, 1 / 3, 1 / 7),
    ]
    res = ScanResult.from_records(records)
    text = res.to_csv()
    assert text.splitlines()[0] == "n_slices,m_o,m_r,m_n,nmi,skipped"
    assert text.splitlines()[2] == "2,,,,,empty slice 1"
    assert ScanResult.from_csv(text) == res
    assert ScanResult.from_json(res.to_json()) == res
    assert res.selected == 3
    assert math.isclose(ScanResult.from_json(res.to_json()).records[2].m_n, 1 / 3 - 1 / 7)


def test_json_rejects_inconsistent_selection():
    res = ScanResult.from_records([ScanRecord(1, 0.1, 0.0), ScanRecord(2, 0.5, 0.0)])
    bad = res.to_json().replace('"selected": 2', '"selected": 1')
    with pytest.raises(ValueError):
        ScanResult.from_json(bad)
