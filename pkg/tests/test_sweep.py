import dataclasses
import itertools
import math

from hypothesis import given, settings
from hypothesis import strategies as st

from regcount import (
    DomainStore,
    SweepTable,
    backward,
    catalog,
    forward,
    format_row,
    run,
)
from regcount.sweep import UNREACHABLE_MAX, UNREACHABLE_MIN
from strategies import dfa_store_pairs


# -- brute-force row oracle (enumeration; shares no sweep code) --------------


def brute_forward(dfa, store, mode):
    """Extremal prefix counters per state by enumerating all admissible prefixes."""
    rows = []
    for i in range(store.n + 1):
        best = {}
        for word in itertools.product(*(store.symbols(j) for j in range(i))):
            result = run(dfa, word)
            seen = best.get(result.end_state)
            if seen is None or (result.counter < seen if mode == "min" else result.counter > seen):
                best[result.end_state] = result.counter
        rows.append(best)
    return rows


def brute_backward(dfa, store, mode):
    """Extremal suffix counters per state, over suffixes ending in a state
    reachable at position n."""
    final_support = set(brute_forward(dfa, store, mode)[store.n])
    rows = {store.n + 1: {q: 0 for q in final_support}}
    for i in range(store.n, 0, -1):
        best = {}
        for q in range(dfa.num_states):
            from_q = dataclasses.replace(dfa, start=q)
            for word in itertools.product(*(store.symbols(j) for j in range(i - 1, store.n))):
                result = run(from_q, word)
                if result.end_state not in final_support:
                    continue
                seen = best.get(q)
                if seen is None or (result.counter < seen if mode == "min" else result.counter > seen):
                    best[q] = result.counter
        rows[i] = best
    return rows


def as_dict(row):
    return {q: int(c) for q, c in enumerate(row) if not math.isinf(c)}


# -- reference trace on the RST automaton ------------------------------------

# Worked max-prefix trace for six variables over {r, t}; note row 6 keeps 4 on
# rrtr even though rrt had a smaller counter than three other states at row 5,
# which is why a single global maximum would not do.
RST_PREMAX_ROWS = [
    {"eps": 0},
    {"eps": 0, "r": 1},
    {"eps": 1, "r": 1, "rr": 1},
    {"eps": 1, "r": 2, "rr": 1, "rrt": 1},
    {"eps": 2, "r": 2, "rr": 2, "rrt": 1, "rrtr": 3},
    {"eps": 2, "r": 3, "rr": 3, "rrt": 2, "rrtr": 3},
    {"eps": 3, "r": 3, "rr": 3, "rrt": 3, "rrtr": 4},
]


def rst_store():
    rst = catalog("RST")
    doms = [(rst.symbol_id("r"), rst.symbol_id("t"))] * 6
    return rst, DomainStore(rst.num_symbols, doms, (0,))


def test_rst_reference_max_rows():
    rst, store = rst_store()
    rows = forward(rst, store, "max")
    named = [{rst.state_names[q]: v for q, v in as_dict(row).items()} for row in rows]
    assert named == RST_PREMAX_ROWS


def test_rst_reference_rows_match_brute_force():
    rst, store = rst_store()
    assert [as_dict(r) for r in forward(rst, store, "max")] == brute_forward(rst, store, "max")


def test_row_zero_is_start_at_zero():
    for name in ("AAB", "B", "RST"):
        dfa = catalog(name)
        store = DomainStore(dfa.num_symbols, [(0,)], (0,))
        for mode in ("min", "max"):
            assert as_dict(forward(dfa, store, mode)[0]) == {dfa.start: 0}


@given(dfa_store_pairs(max_n=4))
@settings(max_examples=60)
def test_ground_sequences_collapse_to_run(pair):
    dfa, store = pair
    ground = DomainStore(dfa.num_symbols, [store.symbols(i)[:1] for i in range(store.n)], store.counter)
    word = [ground.symbols(i)[0] for i in range(ground.n)]
    expected = run(dfa, word)
    for mode in ("min", "max"):
        assert as_dict(forward(dfa, ground, mode)[ground.n]) == {expected.end_state: expected.counter}


def test_backward_empty_sequence_base():
    dfa = catalog("B")
    store = DomainStore(dfa.num_symbols, [], (0,))
    pre = forward(dfa, store, "min")
    suf = backward(dfa, store, pre[-1], "min")
    assert as_dict(suf[1]) == {dfa.start: 0}


def test_backward_ground_word_costs_the_run():
    dfa = catalog("AAB")
    word = "aabab"
    store = DomainStore(dfa.num_symbols, [(dfa.symbol_id(c),) for c in word], (0,))
    pre = forward(dfa, store, "min")
    suf = backward(dfa, store, pre[-1], "min")
    assert suf[1][dfa.start] == run(dfa, word).counter == 1


def b_2x2_store():
    b = catalog("B")
    one, two = b.symbol_id("1"), b.symbol_id("2")
    return b, DomainStore(b.num_symbols, [(two,), (one, two), (two,)], (0, 1, 2))


def test_b_suffix_bounds_from_enumeration():
    b, store = b_2x2_store()
    # independent expectation: the two ground words give counters {0, 2}
    counters = {run(b, ["2", x, "2"]).counter for x in ("1", "2")}
    assert counters == {0, 2}
    pre_min = forward(b, store, "min")
    pre_max = forward(b, store, "max")
    suf_min = backward(b, store, pre_min[-1], "min")
    suf_max = backward(b, store, pre_max[-1], "max")
    eps = b.state_names.index("eps")
    assert suf_min[1][eps] == 0
    assert suf_max[1][eps] == 2


def test_global_bounds_examples():
    b, store = b_2x2_store()
    table = SweepTable.compute(b, store)
    assert table.global_min() == 0
    assert table.global_max() == 2

    rst, rstore = rst_store()
    assert SweepTable.compute(rst, rstore).global_max() == 4

    aab = catalog("AAB")
    ground = DomainStore(aab.num_symbols, [(aab.symbol_id(c),) for c in "aab"], (0,))
    table = SweepTable.compute(aab, ground)
    assert table.global_min() == table.global_max() == 1


# -- invariants ---------------------------------------------------------------


@given(dfa_store_pairs())
@settings(max_examples=80)
def test_forward_backward_consistency(pair):
    dfa, store = pair
    table = SweepTable.compute(dfa, store)
    assert table.global_min() == table.suf_min[1][dfa.start]
    assert table.global_max() == table.suf_max[1][dfa.start]


@given(dfa_store_pairs(max_n=4))
@settings(max_examples=60, deadline=None)
def test_rows_match_brute_force(pair):
    dfa, store = pair
    for mode in ("min", "max"):
        assert [as_dict(r) for r in forward(dfa, store, mode)] == brute_forward(dfa, store, mode)
        pre = forward(dfa, store, mode)
        suf = backward(dfa, store, pre[-1], mode)
        got = {i: as_dict(suf[i]) for i in range(1, store.n + 2)}
        assert got == brute_backward(dfa, store, mode)


@given(dfa_store_pairs(max_n=4))
@settings(max_examples=50)
def test_ground_collapse_min_equals_max(pair):
    dfa, store = pair
    ground = DomainStore(dfa.num_symbols, [store.symbols(i)[:1] for i in range(store.n)], store.counter)
    min_rows = [as_dict(r) for r in forward(dfa, ground, "min")]
    max_rows = [as_dict(r) for r in forward(dfa, ground, "max")]
    assert min_rows == max_rows


@given(dfa_store_pairs(min_n=1, max_n=4), st.data())
@settings(max_examples=60)
def test_shrinking_domains_moves_rows_one_way(pair, data):
    dfa, store = pair
    position = data.draw(st.integers(0, store.n - 1))
    symbols = store.symbols(position)
    shrunk = store.copy()
    shrunk.remove_symbol(position, data.draw(st.sampled_from(symbols)))
    if shrunk.domains[position] == 0:
        return  # emptied: sweeps are only defined for nonempty domains
    for before, after in zip(forward(dfa, store, "min"), forward(dfa, shrunk, "min")):
        assert all(b <= a for b, a in zip(before, after))  # inf sorts above ints
    for before, after in zip(forward(dfa, store, "max"), forward(dfa, shrunk, "max")):
        assert all(b >= a for b, a in zip(before, after))


@given(dfa_store_pairs())
@settings(max_examples=60)
def test_suffix_base_row_marks_final_support(pair):
    dfa, store = pair
    table = SweepTable.compute(dfa, store)
    n = store.n
    support = {q for q, c in enumerate(table.pre_min[n]) if c != UNREACHABLE_MIN}
    assert support == {q for q, c in enumerate(table.pre_max[n]) if c != UNREACHABLE_MAX}
    assert as_dict(table.suf_min[n + 1]) == {q: 0 for q in support}
    assert as_dict(table.suf_max[n + 1]) == {q: 0 for q in support}


def test_format_row_skips_unreachable():
    rst, store = rst_store()
    row = forward(rst, store, "max")[4]
    assert format_row(row, rst.state_names) == "eps=2,r=2,rr=2,rrt=1,rrtr=3"
