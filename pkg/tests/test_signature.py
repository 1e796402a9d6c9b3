from hypothesis import given, settings
from hypothesis import strategies as st

from regcount import (
    GenConfig,
    SignatureMap,
    among_signature,
    catalog,
    check_among_instance,
    enumerate_support_native,
    propagate_composite,
    random_among_instance,
    rng_for,
)


def membership_map(members, universes):
    dfa = catalog("AMONG")
    return dfa, among_signature(dfa, set(members), universes)


def test_project_mixed_membership():
    dfa, sig = membership_map({2, 5}, [[1, 2, 3]])
    mask = sig.project(0, [1, 2, 3])
    assert mask == (1 << dfa.symbol_id("in")) | (1 << dfa.symbol_id("notin"))


def test_project_all_outside():
    dfa, sig = membership_map({2, 5}, [[1, 3]])
    assert sig.project(0, [1, 3]) == 1 << dfa.symbol_id("notin")


def test_project_all_inside():
    dfa, sig = membership_map({2, 5}, [[2]])
    assert sig.project(0, [2]) == 1 << dfa.symbol_id("in")


def test_channel_back_removes_exact_preimages():
    dfa, sig = membership_map({2}, [[1, 2, 3]])
    removed = sig.channel_back(0, [dfa.symbol_id("in")], [1, 2, 3])
    assert removed == [2]


def test_channel_back_nothing_pruned():
    dfa, sig = membership_map({2}, [[1, 2, 3]])
    assert sig.channel_back(0, [], [1, 2, 3]) == []


def test_channel_back_everything_pruned_empties():
    dfa, sig = membership_map({2}, [[1, 2, 3]])
    both = [dfa.symbol_id("in"), dfa.symbol_id("notin")]
    assert sorted(sig.channel_back(0, both, [1, 2, 3])) == [1, 2, 3]


@given(st.data())
@settings(max_examples=60)
def test_projection_never_reintroduces_pruned_symbols(data):
    universe = data.draw(st.sets(st.integers(0, 6), min_size=1))
    members = data.draw(st.sets(st.sampled_from(sorted(universe))))
    dfa, sig = membership_map(members, [sorted(universe)])
    pruned = data.draw(st.sets(st.integers(0, dfa.num_symbols - 1)))
    survivors = [v for v in universe if v not in sig.channel_back(0, pruned, sorted(universe))]
    if survivors:
        assert sig.project(0, survivors) & sum(1 << s for s in pruned) == 0


def test_signature_map_is_total_or_raises():
    sig = SignatureMap([{1: 0}])
    assert sig.symbol_of(0, 1) == 0
    try:
        sig.symbol_of(0, 9)
    except KeyError as exc:
        assert "9" in str(exc)
    else:
        raise AssertionError("expected KeyError")


# -- composite propagation reaches the native fixpoint ------------------------


def test_composite_membership_count_lower_bound():
    # three positions over {1, 2, 3}, members {2}: the count must reach 3,
    # so every position is forced onto value 2
    dfa = catalog("AMONG")
    natives = [[1, 2], [2], [2, 3]]
    sig = among_signature(dfa, {2}, natives)
    result = propagate_composite(dfa, sig, natives, [3], "atleast")
    assert not result.failed
    assert result.native_domains == [[2], [2], [2]]
    assert result.counter_values == [3]
    report = enumerate_support_native(dfa, sig, natives, [3], "atleast")
    assert [set(d) for d in result.native_domains] == [set(s) for s in report.supported]


def test_composite_atmost_prunes_members():
    dfa = catalog("AMONG")
    natives = [[1, 2], [2, 3]]
    sig = among_signature(dfa, {2}, natives)
    result = propagate_composite(dfa, sig, natives, [0], "atmost")
    assert not result.failed
    assert result.native_domains == [[1], [3]]  # a zero count forbids members


def test_composite_atmost_fails_on_unavoidable_member():
    dfa = catalog("AMONG")
    natives = [[1, 2], [2, 3]]
    sig = among_signature(dfa, {2, 3}, natives)
    result = propagate_composite(dfa, sig, natives, [0], "atmost")
    assert result.failed  # the second position is always in the set


def test_composite_failure_on_impossible_count():
    dfa = catalog("AMONG")
    natives = [[1], [1]]
    sig = among_signature(dfa, {2}, natives)
    result = propagate_composite(dfa, sig, natives, [2], "atleast")
    assert result.failed


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_composite_fixpoint_is_domain_consistent(seed):
    cfg = GenConfig(max_n=4, seed=0)
    inst = random_among_instance(cfg, rng_for(seed), universe_size=4)
    assert check_among_instance(inst, modes=("atmost", "atleast")) == []


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40, deadline=None)
def test_arbitrary_unary_signatures_stay_domain_consistent(seed):
    # per-position maps need not be shared or two-valued; channeling must
    # still land on exactly the oracle-supported native values
    from regcount import GenConfig, enumerate_support_native, propagate_composite, random_cdfa

    rng = rng_for(seed)
    dfa = random_cdfa(GenConfig(max_n=4, seed=0), rng)
    n = int(rng.integers(1, 5))
    universe = list(range(int(rng.integers(2, 6))))
    sig = SignatureMap(
        [{v: int(rng.integers(0, dfa.num_symbols)) for v in universe} for _ in range(n)]
    )
    natives = []
    for _ in range(n):
        mask = int(rng.integers(1, 2 ** len(universe)))
        natives.append([v for v in universe if mask >> v & 1])
    counter = [int(rng.integers(0, n + 1))]
    for mode in ("atmost", "atleast"):
        result = propagate_composite(dfa, sig, natives, counter, mode)
        report = enumerate_support_native(dfa, sig, natives, counter, mode)
        if result.failed:
            assert not report.satisfiable
        else:
            assert [set(d) for d in result.native_domains] == [set(s) for s in report.supported]
            assert set(result.counter_values) == report.supported_counter
