"""Brute-force enumeration oracle: exact supports for every variable and N.

The oracle walks every domain-admissible ground sequence, runs the automaton
transition by transition, and records which symbols, native values and
N-values occur in at least one solution under the requested semantics.  It is
the reference every consistency claim is checked against, so it deliberately
shares no code with the sweep tables: plain recursion over positions, no
memoization, no trimming.
"""

from __future__ import annotations

import os
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from math import prod

from .automaton import CounterDfa
from .domains import COUNTER_VAR, DomainStore
from .propagators import PropagationOutcome
from .signature import SignatureMap

#: Default ceiling on the number of ground sequences; override per call or
#: via the REGCOUNT_CAP environment variable (used by the CLI).
DEFAULT_CAP = 10**7


class CapExceeded(Exception):
    """The instance has more ground sequences than the configured cap."""


@dataclass
class SupportReport:
    """Exactly-supported values per position and for N, plus solution counts.

    A solution is a full assignment: a ground sequence together with one
    compatible value of N, so a sequence with counter c contributes one
    solution per compatible N-value.
    """

    supported: list[set[int]]
    supported_counter: set[int]
    solution_count: int
    satisfiable: bool


def enumerate_support(dfa: CounterDfa, store: DomainStore, mode: str, cap: int = DEFAULT_CAP) -> SupportReport:
    """Exhaustively enumerate admissible sequences under one semantics."""
    return _enumerate(dfa, store, (str(mode),), cap)[str(mode)]


def enumerate_all_modes(dfa: CounterDfa, store: DomainStore, cap: int = DEFAULT_CAP) -> dict[str, SupportReport]:
    """One enumeration pass, reports for atmost, atleast and exact at once."""
    return _enumerate(dfa, store, ("atmost", "atleast", "exact"), cap)


def _enumerate(dfa: CounterDfa, store: DomainStore, modes: tuple[str, ...], cap: int) -> dict[str, SupportReport]:
    n = store.n
    domains = [store.symbols(i) for i in range(n)]
    if prod(len(d) for d in domains) > cap:
        raise CapExceeded(f"instance exceeds the enumeration cap of {cap} ground sequences")
    counter_dom = store.counter
    counter_set = set(counter_dom)
    dom_size = len(counter_dom)
    nxt, inc = dfa.next_state, dfa.increment

    mode_bits = {m: 1 << k for k, m in enumerate(modes)}
    supported = {m: [set() for _ in range(n)] for m in modes}
    counts = dict.fromkeys(modes, 0)
    min_counter_seen: int | None = None
    max_counter_seen: int | None = None
    exact_hits: set[int] = set()

    def leaf(counter: int) -> int:
        nonlocal min_counter_seen, max_counter_seen
        if min_counter_seen is None or counter < min_counter_seen:
            min_counter_seen = counter
        if max_counter_seen is None or counter > max_counter_seen:
            max_counter_seen = counter
        bits = 0
        for m in modes:
            if m == "atmost":
                compatible = dom_size - bisect_left(counter_dom, counter)
            elif m == "atleast":
                compatible = bisect_right(counter_dom, counter)
            else:
                if counter in counter_set:
                    exact_hits.add(counter)
                    compatible = 1
                else:
                    compatible = 0
            if compatible:
                counts[m] += compatible
                bits |= mode_bits[m]
        return bits

    def rec(pos: int, state: int, counter: int) -> int:
        if pos == n:
            return leaf(counter)
        bits = 0
        marks = supported
        for sym in domains[pos]:
            sub = rec(pos + 1, nxt[state][sym], counter + inc[state][sym])
            if sub:
                bits |= sub
                for m in modes:
                    if sub & mode_bits[m]:
                        marks[m][pos].add(sym)
        return bits

    rec(0, dfa.start, 0)

    reports = {}
    for m in modes:
        if m == "atmost":
            n_support = set() if min_counter_seen is None else {v for v in counter_dom if v >= min_counter_seen}
        elif m == "atleast":
            n_support = set() if max_counter_seen is None else {v for v in counter_dom if v <= max_counter_seen}
        else:
            n_support = set(exact_hits)
        reports[m] = SupportReport(
            supported=[set(s) for s in supported[m]],
            supported_counter=n_support,
            solution_count=counts[m],
            satisfiable=counts[m] > 0,
        )
    return reports


def enumerate_support_native(
    dfa: CounterDfa,
    sig: SignatureMap,
    native_domains: list[list[int]],
    counter_values: list[int],
    mode: str,
    cap: int = DEFAULT_CAP,
) -> SupportReport:
    """Support report over native values for a signature instance.

    Same exhaustive recursion, but each step maps the position's native value
    through the signature before taking the transition.
    """
    n = len(native_domains)
    domains = [sorted(d) for d in native_domains]
    if prod(len(d) for d in domains) > cap:
        raise CapExceeded(f"instance exceeds the enumeration cap of {cap} ground sequences")
    counter_dom = sorted(set(counter_values))
    counter_set = set(counter_dom)
    dom_size = len(counter_dom)
    nxt, inc = dfa.next_state, dfa.increment
    mode = str(mode)

    supported: list[set[int]] = [set() for _ in range(n)]
    count = 0
    min_seen: int | None = None
    max_seen: int | None = None
    exact_hits: set[int] = set()

    def leaf(counter: int) -> bool:
        nonlocal count, min_seen, max_seen
        if min_seen is None or counter < min_seen:
            min_seen = counter
        if max_seen is None or counter > max_seen:
            max_seen = counter
        if mode == "atmost":
            compatible = dom_size - bisect_left(counter_dom, counter)
        elif mode == "atleast":
            compatible = bisect_right(counter_dom, counter)
        else:
            compatible = 1 if counter in counter_set else 0
            if compatible:
                exact_hits.add(counter)
        count += compatible
        return compatible > 0

    def rec(pos: int, state: int, counter: int) -> bool:
        if pos == n:
            return leaf(counter)
        any_ok = False
        for value in domains[pos]:
            sym = sig.symbol_of(pos, value)
            if rec(pos + 1, nxt[state][sym], counter + inc[state][sym]):
                supported[pos].add(value)
                any_ok = True
        return any_ok

    rec(0, dfa.start, 0)

    if mode == "atmost":
        n_support = set() if min_seen is None else {v for v in counter_dom if v >= min_seen}
    elif mode == "atleast":
        n_support = set() if max_seen is None else {v for v in counter_dom if v <= max_seen}
    else:
        n_support = set(exact_hits)
    return SupportReport(supported, n_support, count, count > 0)


@dataclass
class DcVerdict:
    """Comparison of a propagation outcome against the oracle.

    ``unsound`` lists removed-but-supported values, ``gaps`` lists
    kept-but-unsupported ones, and ``failed_on_satisfiable`` flags a FAILED
    outcome on an instance the oracle can solve.  Domain-consistent
    propagators must produce an all-clear on both lists; the incomplete exact
    propagator is allowed gaps but nothing else.
    """

    unsound: list[tuple[int | str, int]] = field(default_factory=list)
    gaps: list[tuple[int | str, int]] = field(default_factory=list)
    failed_on_satisfiable: bool = False

    def ok(self, mode: str) -> bool:
        if self.failed_on_satisfiable or self.unsound:
            return False
        if str(mode) == "exact":
            return True
        return not self.gaps

    def __bool__(self) -> bool:  # truthy when something is wrong
        return bool(self.unsound or self.gaps or self.failed_on_satisfiable)


def check_dc(
    dfa: CounterDfa,
    store_before: DomainStore,
    mode: str,
    outcome: PropagationOutcome,
    cap: int = DEFAULT_CAP,
    report: SupportReport | None = None,
) -> DcVerdict:
    """Judge an outcome against the oracle run on the pre-propagation store.

    Pass ``report`` to reuse an existing enumeration of ``store_before``.
    """
    if report is None:
        report = enumerate_support(dfa, store_before, mode, cap)
    if outcome.failed:
        return DcVerdict(failed_on_satisfiable=report.satisfiable)
    removed = set(outcome.removals)
    verdict = DcVerdict()
    for i in range(store_before.n):
        for sym in store_before.symbols(i):
            is_supported = sym in report.supported[i]
            if (i, sym) in removed:
                if is_supported:
                    verdict.unsound.append((i, sym))
            elif not is_supported:
                verdict.gaps.append((i, sym))
    for v in store_before.counter:
        is_supported = v in report.supported_counter
        if (COUNTER_VAR, v) in removed:
            if is_supported:
                verdict.unsound.append((COUNTER_VAR, v))
        elif not is_supported:
            verdict.gaps.append((COUNTER_VAR, v))
    return verdict


def cap_from_env(default: int = DEFAULT_CAP) -> int:
    """Enumeration cap, honoring the REGCOUNT_CAP environment variable."""
    raw = os.environ.get("REGCOUNT_CAP", "")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        return default
    return value if value > 0 else default
