"""Exact counting: why its propagator is stronger, and where it gives up.

Deciding exact counting is NP-hard (the one-state adder automaton encodes
subset-sum), so no polynomial propagator can remove every unsupported value.
The exact rule intersects, per reachable state, the interval of achievable
full-sequence counters with dom(N).  That is strictly stronger than running
atmost and atleast to their mutual fixpoint, yet still incomplete: intervals
merge counters that are not individually achievable.
"""

from regcount import (
    COUNTER_VAR,
    DomainStore,
    catalog,
    enumerate_support,
    propagate_decomposed,
    propagate_exact,
)

b = catalog("B")
one, two = b.symbol_id("1"), b.symbol_id("2")


def pretty(outcome):
    if not outcome.removals:
        return "nothing removed"
    return ", ".join(
        f"N != {v}" if var == COUNTER_VAR else f"x{var + 1} != {b.alphabet[v]}"
        for var, v in outcome.removals
    )


print("1) <2, x, 2>, N in {0,1,2}: the counter can be 0 or 2, never 1")
doms = [(two,), (one, two), (two,)]
print("   decomposition:", pretty(propagate_decomposed(b, DomainStore(2, doms, (0, 1, 2)))))
print("   exact rule:   ", pretty(propagate_exact(b, DomainStore(2, doms, (0, 1, 2)))))
report = enumerate_support(b, DomainStore(2, doms, (0, 1, 2)), "exact")
print(f"   oracle:        supported N = {sorted(report.supported_counter)}  (both keep N = 1)")

print()
print("2) <2, x, 1, y, z>, N = 1: only the exact rule sees z = 2 is impossible")
doms = [(two,), (one, two), (one,), (one, two), (one, two)]
print("   decomposition:", pretty(propagate_decomposed(b, DomainStore(2, doms, (1,)))))
print("   exact rule:   ", pretty(propagate_exact(b, DomainStore(2, doms, (1,)))))

print()
print("3) <2, 2, x, 2, y>, N in {1,3}: per-state intervals merge 1 and 3,")
print("   so even the exact rule keeps the unsupported y = 2")
doms = [(two,), (two,), (one, two), (two,), (one, two)]
out = propagate_exact(b, DomainStore(2, doms, (1, 3)))
print("   exact rule:   ", pretty(out))
report = enumerate_support(b, DomainStore(2, doms, (1, 3)), "exact")
print(f"   oracle:        supported y = {sorted(b.alphabet[s] for s in report.supported[4])}")

print()
print("4) where interval pruning does land: ground <2, 2> with N in {0,1,2}")
out = propagate_exact(b, DomainStore(2, [(two,), (two,)], (0, 1, 2)))
print("   exact rule:   ", pretty(out))
