"""Domain-consistent filtering for the two bound semantics.

`propagate_atmost` keeps a symbol exactly when its cheapest completion stays
within max(dom(N)); `propagate_atleast` mirrors it with the costliest
completion against min(dom(N)).  Both are exact characterizations, so one
pass reaches the fixpoint and every surviving value has a witness sequence.
"""

from regcount import (
    COUNTER_VAR,
    DomainStore,
    catalog,
    enumerate_support,
    propagate_atleast,
    propagate_atmost,
)

b = catalog("B")
one, two = b.symbol_id("1"), b.symbol_id("2")


def show(label, store, outcome):
    print(f"  {label}: {outcome.status}", end="")
    if outcome.removals:
        pretty = [
            f"N != {v}" if var == COUNTER_VAR else f"x{var + 1} != {b.alphabet[v]}"
            for var, v in outcome.removals
        ]
        print(f", removed {', '.join(pretty)}", end="")
    domains = ["{" + ",".join(b.alphabet[s] for s in store.symbols(i)) + "}" for i in range(store.n)]
    print(f"  ->  x in {domains}, N in {store.counter}")


print("sequence <2, x, 2> with x in {1, 2}; admissible counters are 0 (x=1) and 2 (x=2)")
print()

print("atmost semantics (counter <= N):")
store = DomainStore(b.num_symbols, [(two,), (one, two), (two,)], (0, 1, 2))
show("N in {0,1,2}", store, propagate_atmost(b, store))
store = DomainStore(b.num_symbols, [(two,), (one, two), (two,)], (0,))
show("N in {0}    ", store, propagate_atmost(b, store))

print()
print("atleast semantics (counter >= N):")
store = DomainStore(b.num_symbols, [(two,), (one, two), (two,)], (2,))
show("N in {2}    ", store, propagate_atleast(b, store))
store = DomainStore(b.num_symbols, [(two,), (one, two), (two,)], (0, 2, 7))
show("N in {0,2,7}", store, propagate_atleast(b, store))

print()
print("the oracle confirms the fixpoints are exactly the supported values:")
store = DomainStore(b.num_symbols, [(two,), (one, two), (two,)], (0, 2, 7))
report = enumerate_support(b, store, "atleast")
print(f"  supported x2 = {sorted(b.alphabet[s] for s in report.supported[1])}, "
      f"supported N = {sorted(report.supported_counter)}")
