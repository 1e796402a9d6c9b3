"""Counting over native integer values through unary signature maps.

The propagators speak automaton symbols.  When the constraint is about
native values ("how many of these variables land in the set {2, 5}?"), a
per-position map sends each value to a symbol (here: in / notin), the
propagator runs symbolically, and prunings are channeled back to values.
Because each map reads a single position, the channeled fixpoint is domain
consistent on the native variables too.
"""

from regcount import among_signature, catalog, enumerate_support_native, propagate_composite

among = catalog("AMONG")
members = {2, 5}
natives = [[1, 2, 3], [5], [1, 4], [2, 5, 6]]

sig = among_signature(among, members, natives)
print(f"members = {sorted(members)}")
print(f"native domains = {natives}")
print()

for mode, counter in (("atleast", [3]), ("atmost", [1])):
    result = propagate_composite(among, sig, natives, counter, mode)
    print(f"{mode} with N = {counter}: {result.status}")
    print(f"  native domains after channeling: {result.native_domains}")
    report = enumerate_support_native(among, sig, natives, counter, mode)
    print(f"  oracle supported values:         {[sorted(s) for s in report.supported]}")
    print()

print("a hole in dom(N) still propagates exactly on the symbol side:")
result = propagate_composite(among, sig, natives, [0, 4], "atleast")
print(f"  atleast with N = [0, 4] -> {result.status}, domains {result.native_domains}")
