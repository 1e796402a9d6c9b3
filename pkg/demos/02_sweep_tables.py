"""The dynamic-programming tables behind the propagators.

For domains rather than fixed words, the propagators need the extremal
counter value per state and prefix length.  Keeping one value per *state*
(not one global extremum) is essential: a state that currently looks cheap
can still own the most expensive continuation.  Watch rrtr pick up 4 in the
last row below, fed by rrt, which was the *smallest* entry one row earlier.
"""

from regcount import DomainStore, SweepTable, catalog, format_rows

rst = catalog("RST")
r, t = rst.symbol_id("r"), rst.symbol_id("t")
store = DomainStore(rst.num_symbols, [(r, t)] * 6, (0,))

table = SweepTable.compute(rst, store)

print("six variables over {r, t}: maximum counter per state and prefix length")
for line in format_rows(table.pre_max, rst.state_names, 0):
    print(" ", line)

print()
print("matching suffix table (maximum completion cost per state):")
for line in format_rows(table.suf_max[1:], rst.state_names, 1):
    print(" ", line)

print()
print(f"global counter range over all admissible words: "
      f"[{table.global_min()}, {table.global_max()}]")
print("consistency: the suffix table at position 1 prices the whole sequence,")
print(f"  suf_min[1][start] = {table.suf_min[1][rst.start]}, "
      f"suf_max[1][start] = {table.suf_max[1][rst.start]}")
