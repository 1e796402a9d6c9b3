"""Prefix/suffix extremal-counter tables over the current domains.

For each prefix length ``i`` and state ``q``, the forward tables hold the
minimum (resp. maximum) counter value over all domain-admissible strings
``s_1..s_i`` that lead from the start state to ``q``.  The backward tables
hold, for each suffix start ``i`` and state ``q``, the extremal counter
increase over admissible suffixes ``s_i..s_n`` that end in a state reachable
at position ``n``.  Rows are dense per-state arrays; a state no admissible
string reaches carries ``+inf`` in min rows and ``-inf`` in max rows, which
makes the relaxation loops and the monotonicity ordering fall out of plain
arithmetic.  The per-state trim (keep only the extremal value per state) is
fused into the relaxation as a running min/max, so building one row costs
O(|alphabet| * |states|) and a full table O(n * |alphabet| * |states|).

Tables are rebuilt from scratch on every propagator call; nothing here is
incremental.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .automaton import U64_MAX, CounterDfa
from .domains import DomainStore

#: Sentinel for "no admissible string" in min rows (orders above any value).
UNREACHABLE_MIN = math.inf
#: Sentinel for "no admissible string" in max rows (orders below any value).
UNREACHABLE_MAX = -math.inf


def forward(dfa: CounterDfa, store: DomainStore, mode: str) -> list[list[int | float]]:
    """Rows 0..n of per-state extremal prefix counters; row 0 is {start: 0}."""
    minimize = _minimize(mode)
    sent = UNREACHABLE_MIN if minimize else UNREACHABLE_MAX
    num_states = dfa.num_states
    nxt, inc = dfa.next_state, dfa.increment
    row: list[int | float] = [sent] * num_states
    row[dfa.start] = 0
    rows = [row]
    for i in range(store.n):
        syms = store.symbols(i)
        new: list[int | float] = [sent] * num_states
        for q in range(num_states):
            c = row[q]
            if c == sent:
                continue
            trow = nxt[q]
            irow = inc[q]
            for s in syms:
                c2 = c + irow[s]
                if c2 > U64_MAX:
                    raise OverflowError("prefix counter exceeds 64-bit unsigned range")
                t = trow[s]
                if minimize:
                    if c2 < new[t]:
                        new[t] = c2
                elif c2 > new[t]:
                    new[t] = c2
        row = new
        rows.append(new)
    return rows


def backward(dfa: CounterDfa, store: DomainStore, forward_row_n, mode: str) -> list:
    """Rows 1..n+1 of per-state extremal suffix counters (index 0 unused).

    Row n+1 assigns 0 exactly to the states present in ``forward_row_n``,
    which must be the matching-mode forward row at position n.
    """
    minimize = _minimize(mode)
    sent = UNREACHABLE_MIN if minimize else UNREACHABLE_MAX
    num_states = dfa.num_states
    nxt, inc = dfa.next_state, dfa.increment
    n = store.n
    rows: list = [None] * (n + 2)
    rows[n + 1] = [0 if forward_row_n[q] != sent else sent for q in range(num_states)]
    for i in range(n, 0, -1):
        syms = store.symbols(i - 1)
        nxt_row = rows[i + 1]
        new: list[int | float] = [sent] * num_states
        for q in range(num_states):
            best = sent
            trow = nxt[q]
            irow = inc[q]
            for s in syms:
                c = nxt_row[trow[s]]
                if c == sent:
                    continue
                c2 = c + irow[s]
                if c2 > U64_MAX:
                    raise OverflowError("suffix counter exceeds 64-bit unsigned range")
                if minimize:
                    if c2 < best:
                        best = c2
                elif c2 > best:
                    best = c2
            new[q] = best
        rows[i] = new
    return rows


def _minimize(mode: str) -> bool:
    if mode == "min":
        return True
    if mode == "max":
        return False
    raise ValueError(f"mode must be 'min' or 'max', got {mode!r}")


def row_min(row: Sequence) -> int:
    """Smallest reachable entry of a min row."""
    return min(c for c in row if c != UNREACHABLE_MIN)


def row_max(row: Sequence) -> int:
    """Largest reachable entry of a max row."""
    return max(c for c in row if c != UNREACHABLE_MAX)


@dataclass
class SweepTable:
    """All four vectors for one store: pre/suf in both min and max modes."""

    pre_min: list
    pre_max: list
    suf_min: list
    suf_max: list

    @classmethod
    def compute(cls, dfa: CounterDfa, store: DomainStore) -> "SweepTable":
        pre_min = forward(dfa, store, "min")
        pre_max = forward(dfa, store, "max")
        return cls(
            pre_min=pre_min,
            pre_max=pre_max,
            suf_min=backward(dfa, store, pre_min[-1], "min"),
            suf_max=backward(dfa, store, pre_max[-1], "max"),
        )

    def global_min(self) -> int:
        """Least counter value over admissible full-length strings."""
        return row_min(self.pre_min[-1])

    def global_max(self) -> int:
        """Greatest counter value over admissible full-length strings."""
        return row_max(self.pre_max[-1])


def format_row(row, state_names: Sequence[str]) -> str:
    """Reachable entries as ``name=value`` pairs in state order."""
    parts = [f"{state_names[q]}={int(c)}" for q, c in enumerate(row) if not math.isinf(c)]
    return ",".join(parts)


def format_rows(rows, state_names: Sequence[str], first_index: int) -> list[str]:
    """One ``i: name=value,...`` line per row, numbering from ``first_index``."""
    lines = []
    for offset, row in enumerate(rows):
        if row is None:
            continue
        lines.append(f"{first_index + offset}: {format_row(row, state_names)}")
    return lines
