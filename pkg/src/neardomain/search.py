"""Exhaustive search for all near-domains of a small order, up to isomorphism.

Left distributivity pins the whole addition table to the single row
theta(x) = 1 + x, because a + b = a * (1 + a^-1 * b) for nonzero a.  The
search therefore fixes one multiplication table per isomorphism type of
group of order n - 1 and backtracks over candidate rows theta, propagating
the Latin-column constraint on every assignment and checking the
coefficient axiom on completed tables.  Survivors are canonicalized and
deduplicated, so the result lists pairwise non-isomorphic tables.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations

from .errors import ContractError
from .smallgroups import group_tables_of_order
from .tables import (
    NearDomainTable,
    element_add_order,
    element_mul_order,
    is_near_field,
    make_table,
)

__all__ = [
    "MAX_ORDER",
    "SearchResult",
    "enumerate_near_domains",
    "verify_all_near_fields",
    "canonical_form",
]

MAX_ORDER = 9


@dataclass(frozen=True)
class SearchResult:
    """Canonical forms of every near-domain of one order, plus search stats."""

    order: int
    tables: tuple[NearDomainTable, ...]
    nodes: int
    seconds: float


def _shift_group(table) -> tuple[tuple[int, ...], ...]:
    """Place a group table for the nonzero elements inside a carrier with 0."""
    m = len(table)
    n = m + 1
    mul = [[0] * n]
    for i in range(m):
        mul.append([0] + [table[i][j] + 1 for j in range(m)])
    return tuple(tuple(row) for row in mul)


def _addition_from_theta(n, mul, inv, theta):
    add = [list(range(n))]
    for a in range(1, n):
        row_a = mul[a]
        inv_row = mul[inv[a]]
        add.append([row_a[theta[inv_row[b]]] for b in range(n)])
    return add

def _axiom4_holds(n, add, mul) -> bool:
    index_of = [
        {v: c for c, v in enumerate(add[s])} for s in range(n)
    ]
    for a in range(n):
        row_a = add[a]
        for b in range(n):
            s = row_a[b]
            row_b = add[b]
            d = index_of[s][row_a[row_b[1]]]
            row_d = mul[d]
            row_s = add[s]
            for x in range(n):
                if row_a[row_b[x]] != row_s[row_d[x]]:
                    return False
    return True


def _search_theta(n, mul, inv, theta, used, col_used, v, nodes, out):
    """Backtrack over theta(v), theta(v+1), ...; theta(0) = 1 is pinned."""
    if v == n:
        add = _addition_from_theta(n, mul, inv, theta)
        if _axiom4_holds(n, add, mul):
            out.append(tuple(tuple(row) for row in add))
        return
    for w in range(n):
        if used[w]:
            continue
        nodes[0] += 1
        placed = []
        ok = True
        for a in range(1, n):
            c = mul[a][v]
            val = mul[a][w]
            col = col_used[c]
            if val in col:
                ok = False
                break
            col.add(val)
            placed.append((c, val))
        if ok:
            theta[v] = w
            used[w] = True
            _search_theta(n, mul, inv, theta, used, col_used, v + 1, nodes, out)
            used[w] = False
            theta[v] = -1
        for c, val in placed:
            col_used[c].discard(val)


def _branch(args):
    """One branch of the search, keyed by the first undetermined theta value."""
    n, mul, first = args
    inv = [0] * n
    for a in range(1, n):
        inv[a] = mul[a].index(1)
    theta = [-1] * n
    theta[0] = 1
    used = [False] * n
    used[1] = True
    # every column c >= 1 already holds the row-0 entry c
    col_used = [set() for _ in range(n)]
    for c in range(1, n):
        col_used[c].add(c)
    nodes = [0]
    out = []
    w = first
    if used[w]:
        return [], 0
    nodes[0] += 1
    placed = []
    ok = True
    for a in range(1, n):
        c = mul[a][1]
        val = mul[a][w]
        col = col_used[c]
        if val in col:
            ok = False
            break
        col.add(val)
        placed.append((c, val))
    if ok:
        theta[1] = w
        used[w] = True
        _search_theta(n, mul, inv, theta, used, col_used, 2, nodes, out)
    return out, nodes[0]


def canonical_form(t: NearDomainTable) -> NearDomainTable:
    """Lexicographically minimal relabeling fixing 0 and 1.

    Relabelings are restricted to bijections preserving each element's
    multiplicative and additive order (they all do under isomorphism), which
    keeps the search tiny without changing which tables collapse together.
    """
    n = t.order
    invariant = {
        x: (element_mul_order(t, x), element_add_order(t, x)) for x in range(2, n)
    }
    classes: dict = {}
    for x in range(2, n):
        classes.setdefault(invariant[x], []).append(x)
    ordered_keys = sorted(classes)
    blocks = [classes[key] for key in ordered_keys]
    # target positions 2..n-1 are assigned block by block
    targets = []
    start = 2
    for block in blocks:
        targets.append(list(range(start, start + len(block))))
        start += len(block)

    best = None
    for arrangement in _products_of_permutations(blocks):
        sigma = [0] * n
        sigma[0], sigma[1] = 0, 1
        for block_positions, members in zip(targets, arrangement):
            for position, member in zip(block_positions, members):
                sigma[member] = position
        flat = []
        for table in (t.add, t.mul):
            relabeled = [[0] * n for _ in range(n)]
            for a in range(n):
                sa = sigma[a]
                row = table[a]
                out_row = relabeled[sa]
                for b in range(n):
                    out_row[sigma[b]] = sigma[row[b]]
            for row in relabeled:
                flat.extend(row)
        flat = tuple(flat)
        if best is None or flat < best:
            best = flat
    half = n * n
    add = tuple(tuple(best[r * n:(r + 1) * n]) for r in range(n))
    mul = tuple(
        tuple(best[half + r * n: half + (r + 1) * n]) for r in range(n)
    )
    return make_table(add, mul, label=t.label)


def _products_of_permutations(blocks):
    if not blocks:
        yield ()
        return
    head, tail = blocks[0], blocks[1:]
    for perm in permutations(head):
        for rest in _products_of_permutations(tail):
            yield (perm,) + rest


def enumerate_near_domains(order: int, jobs: int = 1) -> SearchResult:
    """All near-domains of the given order, canonicalized and deduplicated.

    The candidate space is partitioned by the value of theta(1); partitions
    are independent, so the result is the same for any number of jobs.
    """
    if not 2 <= order <= MAX_ORDER:
        raise ContractError(
            f"order {order} outside the supported range [2, {MAX_ORDER}]"
        )
    if jobs < 1:
        raise ContractError("jobs must be at least 1")
    started = time.monotonic()
    nodes = 0
    survivors = []
    for _name, group in group_tables_of_order(order - 1):
        mul = _shift_group(group)
        tasks = [(order, mul, w) for w in range(order) if w != 1]
        if jobs == 1:
            results = [_branch(task) for task in tasks]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_branch, tasks))
        for adds, branch_nodes in results:
            nodes += branch_nodes
            for add in adds:
                survivors.append(make_table(add, mul))
    canonical = {}
    for t in survivors:
        c = canonical_form(t)
        canonical[(c.add, c.mul)] = c
    ordered = [canonical[key] for key in sorted(canonical)]
    tables = tuple(
        c.with_label(f"search-{order}-{i}") for i, c in enumerate(ordered)
    )
    return SearchResult(
        order=order,
        tables=tables,
        nodes=nodes,
        seconds=time.monotonic() - started,
    )


def verify_all_near_fields(result) -> bool:
    """True iff every table found (a SearchResult or iterable) is a near-field."""
    tables = result.tables if isinstance(result, SearchResult) else result
    return all(is_near_field(t) for t in tables)
