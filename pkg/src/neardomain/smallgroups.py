"""Multiplication tables for the groups of order 1 through 8.

One fixed table per isomorphism type, on elements 0..m-1 with identity 0.
These seed the multiplicative part of the exhaustive near-domain search;
orders up to 8 cover carriers up to 9.
"""

from __future__ import annotations

from itertools import permutations

__all__ = ["group_tables_of_order", "GROUP_ORDER_MAX"]

GROUP_ORDER_MAX = 8


def _cyclic(m):
    return tuple(tuple((i + j) % m for j in range(m)) for i in range(m))


def _direct(g, h):
    gm, hm = len(g), len(h)

    def enc(a, b):
        return a * hm + b

    table = [[0] * (gm * hm) for _ in range(gm * hm)]
    for a1 in range(gm):
        for b1 in range(hm):
            for a2 in range(gm):
                for b2 in range(hm):
                    table[enc(a1, b1)][enc(a2, b2)] = enc(g[a1][a2], h[b1][b2])
    return tuple(tuple(row) for row in table)


def _sym3():
    elems = sorted(permutations(range(3)))  # identity sorts first
    index = {p: i for i, p in enumerate(elems)}
    return tuple(
        tuple(index[tuple(p[q[x]] for x in range(3))] for q in elems) for p in elems
    )


def _dihedral4():
    # element (i, j) is rotation^i * flip^j, index i + 4j
    def mul(i1, j1, i2, j2):
        i = (i1 + (i2 if j1 == 0 else -i2)) % 4
        return i + 4 * ((j1 + j2) % 2)

    return tuple(
        tuple(mul(i1, j1, i2, j2) for j2 in range(2) for i2 in range(4))
        for j1 in range(2)
        for i1 in range(4)
    )


def _quaternion():
    # units e, i, j, k with a sign bit; index = unit + 4*sign
    # sign[u][v] is the extra minus in u*v: i*i = -e, i*j = +k, j*i = -k, ...
    unit = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    sign = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 1, 1, 0], [0, 0, 1, 1]]

    def mul(a, b):
        ua, sa = a % 4, a // 4
        ub, sb = b % 4, b // 4
        return unit[ua][ub] + 4 * ((sa + sb + sign[ua][ub]) % 2)

    return tuple(tuple(mul(a, b) for b in range(8)) for a in range(8))


_Dihedral4 = _dihedral4()
_C2 = _cyclic(2)

_TABLES = {
    1: (("C1", _cyclic(1)),),
    2: (("C2", _C2),),
    3: (("C3", _cyclic(3)),),
    4: (("C4", _cyclic(4)), ("C2xC2", _direct(_C2, _C2))),
    5: (("C5", _cyclic(5)),),
    6: (("C6", _cyclic(6)), ("S3", _sym3())),
    7: (("C7", _cyclic(7)),),
    8: (
        ("C8", _cyclic(8)),
        ("C4xC2", _direct(_cyclic(4), _C2)),
        ("C2xC2xC2", _direct(_direct(_C2, _C2), _C2)),
        ("D4", _Dihedral4),
        ("Q8", _quaternion()),
    ),
}


def group_tables_of_order(m: int):
    """(name, table) pairs, one per isomorphism type of groups of order m."""
    if m not in _TABLES:
        raise ValueError(f"no group tables stored for order {m}")
    return _TABLES[m]
