"""Multiplication tables of small finite groups, as lists of lists of element indices."""
from __future__ import annotations

import re
from itertools import product
from typing import Dict, List, Sequence, Tuple

Table = List[List[int]]


def cyclic_table(n: int) -> Table:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def product_table(a: Table, b: Table) -> Table:
    """Direct product; element (g, h) has index g * |b| + h."""
    m = len(b)
    n = len(a) * m
    out = [[0] * n for _ in range(n)]
    for x in range(n):
        g1, h1 = divmod(x, m)
        for y in range(n):
            g2, h2 = divmod(y, m)
            out[x][y] = a[g1][g2] * m + b[h1][h2]
    return out


def abelian_table(invariants: Sequence[int]) -> Table:
    table = [[0]]
    for n in invariants:
        table = product_table(table, cyclic_table(n))
    return table


def dihedral_table(n: int) -> Table:
    """Symmetries of the n-gon (order 2n); r^a s^b has index 2a + b."""
    def mul(x, y):
        a, b = divmod(x, 2)
        c, d = divmod(y, 2)
        return 2 * ((a + (c if b == 0 else -c)) % n) + (b + d) % 2
    return [[mul(x, y) for y in range(2 * n)] for x in range(2 * n)]


# quaternion units 1, i, j, k: unit product and sign
_QUAT = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
    (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
    (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
}


def quaternion_table() -> Table:
    """Q_8; the element s*u (s = +-1, u in 1,i,j,k) has index 2u + (s < 0)."""
    def mul(x, y):
        u, s = divmod(x, 2)
        v, t = divmod(y, 2)
        w, sign = _QUAT[(u, v)]
        neg = (s + t + (sign < 0)) % 2
        return 2 * w + neg
    return [[mul(x, y) for y in range(8)] for x in range(8)]


def _partitions(n: int, largest=None):
    largest = largest or n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _factor(n: int) -> Dict[int, int]:
    out, p = {}, 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_invariants_of_order(n: int) -> List[Tuple[int, ...]]:
    """Primary decompositions of the abelian groups of order n."""
    per_prime = [[tuple(p ** e for e in part) for part in _partitions(k)] for p, k in sorted(_factor(n).items())]
    out = []
    for combo in product(*per_prime):
        out.append(tuple(sorted((q for part in combo for q in part), reverse=True)))
    return out or [()]


def group_name(invariants: Sequence[int]) -> str:
    if not invariants:
        return "C1"
    return "x".join(f"C{q}" for q in invariants)


def corpus_groups(max_order: int = 16) -> Dict[str, Table]:
    """All abelian groups of order <= max_order, plus D_4 and Q_8."""
    out = {}
    for n in range(1, max_order + 1):
        for inv in abelian_invariants_of_order(n):
            out[group_name(inv)] = abelian_table(inv)
    out["D4"] = dihedral_table(4)
    out["Q8"] = quaternion_table()
    return out


_NAME = re.compile(r"^C(\d+)(?:\^(\d+))?$")


def group_table(name: str) -> Table:
    """Table for names such as 'C4', 'C2^4', 'C2xC4', 'V4', 'D4' (order 8) or 'Q8'."""
    name = name.replace(" ", "").replace("×", "x")
    if name == "V4":
        return abelian_table((2, 2))
    if name == "Q8":
        return quaternion_table()
    m = re.match(r"^D(\d+)$", name)
    if m:
        return dihedral_table(int(m.group(1)))
    invariants = []
    for part in name.split("x"):
        m = _NAME.match(part)
        if not m:
            raise ValueError(f"cannot parse group name {name!r}")
        invariants += [int(m.group(1))] * int(m.group(2) or 1)
    return abelian_table(invariants)
