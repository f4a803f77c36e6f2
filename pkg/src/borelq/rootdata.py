"""Cartan data and positive roots of the finite simple Lie algebras.

Conventions
-----------
Nodes are labelled ``1..n``.  ``cartan[i][j] = 2 (a_i, a_j) / (a_i, a_i)`` so
that ``D @ C`` is symmetric with ``D = diag(d_i)`` and ``(a_i, a_i) = 2 d_i``.
The ``d_i`` are coprime positive integers.  Labelling of the non simply laced
types follows Bourbaki:

* ``B_n``: the short simple root is ``a_n``, ``d = (2, ..., 2, 1)``.
* ``C_n``: the long simple root is ``a_n``, ``d = (1, ..., 1, 2)``.
* ``F_4``: ``a_1, a_2`` long, ``a_3, a_4`` short, ``d = (2, 2, 1, 1)``.
* ``G_2``: ``a_1`` short, ``a_2`` long, ``d = (1, 3)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import gcd
from functools import lru_cache, reduce

Root = tuple[int, ...]

MAX_RANK = 8

# known |positive roots|, used as a self-check
_ROOT_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


class RootDataError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RootData:
    type_label: str
    series: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    symmetrizers: tuple[int, ...]
    qij_exponents: tuple[tuple[int, ...], ...]
    positive_roots: tuple[Root, ...]
    _root_index: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    # instances are interned by build_root_data; the label identifies them
    def __eq__(self, other) -> bool:
        return isinstance(other, RootData) and self.type_label == other.type_label

    def __hash__(self) -> int:
        return hash(self.type_label)

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def C(self, i: int, j: int) -> int:
        """Cartan entry ``C_{i,j}`` with 1-based node labels."""
        return self.cartan[i - 1][j - 1]

    def d(self, i: int) -> int:
        return self.symmetrizers[i - 1]

    def B(self, i: int, j: int) -> int:
        """``(a_i, a_j)``, so that ``q_{i,j} = q ** B(i, j)``."""
        return self.qij_exponents[i - 1][j - 1]

    def neighbours(self, i: int) -> list[int]:
        """Nodes ``j != i`` with ``C_{j,i} < 0``."""
        return [j for j in self.nodes if j != i and self.C(j, i) < 0]

    def is_root(self, alpha: Root) -> bool:
        return tuple(alpha) in self._root_index

    def height(self, alpha: Root) -> int:
        return sum(alpha)

    def simple_root(self, i: int) -> Root:
        return tuple(1 if k == i - 1 else 0 for k in range(self.rank))

    @property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=sum)

    def pairing_coroot(self, j: int, alpha: Root) -> int:
        """``<a_j^vee, alpha>`` for ``alpha`` in simple-root coordinates."""
        return sum(c * self.C(j, k + 1) for k, c in enumerate(alpha))

    @property
    def simply_laced(self) -> bool:
        return all(d == 1 for d in self.symmetrizers)


def parse_type_label(label: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", label)
    if not m:
        raise RootDataError(f"unknown type label {label!r}")
    return m.group(1).upper(), int(m.group(2))


def _edges(series: str, n: int) -> tuple[list[int], dict[tuple[int, int], int]]:
    """Root lengths squared / 2 and the off-diagonal ``(a_i, a_j)``."""
    if n < 1 or n > MAX_RANK:
        raise RootDataError(f"rank {n} outside supported range 1..{MAX_RANK}")
    chain = {(i, i + 1): -1 for i in range(1, n)}
    if series == "A":
        return [1] * n, chain
    if series == "B":
        if n < 2:
            raise RootDataError("B_n needs n >= 2")
        d = [2] * (n - 1) + [1]
        return d, {(i, i + 1): -2 for i in range(1, n)}
    if series == "C":
        if n < 2:
            raise RootDataError("C_n needs n >= 2")
        d = [1] * (n - 1) + [2]
        e = {(i, i + 1): -1 for i in range(1, n - 1)}
        e[(n - 1, n)] = -2
        return d, e
    if series == "D":
        if n < 4:
            raise RootDataError("D_n needs n >= 4")
        e = {(i, i + 1): -1 for i in range(1, n - 1)}
        e[(n - 2, n)] = -1
        return [1] * n, e
    if series == "E":
        if n not in (6, 7, 8):
            raise RootDataError("E_n needs n in {6, 7, 8}")
        e = {(1, 3): -1, (3, 4): -1, (2, 4): -1}
        e.update({(k, k + 1): -1 for k in range(4, n)})
        return [1] * n, e
    if series == "F":
        if n != 4:
            raise RootDataError("F_n needs n = 4")
        return [2, 2, 1, 1], {(1, 2): -2, (2, 3): -2, (3, 4): -1}
    if series == "G":
        if n != 2:
            raise RootDataError("G_n needs n = 2")
        return [1, 3], {(1, 2): -3}
    raise RootDataError(f"unknown series {series!r}")


def _closure(cartan: list[list[int]]) -> list[Root]:
    """Positive roots by height, via the a_j-string criterion."""
    n = len(cartan)
    simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    roots: set[Root] = set(simple)
    layer = list(simple)
    out = list(simple)
    while layer:
        nxt: list[Root] = []
        for alpha in layer:
            for j in range(n):
                # p = how far the a_j-string extends downward from alpha
                p = 0
                beta = list(alpha)
                while True:
                    beta[j] -= 1
                    if tuple(beta) in roots:
                        p += 1
                    else:
                        break
                pair = sum(c * cartan[j][k] for k, c in enumerate(alpha))
                if p - pair > 0:
                    gamma = list(alpha)
                    gamma[j] += 1
                    gamma = tuple(gamma)
                    if gamma not in roots:
                        roots.add(gamma)
                        nxt.append(gamma)
        nxt.sort(key=lambda r: tuple(-c for c in r))
        out.extend(nxt)
        layer = nxt
    return out


@lru_cache(maxsize=None)
def build_root_data(type_label: str) -> RootData:
    """Root data for a finite simple type such as ``"A2"`` or ``"G2"``."""
    series, n = parse_type_label(type_label)
    dvec, off = _edges(series, n)
    bil = [[0] * n for _ in range(n)]
    for i in range(n):
        bil[i][i] = 2 * dvec[i]
    for (i, j), v in off.items():
        bil[i - 1][j - 1] = v
        bil[j - 1][i - 1] = v
    cartan = [[bil[i][j] // dvec[i] for j in range(n)] for i in range(n)]
    assert all(bil[i][j] % dvec[i] == 0 for i in range(n) for j in range(n))
    assert reduce(gcd, dvec) == 1
    roots = _closure(cartan)
    if len(roots) != _ROOT_COUNT[series](n):
        raise AssertionError(f"closure produced {len(roots)} roots for {series}{n}")
    rd = RootData(
        type_label=f"{series}{n}",
        series=series,
        rank=n,
        cartan=tuple(tuple(r) for r in cartan),
        symmetrizers=tuple(dvec),
        qij_exponents=tuple(tuple(r) for r in bil),
        positive_roots=tuple(roots),
    )
    rd._root_index.update({r: k for k, r in enumerate(roots)})
    return rd


def coweight_pairing(rd: RootData, i: int, alpha: Root) -> int:
    """``<w_i^vee, alpha>``: the i-th simple-root coordinate of a positive root."""
    alpha = tuple(alpha)
    if not rd.is_root(alpha):
        raise RootDataError(f"{alpha} is not a positive root of {rd.type_label}")
    if not 1 <= i <= rd.rank:
        raise RootDataError(f"node {i} out of range for {rd.type_label}")
    return alpha[i - 1]


def coweight_pairings(rd: RootData) -> dict[Root, tuple[int, ...]]:
    return {a: tuple(coweight_pairing(rd, i, a) for i in rd.nodes) for a in rd.positive_roots}
