"""Closed-form q-character constructors.

Type A_n evaluation modules come from semistandard tableaux, parabolic Verma
modules from plane partitions over a strip.  The ``barchi`` series is the
product over positive roots; ``M+``, ``N+`` and the lift examples are built
from it.  All outputs are :class:`~borelq.charalg.QChar` instances with
positive integer coefficients.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from .charalg import (
    ONE,
    CharacterError,
    LMonomial,
    QChar,
    SpectralPoint,
    X,
    Y,
    A,
    add_A,
    canonicalize,
    is_dominant,
    qbeta,
)
from .rootdata import RootData, build_root_data

# ---------------------------------------------------------------- partitions


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts if p)
        if any(p < 0 for p in parts) or any(parts[k] < parts[k + 1] for k in range(len(parts) - 1)):
            raise CharacterError(f"{self.parts} is not a partition")
        object.__setattr__(self, "parts", parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def dual(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p >= j) for j in range(1, self.parts[0] + 1)))

    def boxes(self) -> list[tuple[int, int]]:
        """Boxes ``(row, column)``, 1-based, in reading order."""
        return [(r + 1, c + 1) for r, p in enumerate(self.parts) for c in range(p)]

    @staticmethod
    def content(box: tuple[int, int]) -> int:
        return box[1] - box[0]


def partitions(size: int, max_parts: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of ``size`` in reverse lexicographic order."""

    def rec(rem, cap, left):
        if rem == 0:
            yield ()
            return
        if left == 0:
            return
        for p in range(min(rem, cap), 0, -1):
            for tail in rec(rem - p, p, left - 1):
                yield (p,) + tail

    cap = size if max_part is None else max_part
    left = size if max_parts is None else max_parts
    for parts in rec(size, cap, left):
        yield Partition(parts)


def semistandard_tableaux(lam: Partition, top: int) -> Iterator[tuple[int, ...]]:
    """Fillings of ``lam`` with entries in ``1..top``, rows weakly increasing and
    columns strictly increasing; yielded as flat tuples in box reading order."""
    boxes = lam.boxes()
    index = {b: k for k, b in enumerate(boxes)}
    fill = [0] * len(boxes)

    def rec(k):
        if k == len(boxes):
            yield tuple(fill)
            return
        r, c = boxes[k]
        lo = 1
        if c > 1:
            lo = max(lo, fill[index[(r, c - 1)]])
        if r > 1:
            lo = max(lo, fill[index[(r - 1, c)]] + 1)
        # leave room for the boxes below in this column
        below = sum(1 for rr in range(r + 1, len(lam) + 1) if lam.parts[rr - 1] >= c)
        for v in range(lo, top - below + 1):
            fill[k] = v
            yield from rec(k + 1)

    yield from rec(0)


@dataclass(frozen=True)
class PlanePartitionStrip:
    """Finitely supported ``T`` on ``{1..rows} x Z>=1``, nonincreasing in both
    directions, values at most ``height``.  Stored as nonzero columns."""

    rows: int
    height: int
    columns: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return sum(sum(c) for c in self.columns)

    def value(self, l: int, j: int) -> int:
        if j > len(self.columns):
            return 0
        return self.columns[j - 1][l - 1]


def strip_plane_partitions(rows: int, height: int, max_size: int) -> Iterator[PlanePartitionStrip]:
    """Plane partitions over the strip with total size at most ``max_size``."""

    def columns_under(bound: tuple[int, ...], budget: int) -> Iterator[tuple[int, ...]]:
        col = [0] * rows

        def rec(l, cap, used):
            if l == rows:
                if used:
                    yield tuple(col)
                return
            for v in range(min(cap, bound[l], budget - used), -1, -1):
                col[l] = v
                yield from rec(l + 1, v, used + v)
            col[l] = 0

        yield from rec(0, height, 0)

    def rec(prefix, bound, budget):
        yield PlanePartitionStrip(rows, height, tuple(prefix))
        for col in columns_under(bound, budget):
            prefix.append(col)
            yield from rec(prefix, col, budget - sum(col))
            prefix.pop()

    yield from rec([], (height,) * rows, max_size)


def count_ssyt(lam: Partition, top: int) -> int:
    """Independent count via the hook-content formula."""
    num = 1
    den = 1
    dual = lam.dual().parts
    for r, c in lam.boxes():
        num *= top + c - r
        den *= (lam.parts[r - 1] - c) + (dual[c - 1] - r) + 1
    return num // den


# ---------------------------------------------------------------- type A helpers


def _type_a(n_or_rd: int | RootData) -> RootData:
    if isinstance(n_or_rd, RootData):
        if n_or_rd.series != "A":
            raise CharacterError(f"type A root data required, got {n_or_rd.type_label}")
        return n_or_rd
    return build_root_data(f"A{int(n_or_rd)}")


def eval_head(lam: Partition, a: SpectralPoint, rd: RootData) -> LMonomial:
    dual = lam.dual().parts
    return canonicalize(
        [("Y", dual[j - 1], a.shift(2 * j - dual[j - 1] - 1), 1) for j in range(1, len(dual) + 1)], rd
    )


def eval_module_char_slN(lam: Partition | Sequence[int], a: SpectralPoint, n: int | RootData) -> QChar:
    """q-character of the evaluation module ``L(m+_{lam,a})`` of type ``A_n``."""
    rd = _type_a(n)
    n = rd.rank
    if not isinstance(lam, Partition):
        lam = Partition(tuple(lam))
    if len(lam) > n:
        raise CharacterError(f"partition {lam.parts} has more than {n} parts")
    head = eval_head(lam, a, rd)
    boxes = lam.boxes()
    terms: dict[LMonomial, int] = defaultdict(int)
    fac: dict[LMonomial, tuple] = {}
    for t in semistandard_tableaux(lam, n + 1):
        acc = dict(head.xexp)
        factors = []
        for (r, c), v in zip(boxes, t):
            for s in range(r, v):
                p = a.shift(2 * (c - r) + s)
                add_A(acc, s, p, rd, -1)
                factors.append((s, p))
        m = LMonomial(acc)
        terms[m] += 1
        fac[m] = tuple(sorted(factors))
    return QChar(rd, head, terms, None, factorizations=fac)


def _k_point(i: int, a: SpectralPoint, tag: str) -> SpectralPoint:
    # a * q^K with generic K: a fresh base independent of every q-shift of a
    return SpectralPoint(f"{a.base}q^{{K:{tag}}}", a.qexp)


def verma_head(i: int, a: SpectralPoint, tag: str = "K") -> LMonomial:
    return X(i, _k_point(i, a, tag)) * X(i, a, -1)


def parabolic_verma_char_slN(i: int, a: SpectralPoint, n: int | RootData, depth: int, k_tag: str = "K") -> QChar:
    """Truncated q-character of the parabolic Verma module with head
    ``X_{i,aq^K} X_{i,a}^-1`` (``K`` kept as the opaque tag ``k_tag``)."""
    rd = _type_a(n)
    n = rd.rank
    if not 1 <= i <= n:
        raise CharacterError(f"node {i} out of range 1..{n}")
    if depth < 0:
        raise CharacterError("depth must be nonnegative")
    head = verma_head(i, a, k_tag)
    terms: dict[LMonomial, int] = defaultdict(int)
    fac: dict[LMonomial, tuple] = {}
    for pp in strip_plane_partitions(i, n + 1 - i, depth):
        acc = dict(head.xexp)
        factors = []
        for j, col in enumerate(pp.columns, start=1):
            for l, t in enumerate(col, start=1):
                for s in range(t):
                    p = a.shift(-2 * j + l + s + 1)
                    add_A(acc, i - l + 1 + s, p, rd, -1)
                    factors.append((i - l + 1 + s, p))
        m = LMonomial(acc)
        terms[m] += 1
        fac[m] = tuple(sorted(factors))
    return QChar(rd, head, terms, depth, factorizations=fac)


def mminus_char(i: int, a: SpectralPoint, n: int | RootData, depth: int, k_tag: str = "K") -> QChar:
    """Negative prefundamental character: head ``X_{i,a}^-1``, terms of the
    parabolic Verma module with the ``K``-dependent factor cancelled."""
    rd = _type_a(n)
    verma = parabolic_verma_char_slN(i, a, rd, depth, k_tag)
    return verma.scaled_by(X(i, _k_point(i, a, k_tag), -1))


# ---------------------------------------------------------------- barchi, M+, N+

_CONJECTURAL_SERIES = {"E", "F"}


def barchi_weights(i: int, rd: RootData, depth: int) -> dict[tuple[int, ...], int]:
    """Coefficients of ``prod_alpha (1 - q^-alpha)^-<w_i^vee, alpha>`` by beta,
    up to height ``depth``."""
    if not 1 <= i <= rd.rank:
        raise CharacterError(f"node {i} out of range for {rd.type_label}")
    series: dict[tuple[int, ...], int] = {(0,) * rd.rank: 1}
    for alpha in rd.positive_roots:
        mult = alpha[i - 1]
        if mult == 0:
            continue
        h = sum(alpha)
        nxt: dict[tuple[int, ...], int] = defaultdict(int)
        for beta, c in series.items():
            k = 0
            while sum(beta) + k * h <= depth:
                gamma = tuple(b + k * x for b, x in zip(beta, alpha))
                nxt[gamma] += c * comb(k + mult - 1, mult - 1)
                k += 1
        series = dict(nxt)
    return series


def barchi(i: int, rd: RootData, depth: int) -> QChar:
    """Weight-only series ``barchi_i`` truncated at height ``depth``.

    Flagged ``conjectural`` for the types where the product formula is not
    known to hold (E and F)."""
    terms = {qbeta(beta, rd): c for beta, c in barchi_weights(i, rd, depth).items()}
    fac = {m: () for m in terms}
    return QChar(rd, ONE, terms, depth, conjectural=rd.series in _CONJECTURAL_SERIES, factorizations=fac)


def mplus_char(i: int, a: SpectralPoint, rd: RootData, depth: int) -> QChar:
    """``chi_q(M+_{i,a}) = X_{i,a} barchi_i``."""
    return barchi(i, rd, depth).scaled_by(X(i, a))


def m2_head(i: int, a: SpectralPoint, rd: RootData) -> LMonomial:
    """``X_{i,a}^-1 prod_{j: C_ji != 0} X_{j, a q_{j,i}^-1}``."""
    x = {(i, a): -1}
    for j in rd.nodes:
        b = rd.B(j, i)
        if b:
            key = (j, a.shift(-b))
            x[key] = x.get(key, 0) + 1
    return LMonomial(x)


def nplus_char(i: int, a: SpectralPoint, rd: RootData, depth: int) -> QChar:
    """``chi_q(N+_{i,a}) = m2 (1 + A_{i,a}^-1) prod_{j ~ i} barchi_j``."""
    head = m2_head(i, a, rd)
    base = QChar(rd, head, {head: 1, head * A(i, a, rd, -1): 1}, None,
                 factorizations={head: (), head * A(i, a, rd, -1): ((i, a),)})
    out = base.truncate(depth) if depth is not None else base
    for j in rd.neighbours(i):
        out = out * barchi(j, rd, depth)
    return out


def fundamental_top_terms(i: int, a: SpectralPoint, rd: RootData) -> QChar:
    """Top terms of ``chi_q(L(Y_{i,a}))``: the head, one ``A^-1`` and the
    ``A_i^-1 A_j^-1`` terms for neighbours ``j``.  Exact only for ``A1``."""
    head = Y(i, a, rd)
    p = a.shift(rd.d(i))
    first = head * A(i, p, rd, -1)
    terms = {head: 1, first: 1}
    fac = {head: (), first: ((i, p),)}
    for j in rd.neighbours(i):
        pj = a.shift(rd.d(i) - rd.B(j, i))
        m = first * A(j, pj, rd, -1)
        terms[m] = terms.get(m, 0) + 1
        fac[m] = tuple(sorted([(i, p), (j, pj)]))
    return QChar(rd, head, terms, 2, factorizations=fac)


# ---------------------------------------------------------------- sl2 strings


def string_size(a: SpectralPoint, b: SpectralPoint) -> int | None:
    """Size ``s`` with ``a = b q^(-2s+2)``, or ``None`` if infinite."""
    if a.base != b.base:
        return None
    diff = b.qexp - a.qexp
    if diff < 0 or diff % 2:
        return None
    return diff // 2 + 1


def sl2_string_char(a: SpectralPoint, b: SpectralPoint, depth: int | None = None, finite: bool | None = None) -> QChar:
    """``chi_q(L(X_a X_b^-1))`` in type ``A1``; truncated at ``depth`` if the
    string is infinite.  ``finite=True`` asserts a finite size."""
    rd = build_root_data("A1")
    s = string_size(a, b)
    if finite and s is None:
        raise CharacterError(f"({a}, {b}) is not a string of finite size")
    if s is None and depth is None:
        raise CharacterError("an infinite string needs a truncation depth")
    head = X(1, a) * X(1, b, -1)
    n_terms = s if s is not None else depth + 1
    if s is not None and depth is not None:
        n_terms = min(s, depth + 1)
    terms = {}
    fac = {}
    acc = dict(head.xexp)
    factors: list = []
    for r in range(n_terms):
        if r:
            p = b.shift(-2 * (r - 1))
            add_A(acc, 1, p, rd, -1)
            factors.append((1, p))
        m = LMonomial(acc)
        terms[m] = 1
        fac[m] = tuple(sorted(factors))
    out_depth = None if (s is not None and (depth is None or depth >= s - 1)) else depth
    return QChar(rd, head, terms, out_depth, factorizations=fac)


def is_generic(c: SpectralPoint, string: tuple[SpectralPoint, SpectralPoint]) -> bool:
    """Whether ``c`` is in generic position relative to the string ``(a, b)``."""
    a, b = string
    if c.base != b.base or (b.qexp - c.qexp) % 2 or c.qexp > b.qexp:
        return True
    s = string_size(a, b)
    if s is None:
        return False
    t = (b.qexp - c.qexp) // 2
    return not (0 <= t <= s - 2)


def sl2_strings(m: LMonomial) -> tuple[LMonomial, list[tuple[SpectralPoint, SpectralPoint]], list[SpectralPoint]]:
    """Decompose a dominant ``A1`` monomial; returns ``(y_part, strings, free_heads)``.

    Tails are processed in increasing order of q-exponent; each takes the
    closest unused head below it, which yields the shortest strings."""
    rd = build_root_data("A1")
    if any(i != 1 for (i, _), _e in m.x_items()):
        raise CharacterError("sl2_factor needs an A1 monomial")
    if not is_dominant(m, rd):
        raise CharacterError(f"{m} is not dominant")
    heads: list[SpectralPoint] = []
    tails: list[SpectralPoint] = []
    for (_, p), e in m.x_items():
        (heads if e > 0 else tails).extend([p] * abs(e))
    heads.sort()
    strings = []
    for b in sorted(tails):
        best = None
        for k, h in enumerate(heads):
            s = string_size(h, b)
            if s is not None and s >= 2 and (best is None or h.qexp > heads[best].qexp):
                best = k
        if best is None:
            raise CharacterError(f"tail {b} cannot be matched")
        strings.append((heads.pop(best), b))
    return m.y_part(), strings, heads


def sl2_factor(m: LMonomial) -> tuple[LMonomial, LMonomial, LMonomial]:
    """``m = m1 * m0 * mp``: y-part, product of finite strings, and the
    remaining heads in generic position."""
    m1, strings, free = sl2_strings(m)
    m0 = ONE
    for a, b in strings:
        m0 = m0 * X(1, a) * X(1, b, -1)
    mp = ONE
    for c in free:
        mp = mp * X(1, c)
    return m1, m0, mp


# ---------------------------------------------------------------- lift examples


def slN_string_lift(i: int, a: SpectralPoint, s: int, n: int, depth: int) -> QChar:
    """Lift of the length-``s`` string at node ``i`` of ``A_n``.

    Head ``X_{i-1,aq^2} X_{i+1,aq^2} prod_p Y_{i,aq^-2p}``; terms
    ``(1 + sum_j prod_{r<=j} A^-1_{i,aq^(3-2r)}) barchi_{i-1} barchi_{i+1}``."""
    rd = build_root_data(f"A{n}")
    if not 1 <= i <= n or s < 1:
        raise CharacterError("bad lift parameters")
    nbrs = [j for j in (i - 1, i + 1) if 1 <= j <= n]
    expr = [("X", j, a.shift(2), 1) for j in nbrs]
    expr += [("Y", i, a.shift(-2 * p), 1) for p in range(s)]
    head = canonicalize(expr, rd)
    terms = {head: 1}
    fac = {head: ()}
    acc = dict(head.xexp)
    factors: list = []
    for r in range(1, s + 1):
        p = a.shift(3 - 2 * r)
        add_A(acc, i, p, rd, -1)
        factors.append((i, p))
        mono = LMonomial(acc)
        terms[mono] = 1
        fac[mono] = tuple(sorted(factors))
    out = QChar(rd, head, terms, None, factorizations=fac).truncate(depth)
    for j in nbrs:
        out = out * barchi(j, rd, depth)
    return out


def sl3_example(variant: int, a: SpectralPoint, depth: int) -> QChar:
    """The two ``A2`` modules with heads ``Y_{1,aq^-2} Y_{1,a} X_{2,aq^2}``
    (``variant=3``) and ``Y_{1,aq^-2} Y_{1,a} X_{2,a}`` (``variant=5``)."""
    rd = build_root_data("A2")
    if variant == 3:
        return slN_string_lift(1, a, 2, 2, depth)
    if variant != 5:
        raise CharacterError("sl3 example variant must be 3 or 5")
    # evaluation character of shape (2) at aq^-2, keeping only the tableaux
    # whose A^-1 factors avoid the point (2, a) carried by X_{2,a}
    ev = eval_module_char_slN((2,), a.shift(-2), rd)
    blocked = (2, a)
    x2 = X(2, a)
    head = ev.head * x2
    terms, fac = {}, {}
    for m, c in ev.terms.items():
        if blocked not in ev.factorizations[m]:
            terms[m * x2] = c
            fac[m * x2] = ev.factorizations[m]
    out = QChar(rd, head, terms, None, factorizations=fac).truncate(depth)
    return out * barchi(2, rd, depth)


LIFT_KINDS = ("slN_string_lift", "sl3_example")


def lift_example_char(kind: str, params: dict) -> QChar:
    """Dispatch to :func:`slN_string_lift` or :func:`sl3_example`."""
    a = params.get("a", SpectralPoint("a", 0))
    depth = int(params.get("depth", 4))
    if kind == "slN_string_lift":
        return slN_string_lift(int(params["i"]), a, int(params.get("s", 1)), int(params["n"]), depth)
    if kind == "sl3_example":
        return sl3_example(int(params.get("variant", 5)), a, depth)
    raise CharacterError(f"unknown lift example {kind!r}")


def finiteness_count(x: QChar) -> int:
    """Number of distinct spectral classes of ``term / head``."""
    return x.finiteness()
