"""Exact Laurent monomials in the X/y variables and truncated q-characters.

Every l-weight monomial is stored in canonical form: a sparse map
``(node, SpectralPoint) -> int`` for the X variables and ``node -> Fraction``
for the y variables.  ``Y``, ``A`` and ``q^alpha`` are only ever built through
:func:`canonicalize` or the helpers :func:`X`, :func:`Y`, :func:`A`,
:func:`qalpha`, :func:`ypow`.

A spectral point ``base * q**k`` keeps ``base`` as an opaque symbol, so distinct
bases are algebraically independent and every identity checked here is exact.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .rootdata import RootData, build_root_data


class CharacterError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SpectralPoint:
    """The point ``base * q**qexp``."""

    base: str = "a"
    qexp: int = 0

    def shift(self, k: int) -> "SpectralPoint":
        return SpectralPoint(self.base, self.qexp + k)

    def __str__(self) -> str:
        if self.qexp == 0:
            return self.base
        return f"{self.base}q^{self.qexp}"


XKey = tuple[int, SpectralPoint]


class LMonomial:
    """Immutable Laurent monomial ``prod X_{i,P}^e * prod y_i^b``."""

    __slots__ = ("_x", "_y", "_key", "_hash")

    def __init__(self, x: Mapping[XKey, int] | None = None, y: Mapping[int, Fraction] | None = None):
        xs = {k: int(v) for k, v in (x or {}).items() if v}
        ys = {int(k): Fraction(v) for k, v in (y or {}).items() if v}
        self._x = xs
        self._y = ys
        self._key = (tuple(sorted(xs.items())), tuple(sorted(ys.items())))
        self._hash = hash(self._key)

    # -- basic protocol
    def __eq__(self, other) -> bool:
        return isinstance(other, LMonomial) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "LMonomial") -> bool:
        return self._key < other._key

    @property
    def xexp(self) -> dict[XKey, int]:
        return dict(self._x)

    @property
    def yexp(self) -> dict[int, Fraction]:
        return dict(self._y)

    def x_items(self):
        return self._key[0]

    def y_items(self):
        return self._key[1]

    def is_one(self) -> bool:
        return not self._x and not self._y

    def x_part(self) -> "LMonomial":
        return LMonomial(self._x)

    def y_part(self) -> "LMonomial":
        return LMonomial(None, self._y)

    def __mul__(self, other: "LMonomial") -> "LMonomial":
        if not isinstance(other, LMonomial):
            return NotImplemented
        x = dict(self._x)
        for k, v in other._x.items():
            x[k] = x.get(k, 0) + v
        y = dict(self._y)
        for k, v in other._y.items():
            y[k] = y.get(k, 0) + v
        return LMonomial(x, y)

    def inverse(self) -> "LMonomial":
        return LMonomial({k: -v for k, v in self._x.items()}, {k: -v for k, v in self._y.items()})

    def __truediv__(self, other: "LMonomial") -> "LMonomial":
        return self * other.inverse()

    def __pow__(self, n: int) -> "LMonomial":
        return LMonomial({k: v * n for k, v in self._x.items()}, {k: v * n for k, v in self._y.items()})

    def __repr__(self) -> str:
        if self.is_one():
            return "1"
        parts = []
        for (i, p), e in self._key[0]:
            parts.append(f"X[{i},{p}]" + ("" if e == 1 else f"^{e}"))
        for i, b in self._key[1]:
            parts.append(f"y{i}^({b})")
        return "*".join(parts)

    # -- JSON
    def to_json(self) -> list[dict]:
        out: list[dict] = [
            {"node": i, "base": p.base, "qexp": p.qexp, "exp": e} for (i, p), e in self._key[0]
        ]
        out += [{"ynode": i, "num": b.numerator, "den": b.denominator} for i, b in self._key[1]]
        return out

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> "LMonomial":
        x: dict[XKey, int] = defaultdict(int)
        y: dict[int, Fraction] = defaultdict(Fraction)
        for entry in data:
            if "ynode" in entry:
                y[int(entry["ynode"])] += Fraction(int(entry["num"]), int(entry["den"]))
            else:
                key = (int(entry["node"]), SpectralPoint(str(entry["base"]), int(entry["qexp"])))
                x[key] += int(entry["exp"])
        return cls(x, y)


ONE = LMonomial()


# ---------------------------------------------------------------- generators

def X(i: int, p: SpectralPoint, e: int = 1) -> LMonomial:
    return LMonomial({(i, p): e})


def ypow(i: int, b) -> LMonomial:
    return LMonomial(None, {i: Fraction(b)})


def Y(i: int, p: SpectralPoint, rd: RootData, e: int = 1) -> LMonomial:
    """``Y_{i,a} = X_{i, a q_i^-1} / X_{i, a q_i}``."""
    d = rd.d(i)
    return LMonomial({(i, p.shift(-d)): e, (i, p.shift(d)): -e})


@lru_cache(maxsize=None)
def _a_exponents(rd: RootData, i: int) -> tuple[tuple[int, int, int], ...]:
    # (node j, qexp offset, exponent) for A_{i, base q^0}
    out = []
    for j in rd.nodes:
        b = rd.B(j, i)
        if b:
            out.append((j, -b, 1))
            out.append((j, b, -1))
    return tuple(out)


def add_A(acc: dict, i: int, p: SpectralPoint, rd: RootData, e: int) -> None:
    """Accumulate ``A_{i,p}^e`` into an X-exponent dict in place."""
    for j, off, s in _a_exponents(rd, i):
        key = (j, SpectralPoint(p.base, p.qexp + off))
        v = acc.get(key, 0) + s * e
        if v:
            acc[key] = v
        else:
            acc.pop(key, None)


def A(i: int, p: SpectralPoint, rd: RootData, e: int = 1) -> LMonomial:
    """``A_{i,a} = prod_j X_{j, a q_{j,i}^-1} / X_{j, a q_{j,i}}``."""
    acc: dict = {}
    add_A(acc, i, p, rd, e)
    return LMonomial(acc)


def qalpha(i: int, rd: RootData, e: int = 1) -> LMonomial:
    """Weight-only monomial ``q^(e alpha_i) = prod_j y_j^(e C_{j,i})``."""
    return LMonomial(None, {j: e * rd.C(j, i) for j in rd.nodes if rd.C(j, i)})


def qbeta(beta: Iterable[int], rd: RootData, sign: int = -1) -> LMonomial:
    """``q^(sign * beta)`` for ``beta`` in simple-root coordinates."""
    y: dict[int, Fraction] = defaultdict(Fraction)
    for k, c in enumerate(beta):
        if c:
            for j in rd.nodes:
                y[j] += sign * c * rd.C(j, k + 1)
    return LMonomial(None, y)


_SYMBOLS = {"X", "Y", "A", "y", "qalpha"}


def canonicalize(expr: Iterable[tuple], rd: RootData) -> LMonomial:
    """Multiply out a formal product of symbols into canonical X/y form.

    ``expr`` is an iterable of tuples ``("X"|"Y"|"A", i, point, e)``,
    ``("y", i, b)`` or ``("qalpha", i, e)``.
    """
    x: dict = {}
    y: dict[int, Fraction] = defaultdict(Fraction)
    for sym in expr:
        kind = sym[0]
        if kind not in _SYMBOLS:
            raise CharacterError(f"unknown symbol {kind!r}")
        if kind == "y":
            y[sym[1]] += Fraction(sym[2])
            continue
        if kind == "qalpha":
            _, i, e = sym
            for j in rd.nodes:
                if rd.C(j, i):
                    y[j] += e * rd.C(j, i)
            continue
        _, i, p, e = sym
        if not isinstance(p.qexp, int):
            raise AssertionError("spectral shifts must be integer q-powers")
        if kind == "X":
            x[(i, p)] = x.get((i, p), 0) + e
        elif kind == "Y":
            d = rd.d(i)
            x[(i, p.shift(-d))] = x.get((i, p.shift(-d)), 0) + e
            x[(i, p.shift(d))] = x.get((i, p.shift(d)), 0) - e
        else:
            add_A(x, i, p, rd, e)
    return LMonomial(x, y)


def d_degree(m: LMonomial, i: int) -> int:
    """Sum of the exponents of the ``X_{i,.}`` variables."""
    return sum(e for (j, _), e in m.x_items() if j == i)


# ---------------------------------------------------------------- dominance

@dataclass
class DominanceResult:
    dominant: bool
    y_witness: dict[XKey, int] = field(default_factory=dict)
    x_witness: dict[XKey, int] = field(default_factory=dict)
    failing_node: int | None = None

    def __bool__(self) -> bool:
        return self.dominant

    def witness_expr(self, m: LMonomial) -> list[tuple]:
        expr = [("Y", i, p, e) for (i, p), e in sorted(self.y_witness.items())]
        expr += [("X", i, p, e) for (i, p), e in sorted(self.x_witness.items())]
        expr += [("y", i, b) for i, b in m.y_items()]
        return expr


def node_strings(m: LMonomial, i: int, step: int) -> list[list[tuple[SpectralPoint, int]]]:
    """q_i^2-strings of the i-indexed X exponents, in increasing q-exponent.

    Gaps inside a string are filled with zero exponents.
    """
    groups: dict[tuple[str, int], dict[int, int]] = defaultdict(dict)
    for (j, p), e in m.x_items():
        if j == i:
            groups[(p.base, p.qexp % step)][p.qexp] = e
    out = []
    for (base, _), entries in sorted(groups.items()):
        lo, hi = min(entries), max(entries)
        out.append([(SpectralPoint(base, k), entries.get(k, 0)) for k in range(lo, hi + 1, step)])
    return out


def is_dominant(m: LMonomial, rd: RootData) -> DominanceResult:
    """Decide whether ``m`` lies in ``Z[Y_{i,a}, X_{i,a}, y_i^b]``.

    Per node the exponents along each string must have nonnegative prefix
    sums.  The witness uses the largest possible X part (fewest Y factors).
    """
    yw: dict[XKey, int] = {}
    xw: dict[XKey, int] = {}
    for i in rd.nodes:
        d = rd.d(i)
        for string in node_strings(m, i, 2 * d):
            prefix = []
            s = 0
            for _, e in string:
                s += e
                prefix.append(s)
            if min(prefix) < 0:
                return DominanceResult(False, failing_node=i)
            # suffix minima give the cumulative X count
            suffix = prefix[:]
            for k in range(len(suffix) - 2, -1, -1):
                suffix[k] = min(suffix[k], suffix[k + 1])
            prev = 0
            for k, (p, _) in enumerate(string):
                if suffix[k] - prev:
                    xw[(i, p)] = suffix[k] - prev
                prev = suffix[k]
                ycount = prefix[k] - suffix[k]
                if ycount:
                    yw[(i, p.shift(d))] = ycount
    return DominanceResult(True, yw, xw)


# ---------------------------------------------------------------- q-characters

@lru_cache(maxsize=None)
def _cartan_inverse(rd: RootData) -> tuple[tuple[Fraction, ...], ...]:
    n = rd.rank
    m = [[Fraction(rd.C(i + 1, j + 1)) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [v / pv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def collapse_ratio(r: LMonomial, rd: RootData) -> tuple[int, ...]:
    """Return ``beta`` with ``varpi(r) = q^(-beta)``.

    ``r`` must be a ratio of two monomials of one character.  The opaque
    ``log(base)`` part of ``varpi(X)`` cancels only if every (node, base)
    carries total X-exponent zero; otherwise the ratio is not a product of
    ``A^-1`` and weight factors and :class:`CharacterError` is raised.
    """
    net: dict[tuple[int, str], int] = defaultdict(int)
    e: dict[int, Fraction] = defaultdict(Fraction)
    for (i, p), k in r.x_items():
        net[(i, p.base)] += k
        e[i] += Fraction(-k * p.qexp, 2 * rd.d(i))
    if any(net.values()):
        raise CharacterError(f"{r} is not a product of A^-1 and weight factors")
    for i, b in r.y_items():
        e[i] += b
    cinv = _cartan_inverse(rd)
    beta = []
    for j in range(rd.rank):
        v = -sum(cinv[j][k] * e[k + 1] for k in range(rd.rank))
        if v.denominator != 1 or v < 0:
            raise CharacterError(f"{r} does not collapse to q^(-beta), beta in Q+")
        beta.append(int(v))
    return tuple(beta)


class QChar:
    """Truncated q-character ``sum coeff * monomial``.

    ``depth`` bounds the height of ``beta`` for every retained term, where
    ``varpi(term / head) = q^(-beta)``; ``None`` means the character is exact.
    """

    __slots__ = ("rd", "head", "terms", "depth", "conjectural", "factorizations", "_deg")

    def __init__(
        self,
        rd: RootData,
        head: LMonomial,
        terms: Mapping[LMonomial, int],
        depth: int | None = None,
        conjectural: bool = False,
        factorizations: Mapping[LMonomial, tuple] | None = None,
    ):
        self.rd = rd
        self.head = head
        self.terms = {m: int(c) for m, c in terms.items() if c}
        self.depth = depth
        self.conjectural = conjectural
        self.factorizations = dict(factorizations) if factorizations is not None else None
        self._deg: dict[LMonomial, int] = {}
        # computing every degree also enforces the A^-1 factorization invariant
        for m in list(self.terms):
            if self.degree(m) > (depth if depth is not None else self.degree(m)):
                del self.terms[m]

    @classmethod
    def one(cls, rd: RootData) -> "QChar":
        return cls(rd, ONE, {ONE: 1}, None, factorizations={ONE: ()})

    def beta(self, m: LMonomial) -> tuple[int, ...]:
        return collapse_ratio(m / self.head, self.rd)

    def degree(self, m: LMonomial) -> int:
        d = self._deg.get(m)
        if d is None:
            d = sum(self.beta(m))
            self._deg[m] = d
        return d

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QChar)
            and self.rd == other.rd
            and self.head == other.head
            and self.depth == other.depth
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        dep = "inf" if self.depth is None else self.depth
        return f"QChar({self.rd.type_label}, head={self.head!r}, {len(self.terms)} terms, depth={dep})"

    def truncate(self, depth: int | None) -> "QChar":
        if depth is not None and self.depth is not None and depth > self.depth:
            raise CharacterError(f"cannot truncate depth-{self.depth} character to depth {depth}")
        if depth is None:
            depth = self.depth
        return QChar(self.rd, self.head, self.terms, depth, self.conjectural, self.factorizations)

    def normalized_terms(self) -> dict[LMonomial, int]:
        """Terms divided by the head."""
        return {m / self.head: c for m, c in self.terms.items()}

    def spectral_classes(self) -> set[LMonomial]:
        """Distinct X-parts of ``term / head``; weight-only factors are ignored."""
        return {(m / self.head).x_part() for m in self.terms}

    def finiteness(self) -> int:
        return len(self.spectral_classes())

    def scaled_by(self, mono: LMonomial) -> "QChar":
        """Multiply every term (and the head) by a monomial."""
        fac = None
        if self.factorizations is not None:
            fac = {m * mono: f for m, f in self.factorizations.items()}
        return QChar(self.rd, self.head * mono, {m * mono: c for m, c in self.terms.items()}, self.depth, self.conjectural, fac)

    def __mul__(self, other: "QChar") -> "QChar":
        return multiply(self, other, _min_depth(self.depth, other.depth))

    def __add__(self, other: "QChar") -> "QChar":
        return add(self, other)

    def __sub__(self, other: "QChar") -> "QChar":
        return add(self, other, sign=-1)

    def to_json(self) -> dict:
        terms = sorted(self.terms.items(), key=lambda kv: (self.degree(kv[0]), kv[0]))
        return {
            "head": self.head.to_json(),
            "depth": "inf" if self.depth is None else self.depth,
            "terms": [{"monomial": m.to_json(), "coeff": str(c)} for m, c in terms],
        }

    @classmethod
    def from_json(cls, data: Mapping, rd: RootData | str) -> "QChar":
        if isinstance(rd, str):
            rd = build_root_data(rd)
        depth = data["depth"]
        depth = None if depth == "inf" else int(depth)
        terms: dict[LMonomial, int] = defaultdict(int)
        for t in data["terms"]:
            terms[LMonomial.from_json(t["monomial"])] += int(t["coeff"])
        return cls(rd, LMonomial.from_json(data["head"]), terms, depth)


def _min_depth(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def multiply(x: QChar, y: QChar, depth: int | None) -> QChar:
    """Product of two q-characters, truncated to ``depth``."""
    if x.rd != y.rd:
        raise CharacterError("characters over different root data")
    limit = _min_depth(x.depth, y.depth)
    if limit is not None and (depth is None or depth > limit):
        raise CharacterError(f"requested depth {depth} exceeds input depth {limit}")
    ydeg = sorted(((y.degree(m), m, c) for m, c in y.terms.items()), key=lambda t: t[0])
    out: dict[LMonomial, int] = defaultdict(int)
    fac = {} if x.factorizations is not None and y.factorizations is not None else None
    for m1, c1 in x.terms.items():
        d1 = x.degree(m1)
        if depth is not None and d1 > depth:
            continue
        for d2, m2, c2 in ydeg:
            if depth is not None and d1 + d2 > depth:
                break
            m = m1 * m2
            out[m] += c1 * c2
            if fac is not None:
                fac[m] = tuple(sorted(x.factorizations[m1] + y.factorizations[m2]))
    prod = QChar(x.rd, x.head * y.head, out, depth, x.conjectural or y.conjectural)
    if fac is not None:
        prod.factorizations = {m: f for m, f in fac.items() if m in prod.terms}
    return prod


def add(x: QChar, y: QChar, sign: int = 1) -> QChar:
    """``x + sign*y`` measured against the head of ``x``.

    ``y.head`` must equal ``x.head`` times a product of ``A^-1`` (degree
    ``s >= 0``); then ``y`` only needs depth ``x.depth - s``.
    """
    if x.rd != y.rd:
        raise CharacterError("characters over different root data")
    s = sum(collapse_ratio(y.head / x.head, x.rd))
    depth = x.depth
    if y.depth is not None:
        depth = _min_depth(depth, y.depth + s)
    out: dict[LMonomial, int] = defaultdict(int)
    for m, c in x.terms.items():
        out[m] += c
    for m, c in y.terms.items():
        out[m] += sign * c
    return QChar(x.rd, x.head, out, depth, x.conjectural or y.conjectural)


def dimension(x: QChar) -> int:
    if x.depth is not None:
        raise CharacterError("dimension of a truncated character is undefined")
    return sum(x.terms.values())


def weight_collapse(x: QChar) -> dict[tuple[int, ...], int]:
    """``varpi`` relative to the head: ``{beta: mult}`` meaning ``mult * q^(-beta)``."""
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for m, c in x.terms.items():
        out[x.beta(m)] += c
    return {b: c for b, c in out.items() if c}


def weight_collapse_monomials(x: QChar) -> dict[LMonomial, int]:
    """Same as :func:`weight_collapse` but with ``q^(-beta)`` as y-monomials."""
    return {qbeta(b, x.rd): c for b, c in weight_collapse(x).items()}
