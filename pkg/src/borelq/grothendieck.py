"""Identities in the Grothendieck ring, checked through truncated q-characters."""
from __future__ import annotations

from .charalg import ONE, CharacterError, LMonomial, QChar, SpectralPoint, X, A
from .qcharlib import m2_head, mplus_char, nplus_char
from .rootdata import RootData

DEFAULT_DEPTH = 5


def mplus_product(rd: RootData, i: int, a: SpectralPoint, sign: int, depth: int) -> QChar:
    """``prod_{j: C_ji != 0} M+_{j, a q_{j,i}^sign}`` truncated at ``depth``."""
    out = QChar.one(rd)
    for j in rd.nodes:
        b = rd.B(j, i)
        if b:
            out = out * mplus_char(j, a.shift(sign * b), rd, depth)
    return out.truncate(depth) if out.depth is None else out


def verify_tq_identity(rd: RootData, i: int, a: SpectralPoint = SpectralPoint("a", 0), depth: int = DEFAULT_DEPTH) -> dict:
    """Compare ``[N+_{i,a}][M+_{i,a}]`` with the sum of the two ``M+`` products.

    The second product has head ``head(lhs) * A_{i,a}^-1``, so it enters at
    depth ``depth - 1``; equality is exact up to degree ``depth``."""
    if depth < 1:
        raise CharacterError("depth must be at least 1")
    lhs = nplus_char(i, a, rd, depth) * mplus_char(i, a, rd, depth)
    first = mplus_product(rd, i, a, -1, depth)
    second = mplus_product(rd, i, a, +1, depth - 1)
    rhs = first + second
    diff = lhs - rhs
    return {
        "lhs": lhs,
        "rhs": rhs,
        "diff": diff,
        "exact_equal": not diff.terms and lhs.head == rhs.head,
        "conjectural_barchi": lhs.conjectural or rhs.conjectural,
    }


def tq_report_json(rd: RootData, i: int, depth: int, report: dict) -> dict:
    diff = report["diff"]
    rows = sorted(diff.terms.items(), key=lambda kv: (diff.degree(kv[0]), kv[0]))
    return {
        "type": rd.type_label,
        "i": i,
        "depth": depth,
        "exact_equal": bool(report["exact_equal"]),
        "conjectural_barchi": bool(report["conjectural_barchi"]),
        "diff_terms": [{"monomial": m.to_json(), "coeff": str(c)} for m, c in rows],
    }


def head_bookkeeping(rd: RootData, i: int, a: SpectralPoint) -> tuple[bool, bool]:
    """The two head cancellations behind the TQ relation:
    ``m2 X_{i,a} = prod X_{j,aq_{j,i}^-1}`` and
    ``m2 X_{i,a} A_{i,a}^-1 = prod X_{j,aq_{j,i}}``."""
    m = m2_head(i, a, rd) * X(i, a)
    low = ONE
    high = ONE
    for j in rd.nodes:
        b = rd.B(j, i)
        if b:
            low = low * X(j, a.shift(-b))
            high = high * X(j, a.shift(b))
    return m == low, m * A(i, a, rd, -1) == high


def tensor_irreducible_sufficient(v_char: QChar, m_head: LMonomial) -> bool:
    """Sufficient criterion for ``V (x) L(m_head)`` to be irreducible.

    ``m_head`` is a product of ``X_{i,a}`` (and y factors).  Returns ``True``
    when no ``(i, a)`` of ``m_head`` is the index of an ``A^-1`` factor of any
    term of ``v_char``; ``False`` only means the criterion is inconclusive."""
    if v_char.factorizations is None or any(m not in v_char.factorizations for m in v_char.terms):
        raise CharacterError("v_char carries no A^-1 factorization")
    points = set()
    for key, e in m_head.x_items():
        if e < 0:
            raise CharacterError("m_head must be of polynomial type")
        points.add(key)
    for m in v_char.terms:
        for idx in v_char.factorizations[m]:
            if idx in points:
                return False
    return True
