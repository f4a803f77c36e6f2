"""Complex univariate polynomials in the spectral variable ``u``."""
from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P


class PolyU:
    """Polynomial ``c0 + c1 u + ... + cd u^d`` with trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, tol: float = 0.0):
        c = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
        if c.size == 0:
            c = np.zeros(1, complex)
        scale = np.max(np.abs(c)) if c.size else 0.0
        k = c.size
        while k > 1 and abs(c[k - 1]) <= tol * scale:
            k -= 1
        self.coeffs = c[:k]

    @classmethod
    def one(cls) -> "PolyU":
        return cls([1.0])

    @classmethod
    def from_roots_normalized(cls, roots) -> "PolyU":
        """``prod (1 - u / z)``."""
        out = cls.one()
        for z in roots:
            out = out * cls([1.0, -1.0 / z])
        return out

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, u):
        return P.polyval(u, self.coeffs)

    def __mul__(self, other):
        if isinstance(other, PolyU):
            return PolyU(P.polymul(self.coeffs, other.coeffs))
        return PolyU(self.coeffs * other)

    __rmul__ = __mul__

    def __add__(self, other: "PolyU") -> "PolyU":
        return PolyU(P.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "PolyU") -> "PolyU":
        return PolyU(P.polysub(self.coeffs, other.coeffs))

    def scaled_arg(self, c: complex) -> "PolyU":
        """``u -> P(c u)``."""
        return PolyU(self.coeffs * c ** np.arange(self.coeffs.size))

    def divmod(self, other: "PolyU") -> tuple["PolyU", "PolyU"]:
        q, r = P.polydiv(self.coeffs, other.coeffs)
        return PolyU(q), PolyU(r)

    def roots(self) -> np.ndarray:
        if self.degree < 1:
            return np.zeros(0, complex)
        return P.polyroots(self.coeffs)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def padded(self, n: int) -> np.ndarray:
        out = np.zeros(n, complex)
        out[: self.coeffs.size] = self.coeffs
        return out

    def __repr__(self) -> str:
        return f"PolyU({np.array2string(self.coeffs, precision=6)})"
