"""Quantum-space description for the numeric Bethe ansatz."""
from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field

import numpy as np

from ..rootdata import RootData, build_root_data
from .poly import PolyU

ROOT_OF_UNITY_CHECK = 24


class ChainError(ValueError):
    pass


def _cx(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ChainError(f"complex numbers are [re, im] pairs, got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(v)


@dataclass(frozen=True)
class ChainSpec:
    """``W = (x)_k L(Y_{i_k, b_k})`` with numeric ``q`` and twist ``p~``."""

    q: complex
    twist: tuple[complex, ...]
    factors: tuple[tuple[int, complex], ...]
    seed: int = 0
    type_label: str | None = None
    rd: RootData = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        label = self.type_label or f"A{len(self.twist)}"
        object.__setattr__(self, "type_label", label)
        rd = build_root_data(label)
        object.__setattr__(self, "rd", rd)
        object.__setattr__(self, "q", complex(self.q))
        object.__setattr__(self, "twist", tuple(complex(t) for t in self.twist))
        object.__setattr__(self, "factors", tuple((int(i), complex(b)) for i, b in self.factors))
        if len(self.twist) != rd.rank:
            raise ChainError(f"{rd.type_label} needs {rd.rank} twist values")
        if abs(self.q) == 0:
            raise ChainError("q must be nonzero")
        for m in range(1, ROOT_OF_UNITY_CHECK + 1):
            if abs(self.q ** m - 1) < 1e-12:
                raise ChainError(f"q is a root of unity of order {m}")
        if any(abs(t) == 0 for t in self.twist):
            raise ChainError("twist values must be nonzero")
        for i, b in self.factors:
            if not 1 <= i <= rd.rank:
                raise ChainError(f"factor node {i} out of range")
            if abs(b) == 0:
                raise ChainError("inhomogeneities must be nonzero")

    @property
    def L(self) -> int:
        return len(self.factors)

    def qi(self, i: int) -> complex:
        return self.q ** self.rd.d(i)

    def qji(self, j: int, i: int) -> complex:
        return self.q ** self.rd.B(j, i)

    def p(self, i: int) -> complex:
        """``p_i = prod_j p~_j^{C_{j,i}}``."""
        out = 1.0 + 0j
        for j in self.rd.nodes:
            out *= self.twist[j - 1] ** self.rd.C(j, i)
        return out

    def inhomogeneities(self, i: int) -> list[complex]:
        return [b for j, b in self.factors if j == i]

    def is_a1(self) -> bool:
        return self.rd.type_label == "A1"

    def to_json(self) -> dict:
        out = {
            "q": [self.q.real, self.q.imag],
            "twist": [[t.real, t.imag] for t in self.twist],
            "factors": [{"node": i, "b": [b.real, b.imag]} for i, b in self.factors],
            "seed": self.seed,
        }
        if self.type_label != f"A{len(self.twist)}":
            out["type"] = self.type_label
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ChainSpec":
        allowed = {"q", "twist", "factors", "seed", "type"}
        extra = set(data) - allowed
        if extra:
            raise ChainError(f"unknown chain keys {sorted(extra)}")
        try:
            return cls(
                q=_cx(data["q"]),
                twist=tuple(_cx(t) for t in data["twist"]),
                factors=tuple((int(f["node"]), _cx(f["b"])) for f in data["factors"]),
                seed=int(data.get("seed", 0)),
                type_label=data.get("type"),
            )
        except (KeyError, TypeError) as exc:
            raise ChainError(f"malformed chain spec: {exc}") from exc

    @classmethod
    def load(cls, path: str) -> "ChainSpec":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))


DEFAULT_Q = 0.8
DEFAULT_P = 0.6 + 0.5j


def default_chain(L: int = 4, bs=None, q: complex = DEFAULT_Q, p: complex = DEFAULT_P, seed: int = 0) -> ChainSpec:
    """Homogeneous ``A1`` chain with ``p = p~^2``."""
    if bs is None:
        bs = [1.0] * L
    return ChainSpec(q=q, twist=(cmath.sqrt(p),), factors=tuple((1, b) for b in bs), seed=seed)


def random_inhomogeneous_chain(L: int, seed: int = 1, q: complex = DEFAULT_Q, p: complex = DEFAULT_P) -> ChainSpec:
    rng = np.random.default_rng(seed)
    bs = 1.0 + 0.4 * (rng.random(L) - 0.5) + 0.2j * (rng.random(L) - 0.5)
    return default_chain(L, list(bs), q, p, seed)


def ad_polynomials(chain: ChainSpec, i: int) -> tuple[PolyU, PolyU]:
    """``a_i(u) = prod (q_i u - b)``, ``d_i(u) = prod (u - q_i b)``."""
    qi = chain.qi(i)
    a = PolyU.one()
    d = PolyU.one()
    for b in chain.inhomogeneities(i):
        a = a * PolyU([-b, qi])
        d = d * PolyU([-qi * b, 1.0])
    return a, d
