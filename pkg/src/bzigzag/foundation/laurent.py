"""Laurent polynomials in v with integer coefficients (graded dimensions, classes)."""
from __future__ import annotations

from typing import Mapping


class Laurent:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "Laurent":
        return cls({exp: coeff})

    @classmethod
    def one(cls) -> "Laurent":
        return cls({0: 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent({0: other})
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = Laurent({0: other})
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Laurent({e: c * other for e, c in self.coeffs.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "Laurent":
        """Multiply by v^k."""
        return Laurent({e + k: c for e, c in self.coeffs.items()})

    def total(self) -> int:
        return sum(self.coeffs.values())

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "Laurent":
        return cls({int(e): c for e, c in data.items()})

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "v"
            else:
                mono = f"v^{e}"
            mag = abs(c)
            body = mono if (mag == 1 and mono) else (f"{mag}{mono}" if mono else str(mag))
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            text += f" {s} {b}"
        return text

    __repr__ = __str__
