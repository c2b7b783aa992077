from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Union


@total_ordering
@dataclass(frozen=True)
class ZPhi:
    """Exact element a + b·φ of Z[φ], where φ² = φ + 1."""

    a: int = 0
    b: int = 0

    @staticmethod
    def coerce(value: Union["ZPhi", int]) -> "ZPhi":
        if isinstance(value, ZPhi):
            return value
        if isinstance(value, int):
            return ZPhi(value, 0)
        raise TypeError(f"cannot coerce {type(value).__name__} to ZPhi")

    def __add__(self, other: Union["ZPhi", int]) -> "ZPhi":
        other = ZPhi.coerce(other)
        return ZPhi(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "ZPhi":
        return ZPhi(-self.a, -self.b)

    def __sub__(self, other: Union["ZPhi", int]) -> "ZPhi":
        return self + (-ZPhi.coerce(other))

    def __rsub__(self, other: Union["ZPhi", int]) -> "ZPhi":
        return ZPhi.coerce(other) - self

    def __mul__(self, other: Union["ZPhi", int]) -> "ZPhi":
        other = ZPhi.coerce(other)
        # (a + bφ)(c + dφ) = ac + bd + (ad + bc + bd)φ
        return ZPhi(
            self.a * other.a + self.b * other.b,
            self.a * other.b + self.b * other.a + self.b * other.b,
        )

    __rmul__ = __mul__

    def sign(self) -> int:
        # 2(a + bφ) = p + q√5 with p = 2a + b, q = b
        p, q = 2 * self.a + self.b, self.b
        if p == 0 and q == 0:
            return 0
        if p >= 0 and q >= 0:
            return 1
        if p <= 0 and q <= 0:
            return -1
        if p > 0:
            return 1 if p * p > 5 * q * q else -1
        return 1 if 5 * q * q > p * p else -1

    def __lt__(self, other: Union["ZPhi", int]) -> bool:
        return (self - ZPhi.coerce(other)).sign() < 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = ZPhi(other, 0)
        if not isinstance(other, ZPhi):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __float__(self) -> float:
        return self.a + self.b * (1 + 5 ** 0.5) / 2

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{self.b:+d}φ"


PHI = ZPhi(0, 1)
