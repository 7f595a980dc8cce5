"""Fixed-length binary words.

Position 0 is the leftmost bit.  The integer encoding treats the word as a
binary numeral with position 0 most significant, so ``BitWord.parse("011")``
encodes to 3.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

MAX_K = 24


@dataclass(frozen=True, order=True)
class BitWord:
    bits: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= len(self.bits) <= MAX_K:
            raise ValueError(f"word length must be in 1..{MAX_K}, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"bits must be 0 or 1: {self.bits!r}")

    @classmethod
    def parse(cls, text: str) -> "BitWord":
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit word: {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_int(cls, value: int, k: int) -> "BitWord":
        if not 0 <= value < (1 << k):
            raise ValueError(f"{value} does not fit in {k} bits")
        return cls(tuple((value >> (k - 1 - j)) & 1 for j in range(k)))

    @classmethod
    def zeros(cls, k: int) -> "BitWord":
        return cls((0,) * k)

    @classmethod
    def ones(cls, k: int) -> "BitWord":
        return cls((1,) * k)

    @property
    def k(self) -> int:
        return len(self.bits)

    def __int__(self) -> int:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __getitem__(self, j: int) -> int:
        return self.bits[j]

    def __len__(self) -> int:
        return len(self.bits)


def reverse(x: BitWord) -> BitWord:
    return BitWord(x.bits[::-1])


def flip(x: BitWord, j: int) -> BitWord:
    """Return ``x`` with bit ``j`` flipped."""
    if not 0 <= j < x.k:
        raise IndexError(f"bit index {j} out of range for length {x.k}")
    bits = list(x.bits)
    bits[j] ^= 1
    return BitWord(tuple(bits))


def parity(x: BitWord) -> str:
    return "odd" if sum(x.bits) % 2 else "even"


def is_palindrome(x: BitWord) -> bool:
    return x.bits == x.bits[::-1]


# Integer-encoded helpers used by the graph and group code.

def rev_int(value: int, k: int) -> int:
    out = 0
    for _ in range(k):
        out = (out << 1) | (value & 1)
        value >>= 1
    return out


def flip_int(value: int, j: int, k: int) -> int:
    return value ^ (1 << (k - 1 - j))


def bit_int(value: int, j: int, k: int) -> int:
    return (value >> (k - 1 - j)) & 1


@lru_cache(maxsize=None)
def reversal_table(k: int) -> np.ndarray:
    """``table[v]`` is the encoding of the reversed word of ``v``."""
    v = np.arange(1 << k, dtype=np.int64)
    out = np.zeros_like(v)
    for j in range(k):
        out |= ((v >> j) & 1) << (k - 1 - j)
    out.setflags(write=False)
    return out
