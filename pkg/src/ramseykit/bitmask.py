"""Bit mask primitives shared by search and verification code.

Masks are plain Python ints (the interpreter already gives us multi-word
arithmetic), paired with an explicit logical bit length wherever truncation
or symmetry matters.  Hot loops operate on raw ints; the BitMask wrapper is
for module boundaries and file formats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


def popcount(x: int) -> int:
    """Number of set bits in x."""
    return bin(x).count("1")


def lowest_set_bit(x: int) -> int:
    """Index of the lowest set bit, -1 if x == 0."""
    if x == 0:
        return -1
    return (x & -x).bit_length() - 1


def highest_set_bit(x: int) -> int:
    """Index of the highest set bit, -1 if x == 0."""
    return x.bit_length() - 1


def iter_bits(x: int) -> Iterator[int]:
    """Yield set bit indices in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def iter_bits_desc(x: int) -> Iterator[int]:
    """Yield set bit indices in decreasing order."""
    while x:
        b = x.bit_length() - 1
        yield b
        x ^= 1 << b


def reverse_bits(x: int, nbits: int) -> int:
    """Value of x with its low nbits written in reverse order.

    Bits at positions >= nbits must be zero.
    """
    if x >> nbits:
        raise ValueError("value wider than nbits")
    if x == 0:
        return 0
    return int(format(x, "0%db" % nbits)[::-1], 2)


def mask_to_hex(x: int, nbits: int) -> str:
    """Hex text for an nbits-wide mask, least significant nibble first.

    Bit 0 of the mask is the least significant bit of the first hex digit.
    """
    if x >> nbits:
        raise ValueError("value wider than nbits")
    ndigits = max(1, (nbits + 3) // 4)
    return format(x, "0%dx" % ndigits)[::-1]


def hex_to_mask(text: str, nbits: int) -> int:
    """Parse the nibble-reversed hex produced by mask_to_hex."""
    x = int(text[::-1], 16)
    if x >> nbits:
        raise ValueError("hex value wider than %d bits" % nbits)
    return x


@dataclass(frozen=True)
class BitMask:
    """An immutable bit vector: an int plus its logical length in bits."""

    value: int
    nbits: int

    def __post_init__(self) -> None:
        if self.nbits < 0:
            raise ValueError("negative bit length")
        if self.value < 0 or self.value >> self.nbits:
            raise ValueError("value out of range for bit length")

    @classmethod
    def from_bits(cls, bits) -> "BitMask":
        """Build from an iterable of 0/1 values, index 0 first."""
        bits = list(bits)
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError("bits must be 0 or 1")
            value |= b << i
        return cls(value, len(bits))

    def bit(self, i: int) -> int:
        if not 0 <= i < self.nbits:
            raise IndexError("bit index out of range")
        return (self.value >> i) & 1

    def set(self, i: int) -> "BitMask":
        if not 0 <= i < self.nbits:
            raise IndexError("bit index out of range")
        return BitMask(self.value | (1 << i), self.nbits)

    def clear(self, i: int) -> "BitMask":
        if not 0 <= i < self.nbits:
            raise IndexError("bit index out of range")
        return BitMask(self.value & ~(1 << i), self.nbits)

    def flip(self, i: int) -> "BitMask":
        if not 0 <= i < self.nbits:
            raise IndexError("bit index out of range")
        return BitMask(self.value ^ (1 << i), self.nbits)

    def popcount(self) -> int:
        return popcount(self.value)

    def bits(self) -> tuple[int, ...]:
        """All bit values as a tuple, index 0 first."""
        return tuple((self.value >> i) & 1 for i in range(self.nbits))

    def reversed(self) -> "BitMask":
        return BitMask(reverse_bits(self.value, self.nbits), self.nbits)

    def complement(self) -> "BitMask":
        return BitMask(self.value ^ ((1 << self.nbits) - 1), self.nbits)

    def to_hex(self) -> str:
        return mask_to_hex(self.value, self.nbits)

    @classmethod
    def from_hex(cls, text: str, nbits: int) -> "BitMask":
        return cls(hex_to_mask(text, nbits), nbits)

    def __and__(self, other: "BitMask") -> "BitMask":
        return BitMask(self.value & other.value, max(self.nbits, other.nbits))

    def __or__(self, other: "BitMask") -> "BitMask":
        return BitMask(self.value | other.value, max(self.nbits, other.nbits))

    def __xor__(self, other: "BitMask") -> "BitMask":
        return BitMask(self.value ^ other.value, max(self.nbits, other.nbits))

    def __len__(self) -> int:
        return self.nbits

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits())
