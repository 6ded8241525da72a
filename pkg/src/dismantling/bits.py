"""Integer bitset helpers.

Sets of objects, attributes and lattice elements are stored as Python ints,
bit ``i`` standing for the element with index ``i``.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator


def make_mask(indexes: Iterable[int]) -> int:
    mask = 0
    for i in indexes:
        mask |= 1 << i
    return mask


def full_mask(n: int) -> int:
    return (1 << n) - 1


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indexes of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def bit_list(mask: int) -> list[int]:
    return list(iter_bits(mask))


def popcount(mask: int) -> int:
    return mask.bit_count()


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0
