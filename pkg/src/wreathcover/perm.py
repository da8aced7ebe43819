"""Permutations on a fixed point set.

Points are 0-indexed internally.  Cycle notation at the I/O boundary is
1-indexed with fixed points omitted, e.g. ``"(1 2 3)(4 5)"``.

Composition convention (fixed project-wide): ``compose(p, q)`` applies ``q``
first and then ``p``, i.e. ``compose(p, q)[i] == p[q[i]]``.  Group products
written left to right, ``x1 * x2 * ... * xk``, therefore apply ``xk`` first.
"""

from __future__ import annotations

import math
import re
from functools import total_ordering
from typing import Iterable


class DegreeMismatchError(ValueError):
    """Operands act on point sets of different sizes."""


@total_ordering
class Perm:
    """An immutable permutation stored as its image table."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(x) for x in images)
        n = len(imgs)
        if n < 1:
            raise ValueError("degree must be at least 1")
        if sorted(imgs) != list(range(n)):
            raise ValueError(f"images {imgs} are not a bijection on 0..{n - 1}")
        object.__setattr__(self, "images", imgs)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Perm":
        """Parse 1-indexed cycle notation, e.g. ``"(1 2 3)(4 5)"``."""
        return cls(_parse_cycle_images(text, degree))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        return compose(self, other)

    def __pow__(self, k: int) -> "Perm":
        n = self.degree
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, each rotated to start at its minimum, sorted."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        """Multiset of cycle lengths including fixed points, sorted ascending."""
        return tuple(sorted(len(c) for c in self.cycles(include_fixed=True)))

    def parity(self) -> int:
        """0 for even, 1 for odd: (degree - number of cycles) mod 2."""
        return (self.degree - len(self.cycles(include_fixed=True))) % 2

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def to_cycle_string(self) -> str:
        """1-indexed cycle notation; identity prints as ``"()"``."""
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cycs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm[{self.to_cycle_string()}]"


def compose(p: Perm, q: Perm) -> Perm:
    """Product applying ``q`` first, then ``p``."""
    if p.degree != q.degree:
        raise DegreeMismatchError(f"degrees {p.degree} != {q.degree}")
    qi = q.images
    pi = p.images
    return Perm(pi[qi[i]] for i in range(p.degree))


def order(p: Perm) -> int:
    """Least k >= 1 with p**k the identity (lcm of cycle lengths)."""
    return p.order()


def cycle_type_and_parity(p: Perm) -> tuple[tuple[int, ...], int]:
    """Cycle-length multiset (with fixed points) and parity flag (0 even, 1 odd)."""
    return p.cycle_type(), p.parity()


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def _parse_cycle_images(text: str, degree: int) -> list[int]:
    stripped = text.strip()
    if stripped in ("", "()"):
        return list(range(degree))
    consumed = _CYCLE_RE.sub("", stripped)
    if consumed.strip():
        raise ValueError(f"malformed cycle notation: {text!r}")
    images = list(range(degree))
    seen: set[int] = set()
    for body in _CYCLE_RE.findall(stripped):
        pts = [int(tok) for tok in body.split()]
        if not pts:
            continue
        for p in pts:
            if not 1 <= p <= degree:
                raise ValueError(f"point {p} out of range 1..{degree} in {text!r}")
            if p - 1 in seen:
                raise ValueError(f"point {p} repeated in {text!r}")
            seen.add(p - 1)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b - 1
    return images
