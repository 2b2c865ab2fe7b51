"""Block-size restriction sets and their single-block EGF."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator

__all__ = [
    "BlockSizeSet",
    "ALL",
    "EVEN",
    "ODD",
    "up_to",
    "at_least",
    "residues",
    "finite",
    "union",
    "parse_set",
    "TEST_FAMILY",
]

_KINDS = ("all", "upto", "atleast", "residues", "finite", "union")


@dataclass(frozen=True)
class BlockSizeSet:
    """A set S of positive integers allowed as block sizes.

    Build instances through the module-level constructors or :func:`parse_set`;
    the raw fields are an implementation detail.
    """

    kind: str
    m: int = 0
    modulus: int = 0
    residues: frozenset[int] = frozenset()
    elements: tuple[int, ...] = ()
    members: tuple["BlockSizeSet", ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ValueError(f"unknown set kind {self.kind!r}")

    def __contains__(self, s: int) -> bool:
        return self.contains(s)

    def contains(self, s: int) -> bool:
        if s < 1:
            return False
        k = self.kind
        if k == "all":
            return True
        if k == "upto":
            return s <= self.m
        if k == "atleast":
            return s >= self.m
        if k == "residues":
            return s >= self.m and s % self.modulus in self.residues
        if k == "finite":
            return s in self.elements
        return any(member.contains(s) for member in self.members)

    def enumerate(self, bound: int) -> list[int]:
        """Members of S not exceeding ``bound``, ascending."""
        return [s for s in range(1, bound + 1) if self.contains(s)]

    def __iter__(self) -> Iterator[int]:
        raise TypeError("BlockSizeSet may be infinite; use enumerate(bound)")

    def min(self) -> int | None:
        """Smallest member, or None for an empty union/residue class."""
        if self.kind == "finite":
            return self.elements[0]
        if self.kind in ("all",):
            return 1
        if self.kind in ("upto",):
            return 1
        if self.kind == "atleast":
            return self.m
        if self.kind == "residues":
            for s in range(self.m, self.m + self.modulus):
                if s % self.modulus in self.residues:
                    return s
            return None
        mins = [x for x in (mem.min() for mem in self.members) if x is not None]
        return min(mins) if mins else None

    def egf(self, order: int):
        """Truncated E_S(x) = sum over s in S of x^s / s!."""
        from srestrict.series import EGF

        if order < 0:
            raise ValueError("order must be >= 0")
        coeffs = [Fraction(0)] * (order + 1)
        for s in self.enumerate(order):
            coeffs[s] = Fraction(1, factorial(s))
        return EGF(coeffs)

    def __str__(self) -> str:
        k = self.kind
        if k == "all":
            return "all"
        if k == "upto":
            return f"<={self.m}"
        if k == "atleast":
            return f">={self.m}"
        if k == "residues":
            if (self.modulus, self.residues, self.m) == (2, frozenset({0}), 2):
                return "even"
            if (self.modulus, self.residues, self.m) == (2, frozenset({1}), 1):
                return "odd"
            res = ",".join(str(r) for r in sorted(self.residues))
            return f"mod{self.modulus}{{{res}}}>={self.m}"
        if k == "finite":
            return "{" + ",".join(map(str, self.elements)) + "}"
        return "|".join(str(m) for m in self.members)


def up_to(m: int) -> BlockSizeSet:
    if m < 1:
        raise ValueError("m must be positive")
    return BlockSizeSet("upto", m=m)


def at_least(m: int) -> BlockSizeSet:
    if m < 1:
        raise ValueError("m must be positive")
    return BlockSizeSet("atleast", m=m)


def residues(modulus: int, classes, min: int = 1) -> BlockSizeSet:
    if modulus < 1 or min < 1:
        raise ValueError("modulus and min must be positive")
    classes = frozenset(classes)
    if any(not 0 <= r < modulus for r in classes):
        raise ValueError("residues must lie in [0, modulus)")
    return BlockSizeSet("residues", m=min, modulus=modulus, residues=classes)


def finite(elements) -> BlockSizeSet:
    els = tuple(elements)
    if not els:
        raise ValueError("finite set must be nonempty")
    if any(e < 1 for e in els):
        raise ValueError("elements must be positive")
    if any(a >= b for a, b in zip(els, els[1:])):
        raise ValueError("elements must be strictly ascending")
    return BlockSizeSet("finite", elements=els)


def union(*members: BlockSizeSet) -> BlockSizeSet:
    if not members:
        raise ValueError("union needs at least one member")
    return BlockSizeSet("union", members=tuple(members))


ALL = BlockSizeSet("all")
EVEN = residues(2, {0}, 2)
ODD = residues(2, {1}, 1)

_MOD_RE = re.compile(r"^mod(\d+)\{([\d,\s]*)\}(?:>=(\d+))?$")


def _parse_atom(text: str) -> BlockSizeSet:
    t = text.strip().lower()
    if t == "all":
        return ALL
    if t == "even":
        return EVEN
    if t == "odd":
        return ODD
    if t.startswith("<="):
        return up_to(int(t[2:]))
    if t.startswith(">="):
        return at_least(int(t[2:]))
    if t.startswith("{") and t.endswith("}"):
        body = t[1:-1].strip()
        if not body:
            raise ValueError("empty finite set")
        return finite(sorted({int(x) for x in body.split(",")}))
    m = _MOD_RE.match(t)
    if m:
        classes = [int(x) for x in m.group(2).split(",") if x.strip()]
        return residues(int(m.group(1)), classes, int(m.group(3) or 1))
    raise ValueError(f"cannot parse block-size set {text!r}")


def parse_set(text: str) -> BlockSizeSet:
    """Parse the set DSL: all, <=m, >=m, even, odd, {a,b,c}, joined by '|'."""
    parts = text.split("|")
    try:
        atoms = [_parse_atom(p) for p in parts]
    except ValueError as exc:
        raise ValueError(str(exc)) from None
    return atoms[0] if len(atoms) == 1 else union(*atoms)


TEST_FAMILY: dict[str, BlockSizeSet] = {
    "all": ALL,
    "<=2": up_to(2),
    "<=3": up_to(3),
    ">=2": at_least(2),
    "even": EVEN,
    "odd": ODD,
    "{1,3,6}": finite((1, 3, 6)),
}
