"""
Product Generator Naming

Generators of the n-fold power model are flat iterated suspensions
s^{j-1}(z_{i1} ⊗ ... ⊗ z_{ij}) with copy indices i1 < ... < ij. Canonical ids:

    j = 1:  g@i
    j >= 2: s{g1@i1,...,gj@ij}

Bases may themselves be ids containing braces (products of product models);
parse_power_id splits on top-level commas only.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from ..algebra.tensor import Generator
from ..errors import DegreeError


def copy_id(base_id: str, copy: int) -> str:
    return f"{base_id}@{copy}"


def power_id(bases: Sequence[str], copies: Sequence[int]) -> str:
    labels = [copy_id(b, i) for b, i in zip(bases, copies)]
    if len(labels) == 1:
        return labels[0]
    return "s{" + ",".join(labels) + "}"


@dataclass(frozen=True)
class PowerGenerator(Generator):
    """
    Generator of a power or product model

    Attributes:
        bases: base generator ids (g1, ..., gj)
        copies: strictly increasing copy indices (i1, ..., ij)
    """
    bases: Tuple[str, ...] = ()
    copies: Tuple[int, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        if not self.bases or len(self.bases) != len(self.copies):
            raise DegreeError(f"Power generator '{self.id}' needs one copy index per base")
        if any(a >= b for a, b in zip(self.copies, self.copies[1:])):
            raise DegreeError(f"Copy indices of '{self.id}' must be strictly increasing")

    @property
    def length(self) -> int:
        return len(self.bases)


def suspension_of(left: PowerGenerator, right: PowerGenerator) -> PowerGenerator:
    """
    Flat generator identified with s(left ⊗ right)

    Degree |left| + |right| + 1, equal to the flat formula.
    """
    bases = left.bases + right.bases
    copies = left.copies + right.copies
    return PowerGenerator(
        id=power_id(bases, copies),
        degree=left.degree + right.degree + 1,
        bases=bases,
        copies=copies,
    )


def _split_top_level(text: str) -> list:
    parts, depth, start = [], 0, 0
    for i, char in enumerate(text):
        if char == "{":
            depth += 1
        elif char == "}":
            depth -= 1
        elif char == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return parts


def _split_copy(label: str) -> Optional[Tuple[str, int]]:
    base, sep, copy = label.rpartition("@")
    if not sep or not base or not copy.isdigit():
        return None
    return base, int(copy)


def parse_power_id(gid: str) -> Optional[Tuple[Tuple[str, ...], Tuple[int, ...]]]:
    """(bases, copies) encoded by a canonical id, or None"""
    if gid.startswith("s{") and gid.endswith("}"):
        labels = _split_top_level(gid[2:-1])
        if len(labels) < 2:
            return None
    else:
        labels = [gid]
    split = [_split_copy(label) for label in labels]
    if any(item is None for item in split):
        return None
    return tuple(b for b, _ in split), tuple(i for _, i in split)


def as_power_generator(g: Generator) -> Generator:
    """Restore the PowerGenerator structure carried by a canonical id"""
    if isinstance(g, PowerGenerator):
        return g
    parsed = parse_power_id(g.id)
    if parsed is None:
        return g
    bases, copies = parsed
    try:
        return PowerGenerator(id=g.id, degree=g.degree, bases=bases, copies=copies)
    except DegreeError:
        return g


def relabel_copy(g: Generator, copy: int) -> PowerGenerator:
    """Copy `copy` of a base generator"""
    return PowerGenerator(id=copy_id(g.id, copy), degree=g.degree, bases=(g.id,), copies=(copy,))
