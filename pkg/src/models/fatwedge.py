"""
Map Models and Fat-Wedge Models

A MapModel is a free extension L(V) ↪ L(V ⊕ W): a Dgl whose generators are
split into the domain V (closed under d) and the relative part W.

The fat-wedge model of a map model keeps every generator of the (n+1)-fold
power model of L(V ⊕ W) except the length-(n+1) suspensions all of whose
bases lie in W. The kept length >= 2 generators span U.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Optional, Tuple

from ..dgl.dgl import Dgl
from ..dgl.morphism import DglMorphism, inclusion
from ..errors import InputError
from .naming import PowerGenerator
from .product import ProductModel, power_model

logger = logging.getLogger(__name__)


@dataclass
class MapModel:
    """
    Free extension L(V) ↪ L(V ⊕ W)

    Attributes:
        dgl: the model L(V ⊕ W)
        domain: ids of the V generators
    """
    dgl: Dgl
    domain: FrozenSet[str] = frozenset()

    def __post_init__(self):
        self.domain = frozenset(self.domain)
        for gid in self.domain:
            self.dgl.generator(gid)
        for gid in self.domain:
            for letter in self.dgl.differential(gid).letters():
                if letter not in self.domain:
                    raise InputError(
                        f"d({gid}) uses {letter} outside the domain; L(V) is not a sub-dgl"
                    )

    @property
    def domain_ids(self) -> Tuple[str, ...]:
        return tuple(gid for gid in self.dgl.ids if gid in self.domain)

    @property
    def relative_ids(self) -> Tuple[str, ...]:
        return tuple(gid for gid in self.dgl.ids if gid not in self.domain)

    def domain_dgl(self) -> Dgl:
        return self.dgl.sub_dgl(self.domain_ids, name=f"{self.dgl.name}|V")

    def inclusion(self) -> DglMorphism:
        return inclusion(self.domain_dgl(), self.dgl)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MapModel):
            return NotImplemented
        return self.dgl == other.dgl and self.domain == other.domain


@dataclass
class FatWedgeModel:
    """
    Model of the fat-wedge inclusion T^{n+1}(f) ⊂ Y^{n+1}

    Attributes:
        n: fat-wedge index (n + 1 copies)
        power: the power model of L(V ⊕ W)
        kept: sub-dgl on the kept generators
        removed: ids of the length-(n+1) pure-W suspensions
        u_ids: kept generators of length >= 2
        iota: generator inclusion kept -> power
    """
    n: int
    power: ProductModel
    kept: Dgl
    removed: Tuple[str, ...]
    u_ids: FrozenSet[str]
    iota: DglMorphism


def fat_wedge_model(M: MapModel, n: int, N: int, power: Optional[ProductModel] = None) -> FatWedgeModel:
    """
    Fat-wedge model of a map model

    n = 0 keeps V only (the fat wedge of one copy is the image of the map).

    Raises:
        ClosureViolation: D of a kept generator uses a removed one
    """
    if n < 0:
        raise InputError(f"Fat wedge index must be >= 0, got {n}")
    if power is None:
        power = power_model(M.dgl, n + 1, N)
    P = power.dgl

    if n == 0:
        kept_ids = [gid for gid in M.domain_ids if gid in P]
        removed = tuple(gid for gid in P.ids if gid not in M.domain)
        u_ids: FrozenSet[str] = frozenset()
    else:
        removed = tuple(
            g.id for g in P.generators
            if isinstance(g, PowerGenerator)
            and g.length == n + 1
            and all(base not in M.domain for base in g.bases)
        )
        removed_set = set(removed)
        kept_ids = [gid for gid in P.ids if gid not in removed_set]
        u_ids = frozenset(
            g.id for g in P.generators
            if g.id not in removed_set and isinstance(g, PowerGenerator) and g.length >= 2
        )

    kept = P.sub_dgl(kept_ids, name=f"T{n + 1}({M.dgl.name})")
    logger.info(
        f"Fat wedge n={n}: {len(kept)} kept, {len(removed)} removed, |U| = {len(u_ids)}"
    )
    return FatWedgeModel(
        n=n,
        power=power,
        kept=kept,
        removed=removed,
        u_ids=u_ids,
        iota=inclusion(kept, P),
    )
