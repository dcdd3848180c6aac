"""
Diagonal Model

Lifts the diagonal L -> L x ... x L through the projection of the n-fold
power model, generator by generator in degree order:

    delta(z) = z@1 + ... + z@n + xi,   xi in the ideal of length >= 2 generators

The residual r = delta(dz) - D(z@1 + ... + z@n) lies in the (acyclic) kernel
of the projection; a preimage tau is found, its part on length-one letters is
moved into the ideal with the n-copy beta correction, and xi = tau - D(beta).
"""

import logging
from typing import Optional, Tuple

from ..algebra.tensor import Generator, TensorElement, koszul_sign
from ..dgl.dgl import Dgl
from ..dgl.homology import preimage_in_kernel
from ..dgl.morphism import DglMorphism, evaluate, identity
from ..errors import InvariantViolation, LiftFailure, NoPreimage
from .beta import beta
from .naming import PowerGenerator, copy_id, power_id
from .product import ProductModel, power_model

logger = logging.getLogger(__name__)


class CopyPairing:
    """
    Beta pairing of a power model: copies are the sides, longer words the ideal

    z@i ⊗ z'@j suspends to s{z@i,z'@j} (i < j) or, reversed, with the sign
    -(-1)^{|a||b|}.
    """

    def __init__(self, dgl: Dgl):
        self.dgl = dgl

    def side(self, generator_id: str) -> Optional[int]:
        g = self.dgl.generator(generator_id)
        if isinstance(g, PowerGenerator) and g.length == 1:
            return g.copies[0]
        return None

    def suspend(self, a: Generator, b: Generator) -> Tuple[str, int]:
        i, j = self.side(a.id), self.side(b.id)
        if i is None or j is None or i == j:
            raise InvariantViolation(f"Cannot suspend {a.id} ⊗ {b.id}")
        if i < j:
            s_id, sign = power_id((a.bases[0], b.bases[0]), (i, j)), 1
        else:
            s_id, sign = power_id((b.bases[0], a.bases[0]), (j, i)), -koszul_sign(a.degree * b.degree)
        if s_id not in self.dgl:
            raise InvariantViolation(f"{s_id} is needed but was not built")
        return s_id, sign


def diagonal_model(L: Dgl, n: int, N: int, power: Optional[ProductModel] = None) -> DglMorphism:
    """
    delta: L -> power_model(L, n, N) with phi ∘ delta = diagonal

    Args:
        power: an already built power model of L (built when omitted)

    Raises:
        LiftFailure: the kernel of the projection is not acyclic where needed
    """
    L = L.truncate(N)
    if n == 1:
        return identity(L)
    if power is None:
        power = power_model(L, n, N)
    P = power.dgl
    pairing = CopyPairing(P)

    images = {}
    for g in sorted(L.generators, key=lambda h: h.degree):
        copies = TensorElement.combine(
            ((1, P.element(copy_id(g.id, i))) for i in range(1, n + 1)), g.degree
        )
        residual = evaluate(L.differential(g.id), images, P) - P.d(copies)
        if residual.is_zero():
            images[g.id] = copies
            continue
        try:
            tau = preimage_in_kernel(power.phi, residual)
        except NoPreimage as e:
            raise LiftFailure(g.id, g.degree) from e
        linear_letters = tau.filter(lambda word: all(pairing.side(letter) is not None for letter in word))
        xi = tau
        if linear_letters:
            correction, _ = beta(P, pairing, linear_letters)
            xi = tau - P.d(correction)
        images[g.id] = copies + xi
        logger.debug(f"delta({g.id}) corrected by {len(xi)} word(s)")

    return DglMorphism(L, P, images, name="delta")
