"""
Product Models

Binary product L(V) x L(W) ≃ (L(V ⊕ W ⊕ s(V⊗W)), D) built by double induction
over cone-length stages, W-stage outer, V-stage inner:

- v ∈ V_0, w ∈ W_0:  D(s(v⊗w)) = [v,w]
- one of v, w at stage 0: D(s(v⊗w)) = [v,w] - eta, where eta is a preimage of
  D[v,w] in the acyclic kernel of the stage-restricted projection, corrected
  into the ideal generated by the suspensions with beta
- v ∈ V_n, w ∈ W_m (n, m >= 1): psi ∈ ker with D(psi) = [dv,dw], then
  omega = preimage of [dv,w] + (-1)^{|v|} psi   (stages < n, <= m)
  pi    = preimage of [v,dw] - psi              (stages <= n, < m)
  D(s(v⊗w)) = [v,w] - omega - (-1)^{|v|} pi

The n-fold power model is iterated: L^{k+1} = L^k x L@(k+1), with
s(s^{j-1}(...) ⊗ z@(k+1)) identified with the flat generator s^j(... ⊗ z).
Suspension generators above the degree bound are not built; they are recorded
in Dgl.omitted.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..algebra.tensor import Generator, TensorElement, bracket, koszul_sign
from ..dgl.dgl import Dgl
from ..dgl.homology import preimage_in_kernel
from ..dgl.morphism import DglMorphism, DirectProduct
from ..errors import InputError, InvariantViolation
from .beta import beta
from .naming import PowerGenerator, relabel_copy, suspension_of

logger = logging.getLogger(__name__)

PairFunction = Callable[[Generator, Generator], Generator]


@dataclass
class ProductStep:
    """Bookkeeping of one binary extension"""
    v_ids: Tuple[str, ...]
    w_ids: Tuple[str, ...]
    v_stages: Dict[str, int]
    w_stages: Dict[str, int]
    suspensions: Dict[str, Tuple[str, str]] = field(default_factory=dict)  # s id -> (v id, w id)


@dataclass
class ProductModel:
    """
    A product (or power) model with its projection

    Attributes:
        dgl: the model (L(Z^n), D)
        phi: quasi-isomorphism onto the direct product of the factors
        factors: the (relabelled) factors
        degree_bound: generators above this degree were not built
        base: the model the factors are copies of (power models only)
        steps: one entry per binary extension, in order
    """
    dgl: Dgl
    phi: DglMorphism
    factors: Tuple[Dgl, ...]
    degree_bound: int
    base: Optional[Dgl] = None
    steps: Tuple[ProductStep, ...] = ()

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def omitted(self) -> Tuple[Generator, ...]:
        return self.dgl.omitted

    def generators_of_length(self, length: int) -> List[PowerGenerator]:
        return [
            g for g in self.dgl.generators
            if isinstance(g, PowerGenerator) and g.length == length
        ]


def projection(dgl: Dgl, factors: Sequence[Dgl]) -> DglMorphism:
    """phi: generators of factor i go to the i-th component, everything else to 0"""
    product = DirectProduct(factors)
    assignment = {}
    for i, factor in enumerate(factors):
        for g in factor.generators:
            assignment[g.id] = product.embed(i, g.element())
    return DglMorphism(dgl, product, assignment, name="phi")


class _BinaryExtension:
    """
    Builds L(V ⊕ W ⊕ s(V⊗W)) one suspension generator at a time

    Also serves as the beta pairing: V is side 0, W side 1, suspensions None.
    """

    def __init__(self, left: Dgl, right: Dgl, pair: PairFunction, N: int, name: str):
        overlap = set(left.ids) & set(right.ids)
        if overlap:
            raise InputError(f"Factors share generator ids: {sorted(overlap)}")
        for factor in (left, right):
            if not factor.is_minimal():
                logger.warning(f"{factor.name} is not minimal; kernels may fail to be acyclic")

        self.left = left
        self.right = right
        self.pair = pair
        self.N = N
        self.name = name
        self._side = {gid: 0 for gid in left.ids}
        self._side.update({gid: 1 for gid in right.ids})
        self._stage = {**left.stages, **right.stages}
        self.suspension: Dict[Tuple[str, str], Generator] = {}
        self.generators: List[Generator] = list(left.generators) + list(right.generators)
        self.differential: Dict[str, TensorElement] = {**left.differentials, **right.differentials}
        self.omitted: List[Generator] = list(left.omitted) + list(right.omitted)
        self.dgl = self._rebuild()

    def _rebuild(self) -> Dgl:
        return Dgl(self.generators, self.differential, name=self.name,
                   stages=self._stage, omitted=self.omitted)

    # ------------------------------------------------------------------
    # Pairing
    # ------------------------------------------------------------------

    def side(self, generator_id: str) -> Optional[int]:
        return self._side.get(generator_id)

    def suspend(self, a: Generator, b: Generator) -> Tuple[str, int]:
        if self.side(a.id) == 0 and self.side(b.id) == 1:
            key, sign = (a.id, b.id), 1
        elif self.side(a.id) == 1 and self.side(b.id) == 0:
            key, sign = (b.id, a.id), -koszul_sign(a.degree * b.degree)
        else:
            raise InvariantViolation(f"Cannot suspend {a.id} ⊗ {b.id}")
        s = self.suspension.get(key)
        if s is None:
            raise InvariantViolation(
                f"s({key[0]}⊗{key[1]}) is needed but was not built (degree bound {self.N})"
            )
        return s.id, sign

    # ------------------------------------------------------------------
    # Stage-restricted sub-dgls
    # ------------------------------------------------------------------

    def _restricted(self, v_bound: int, w_bound: int) -> DglMorphism:
        """Projection of L(V_<v_bound ⊕ W_<w_bound ⊕ their suspensions)"""
        vs = [gid for gid in self.left.ids if self._stage[gid] < v_bound]
        ws = [gid for gid in self.right.ids if self._stage[gid] < w_bound]
        ss = [
            s.id for (v, w), s in self.suspension.items()
            if self._stage[v] < v_bound and self._stage[w] < w_bound
        ]
        sub = self.dgl.sub_dgl(vs + ws + ss, name=f"{self.name}[{v_bound},{w_bound}]")
        return projection(sub, [self.left.sub_dgl(vs), self.right.sub_dgl(ws)])

    def _ideal_preimage(self, c: TensorElement, v_bound: int, w_bound: int) -> TensorElement:
        """eta in the suspension ideal with D(eta) = c"""
        if c.is_zero():
            return TensorElement.zero(c.degree + 1 if c.degree is not None else None)
        phi = self._restricted(v_bound, w_bound)
        tau = preimage_in_kernel(phi, c)
        mixed = tau.filter(lambda word: all(self.side(letter) is not None for letter in word))
        if mixed.is_zero():
            return tau
        correction, _ = beta(self.dgl, self, mixed)
        return tau - self.dgl.d(correction)

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    def suspension_differential(self, v: Generator, w: Generator) -> TensorElement:
        n, m = self._stage[v.id], self._stage[w.id]
        vw = bracket(v.element(), w.element())
        if n == 0 and m == 0:
            return vw
        if n == 0:
            return vw - self._ideal_preimage(self.dgl.d(vw), 1, m)
        if m == 0:
            return vw - self._ideal_preimage(self.dgl.d(vw), n, 1)

        dv = self.left.differential(v.id)
        dw = self.right.differential(w.id)
        sign = koszul_sign(v.degree)
        psi = preimage_in_kernel(self._restricted(n, m), bracket(dv, dw))
        omega = self._ideal_preimage(bracket(dv, w.element()) + psi.scale(sign), n, m + 1)
        pi = self._ideal_preimage(bracket(v.element(), dw) - psi, n + 1, m)
        return vw - omega - pi.scale(sign)

    def run(self) -> Dgl:
        left_index = {gid: k for k, gid in enumerate(self.left.ids)}
        right_index = {gid: k for k, gid in enumerate(self.right.ids)}
        pairs = sorted(
            ((v, w) for v in self.left.generators for w in self.right.generators),
            key=lambda p: (self._stage[p[1].id], self._stage[p[0].id],
                           left_index[p[0].id], right_index[p[1].id]),
        )
        for v, w in pairs:
            s = self.pair(v, w)
            if s.degree > self.N:
                self.omitted.append(s)
                continue
            differential = self.suspension_differential(v, w)
            self.generators.append(s)
            self.differential[s.id] = differential
            self.suspension[(v.id, w.id)] = s
            self.dgl = self._rebuild()
            if self.dgl.d(differential):
                raise InvariantViolation(f"D² ≠ 0 on {s.id}")
            logger.debug(f"D({s.id}) built with {len(differential)} tensor word(s)")
        self.dgl = self._rebuild()
        return self.dgl

    def step(self) -> ProductStep:
        return ProductStep(
            v_ids=tuple(self.left.ids),
            w_ids=tuple(self.right.ids),
            v_stages=self.left.stages,
            w_stages=self.right.stages,
            suspensions={s.id: key for key, s in self.suspension.items()},
        )


def extend_product(left: Dgl, right: Dgl, pair: PairFunction, N: int, name: str) -> Tuple[Dgl, ProductStep]:
    """One binary extension with a custom naming of the suspensions"""
    builder = _BinaryExtension(left.truncate(N), right.truncate(N), pair, N, name)
    dgl = builder.run()
    return dgl, builder.step()


def binary_product(LX: Dgl, LY: Dgl, N: int) -> ProductModel:
    """
    Product model of two minimal dgls

    Generators of LX become copy 1 (x -> x@1), those of LY copy 2, and
    s(x@1 ⊗ y@2) is named s{x@1,y@2}.
    """
    left = LX.truncate(N).rename({g.id: relabel_copy(g, 1) for g in LX.truncate(N).generators})
    right = LY.truncate(N).rename({g.id: relabel_copy(g, 2) for g in LY.truncate(N).generators})
    logger.info(f"Building product model {LX.name} x {LY.name} up to degree {N}")
    dgl, step = extend_product(left, right, suspension_of, N, f"{LX.name}x{LY.name}")
    factors = (left, right)
    return ProductModel(dgl=dgl, phi=projection(dgl, factors), factors=factors,
                        degree_bound=N, steps=(step,))


def _canonical_key(base_order: Dict[str, int]):
    def key(g: Generator):
        if isinstance(g, PowerGenerator):
            return (g.length, g.copies, tuple(base_order.get(b, len(base_order)) for b in g.bases))
        return (0, (), ())
    return key


def power_model(L: Dgl, n: int, N: int) -> ProductModel:
    """
    Model of the n-fold product X^n

    n = 1 returns L itself with the identity projection.
    """
    if n < 1:
        raise InputError(f"Power model needs n >= 1, got {n}")
    L = L.truncate(N)
    if n == 1:
        return ProductModel(dgl=L, phi=projection(L, [L]), factors=(L,), degree_bound=N, base=L)

    copies = [L.rename({g.id: relabel_copy(g, i) for g in L.generators}, name=f"{L.name}@{i}")
              for i in range(1, n + 1)]
    logger.info(f"Building power model {L.name}^{n} up to degree {N}")

    current = copies[0]
    steps = []
    for k in range(1, n):
        current, step = extend_product(current, copies[k], suspension_of, N, f"{L.name}^{k + 1}")
        steps.append(step)

    base_order = {gid: k for k, gid in enumerate(L.ids)}
    dgl = current.reorder(_canonical_key(base_order))
    logger.info(
        f"{dgl.name}: {len(dgl)} generator(s), {len(dgl.omitted)} omitted above degree {N}"
    )
    return ProductModel(dgl=dgl, phi=projection(dgl, copies), factors=tuple(copies),
                        degree_bound=N, base=L, steps=tuple(steps))
