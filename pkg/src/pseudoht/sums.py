"""Non-minimal algebras built from direct sums of minimal modules.

A sum carries mu copies of the base module and nu copies of a second,
non-equivalent one.  The second type is realized concretely on the same
vector space with every J negated; when the center rank is odd this flips
the volume element, which is exactly what distinguishes the two module
types.  Brackets between distinct copies vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (
    PseudoHTypeAlgebra,
    SignedPermutationOp,
    SumProvenance,
    StructureTensor,
    j_operator,
)
from .catalog import BASE_IDS, UnsupportedSignatureError
from .core import ExactMatrix
from .morphism import LieMorphism
from .obstruction import Certificate, sbg_decision, verify_sbg_no_witness


@dataclass(frozen=True)
class DirectSumAlgebra:
    base: PseudoHTypeAlgebra
    mu: int
    nu: int
    algebra: PseudoHTypeAlgebra  # the combined object, block-concatenated

    @property
    def block_dim(self) -> int:
        return self.base.dim_module

    @property
    def blocks(self) -> list[int]:
        """Block types in basis order: mu ones then nu twos."""
        return [1] * self.mu + [2] * self.nu

    def block_offset(self, index: int) -> int:
        """0-based module offset of block `index` (0-based)."""
        return index * self.block_dim


def build_sum(base: PseudoHTypeAlgebra, mu: int, nu: int) -> DirectSumAlgebra:
    """mu copies of the base block plus nu copies of the negated-J block."""
    r, s = base.r, base.s
    if (r, s) not in BASE_IDS:
        raise UnsupportedSignatureError(r, s, what="direct-sum base")
    if mu < 0 or nu < 0 or mu + nu == 0:
        raise ValueError("need a positive number of blocks")
    if nu > 0 and (r - s) % 4 != 3:
        raise ValueError(
            f"two non-equivalent module types require r - s = 3 mod 4; "
            f"got ({r},{s})")
    per = base.dim_module
    entries = []
    for b, btype in enumerate([1] * mu + [2] * nu):
        off = b * per
        flip = 1 if btype == 1 else -1
        for (i, j, k, sg) in base.tensor.entries:
            entries.append((i + off, j + off, k, sg * flip))
    total = per * (mu + nu)
    tensor = StructureTensor(total, base.dim_center, entries)
    labels = tuple(f"{base.module_labels[i]}.{b + 1}"
                   for b in range(mu + nu) for i in range(per))
    combined = PseudoHTypeAlgebra(
        center_sig=base.center_sig,
        module_signs=base.module_signs * (mu + nu),
        tensor=tensor,
        module_labels=labels,
        center_labels=base.center_labels,
        provenance=SumProvenance(r, s, mu, nu),
    )
    return DirectSumAlgebra(base=base, mu=mu, nu=nu, algebra=combined)


def _block_view(sum_algebra: DirectSumAlgebra, block: int) -> PseudoHTypeAlgebra:
    """One copy of the module as a standalone algebra, read off the sum."""
    base = sum_algebra.base
    per = base.dim_module
    off = sum_algebra.block_offset(block)
    entries = [(i - off, j - off, k, sg)
               for (i, j, k, sg) in sum_algebra.algebra.tensor.entries
               if off < i <= off + per and off < j <= off + per]
    return PseudoHTypeAlgebra(
        center_sig=base.center_sig,
        module_signs=base.module_signs,
        tensor=StructureTensor(per, base.dim_center, entries),
        module_labels=base.module_labels,
        center_labels=base.center_labels,
        provenance=base.provenance,
    )


def block_volume_element(sum_algebra: DirectSumAlgebra, block: int
                         ) -> tuple[Optional[int], SignedPermutationOp]:
    """Compose all center operators on one block; (+1, -1, or None) plus op.

    The operators are recovered from the sum's own tensor restricted to the
    block.  None means the composition is not a scalar multiple of the
    identity, which happens when the minimal module is reducible.
    """
    view = _block_view(sum_algebra, block)
    op = j_operator(view, 1)
    for k in range(2, view.dim_center + 1):
        op = op.compose(j_operator(view, k))
    return op.scalar_action(), op


def swap_isomorphism(sum_algebra: DirectSumAlgebra) -> LieMorphism:
    """Block swap n_{r,s}(mu,nu) -> n_{r,s}(nu,mu) negating the center.

    Type-1 copy j goes to type-2 copy j of the target and vice versa; since
    both block types share the same coordinate space, the per-block map is
    the identity matrix.
    """
    base = sum_algebra.base
    if (base.r - base.s) % 4 != 3:
        raise ValueError("block swap needs two module types: r - s = 3 mod 4")
    mu, nu = sum_algebra.mu, sum_algebra.nu
    target = build_sum(base, nu, mu)
    per = sum_algebra.block_dim
    n = sum_algebra.algebra.dim_module
    rows = [[0] * n for _ in range(n)]

    def place(src_block: int, dst_block: int) -> None:
        for i in range(per):
            rows[dst_block * per + i][src_block * per + i] = 1

    for j in range(mu):          # type-1 sources -> target type-2 slots
        place(j, nu + j)
    for q in range(nu):          # type-2 sources -> target type-1 slots
        place(mu + q, q)
    c = ExactMatrix.from_rows(
        [[-1 if i == j else 0 for j in range(base.dim_center)]
         for i in range(base.dim_center)])
    return LieMorphism(sum_algebra.algebra, target.algebra,
                       ExactMatrix.from_rows(rows), c)


def sum_sbg(sum_algebra: DirectSumAlgebra, samples: int = 100,
            seed: int = 0) -> Certificate:
    """Strongly-bracket-generating decision for a direct sum.

    Definite center: sampled evidence on the combined algebra.  Otherwise
    the base witness padded with zero blocks works verbatim.
    """
    a = sum_algebra.algebra
    if a.r == 0 or a.s == 0:
        cert = sbg_decision(a, samples=samples, seed=seed)
        return Certificate(cert.kind, {
            **cert.payload, "sum": [sum_algebra.mu, sum_algebra.nu]})
    base_cert = sbg_decision(sum_algebra.base, samples=samples, seed=seed)
    z0 = [Fraction(e) for e in base_cert.payload["z0"]]
    v_base = [Fraction(e) for e in base_cert.payload["witness_v"]]
    v = v_base + [Fraction(0)] * (a.dim_module - len(v_base))
    verdict = verify_sbg_no_witness(a, z0, v)
    if not verdict.ok:
        raise RuntimeError(f"padded witness failed verification: {verdict.detail}")
    return Certificate("SBG_NO", {
        "signature": [a.r, a.s],
        "sum": [sum_algebra.mu, sum_algebra.nu],
        "z0": [str(e) for e in z0],
        "witness_v": [str(e) for e in v],
    })


def sum_to_dict(sum_algebra: DirectSumAlgebra) -> dict:
    from .algebra import algebra_to_dict

    data = algebra_to_dict(sum_algebra.algebra)
    data["blocks"] = [{"type": 1, "count": sum_algebra.mu},
                      {"type": 2, "count": sum_algebra.nu}]
    return data
