"""Tensor-product extensions n_{r,s} -> n_{r+8,s}, n_{r,s+8}, n_{r+4,s+4}.

Each extension tensors the module with a fixed 16-dimensional factor and
fills in structure constants case by case: brackets diagonal in the factor
index inherit the parent constant times a factor-dependent sign table, and
brackets diagonal in the parent index inherit the factor constant times the
parent metric sign.  The new center is ordered positive-first, and the
flattened pair basis is stably re-sorted so the module metric reads
(+...+, -...-); the permutation is recorded in the provenance so canonical
isomorphisms can keep speaking in pair coordinates.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional, Sequence

from .algebra import (
    BlockSets,
    ExtensionProvenance,
    PseudoHTypeAlgebra,
    SignedPermutationOp,
    StructureTensor,
    j_operator,
)
from .catalog import (
    BASE_IDS,
    UnsupportedSignatureError,
    aligned_factor_0_8,
    base_algebra,
)
from .core import Signature


class ExtensionStep(Enum):
    BY_8_0 = "8,0"
    BY_0_8 = "0,8"
    BY_4_4 = "4,4"

    @staticmethod
    def parse(text: str) -> "ExtensionStep":
        t = text.strip().replace(" ", "")
        for step in ExtensionStep:
            if t == step.value or t == step.value.replace(",", ""):
                return step
        raise ValueError(f"unknown extension step {text!r}; "
                         f"expected one of 8,0 0,8 4,4")

    @property
    def delta(self) -> tuple[int, int]:
        p, q = self.value.split(",")
        return int(p), int(q)


def volume_involution(factor: PseudoHTypeAlgebra) -> SignedPermutationOp:
    """Product of all center operators J_1 ... J_n of a rank-8 factor.

    For the three 16-dimensional factors this is diagonal +-1 on the
    integral basis, squares to the identity and anticommutes with each J_k.
    """
    op = j_operator(factor, 1)
    for k in range(2, factor.dim_center + 1):
        op = op.compose(j_operator(factor, k))
    return op


def _factor(step: ExtensionStep) -> PseudoHTypeAlgebra:
    if step is ExtensionStep.BY_8_0:
        return base_algebra(8, 0)
    if step is ExtensionStep.BY_0_8:
        return aligned_factor_0_8()
    return base_algebra(4, 4)


# Sign picked up by a parent structure constant when the factor indices are
# equal: the lemma case lists, organized as one +-1 per factor basis vector.
_PARENT_SIGN = {
    ExtensionStep.BY_8_0: tuple(-1 if j <= 8 else 1 for j in range(1, 17)),
    ExtensionStep.BY_0_8: (-1,) * 16,
    ExtensionStep.BY_4_4: tuple(
        1 if j in (2, 3, 4, 5, 13, 14, 15, 16) else -1 for j in range(1, 17)),
}

_FACTOR_BLOCKS = {
    ExtensionStep.BY_8_0: BlockSets(frozenset(range(1, 9)), frozenset(),
                                    frozenset(range(9, 17)), frozenset()),
    ExtensionStep.BY_0_8: BlockSets(frozenset(range(1, 9)), frozenset(),
                                    frozenset(), frozenset(range(9, 17))),
    ExtensionStep.BY_4_4: BlockSets(frozenset({1, 6, 7, 8}),
                                    frozenset({13, 14, 15, 16}),
                                    frozenset({2, 3, 4, 5}),
                                    frozenset({9, 10, 11, 12})),
}


def _center_layout(step: ExtensionStep, r: int, s: int
                   ) -> tuple[Signature, tuple[int, ...], tuple[int, ...]]:
    """New signature plus final positions of parent and factor center vectors.

    Positive directions always come first: the factor block slots in right
    after the parent's positive part, except for the all-negative (0,8)
    factor whose block is appended at the end.
    """
    if step is ExtensionStep.BY_8_0:
        sig = Signature(r + 8, s)
        parent = tuple(k if k <= r else k + 8 for k in range(1, r + s + 1))
        factor = tuple(r + k for k in range(1, 9))
    elif step is ExtensionStep.BY_0_8:
        sig = Signature(r, s + 8)
        parent = tuple(range(1, r + s + 1))
        factor = tuple(r + s + k for k in range(1, 9))
    else:
        sig = Signature(r + 4, s + 4)
        parent = tuple(k if k <= r else k + 8 for k in range(1, r + s + 1))
        factor = tuple(r + k for k in range(1, 9))
    return sig, parent, factor


def extend(a: PseudoHTypeAlgebra, step: ExtensionStep) -> PseudoHTypeAlgebra:
    """Extend an algebra by one Bott-periodicity step."""
    factor = _factor(step)
    parent_sign = _PARENT_SIGN[step]
    two_l = a.dim_module
    sig, parent_center, factor_center = _center_layout(step, a.r, a.s)

    def flat(i: int, j: int) -> int:
        return 16 * (i - 1) + j

    # stable sign sort of the flattened pair basis
    dim_new = 16 * two_l
    pair_metric = [0] * (dim_new + 1)
    for i in range(1, two_l + 1):
        for j in range(1, 17):
            pair_metric[flat(i, j)] = a.module_sign(i) * factor.module_sign(j)
    order = sorted(range(1, dim_new + 1),
                   key=lambda f: (0 if pair_metric[f] > 0 else 1, f))
    pair_to_final = [0] * (dim_new + 1)
    for pos, f in enumerate(order, start=1):
        pair_to_final[f] = pos
    metric = tuple(pair_metric[f] for f in order)

    entries = []
    # factor indices equal: parent bracket scaled by the step's sign table
    for (i, p, k, s0) in a.tensor.entries:
        for j in range(1, 17):
            entries.append((pair_to_final[flat(i, j)], pair_to_final[flat(p, j)],
                            parent_center[k - 1], s0 * parent_sign[j - 1]))
    # parent indices equal: factor bracket scaled by the parent metric sign
    for (j, q, k, s0) in factor.tensor.entries:
        for i in range(1, two_l + 1):
            entries.append((pair_to_final[flat(i, j)], pair_to_final[flat(i, q)],
                            factor_center[k - 1], s0 * a.module_sign(i)))

    tensor = StructureTensor(dim_new, sig.dim, entries)
    provenance = ExtensionProvenance(
        parent=a, step=step.value,
        pair_to_final=tuple(pair_to_final[1:]),
        parent_center_to_final=parent_center,
        factor_center_to_final=factor_center)
    module_labels = tuple(
        f"{a.module_labels[i - 1]}*{factor.module_labels[j - 1]}"
        for f in order
        for i, j in [((f - 1) // 16 + 1, (f - 1) % 16 + 1)])
    center_labels = _extended_center_labels(a, factor, sig, parent_center,
                                            factor_center)
    blocks = _extend_blocks(a.blocks, step, pair_to_final, two_l, flat)
    return PseudoHTypeAlgebra(
        center_sig=sig,
        module_signs=metric,
        tensor=tensor,
        module_labels=module_labels,
        center_labels=center_labels,
        provenance=provenance,
        blocks=blocks,
    )


def _extended_center_labels(a, factor, sig, parent_center, factor_center):
    labels = [""] * sig.dim
    for k, pos in enumerate(parent_center, start=1):
        labels[pos - 1] = f"Z{pos}"
    for k, pos in enumerate(factor_center, start=1):
        labels[pos - 1] = f"Z{pos}"
    return tuple(labels)


def _extend_blocks(parent: Optional[BlockSets], step: ExtensionStep,
                   pair_to_final: Sequence[int], two_l: int,
                   flat) -> Optional[BlockSets]:
    """Push the canonical quarter sets through one extension step."""
    if parent is None:
        return None
    fb = _FACTOR_BLOCKS[step]

    def prod(par: frozenset[int], fac: frozenset[int]) -> frozenset[int]:
        return frozenset(pair_to_final[flat(i, j)] for i in par for j in fac)

    fa = fb.a_side
    fbn = fb.b_side
    if step is ExtensionStep.BY_8_0:
        a_plus = prod(parent.a_plus, fa) | prod(parent.b_plus, fbn)
        a_minus = prod(parent.a_minus, fa) | prod(parent.b_minus, fbn)
        b_plus = prod(parent.a_plus, fbn) | prod(parent.b_plus, fa)
        b_minus = prod(parent.a_minus, fbn) | prod(parent.b_minus, fa)
    elif step is ExtensionStep.BY_0_8:
        a_plus = prod(parent.a_plus, fa) | prod(parent.b_minus, fbn)
        a_minus = prod(parent.a_minus, fa) | prod(parent.b_plus, fbn)
        b_plus = prod(parent.a_minus, fbn) | prod(parent.b_plus, fa)
        b_minus = prod(parent.a_plus, fbn) | prod(parent.b_minus, fa)
    else:
        a_plus = (prod(parent.b_plus, fb.b_plus) | prod(parent.b_minus, fb.b_minus)
                  | prod(parent.a_plus, fb.a_plus) | prod(parent.a_minus, fb.a_minus))
        a_minus = (prod(parent.b_minus, fb.b_plus) | prod(parent.b_plus, fb.b_minus)
                   | prod(parent.a_minus, fb.a_plus) | prod(parent.a_plus, fb.a_minus))
        b_plus = (prod(parent.a_plus, fb.b_plus) | prod(parent.a_minus, fb.b_minus)
                  | prod(parent.b_plus, fb.a_plus) | prod(parent.b_minus, fb.a_minus))
        b_minus = (prod(parent.a_plus, fb.b_minus) | prod(parent.a_minus, fb.b_plus)
                   | prod(parent.b_minus, fb.a_plus) | prod(parent.b_plus, fb.a_minus))
    return BlockSets(a_plus, a_minus, b_plus, b_minus)


def extension_chain(base_id: tuple[int, int],
                    steps: Sequence[ExtensionStep]) -> PseudoHTypeAlgebra:
    """Fold extend() over a step list starting from a catalog base."""
    algebra = base_algebra(*base_id)
    for step in steps:
        algebra = extend(algebra, step)
    return algebra


_STEP_PREFERENCE = (ExtensionStep.BY_8_0, ExtensionStep.BY_0_8,
                    ExtensionStep.BY_4_4)


def standard_chain(r: int, s: int
                   ) -> Optional[tuple[tuple[int, int], list[ExtensionStep]]]:
    """Deterministic reduction of (r, s) to a catalog base plus steps.

    Peels the last step preferring (8,0), then (0,8), then (4,4); returns
    None when no chain reaches a catalog id.
    """
    if r < 0 or s < 0:
        return None
    if (r, s) in BASE_IDS:
        return (r, s), []
    for step in _STEP_PREFERENCE:
        dp, dq = step.delta
        sub = standard_chain(r - dp, s - dq)
        if sub is not None:
            base, steps = sub
            return base, steps + [step]
    return None


def standard_algebra(r: int, s: int) -> PseudoHTypeAlgebra:
    """The catalog algebra or its canonical extension chain for (r, s)."""
    chain = standard_chain(r, s)
    if chain is None:
        raise UnsupportedSignatureError(r, s, what="construction")
    base, steps = chain
    return extension_chain(base, steps)


def pair_index(a: PseudoHTypeAlgebra, i: int, j: int) -> int:
    """Final basis index of w_i (x) alpha_j in an extended algebra."""
    prov = a.provenance
    if not isinstance(prov, ExtensionProvenance):
        raise ValueError("algebra is not an extension")
    return prov.pair_to_final[16 * (i - 1) + j - 1]
