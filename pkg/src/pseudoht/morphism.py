"""Lie algebra morphisms in block form and the canonical isomorphism family.

A morphism n -> n' is a block matrix (A 0 // B C): A acts on modules, C on
centers, B is the irrelevant lower-left block.  The canonical isomorphisms
between n_{r,s} and n_{s,r} are built recursively: pinned base maps for the
published low signatures, then one uniform tensor-step constructor that
covers every inductive theorem.  Verification never trusts the
construction: homomorphism and conjugation checks run on the matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .algebra import (
    PseudoHTypeAlgebra,
    Verdict,
    bracket_sparse,
    j_operator,
)
from .catalog import base_algebra, min_module_dim
from .core import ExactMatrix, MapClass, Signature, classify_map, exact_det
from .extension import (
    ExtensionStep,
    UnsupportedSignatureError,
    extend,
)


@dataclass(frozen=True)
class LieMorphism:
    src: PseudoHTypeAlgebra
    dst: PseudoHTypeAlgebra
    A: ExactMatrix
    C: ExactMatrix
    B: Optional[ExactMatrix] = None

    def __post_init__(self) -> None:
        if self.A.rows != self.dst.dim_module or self.A.cols != self.src.dim_module:
            raise ValueError("module block shape mismatch")
        if self.C.rows != self.dst.dim_center or self.C.cols != self.src.dim_center:
            raise ValueError("center block shape mismatch")
        if self.B is not None and (self.B.rows != self.dst.dim_center
                                   or self.B.cols != self.src.dim_module):
            raise ValueError("lower-left block shape mismatch")

    def b_block(self) -> ExactMatrix:
        return self.B if self.B is not None else ExactMatrix.zero(
            self.dst.dim_center, self.src.dim_module)


@dataclass(frozen=True)
class MorphismClass:
    center_action: MapClass
    integral: bool


def _sparse_columns(m: ExactMatrix) -> list[dict[int, Fraction]]:
    cols: list[dict[int, Fraction]] = [dict() for _ in range(m.cols)]
    for i, row in enumerate(m.entries, start=1):
        for j, e in enumerate(row):
            if e:
                cols[j][i] = e
    return cols


def _sparse_rows(m: ExactMatrix) -> list[dict[int, Fraction]]:
    return [{j: e for j, e in enumerate(row, start=1) if e}
            for row in m.entries]


def classify_morphism(f: LieMorphism) -> MorphismClass:
    integral = True
    for m in (f.A, f.C):
        for row in m.entries:
            for e in row:
                if e not in (-1, 0, 1):
                    integral = False
        for j in range(1, m.cols + 1):
            if sum(1 for e in m.column(j) if e) != 1:
                integral = False
        for i in range(1, m.rows + 1):
            if sum(1 for e in m.row(i) if e) != 1:
                integral = False
    action = classify_map(f.C, f.src.center_sig, f.dst.center_sig)
    return MorphismClass(center_action=action, integral=integral)


def verify_homomorphism(f: LieMorphism) -> Verdict:
    """C([x,y]) = [Ax, Ay] on all basis pairs; bilinearity does the rest."""
    acols = _sparse_columns(f.A)
    ccols = _sparse_columns(f.C)
    src, dst = f.src, f.dst
    n = src.dim_module
    for alpha in range(1, n + 1):
        xa = acols[alpha - 1]
        for beta in range(alpha + 1, n + 1):
            rhs = bracket_sparse(dst, xa, acols[beta - 1])
            lhs: dict[int, Fraction] = {}
            hit = src.tensor.bracket_pair(alpha, beta)
            if hit is not None:
                k, s = hit
                for i, c in ccols[k - 1].items():
                    if s * c:
                        lhs[i] = s * c
            if lhs != rhs:
                return Verdict(False, (alpha, beta),
                               "bracket not preserved on this basis pair")
    return Verdict(True)


def _apply_sparse_rows(rows, x, scale_out, scale_in):
    """y = D_out M D_in x for sparse row storage and +-1 diagonal scalings."""
    out: dict[int, Fraction] = {}
    for beta, xb in x.items():
        f = xb * scale_in[beta - 1]
        for i, e in rows[beta - 1].items():
            c = out.get(i, Fraction(0)) + e * f * scale_out[i - 1]
            if c:
                out[i] = c
            else:
                out.pop(i, None)
    return out


def _j_sparse(a: PseudoHTypeAlgebra, z: dict[int, Fraction],
              x: dict[int, Fraction]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for k, zk in z.items():
        op = j_operator(a, k)
        for alpha, xa in x.items():
            beta, s = op.apply_basis(alpha)
            c = out.get(beta, Fraction(0)) + zk * xa * s
            if c:
                out[beta] = c
            else:
                out.pop(beta, None)
    return out


def verify_conjugation(f: LieMorphism) -> Verdict:
    """A^tau J_Z A = J_{C^tau Z} for every center basis vector Z of dst.

    The adjoints are taken with respect to the module and center scalar
    products, so A^tau = G_src A^T G_dst and likewise for C.
    """
    src, dst = f.src, f.dst
    acols = _sparse_columns(f.A)
    arows = _sparse_rows(f.A)  # row beta of A = column beta of A^T
    crows = _sparse_rows(f.C)
    g_src = src.module_signs
    g_dst = dst.module_signs
    gz_src = src.center_sig.signs()
    gz_dst = dst.center_sig.signs()
    for k in range(1, dst.dim_center + 1):
        ctau_z = {m: gz_src[m - 1] * e * gz_dst[k - 1]
                  for m, e in crows[k - 1].items()}
        jz = j_operator(dst, k)
        for alpha in range(1, src.dim_module + 1):
            y: dict[int, Fraction] = {}
            for b, xa in acols[alpha - 1].items():
                img, s = jz.apply_basis(b)
                c = y.get(img, Fraction(0)) + xa * s
                if c:
                    y[img] = c
                else:
                    y.pop(img, None)
            lhs = _apply_sparse_rows(arows, y, g_src, g_dst)
            rhs = _j_sparse(src, ctau_z, {alpha: Fraction(1)})
            if lhs != rhs:
                return Verdict(False, (k, alpha),
                               "conjugation relation fails at this center index")
    return Verdict(True)


def _nth_root_of_fraction(x: Fraction, n: int) -> Optional[Fraction]:
    """Exact positive n-th root of a positive rational, if one exists."""
    def iroot(v: int) -> Optional[int]:
        if v < 0:
            return None
        lo, hi = 0, max(1, v)
        while lo < hi:
            mid = (lo + hi) // 2
            if mid ** n < v:
                lo = mid + 1
            else:
                hi = mid
        return lo if lo ** n == v else None

    p = iroot(x.numerator)
    q = iroot(x.denominator)
    if p is None or q is None:
        return None
    return Fraction(p, q)


def normalize_isomorphism(f: LieMorphism) -> tuple[LieMorphism, int]:
    """Rescale (A, C) -> (mu A, mu^2 C) so that |det(A^tau A)| = 1.

    Returns the rescaled morphism and the sign t with C C^tau = t * Id,
    asserting that the product really is +-identity.
    """
    two_l = f.src.dim_module
    cols = _sparse_columns(f.A)
    if all(len(c) == 1 and abs(next(iter(c.values()))) == 1 for c in cols):
        d = Fraction(1)  # signed permutation block: |det(A^tau A)| = 1
    else:
        d = abs(exact_det(f.A.transpose().mul(f.A)))
    if d == 0:
        raise ValueError("module block is singular; cannot normalize")
    if d == 1:
        mu = Fraction(1)
    else:
        mu = _nth_root_of_fraction(Fraction(1) / d, 2 * two_l)
        if mu is None:
            raise ValueError(
                f"|det(A^tau A)| = {d} has no exact rational (2*dim)-th root")
    g = LieMorphism(f.src, f.dst, f.A.scale(mu), f.C.scale(mu * mu), f.B)
    gz_src = f.src.center_sig.signs()
    gz_dst = f.dst.center_sig.signs()
    c = g.C
    ctau = ExactMatrix.from_rows(
        [[Fraction(gz_src[m]) * c.entries[k][m] * gz_dst[k]
          for k in range(c.rows)] for m in range(c.cols)])
    cct = c.mul(ctau)
    n = cct.rows
    for t in (1, -1):
        if all(cct.entries[i][j] == (t if i == j else 0)
               for i in range(n) for j in range(n)):
            return g, t
    raise ValueError("C C^tau is not +-identity after normalization")


# ---------------------------------------------------------------------------
# canonical isomorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalMap:
    """Integral morphism in signed-permutation form.

    module_image/module_sign send src basis vector a to sign * v_image[a];
    center_image is a plain permutation of center indices.
    """

    src: PseudoHTypeAlgebra
    dst: PseudoHTypeAlgebra
    module_image: tuple[int, ...]
    module_sign: tuple[int, ...]
    center_image: tuple[int, ...]

    def to_morphism(self) -> LieMorphism:
        n = self.src.dim_module
        rows = [[0] * n for _ in range(n)]
        for a in range(1, n + 1):
            rows[self.module_image[a - 1] - 1][a - 1] = self.module_sign[a - 1]
        m = self.src.dim_center
        crow = [[0] * m for _ in range(m)]
        for k in range(1, m + 1):
            crow[self.center_image[k - 1] - 1][k - 1] = 1
        return LieMorphism(self.src, self.dst,
                           ExactMatrix.from_rows(rows),
                           ExactMatrix.from_rows(crow))

    def inverse(self) -> "CanonicalMap":
        n = self.src.dim_module
        image = [0] * n
        sign = [0] * n
        for a in range(1, n + 1):
            image[self.module_image[a - 1] - 1] = a
            sign[self.module_image[a - 1] - 1] = self.module_sign[a - 1]
        m = self.src.dim_center
        cimage = [0] * m
        for k in range(1, m + 1):
            cimage[self.center_image[k - 1] - 1] = k
        return CanonicalMap(self.dst, self.src, tuple(image), tuple(sign),
                            tuple(cimage))


def _pinned_map(src, dst, module_pairs, center_pairs) -> CanonicalMap:
    image = [0] * src.dim_module
    sign = [0] * src.dim_module
    for a, (b, s) in module_pairs.items():
        image[a - 1] = b
        sign[a - 1] = s
    cimage = [0] * src.dim_center
    for k, k2 in center_pairs.items():
        cimage[k - 1] = k2
    return CanonicalMap(src, dst, tuple(image), tuple(sign), tuple(cimage))


def _base_definite_map(r: int) -> CanonicalMap:
    """The published integral isomorphisms n_{r,0} -> n_{0,r}, r = 1,2,4,8."""
    src = base_algebra(r, 0)
    dst = base_algebra(0, r)
    n = src.dim_module
    flips = {4: {2, 3, 4}, 8: set(range(2, 9))}.get(r, set())
    module = {a: (a, -1 if a in flips else 1) for a in range(1, n + 1)}
    center = {k: k for k in range(1, r + 1)}
    return _pinned_map(src, dst, module, center)


def _auto_11() -> CanonicalMap:
    a = base_algebra(1, 1)
    return _pinned_map(a, a,
                       {1: (1, 1), 2: (3, 1), 3: (2, 1), 4: (4, 1)},
                       {1: 2, 2: 1})


def _auto_22() -> CanonicalMap:
    a = base_algebra(2, 2)
    return _pinned_map(
        a, a,
        {1: (1, 1), 2: (5, 1), 3: (6, 1), 4: (4, 1),
         5: (2, 1), 6: (3, 1), 7: (7, 1), 8: (8, 1)},
        {1: 3, 2: 4, 3: 1, 4: 2})


def _auto_44() -> CanonicalMap:
    a = base_algebra(4, 4)
    return _pinned_map(
        a, a,
        {1: (1, 1), 2: (9, 1), 3: (10, 1), 4: (12, 1), 5: (11, 1),
         6: (6, 1), 7: (7, 1), 8: (8, -1), 9: (2, 1), 10: (3, 1),
         11: (5, 1), 12: (4, 1), 13: (13, 1), 14: (14, 1),
         15: (15, -1), 16: (16, 1)},
        {1: 5, 2: 6, 3: 8, 4: 7, 5: 1, 6: 2, 7: 4, 8: 3})


_FACTOR_IDENTITY_16 = (tuple(range(1, 17)), (1,) * 16)


def _factor_map_44() -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    m = _auto_44()
    return m.module_image, m.module_sign, m.center_image


def _step_map(sub: CanonicalMap, src_step: ExtensionStep,
              dst_step: ExtensionStep,
              factor_module: tuple[tuple[int, ...], tuple[int, ...]],
              factor_center: tuple[int, ...],
              factor_b_src: frozenset[int]) -> CanonicalMap:
    """One tensor induction step applied to a canonical map.

    Sends x_i (x) u_a to +-(phi(x_i) (x) phi_f(u_a)), with the extra minus
    exactly when x_i lies in the B part of the source parent and u_a in the
    B part of the source factor.  Center indices follow the parent and
    factor permutations through the recorded extension layouts.
    """
    src = extend(sub.src, src_step)
    dst = extend(sub.dst, dst_step)
    sprov = src.provenance
    dprov = dst.provenance
    f_img, f_sign = factor_module
    b_parent = sub.src.blocks.b_side if sub.src.blocks else frozenset()

    n = src.dim_module
    image = [0] * n
    sign = [0] * n
    for i in range(1, sub.src.dim_module + 1):
        pi = sub.module_image[i - 1]
        psign = sub.module_sign[i - 1]
        in_b_parent = i in b_parent
        for j in range(1, 17):
            src_idx = sprov.pair_to_final[16 * (i - 1) + j - 1]
            dst_idx = dprov.pair_to_final[16 * (pi - 1) + f_img[j - 1] - 1]
            tau = -1 if (in_b_parent and j in factor_b_src) else 1
            image[src_idx - 1] = dst_idx
            sign[src_idx - 1] = tau * psign * f_sign[j - 1]

    m = src.dim_center
    cimage = [0] * m
    for k in range(1, sub.src.dim_center + 1):
        pos = sprov.parent_center_to_final[k - 1]
        cimage[pos - 1] = dprov.parent_center_to_final[sub.center_image[k - 1] - 1]
    for kf in range(1, 9):
        pos = sprov.factor_center_to_final[kf - 1]
        cimage[pos - 1] = dprov.factor_center_to_final[factor_center[kf - 1] - 1]
    return CanonicalMap(src, dst, tuple(image), tuple(sign), tuple(cimage))


_B_80 = frozenset(range(9, 17))
_B_08 = frozenset(range(9, 17))
_B_44 = frozenset({2, 3, 4, 5, 9, 10, 11, 12})


def _step_by_8(sub: CanonicalMap) -> CanonicalMap:
    """phi_{r+8,s}: extend the source by (8,0) and the target by (0,8)."""
    return _step_map(sub, ExtensionStep.BY_8_0, ExtensionStep.BY_0_8,
                     _FACTOR_IDENTITY_16, tuple(range(1, 9)), _B_80)


def _step_by_44(sub: CanonicalMap) -> CanonicalMap:
    """phi_{r+4,s+4}: extend both sides by (4,4), twisting by the (4,4) map."""
    img, sgn, ctr = _factor_map_44()
    return _step_map(sub, ExtensionStep.BY_4_4, ExtensionStep.BY_4_4,
                     (img, sgn), ctr, _B_44)


def _map_r8(r: int) -> Optional[CanonicalMap]:
    """phi_{r,8}: n_{r,8} -> n_{8,r} from the definite base map."""
    base = _map_definite(r)
    if base is None:
        return None
    return _step_map(base, ExtensionStep.BY_0_8, ExtensionStep.BY_8_0,
                     _FACTOR_IDENTITY_16, tuple(range(1, 9)), _B_08)


def _map_r4_4(r: int) -> Optional[CanonicalMap]:
    """phi_{r+4,4}: n_{r+4,4} -> n_{4,r+4} from the definite base map."""
    base = _map_definite(r)
    if base is None:
        return None
    img, sgn, ctr = _factor_map_44()
    return _step_map(base, ExtensionStep.BY_4_4, ExtensionStep.BY_4_4,
                     (img, sgn), ctr, _B_44)


def _map_definite(r: int) -> Optional[CanonicalMap]:
    """phi_{r,0}: n_{r,0} -> n_{0,r} for r = 0,1,2,4 mod 8 (r >= 1)."""
    if r in (1, 2, 4, 8):
        return _base_definite_map(r)
    if r > 8 and r % 8 in (0, 1, 2, 4):
        sub = _map_definite(r - 8)
        if sub is not None:
            return _step_by_8(sub)
    return None


def _canonical_map(r: int, s: int, allow_inverse: bool = True
                   ) -> Optional[CanonicalMap]:
    if r < 0 or s < 0 or (r, s) == (0, 0):
        return None
    if s == 0:
        return _map_definite(r)
    if r == s and (r, s) in ((1, 1), (2, 2), (4, 4)):
        return {1: _auto_11, 2: _auto_22, 4: _auto_44}[r]()
    if s == 8 and r >= 1 and r % 8 in (0, 1, 2, 4):
        got = _map_r8(r)
        if got is not None:
            return got
    if s == 4 and r >= 5 and (r - 4) % 8 in (0, 1, 2, 4):
        got = _map_r4_4(r - 4)
        if got is not None:
            return got
    if r >= 9 and s >= 1:
        sub = _canonical_map(r - 8, s)
        if sub is not None and sub.src.blocks is not None:
            return _step_by_8(sub)
    if r >= 5 and s >= 5:
        sub = _canonical_map(r - 4, s - 4)
        if sub is not None and sub.src.blocks is not None:
            return _step_by_44(sub)
    if allow_inverse:
        rev = _canonical_map(s, r, allow_inverse=False)
        if rev is not None:
            return rev.inverse()
    return None


def canonical_isomorphism(r: int, s: int) -> Optional[LieMorphism]:
    """The published isomorphism n_{r,s} -> n_{s,r}, when one is constructed.

    None means the pair lies outside the constructible families; that is
    never a non-isomorphism claim.
    """
    cmap = _canonical_map(r, s)
    return cmap.to_morphism() if cmap is not None else None


def canonical_map(r: int, s: int) -> Optional[CanonicalMap]:
    return _canonical_map(r, s)


def remark_isom_class_check(cmap: CanonicalMap) -> Verdict:
    """Check the structural constraints on a swap isomorphism's class.

    The map must send A-parts to A-parts and B-parts to the opposite-sign
    B-parts, and restrict to an anti-isometric permutation of the center
    whose positive block lands on the negative one and vice versa.
    """
    src_b, dst_b = cmap.src.blocks, cmap.dst.blocks
    if src_b is None or dst_b is None:
        return Verdict(False, None, "missing canonical block sets")

    def img(part: frozenset[int]) -> frozenset[int]:
        return frozenset(cmap.module_image[a - 1] for a in part)

    pairs = [(img(src_b.a_plus), dst_b.a_plus), (img(src_b.a_minus), dst_b.a_minus),
             (img(src_b.b_plus), dst_b.b_minus), (img(src_b.b_minus), dst_b.b_plus)]
    for got, want in pairs:
        if got != want:
            return Verdict(False, (sorted(got), sorted(want)),
                           "block sets are not mapped as required")
    r, s = cmap.src.r, cmap.src.s
    want_pos = set(range(s + 1, s + r + 1))
    want_neg = set(range(1, s + 1))
    got_pos = {cmap.center_image[k - 1] for k in range(1, r + 1)}
    got_neg = {cmap.center_image[k - 1] for k in range(r + 1, r + s + 1)}
    if got_pos != want_pos or got_neg != want_neg:
        return Verdict(False, (sorted(got_pos), sorted(got_neg)),
                       "center permutation does not swap the sign blocks")
    return Verdict(True)


def center_signature_obstruction(src_sig: Signature, dst_sig: Signature
                                 ) -> tuple[str, str]:
    """Necessary conditions: (verdict, reason).

    verdict is "POSSIBLE" or "IMPOSSIBLE"; dimension comparison uses the
    minimal-module dimension table.
    """
    try:
        dim_src = min_module_dim(src_sig.pos, src_sig.neg)
        dim_dst = min_module_dim(dst_sig.pos, dst_sig.neg)
    except UnsupportedSignatureError:
        dim_src = dim_dst = None
    if src_sig.dim != dst_sig.dim:
        return "IMPOSSIBLE", (f"center dimensions differ: "
                              f"{src_sig.dim} vs {dst_sig.dim}")
    if dim_src is not None and dim_src != dim_dst:
        return "IMPOSSIBLE", (f"minimal module dimensions differ: "
                              f"{dim_src} vs {dim_dst}")
    if (dst_sig.pos, dst_sig.neg) not in {(src_sig.pos, src_sig.neg),
                                          (src_sig.neg, src_sig.pos)}:
        return "IMPOSSIBLE", (f"center signature {dst_sig} is neither "
                              f"{src_sig} nor its swap")
    return "POSSIBLE", "necessary conditions hold"


def morphism_to_dict(f: LieMorphism) -> dict:
    cls = classify_morphism(f)
    return {
        "src": {"r": f.src.r, "s": f.src.s,
                "provenance": f.src.provenance.json_dict()},
        "dst": {"r": f.dst.r, "s": f.dst.s,
                "provenance": f.dst.provenance.json_dict()},
        "A": [[int(e) if e.denominator == 1 else str(e) for e in row]
              for row in f.A.entries],
        "B": [[int(e) if e.denominator == 1 else str(e) for e in row]
              for row in f.b_block().entries],
        "C": [[int(e) if e.denominator == 1 else str(e) for e in row]
              for row in f.C.entries],
        "class": {"center_action": cls.center_action.value,
                  "integral": cls.integral},
    }
