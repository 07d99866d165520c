"""Pseudo H-type Lie algebras on integral bases.

An algebra is stored as its structure tensor A^k_{ab} in {-1,0,+1} together
with the center signature and the +-1 module metric.  The J-operators are
always derived from the tensor through eps^v_b * B^k_{ab} = eps^z_k * A^k_{ab},
never stored independently, so the two representations cannot drift apart.

All indices in the public API are 1-based.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .core import (
    ExactMatrix,
    Rational,
    Signature,
    Vector,
    epsilon,
    exact_rank,
    gram_matrix,
    nullspace,
    scalar_product,
)


class IntegralBasisError(ValueError):
    """The structure tensor violates the integral-basis property."""


class StructureTensor:
    """Sparse antisymmetric tensor A^k_{ab} with entries in {-1,+1}.

    Entries are canonically stored with a < b; both orientations are
    available through lookups.  Construction rejects two different center
    indices on the same (a, b) pair, since an integral basis sends each
    bracket to a single +-Z_k.
    """

    __slots__ = ("dim_module", "dim_center", "entries", "_pair", "_partner",
                 "_partner_conflicts")

    def __init__(self, dim_module: int, dim_center: int,
                 entries: Iterable[tuple[int, int, int, int]]):
        self.dim_module = dim_module
        self.dim_center = dim_center
        canon = {}
        for (a, b, k, s) in entries:
            if not (1 <= a <= dim_module and 1 <= b <= dim_module):
                raise ValueError(f"module index out of range in entry {(a, b, k, s)}")
            if not 1 <= k <= dim_center:
                raise ValueError(f"center index out of range in entry {(a, b, k, s)}")
            if s not in (1, -1):
                raise ValueError(f"structure constants must be +-1, got {s}")
            if a == b:
                raise ValueError(f"diagonal entry ({a},{a}) violates antisymmetry")
            if a > b:
                a, b, s = b, a, -s
            if (a, b) in canon and canon[(a, b)] != (k, s):
                raise IntegralBasisError(
                    f"pair ({a},{b}) maps to more than one center direction")
            canon[(a, b)] = (k, s)
        self.entries = tuple(sorted((a, b, k, s) for (a, b), (k, s) in canon.items()))
        pair = {}
        partner: dict[tuple[int, int], tuple[int, int]] = {}
        conflicts = []
        for (a, b, k, s) in self.entries:
            pair[(a, b)] = (k, s)
            pair[(b, a)] = (k, -s)
            for (x, y, sg) in ((a, b, s), (b, a, -s)):
                if (k, x) in partner:
                    conflicts.append((k, x))
                else:
                    partner[(k, x)] = (y, sg)
        self._pair = pair
        self._partner = partner
        self._partner_conflicts = tuple(conflicts)

    def bracket_pair(self, a: int, b: int) -> Optional[tuple[int, int]]:
        """(k, sign) with [v_a, v_b] = sign * Z_k, or None."""
        return self._pair.get((a, b))

    def partner(self, k: int, a: int) -> Optional[tuple[int, int]]:
        """(b, sign) with [v_a, v_b] = sign * Z_k, or None."""
        return self._partner.get((k, a))

    def entry(self, a: int, b: int, k: int) -> int:
        hit = self._pair.get((a, b))
        return hit[1] if hit is not None and hit[0] == k else 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, StructureTensor)
                and self.dim_module == other.dim_module
                and self.dim_center == other.dim_center
                and self.entries == other.entries)

    def __hash__(self) -> int:
        return hash((self.dim_module, self.dim_center, self.entries))


@dataclass(frozen=True)
class SignedPermutationOp:
    """Linear map sending v_a to sign[a] * v_image[a]; tuples are 1-based."""

    image: tuple[int, ...]
    sign: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError("image is not a permutation")
        if len(self.sign) != n or any(s not in (1, -1) for s in self.sign):
            raise ValueError("signs must be +-1, one per basis vector")

    @property
    def dim(self) -> int:
        return len(self.image)

    def apply_basis(self, a: int) -> tuple[int, int]:
        """(b, sign) with op(v_a) = sign * v_b."""
        return self.image[a - 1], self.sign[a - 1]

    def apply(self, x: Sequence[Rational]) -> Vector:
        out = [Fraction(0)] * self.dim
        for a, xa in enumerate(x, start=1):
            if xa:
                b, s = self.apply_basis(a)
                out[b - 1] += s * Fraction(xa)
        return tuple(out)

    def compose(self, other: "SignedPermutationOp") -> "SignedPermutationOp":
        """self after other: (self.compose(other))(v) = self(other(v))."""
        image = []
        sign = []
        for a in range(1, self.dim + 1):
            b, s1 = other.apply_basis(a)
            c, s2 = self.apply_basis(b)
            image.append(c)
            sign.append(s1 * s2)
        return SignedPermutationOp(tuple(image), tuple(sign))

    def inverse(self) -> "SignedPermutationOp":
        image = [0] * self.dim
        sign = [0] * self.dim
        for a in range(1, self.dim + 1):
            b, s = self.apply_basis(a)
            image[b - 1] = a
            sign[b - 1] = s
        return SignedPermutationOp(tuple(image), tuple(sign))

    def negate(self) -> "SignedPermutationOp":
        return SignedPermutationOp(self.image, tuple(-s for s in self.sign))

    def scalar_action(self) -> Optional[int]:
        """+1 or -1 if the op is that multiple of the identity, else None."""
        if any(b != a for a, b in enumerate(self.image, start=1)):
            return None
        first = self.sign[0]
        return first if all(s == first for s in self.sign) else None

    def matrix(self) -> ExactMatrix:
        rows = [[0] * self.dim for _ in range(self.dim)]
        for a in range(1, self.dim + 1):
            b, s = self.apply_basis(a)
            rows[b - 1][a - 1] = s
        return ExactMatrix.from_rows(rows)

    @staticmethod
    def identity(n: int) -> "SignedPermutationOp":
        return SignedPermutationOp(tuple(range(1, n + 1)), (1,) * n)


@dataclass(frozen=True)
class BlockSets:
    """Half-basis decomposition refined by metric sign."""

    a_plus: frozenset[int]
    a_minus: frozenset[int]
    b_plus: frozenset[int]
    b_minus: frozenset[int]

    @property
    def a_side(self) -> frozenset[int]:
        return self.a_plus | self.a_minus

    @property
    def b_side(self) -> frozenset[int]:
        return self.b_plus | self.b_minus


@dataclass(frozen=True)
class BaseProvenance:
    r: int
    s: int

    def json_dict(self) -> dict:
        return {"kind": "base", "id": [self.r, self.s]}


@dataclass(frozen=True)
class ExtensionProvenance:
    parent: "PseudoHTypeAlgebra"
    step: str  # "8,0" | "0,8" | "4,4"
    pair_to_final: tuple[int, ...]  # flattened (i,j) position -> final index
    parent_center_to_final: tuple[int, ...]
    factor_center_to_final: tuple[int, ...]

    def json_dict(self) -> dict:
        steps = [self.step]
        node = self.parent.provenance
        while isinstance(node, ExtensionProvenance):
            steps.append(node.step)
            node = node.parent.provenance
        base = [node.r, node.s] if isinstance(node, BaseProvenance) else None
        steps.reverse()
        return {"kind": "extended", "base": base,
                "steps": [[int(p) for p in st.split(",")] for st in steps]}


@dataclass(frozen=True)
class SumProvenance:
    base_r: int
    base_s: int
    mu: int
    nu: int

    def json_dict(self) -> dict:
        return {"kind": "sum", "base": [self.base_r, self.base_s],
                "blocks": [{"type": 1, "count": self.mu},
                           {"type": 2, "count": self.nu}]}


@dataclass(frozen=True)
class OpaqueProvenance:
    """Provenance parsed back from JSON without reconstructing parents."""

    data: Mapping

    def json_dict(self) -> dict:
        return dict(self.data)


Provenance = Union[BaseProvenance, ExtensionProvenance, SumProvenance,
                   OpaqueProvenance]


@dataclass(frozen=True)
class PseudoHTypeAlgebra:
    """2-step nilpotent algebra v + z described by an integral basis."""

    center_sig: Signature
    module_signs: tuple[int, ...]
    tensor: StructureTensor
    module_labels: tuple[str, ...]
    center_labels: tuple[str, ...]
    provenance: Provenance
    blocks: Optional[BlockSets] = None

    def __post_init__(self) -> None:
        if self.tensor.dim_module != len(self.module_signs):
            raise ValueError("module metric length does not match tensor")
        if self.tensor.dim_center != self.center_sig.dim:
            raise ValueError("center signature does not match tensor")
        if len(self.module_labels) != self.dim_module:
            raise ValueError("module label count mismatch")
        if len(self.center_labels) != self.dim_center:
            raise ValueError("center label count mismatch")

    @property
    def dim_module(self) -> int:
        return self.tensor.dim_module

    @property
    def dim_center(self) -> int:
        return self.tensor.dim_center

    @property
    def r(self) -> int:
        return self.center_sig.pos

    @property
    def s(self) -> int:
        return self.center_sig.neg

    def center_sign(self, k: int) -> int:
        return epsilon(k, self.center_sig)

    def module_sign(self, a: int) -> int:
        return self.module_signs[a - 1]

    def name(self) -> str:
        return f"n_({self.r},{self.s})"

    def __repr__(self) -> str:
        return f"<PseudoHTypeAlgebra {self.name()} dim_v={self.dim_module}>"


@dataclass(frozen=True)
class Verdict:
    """Outcome of an axiom check, with a witness when it fails."""

    ok: bool
    witness: Optional[tuple] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def bracket(a: PseudoHTypeAlgebra, x: Sequence[Rational],
            y: Sequence[Rational]) -> Vector:
    """Center coordinates of [x, y], extended bilinearly from the tensor."""
    if len(x) != a.dim_module or len(y) != a.dim_module:
        raise ValueError("bracket arguments must have module length")
    out = [Fraction(0)] * a.dim_center
    xs = [(i, Fraction(e)) for i, e in enumerate(x, start=1) if e]
    ys = [(j, Fraction(e)) for j, e in enumerate(y, start=1) if e]
    pair = a.tensor.bracket_pair
    for i, xi in xs:
        for j, yj in ys:
            hit = pair(i, j)
            if hit is not None:
                k, s = hit
                out[k - 1] += s * xi * yj
    return tuple(out)


def bracket_sparse(a: PseudoHTypeAlgebra, x: Mapping[int, Fraction],
                   y: Mapping[int, Fraction]) -> dict[int, Fraction]:
    """bracket() on {index: coefficient} dictionaries; zero entries dropped."""
    out: dict[int, Fraction] = {}
    pair = a.tensor.bracket_pair
    for i, xi in x.items():
        for j, yj in y.items():
            hit = pair(i, j)
            if hit is not None:
                k, s = hit
                c = out.get(k, Fraction(0)) + s * xi * yj
                if c:
                    out[k] = c
                else:
                    out.pop(k, None)
    return out


def j_operator(a: PseudoHTypeAlgebra, k: int) -> SignedPermutationOp:
    """Recover J_{Z_k} from the structure tensor.

    The defining relation gives B^k_{ab} = eps^z_k * A^k_{ab} / eps^v_b; on an
    integral basis this is a signed permutation because each (k, a) has
    exactly one partner b.
    """
    if not 1 <= k <= a.dim_center:
        raise IndexError(f"center index {k} out of range")
    if a.tensor._partner_conflicts:
        raise IntegralBasisError(
            f"multiple partners for (k, a) pairs {a.tensor._partner_conflicts[:3]}")
    ez = a.center_sign(k)
    image = []
    sign = []
    for alpha in range(1, a.dim_module + 1):
        hit = a.tensor.partner(k, alpha)
        if hit is None:
            raise IntegralBasisError(f"no partner for center {k}, vector {alpha}")
        beta, s = hit
        image.append(beta)
        sign.append(ez * s * a.module_sign(beta))
    return SignedPermutationOp(tuple(image), tuple(sign))


def j_of_center_vector(a: PseudoHTypeAlgebra, z: Sequence[Rational],
                       x: Sequence[Rational]) -> Vector:
    """Apply J_Z for an arbitrary center vector Z to a module vector."""
    out = [Fraction(0)] * a.dim_module
    for k, zk in enumerate(z, start=1):
        if zk:
            op = j_operator(a, k)
            for alpha, xa in enumerate(x, start=1):
                if xa:
                    beta, s = op.apply_basis(alpha)
                    out[beta - 1] += Fraction(zk) * Fraction(xa) * s
    return tuple(out)


def verify_integral_basis(a: PseudoHTypeAlgebra) -> Verdict:
    """Antisymmetry, +-1 entries, and the exactly-one-partner property."""
    t = a.tensor
    if t._partner_conflicts:
        return Verdict(False, t._partner_conflicts[0],
                       "a (center, vector) pair has several partners")
    for k in range(1, a.dim_center + 1):
        for alpha in range(1, a.dim_module + 1):
            if t.partner(k, alpha) is None:
                return Verdict(False, (k, alpha),
                               "no partner for this (center, vector) pair")
    return Verdict(True)


def verify_clifford(a: PseudoHTypeAlgebra) -> Verdict:
    """J_k J_m + J_m J_k = -2 <Z_k, Z_m> Id on the recovered operators."""
    n = a.dim_center
    ops = [j_operator(a, k) for k in range(1, n + 1)]
    for k in range(n):
        for m in range(k, n):
            km = ops[k].compose(ops[m])
            if k == m:
                want = -a.center_sign(k + 1)
                for alpha in range(1, a.dim_module + 1):
                    beta, s = km.apply_basis(alpha)
                    if beta != alpha or s != want:
                        return Verdict(False, (k + 1, m + 1, alpha),
                                       "J_k^2 is not -<Z_k,Z_k> Id")
            else:
                mk = ops[m].compose(ops[k])
                for alpha in range(1, a.dim_module + 1):
                    b1, s1 = km.apply_basis(alpha)
                    b2, s2 = mk.apply_basis(alpha)
                    if b1 != b2 or s1 != -s2:
                        return Verdict(False, (k + 1, m + 1, alpha),
                                       "J_k J_m + J_m J_k does not vanish")
    return Verdict(True)


def verify_admissible(a: PseudoHTypeAlgebra) -> Verdict:
    """Each J_k is skew-adjoint for the module scalar product.

    For a signed permutation the quantified condition collapses to the
    orbit pairs: <J_k v_a, v_b> is nonzero only at b = image(a), so it
    suffices that image is an involution there with matching signs.
    """
    for k in range(1, a.dim_center + 1):
        op = j_operator(a, k)
        for alpha in range(1, a.dim_module + 1):
            beta, s = op.apply_basis(alpha)
            back, s_back = op.apply_basis(beta)
            if back != alpha:
                return Verdict(False, (k, alpha, beta),
                               "skew-adjointness fails: orbit does not return")
            lhs = s * a.module_sign(beta)
            rhs = -s_back * a.module_sign(alpha)
            if lhs != rhs:
                return Verdict(False, (k, alpha, beta),
                               "skew-adjointness fails on this pair")
    return Verdict(True)


def verify_htype(a: PseudoHTypeAlgebra) -> Verdict:
    """Polarized composition identities on all basis combinations.

    <J_k v_a, J_m v_a> = <Z_k, Z_m> <v_a, v_a> for all k, m, a; the companion
    identity <J_k v_a, J_k v_b> = <Z_k, Z_k> <v_a, v_b> holds off-diagonal for
    free (a signed permutation sends distinct basis vectors to orthogonal
    ones) and its diagonal is the k = m case below.
    """
    n = a.dim_center
    ops = [j_operator(a, k) for k in range(1, n + 1)]
    for k in range(n):
        for m in range(k, n):
            for alpha in range(1, a.dim_module + 1):
                bk, sk = ops[k].apply_basis(alpha)
                bm, sm = ops[m].apply_basis(alpha)
                lhs = sk * sm * a.module_sign(bk) if bk == bm else 0
                want = (a.center_sign(k + 1) * a.module_sign(alpha)
                        if k == m else 0)
                if lhs != want:
                    return Verdict(False, (k + 1, m + 1, alpha),
                                   "composition identity fails")
    return Verdict(True)


def commutation_graph(a: PseudoHTypeAlgebra) -> dict[int, set[int]]:
    """Adjacency over basis indices: an edge where the bracket is nonzero."""
    adj: dict[int, set[int]] = {i: set() for i in range(1, a.dim_module + 1)}
    for (i, j, _k, _s) in a.tensor.entries:
        adj[i].add(j)
        adj[j].add(i)
    return adj


def block_decomposition(a: PseudoHTypeAlgebra
                        ) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """Split the basis into two commuting halves, or None.

    This is a 2-coloring of the commutation graph; a valid split exists iff
    the graph is bipartite and its components can be oriented to give two
    equal halves.  Ties are broken by putting each component's side that
    contains its lowest index into the first half, preferring the unflipped
    orientation when both balance.
    """
    adj = commutation_graph(a)
    n = a.dim_module
    color: dict[int, int] = {}
    components: list[tuple[list[int], list[int]]] = []
    for start in range(1, n + 1):
        if start in color:
            continue
        color[start] = 0
        queue = [start]
        side: tuple[list[int], list[int]] = ([start], [])
        while queue:
            u = queue.pop()
            for w in adj[u]:
                if w not in color:
                    color[w] = 1 - color[u]
                    side[color[w]].append(w)
                    queue.append(w)
                elif color[w] == color[u]:
                    return None  # odd cycle: not bipartite
        components.append(side)

    # choose an orientation per component so the first half has n/2 vertices
    if n % 2:
        return None
    target = n // 2
    choices = [(len(s0), len(s1)) for (s0, s1) in components]
    # DP over achievable first-half sizes, preferring unflipped components
    reachable: dict[int, tuple[int, ...]] = {0: ()}
    for (c0, c1) in choices:
        nxt: dict[int, tuple[int, ...]] = {}
        for total, picks in reachable.items():
            for flip, add in ((0, c0), (1, c1)):
                t = total + add
                cand = picks + (flip,)
                if t not in nxt or cand < nxt[t]:
                    nxt[t] = cand
        reachable = nxt
    if target not in reachable:
        return None
    a_side: set[int] = set()
    b_side: set[int] = set()
    for (s0, s1), flip in zip(components, reachable[target]):
        first, second = (s1, s0) if flip else (s0, s1)
        a_side.update(first)
        b_side.update(second)
    return frozenset(a_side), frozenset(b_side)


def bd_decomposition(a: PseudoHTypeAlgebra) -> Optional[BlockSets]:
    """Refine a block decomposition by metric sign into quarter sets.

    Requires each refined set to have exactly a quarter of the basis; in
    particular definite metrics never qualify.
    """
    split = block_decomposition(a)
    if split is None:
        return None
    a_side, b_side = split
    quarter, rem = divmod(a.dim_module, 4)
    if rem:
        return None
    sets = BlockSets(
        a_plus=frozenset(i for i in a_side if a.module_sign(i) > 0),
        a_minus=frozenset(i for i in a_side if a.module_sign(i) < 0),
        b_plus=frozenset(i for i in b_side if a.module_sign(i) > 0),
        b_minus=frozenset(i for i in b_side if a.module_sign(i) < 0),
    )
    for part in (sets.a_plus, sets.a_minus, sets.b_plus, sets.b_minus):
        if len(part) != quarter:
            return None
    return sets


class DegenerateKernelError(ValueError):
    """Metric restricted to ker(ad_v) is degenerate for the witness vector."""

    def __init__(self, v: Vector):
        self.v = v
        super().__init__(f"degenerate metric on ker(ad_v) for v = {v}")


def adjoint_rows(a: PseudoHTypeAlgebra, x: Sequence[Rational]) -> list[list[Fraction]]:
    """Rows of the matrix of ad_x: column b holds the coords of [x, v_b]."""
    rows = [[Fraction(0)] * a.dim_module for _ in range(a.dim_center)]
    pair = a.tensor.bracket_pair
    for alpha, xa in enumerate(x, start=1):
        if not xa:
            continue
        f = Fraction(xa)
        for beta in range(1, a.dim_module + 1):
            hit = pair(alpha, beta)
            if hit is not None:
                k, s = hit
                rows[k - 1][beta - 1] += s * f
    return rows


def verify_general_htype(a: PseudoHTypeAlgebra, samples: int = 100,
                         seed: int = 0) -> Verdict:
    """Sampled check of the surjective-(anti-)isometry characterization.

    For each v with <v,v> != 0: ad_v restricted to the orthogonal complement
    of its kernel must be onto the center and satisfy the scaled Gram
    identity <[v,b], [v,b']> = <v,v> <b,b'>.  Basis vectors are checked
    exhaustively, then `samples` random integer vectors with entries in
    [-5, 5].  A degenerate metric on ker(ad_v) raises DegenerateKernelError.
    """
    rng = random.Random(seed)
    vectors: list[Vector] = [
        tuple(Fraction(1 if i == alpha else 0) for i in range(1, a.dim_module + 1))
        for alpha in range(1, a.dim_module + 1)]
    accepted = 0
    while accepted < samples:
        v = tuple(Fraction(rng.randint(-5, 5)) for _ in range(a.dim_module))
        if any(v) and scalar_product(v, v, a.module_signs) != 0:
            vectors.append(v)
            accepted += 1
    for v in vectors:
        verdict = _check_general_at(a, v)
        if not verdict.ok:
            return verdict
    return Verdict(True)


def _check_general_at(a: PseudoHTypeAlgebra, v: Vector) -> Verdict:
    vv = scalar_product(v, v, a.module_signs)
    m = ExactMatrix.from_rows(adjoint_rows(a, v))
    kernel = nullspace(m)
    if kernel:
        g = gram_matrix(kernel, a.module_signs)
        if exact_rank(g) != len(kernel):
            raise DegenerateKernelError(v)
        # complement = vectors orthogonal to every kernel element
        ortho_rows = [[Fraction(a.module_sign(j + 1)) * kv[j]
                       for j in range(a.dim_module)] for kv in kernel]
        comp = nullspace(ExactMatrix.from_rows(ortho_rows))
    else:
        comp = nullspace(ExactMatrix.zero(1, a.dim_module))
    if exact_rank(ExactMatrix.from_rows([list(m.apply(b)) for b in comp])) \
            != a.dim_center:
        return Verdict(False, (v,), "ad_v is not surjective on the complement")
    images = [m.apply(b) for b in comp]
    for i, bi in enumerate(comp):
        for j in range(i, len(comp)):
            lhs = scalar_product(images[i], images[j], a.center_sig)
            rhs = vv * scalar_product(bi, comp[j], a.module_signs)
            if lhs != rhs:
                return Verdict(False, (v, i + 1, j + 1),
                               "scaled Gram identity fails")
    return Verdict(True)


# ---------------------------------------------------------------------------
# JSON form: deterministic key order, 1-based indices.
# ---------------------------------------------------------------------------

def algebra_to_dict(a: PseudoHTypeAlgebra) -> dict:
    return {
        "r": a.r,
        "s": a.s,
        "dim_v": a.dim_module,
        "module_metric": list(a.module_signs),
        "structure": [{"i": i, "j": j, "k": k, "sign": s}
                      for (i, j, k, s) in a.tensor.entries],
        "provenance": a.provenance.json_dict(),
    }


def algebra_to_json(a: PseudoHTypeAlgebra, indent: Optional[int] = None) -> str:
    return json.dumps(algebra_to_dict(a), indent=indent)


def algebra_from_dict(data: Mapping) -> PseudoHTypeAlgebra:
    sig = Signature(int(data["r"]), int(data["s"]))
    signs = tuple(int(x) for x in data["module_metric"])
    tensor = StructureTensor(
        int(data["dim_v"]), sig.dim,
        [(int(e["i"]), int(e["j"]), int(e["k"]), int(e["sign"]))
         for e in data["structure"]])
    n = len(signs)
    return PseudoHTypeAlgebra(
        center_sig=sig,
        module_signs=signs,
        tensor=tensor,
        module_labels=tuple(f"v{i}" for i in range(1, n + 1)),
        center_labels=tuple(f"Z{k}" for k in range(1, sig.dim + 1)),
        provenance=OpaqueProvenance(dict(data.get("provenance", {}))),
    )


def algebra_from_json(text: str) -> PseudoHTypeAlgebra:
    return algebra_from_dict(json.loads(text))
