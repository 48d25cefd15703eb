"""Ideal machinery: s-ideal tests, ideal closure, equal-pair subspaces,
kernels and quotient algebras.

The kernel of an n-ary algebra is the ideal generated by brackets with two
equal arguments; quotienting by it leaves an alternating bracket.  All
quadratic spans are generated finitely by polarization: over Q the vectors
{e_a} together with {e_a + e_b, a < b} exhaust the span of squares.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .core import CheckReport, NAryAlgebra, Witness, bracket, _one_based
from .exactlin import (
    SpanBuilder,
    Subspace,
    Vector,
    span,
    subspace_sum,
    vec_add,
    vec_is_zero,
    unit_vector,
    zero_vector,
)


@dataclass
class IdealVerdict:
    """Per-slot absorption flags for a subspace; an ideal absorbs in every slot."""

    subspace: Subspace
    is_s_ideal: list[bool]
    is_ideal: bool


def is_s_ideal(alg: NAryAlgebra, v: Subspace, s: int) -> CheckReport:
    """True iff bracket values with a vector of ``v`` in slot ``s`` (1-based)
    and basis vectors elsewhere all land back in ``v``."""
    n, d = alg.arity, alg.dim
    if not 1 <= s <= n:
        raise ValueError(f"slot must be in 1..{n}")
    if v.ambient_dim != d:
        raise ValueError("ambient dimension mismatch")
    basis = [alg.basis_vector(i) for i in range(d)]
    for ri, w in enumerate(v.rows):
        for others in product(range(d), repeat=n - 1):
            args = [basis[i] for i in others]
            args.insert(s - 1, w)
            val = bracket(alg, args)
            if not v.contains_vector(val):
                wit = Witness({"slot": s, "member_row": ri, "others": _one_based(others)}, lhs=val)
                return CheckReport(False, wit)
    return CheckReport(True)


def ideal_verdict(alg: NAryAlgebra, v: Subspace) -> IdealVerdict:
    flags = [is_s_ideal(alg, v, s).holds for s in range(1, alg.arity + 1)]
    return IdealVerdict(v, flags, all(flags))


def ideal_closure(alg: NAryAlgebra, seed: Subspace) -> Subspace:
    """Least subspace containing ``seed`` that absorbs multiplication in every
    slot.  Each round adds one multiplication layer (current vectors in one
    slot, basis vectors elsewhere); the rank strictly grows or the round was a
    fixpoint, so at most dim rounds run."""
    n, d = alg.arity, alg.dim
    if seed.ambient_dim != d:
        raise ValueError("ambient dimension mismatch")
    sb = SpanBuilder(d, seed.rows)
    basis = [alg.basis_vector(i) for i in range(d)]
    while not sb.is_full():
        current = [tuple(r) for r in sb._rows]
        grew = False
        for s in range(n):
            for w in current:
                for others in product(range(d), repeat=n - 1):
                    args = [basis[i] for i in others]
                    args.insert(s, w)
                    val = bracket(alg, args)
                    if not vec_is_zero(val) and sb.add(val):
                        grew = True
        if not grew:
            break
    return sb.subspace()


def polarization_vectors(d: int) -> list[tuple[Vector, list[int]]]:
    """The quadratic-span generator set {e_a} + {e_a + e_b}, with 1-based
    index descriptions for witnesses."""
    out: list[tuple[Vector, list[int]]] = []
    for a in range(d):
        out.append((unit_vector(d, a), [a + 1]))
    for a, b in combinations(range(d), 2):
        out.append((vec_add(unit_vector(d, a), unit_vector(d, b)), [a + 1, b + 1]))
    return out


def i_ij(alg: NAryAlgebra, i: int, j: int) -> Subspace:
    """Span of brackets whose slots ``i`` and ``j`` (1-based, i < j) carry the
    same vector, remaining slots running over the basis.  Polarization makes
    the finite generator set span the whole quadratic family."""
    n, d = alg.arity, alg.dim
    if not 1 <= i < j <= n:
        raise ValueError("slots must satisfy 1 <= i < j <= n")
    sb = SpanBuilder(d)
    basis = [alg.basis_vector(a) for a in range(d)]
    for v, _ in polarization_vectors(d):
        for others in product(range(d), repeat=n - 2):
            args: list = []
            it = iter(others)
            for s in range(n):
                if s == i - 1 or s == j - 1:
                    args.append(v)
                else:
                    args.append(basis[next(it)])
            sb.add(bracket(alg, args))
    return sb.subspace()


def kernel_generators(alg: NAryAlgebra) -> Subspace:
    """Sum of all equal-pair subspaces I_ij, before taking the ideal closure."""
    n = alg.arity
    gen = Subspace.zero(alg.dim)
    for i, j in combinations(range(1, n + 1), 2):
        gen = subspace_sum(gen, i_ij(alg, i, j))
    return gen


def leibniz_n_kernel(alg: NAryAlgebra) -> Subspace:
    """Ideal generated by all brackets with two equal arguments.  Quotienting
    by it leaves an alternating (n-Lie) bracket."""
    return ideal_closure(alg, kernel_generators(alg))


def leibniz_kernel_2(alg: NAryAlgebra) -> Subspace:
    """Span of squares of a binary algebra (already a two-sided ideal, so no
    closure is needed); coincides with the arity-2 n-kernel."""
    if alg.arity != 2:
        raise ValueError("the binary kernel requires arity 2")
    sb = SpanBuilder(alg.dim)
    for v, _ in polarization_vectors(alg.dim):
        sb.add(bracket(alg, [v, v]))
    return sb.subspace()


class QuotientMap:
    """Coordinate section of a quotient by an ideal.

    Quotient coordinates are the non-pivot columns of the ideal's RREF basis,
    which is canonical and reproducible.  ``project`` reduces a vector modulo
    the ideal and reads off the section coordinates; ``lift`` embeds them back.
    """

    def __init__(self, alg: NAryAlgebra, ideal: Subspace):
        if ideal.ambient_dim != alg.dim:
            raise ValueError("ambient dimension mismatch")
        self.alg = alg
        self.ideal = ideal
        pivots = set(ideal._pivots)
        self.section_cols = [c for c in range(alg.dim) if c not in pivots]

    @property
    def quotient_dim(self) -> int:
        return len(self.section_cols)

    def project(self, v: Sequence[Fraction]) -> Vector:
        w = list(v)
        for p, row in zip(self.ideal._pivots, self.ideal.rows):
            c = w[p]
            if c:
                for i in range(p, self.alg.dim):
                    w[i] -= c * row[i]
        return tuple(w[c] for c in self.section_cols)

    def lift(self, q: Sequence[Fraction]) -> Vector:
        v = [Fraction(0)] * self.alg.dim
        for c, x in zip(self.section_cols, q, strict=True):
            v[c] = x
        return tuple(v)

    def preimage(self, sub: Subspace) -> Subspace:
        rows = [self.lift(r) for r in sub.rows] + list(self.ideal.rows)
        return span(rows, self.alg.dim)

    def image(self, sub: Subspace) -> Subspace:
        return span([self.project(r) for r in sub.rows], self.quotient_dim)


def quotient(alg: NAryAlgebra, ideal: Subspace) -> NAryAlgebra:
    """Quotient algebra on the canonical coordinate section.

    The slot-wise absorption check run here is exactly representative
    independence: replacing a section vector by section vector plus ideal
    vector changes the bracket by terms with an ideal entry, all of which
    project to zero.
    """
    verdict = ideal_verdict(alg, ideal)
    if not verdict.is_ideal:
        bad = [s + 1 for s, ok in enumerate(verdict.is_s_ideal) if not ok]
        raise ValueError(f"subspace is not an ideal (fails in slots {bad})")
    qm = QuotientMap(alg, ideal)
    q = qm.quotient_dim
    tensor: dict[tuple[int, ...], Vector] = {}
    for t in product(range(q), repeat=alg.arity):
        val = alg.tensor_value(tuple(qm.section_cols[i] for i in t))
        pv = qm.project(val)
        if not vec_is_zero(pv):
            tensor[t] = pv
    labels = [alg.labels[c] for c in qm.section_cols]
    name = f"{alg.name}/I" if alg.name else "quotient"
    return NAryAlgebra(alg.arity, q, tensor, labels, name=name,
                       meta={"note": f"quotient by a dim-{ideal.dim} ideal"})


def u3_ideal_criterion(leibniz_alg: NAryAlgebra, v: Subspace) -> bool:
    """Two-condition ideal test for subspaces of the ternary right-normed
    image of a binary algebra, phrased on the binary bracket itself:
    [V,[L,L]] in V and [L,[V,L]] in V.  Must agree with the generic slot-wise
    check on the ternary algebra."""
    if leibniz_alg.arity != 2:
        raise ValueError("criterion applies to binary algebras")
    d = leibniz_alg.dim
    if v.ambient_dim != d:
        raise ValueError("ambient dimension mismatch")
    basis = [leibniz_alg.basis_vector(i) for i in range(d)]
    derived = SpanBuilder(d)
    for i in range(d):
        for j in range(d):
            derived.add(leibniz_alg.tensor_value((i, j)))
    for w in v.rows:
        for u in derived._rows:
            if not v.contains_vector(bracket(leibniz_alg, [w, tuple(u)])):
                return False
    vl = SpanBuilder(d)
    for w in v.rows:
        for j in range(d):
            vl.add(bracket(leibniz_alg, [w, basis[j]]))
    for i in range(d):
        for u in vl._rows:
            if not v.contains_vector(bracket(leibniz_alg, [basis[i], tuple(u)])):
                return False
    return True


def _bipartite_blocks(spec) -> tuple[int, list[list[int]], list[list[int]]]:
    """Coordinate layout shared with the bipartite builder: g blocks of 3
    coordinates each, then one block per module."""
    g_blocks = []
    off = 0
    for _ in spec.left:
        g_blocks.append(list(range(off, off + 3)))
        off += 3
    module_blocks = []
    for weights in spec.right:
        size = 1
        for i in sorted(weights):
            size *= weights[i] + 1
        module_blocks.append(list(range(off, off + size)))
        off += size
    return off, g_blocks, module_blocks


def enumerate_semisimple_ideals(spec) -> list[Subspace]:
    """Complete ideal lattice of the algebra a connected bipartite description
    builds: direct sums of module blocks, plus sums of chosen simple blocks
    together with every module they act on and any untouched modules.

    Every returned subspace is re-verified slot-wise against the built
    algebra.  Raises on a disconnected description (decompose first).
    """
    from .functors import build_semisimple_leibniz

    if not spec.is_connected():
        raise ValueError("bipartite description is disconnected; decompose it first")
    alg = build_semisimple_leibniz(spec)
    d, g_blocks, module_blocks = _bipartite_blocks(spec)
    m, k = len(g_blocks), len(module_blocks)

    found: dict[Subspace, None] = {}

    def add(cols: list[int]) -> None:
        sub = Subspace.coordinate(d, cols)
        found.setdefault(sub, None)

    for r in range(k + 1):
        for mods in combinations(range(k), r):
            add([c for km in mods for c in module_blocks[km]])
    for r in range(1, m + 1):
        for gs in combinations(range(m), r):
            neighbours = {km for km in range(k)
                          if any(i in spec.right[km] for i in gs)}
            rest = [km for km in range(k) if km not in neighbours]
            base = [c for i in gs for c in g_blocks[i]]
            base += [c for km in neighbours for c in module_blocks[km]]
            for rr in range(len(rest) + 1):
                for extra in combinations(rest, rr):
                    add(base + [c for km in extra for c in module_blocks[km]])

    result = sorted(found, key=lambda s: (s.dim, s.rows))
    for sub in result:
        verdict = ideal_verdict(alg, sub)
        if not verdict.is_ideal:
            raise RuntimeError("internal error: enumerated subspace failed the ideal check")
    return result
