"""Derived series, radicals and simplicity verdicts.

The k-derived series of an ideal H places k copies of the current term into
the n slots in every possible position pattern, with the whole algebra
elsewhere; k-solvability means the series hits zero.  Binary radicals are
computed through the quotient by the kernel of squares and the Killing-form
orthogonality criterion on the resulting Lie algebra; radicals of right-normed
n-ary images are the binary radical reinterpreted, re-verified in place.
No radical is guessed for arbitrary n-ary algebras — callers may only run
derived-series queries on ideals they supply.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Literal, Optional

from .core import (
    CheckReport,
    LinearMap,
    NAryAlgebra,
    Witness,
    bracket,
    check_fundamental_identity,
    check_skew,
    derivation_space,
    right_mult,
)
from .exactlin import (
    Matrix,
    SpanBuilder,
    Subspace,
    subspace_sum,
    vec_add,
    unit_vector,
)
from .ideals import (
    QuotientMap,
    ideal_verdict,
    ideal_closure,
    is_s_ideal,
    leibniz_kernel_2,
    leibniz_n_kernel,
    polarization_vectors,
    quotient,
)


@dataclass
class DerivedSeries:
    """Terms of the k-derived series, starting from the ideal itself.

    ``solvable`` iff the last stored term is zero; ``index`` is then the
    number of terms (the zero ideal gets index 1 by convention).
    """

    k: int
    terms: list[Subspace]
    solvable: bool
    index: Optional[int]


def k_derived_step(alg: NAryAlgebra, h: Subspace, k: int) -> Subspace:
    """One derived-series step: span of brackets with vectors of ``h`` in
    every k-subset of slot positions and basis vectors elsewhere."""
    n, d = alg.arity, alg.dim
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}")
    if h.ambient_dim != d:
        raise ValueError("ambient dimension mismatch")
    sb = SpanBuilder(d)
    if h.dim == 0:
        return sb.subspace()
    basis = [alg.basis_vector(i) for i in range(d)]
    hrows = list(h.rows)
    for positions in combinations(range(n), k):
        pos = set(positions)
        free = [s for s in range(n) if s not in pos]
        for hchoice in product(hrows, repeat=k):
            for others in product(range(d), repeat=len(free)):
                args: list = [None] * n
                for w, s in zip(hchoice, positions):
                    args[s] = w
                for i, s in enumerate(free):
                    args[s] = basis[others[i]]
                sb.add(bracket(alg, args))
    return sb.subspace()


def derived_series(alg: NAryAlgebra, h: Subspace, k: int) -> DerivedSeries:
    """Iterate the k-derived step until zero or a fixpoint."""
    terms = [h]
    if h.dim == 0:
        return DerivedSeries(k, terms, True, 1)
    cur = h
    for _ in range(alg.dim + 2):
        nxt = k_derived_step(alg, cur, k)
        if nxt == cur:
            return DerivedSeries(k, terms, False, None)
        terms.append(nxt)
        if nxt.dim == 0:
            return DerivedSeries(k, terms, True, len(terms))
        cur = nxt
    raise RuntimeError("derived series did not stabilize; is the input an ideal?")


def killing_form(alg: NAryAlgebra) -> Matrix:
    """Killing form of a binary algebra with alternating bracket:
    entry (i, j) is the trace of ad e_i composed with ad e_j."""
    if alg.arity != 2:
        raise ValueError("the Killing form requires arity 2")
    skew = check_skew(alg)
    if not skew.holds:
        raise ValueError("the Killing form requires an alternating bracket")
    d = alg.dim
    # ad_i[r][j] = coefficient of e_r in [e_i, e_j]
    ad = [[[alg.tensor_value((i, j))[r] for j in range(d)] for r in range(d)]
          for i in range(d)]
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            tr = sum(ad[i][r][c] * ad[j][c][r] for r in range(d) for c in range(d))
            row.append(tr)
        rows.append(row)
    return Matrix.from_rows(rows, cols=d) if d else Matrix.zeros(0, 0)


def _lie_radical_cartan(lie_alg: NAryAlgebra) -> Subspace:
    """Radical of a Lie algebra: the Killing-orthogonal complement of the
    derived subalgebra."""
    d = lie_alg.dim
    kf = killing_form(lie_alg)
    derived = SpanBuilder(d)
    for i in range(d):
        for j in range(d):
            derived.add(lie_alg.tensor_value((i, j)))
    rows = [kf.apply(b) for b in derived._rows]
    if not rows:
        return Subspace.full(d)
    from .exactlin import nullspace
    return nullspace(rows, d)


def radical_leibniz(alg: NAryAlgebra) -> Subspace:
    """Maximal solvable ideal of a binary algebra.

    Computed as the preimage of the Lie radical of the quotient by the kernel
    of squares; that kernel is an abelian ideal and solvability is closed
    under extensions, so the preimage is the radical.  The output is
    re-verified: it must be a two-sided ideal, 2-solvable, and the quotient by
    it must have a Lie image with zero radical.  A verification failure is a
    bug, never expected on valid input.
    """
    if alg.arity != 2:
        raise ValueError("the radical computation requires arity 2")
    ident = check_fundamental_identity(alg)
    if not ident.holds:
        raise ValueError("input does not satisfy the Leibniz identity")
    leib = leibniz_kernel_2(alg)
    qm = QuotientMap(alg, leib)
    lie_g = quotient(alg, leib)
    rad_g = _lie_radical_cartan(lie_g)
    rad = qm.preimage(rad_g)

    verdict = ideal_verdict(alg, rad)
    if not verdict.is_ideal:
        raise RuntimeError("internal error: computed radical is not an ideal")
    if not derived_series(alg, rad, 2).solvable:
        raise RuntimeError("internal error: computed radical is not solvable")
    q = quotient(alg, rad)
    q_lie = quotient(q, leibniz_kernel_2(q))
    if _lie_radical_cartan(q_lie).dim != 0:
        raise RuntimeError("internal error: quotient by the radical is not semisimple")
    return rad


def is_semisimple_leibniz(alg: NAryAlgebra) -> bool:
    """Semisimple in the binary sense: the radical equals the kernel of squares."""
    if alg.arity != 2:
        raise ValueError("semisimplicity test requires arity 2")
    return radical_leibniz(alg) == leibniz_kernel_2(alg)


def rad_k_of_un(leibniz_alg: NAryAlgebra, n: int, k: int) -> Subspace:
    """k-solvable radical of the right-normed n-ary image of a binary algebra,
    2 <= k <= n: it coincides with the binary radical, reinterpreted on the
    same coordinate space.  The result is re-verified as an ideal of the n-ary
    image and 2-solvable there (2-solvability implies k-solvability for all
    larger k)."""
    from .functors import u_n

    if leibniz_alg.arity != 2:
        raise ValueError("the source algebra must be binary")
    if not 2 <= k <= n:
        raise ValueError(f"k must be in 2..{n}")
    rad = radical_leibniz(leibniz_alg)
    un_alg = u_n(leibniz_alg, n)
    verdict = ideal_verdict(un_alg, rad)
    if not verdict.is_ideal:
        raise RuntimeError("internal error: binary radical is not an ideal of the n-ary image")
    if not derived_series(un_alg, rad, 2).solvable:
        raise RuntimeError("internal error: radical is not 2-solvable in the n-ary image")
    return rad


@dataclass
class SimplicityVerdict:
    """Outcome of the simplicity probe.

    NotSimple carries, when one was found, a proper nonzero ideal as witness;
    Simple is only issued when provenance-backed certification covers the
    probe set, otherwise the verdict stays Unknown with the probe log.
    """

    status: Literal["Simple", "NotSimple", "Unknown"]
    witness: Optional[Subspace] = None
    probe_log: list[dict] = field(default_factory=list)


def _unwrap_recipe(recipe: dict | None) -> dict | None:
    while isinstance(recipe, dict) and recipe.get("kind") == "basis-change":
        recipe = recipe.get("source")
    return recipe


def _certified_simple(alg: NAryAlgebra) -> bool:
    """Provenance-backed certification that the probe set is conclusive:
    alternating cross-product-style builds and right-normed images of a simple
    Lie algebra are simple; both facts survive basis changes."""
    recipe = _unwrap_recipe(alg.meta.get("recipe"))
    if not isinstance(recipe, dict):
        return False
    kind = recipe.get("kind")
    if kind == "vn":
        return True
    if kind == "un":
        src = _unwrap_recipe(recipe.get("source"))
        return isinstance(src, dict) and src.get("kind") == "sl2"
    if alg.arity == 2 and kind == "sl2":
        return True
    return False


def simplicity(alg: NAryAlgebra) -> SimplicityVerdict:
    """Probe-based simplicity verdict.

    Abelian algebras are rejected outright.  The ideal closure of every basis
    vector and every pairwise basis sum is computed; any closure that is a
    disallowed proper ideal settles NotSimple with that witness.  For arity 2
    the allowed ideals are {0, kernel of squares, everything}; for higher
    arity only {0, everything}.  When all probes stay allowed, the verdict is
    Simple only under certification (see above) or, for a binary algebra built
    from an untouched bipartite description, by complete ideal enumeration;
    everything else remains Unknown.
    """
    d = alg.dim
    log: list[dict] = []
    if alg.is_abelian:
        witness = Subspace.coordinate(d, [0]) if d >= 2 else None
        return SimplicityVerdict("NotSimple", witness, [{"probe": "abelian", "closure_dim": None}])

    if alg.arity == 2:
        allowed = {Subspace.zero(d), leibniz_kernel_2(alg), Subspace.full(d)}
    else:
        allowed = {Subspace.zero(d), Subspace.full(d)}

    bad: list[Subspace] = []
    for v, desc in polarization_vectors(d):
        closure = ideal_closure(alg, Subspace(d, [v]))
        log.append({"probe": desc, "closure_dim": closure.dim})
        if closure not in allowed:
            bad.append(closure)
    if bad:
        bad.sort(key=lambda s: (s.dim, s.rows))
        return SimplicityVerdict("NotSimple", bad[0], log)

    if _certified_simple(alg):
        return SimplicityVerdict("Simple", None, log)

    recipe = alg.meta.get("recipe")
    if alg.arity == 2 and isinstance(recipe, dict) and recipe.get("kind") == "bipartite":
        from .fileformat import bipartite_spec_from_dict
        from .ideals import enumerate_semisimple_ideals

        spec = bipartite_spec_from_dict(recipe["spec"])
        ideals = enumerate_semisimple_ideals(spec)
        outside = [s for s in ideals if s not in allowed]
        if outside:
            return SimplicityVerdict("NotSimple", outside[0], log)
        return SimplicityVerdict("Simple", None, log)

    return SimplicityVerdict("Unknown", None, log)


def invertible_r_implies_kernel(alg: NAryAlgebra) -> CheckReport:
    """Search basis (n-1)-tuples for an invertible right multiplication; when
    one exists the kernel of equal-pair brackets must be the whole algebra.
    Reports the tuple found (if any) and the kernel dimension."""
    n, d = alg.arity, alg.dim
    basis = [alg.basis_vector(i) for i in range(d)]
    found: tuple[int, ...] | None = None
    for t in product(range(d), repeat=n - 1):
        r = right_mult(alg, [basis[i] for i in t])
        if r.matrix.is_invertible():
            found = t
            break
    kernel = leibniz_n_kernel(alg)
    data = {
        "invertible_tuple": [i + 1 for i in found] if found is not None else None,
        "kernel_dim": kernel.dim,
        "dim": d,
    }
    if found is not None and not kernel.is_full():
        wit = Witness({"tuple": [i + 1 for i in found],
                       "note": "invertible right multiplication but proper kernel"})
        return CheckReport(False, wit, data)
    return CheckReport(True, None, data)


def derivation_preserves_radical(alg: NAryAlgebra, rad: Subspace) -> CheckReport:
    """Every basis element of the derivation space must map ``rad`` into
    itself."""
    if rad.ambient_dim != alg.dim:
        raise ValueError("ambient dimension mismatch")
    ders = derivation_space(alg)
    for di, flat in enumerate(ders.rows):
        dmap = LinearMap.from_flat(flat, alg.dim)
        for ri, b in enumerate(rad.rows):
            img = dmap.apply(b)
            if not rad.contains_vector(img):
                wit = Witness({"derivation_row": di, "radical_row": ri}, lhs=img)
                return CheckReport(False, wit, {"derivation_space_dim": ders.dim})
    return CheckReport(True, None, {"derivation_space_dim": ders.dim})
