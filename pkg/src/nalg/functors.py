"""Constructions between binary and n-ary algebras, plus the builder catalog.

Two functorial constructions:

* ``u_n`` turns a binary bracket into an arity-n bracket by right-normed
  nesting, [x1, ..., xn] = [x1, [x2, [... [x_{n-1}, xn] ...]]].
* ``dt_basic`` turns an arity-n bracket into a binary one on the (n-1)-fold
  tensor-power space (basic Leibniz algebra in the sense of Daletskii and
  Takhtajan), acting slot by slot across the tensor factors.

Builders produce the concrete instances everything else is exercised on:
the split 3-dimensional simple Lie algebra, the cross-product style simple
n-Lie algebras, the 2-dimensional algebra with a single square, diagonal
algebras with an invertible right multiplication, semisimple non-Lie algebras
described by a bipartite graph, and Lie semidirect products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .core import (
    NAryAlgebra,
    bracket,
    check_fundamental_identity,
)
from .exactlin import (
    Matrix,
    ONE,
    ZERO,
    Vector,
    unit_vector,
    vec_add,
    vec_is_zero,
    vec_scale,
    zero_vector,
)


def u_n(leibniz_alg: NAryAlgebra, n: int) -> NAryAlgebra:
    """Right-normed arity-n algebra on the same coordinate space.

    Requires a valid binary input; for n = 2 the construction is the identity.
    """
    if leibniz_alg.arity != 2:
        raise ValueError("input arity must be 2")
    if n < 2:
        raise ValueError("target arity must be at least 2")
    ident = check_fundamental_identity(leibniz_alg)
    if not ident.holds:
        raise ValueError("input does not satisfy the Leibniz identity")
    d = leibniz_alg.dim
    meta = {"recipe": {"kind": "un", "n": n, "source": leibniz_alg.meta.get("recipe")}}
    if "levi" in leibniz_alg.meta:
        meta["levi"] = leibniz_alg.meta["levi"]
    name = f"u{n}({leibniz_alg.name})" if leibniz_alg.name else f"u{n}"
    if n == 2:
        return NAryAlgebra(2, d, leibniz_alg.tensor, leibniz_alg.labels, name=name, meta=meta)
    basis = [leibniz_alg.basis_vector(i) for i in range(d)]
    tensor: dict[tuple[int, ...], Vector] = {}
    for t in product(range(d), repeat=n):
        val = leibniz_alg.tensor_value((t[n - 2], t[n - 1]))
        for i in range(n - 3, -1, -1):
            if vec_is_zero(val):
                break
            val = bracket(leibniz_alg, [basis[t[i]], val])
        if not vec_is_zero(val):
            tensor[t] = val
    return NAryAlgebra(n, d, tensor, leibniz_alg.labels, name=name, meta=meta)


def _tensor_labels(labels: tuple[str, ...], t: tuple[int, ...]) -> str:
    return "⊗".join(labels[i] for i in t)


def dt_basic(n_alg: NAryAlgebra) -> NAryAlgebra:
    """Binary bracket on the (n-1)-fold tensor power of an arity-n algebra:

        [l1⊗...⊗l_{n-1}, l1'⊗...⊗l_{n-1}'] =
            sum_i l1 ⊗ ... ⊗ [l_i, l1', ..., l_{n-1}'] ⊗ ... ⊗ l_{n-1}

    Basis tuples are ordered lexicographically, which fixes the serialization.
    """
    ident = check_fundamental_identity(n_alg)
    if not ident.holds:
        raise ValueError("input does not satisfy the fundamental identity")
    n, d = n_alg.arity, n_alg.dim
    tuples = list(product(range(d), repeat=n - 1))
    index = {t: i for i, t in enumerate(tuples)}
    big = len(tuples)
    tensor: dict[tuple[int, ...], Vector] = {}
    for a, ta in enumerate(tuples):
        for b, tb in enumerate(tuples):
            out = [ZERO] * big
            for i in range(n - 1):
                val = n_alg.tensor_value((ta[i],) + tb)
                for coord, coef in enumerate(val):
                    if coef:
                        moved = ta[:i] + (coord,) + ta[i + 1:]
                        out[index[moved]] += coef
            if not vec_is_zero(out):
                tensor[(a, b)] = tuple(out)
    labels = [_tensor_labels(n_alg.labels, t) for t in tuples]
    meta = {"recipe": {"kind": "dt", "source": n_alg.meta.get("recipe")}}
    name = f"dt({n_alg.name})" if n_alg.name else "dt"
    return NAryAlgebra(2, big, tensor, labels, name=name, meta=meta)


def build_sl2() -> NAryAlgebra:
    """Split simple Lie algebra on basis (e, h, f): [h,e] = 2e, [h,f] = -2f,
    [e,f] = h, extended antisymmetrically."""
    e, h, f = 0, 1, 2
    two = Fraction(2)
    tensor = {
        (h, e): vec_scale(two, unit_vector(3, e)),
        (e, h): vec_scale(-two, unit_vector(3, e)),
        (h, f): vec_scale(-two, unit_vector(3, f)),
        (f, h): vec_scale(two, unit_vector(3, f)),
        (e, f): unit_vector(3, h),
        (f, e): vec_scale(-ONE, unit_vector(3, h)),
    }
    meta = {"recipe": {"kind": "sl2"},
            "levi": {"g_blocks": [[0, 1, 2]], "rad": []}}
    return NAryAlgebra(2, 3, tensor, ["e", "h", "f"], name="sl2", meta=meta)


def _perm_sign(perm: tuple[int, ...]) -> int:
    sign = 1
    p = list(perm)
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sign = -sign
    return sign


def build_vn(n: int) -> NAryAlgebra:
    """The (n+1)-dimensional alternating n-ary algebra generalizing the cross
    product: dropping basis element i from (e_1 .. e_{n+1}) multiplies to
    (-1)^(n+1+i) e_i (1-based), all other products by antisymmetry."""
    if n < 2:
        raise ValueError("arity must be at least 2")
    d = n + 1
    tensor: dict[tuple[int, ...], Vector] = {}
    for t in product(range(d), repeat=n):
        if len(set(t)) != n:
            continue
        missing = next(i for i in range(d) if i not in t)
        ascending = tuple(i for i in range(d) if i != missing)
        base = (-ONE) ** (n + 1 + (missing + 1))
        rank_of = {v: r for r, v in enumerate(ascending)}
        sign = _perm_sign(tuple(rank_of[v] for v in t))
        tensor[t] = vec_scale(base * sign, unit_vector(d, missing))
    meta = {"recipe": {"kind": "vn", "n": n}}
    return NAryAlgebra(n, d, tensor, name=f"v{n}", meta=meta)


def build_l2() -> NAryAlgebra:
    """Two-dimensional binary algebra with the single product [f,f] = e."""
    tensor = {(1, 1): unit_vector(2, 0)}
    return NAryAlgebra(2, 2, tensor, ["e", "f"], name="l2",
                       meta={"recipe": {"kind": "l2"}})


def build_invertible_example(alphas: list, n: int) -> NAryAlgebra:
    """Diagonal arity-n algebra [e_i, e_1, ..., e_{n-1}] = alpha_i e_i with all
    alpha_i nonzero and alpha_1 + ... + alpha_{n-1} = 0; the right
    multiplication by (e_1, .., e_{n-1}) is then invertible."""
    from .exactlin import as_scalar

    al = [as_scalar(a) for a in alphas]
    m = len(al)
    if m < n - 1:
        raise ValueError("need at least n-1 coefficients")
    if any(a == 0 for a in al):
        raise ValueError("all coefficients must be nonzero")
    if sum(al[:n - 1], ZERO) != 0:
        raise ValueError("the first n-1 coefficients must sum to zero")
    tensor: dict[tuple[int, ...], Vector] = {}
    tail = tuple(range(n - 1))
    for i in range(m):
        tensor[(i,) + tail] = vec_scale(al[i], unit_vector(m, i))
    meta = {"recipe": {"kind": "invertible", "alphas": [str(a) for a in al], "n": n}}
    return NAryAlgebra(n, m, tensor, name=f"inv{n}", meta=meta)


@dataclass(frozen=True)
class Sl2Module:
    """Irreducible highest-weight module for the split simple Lie algebra:
    basis v_0..v_m with h v_j = (m-2j) v_j, f v_j = v_{j+1}, and
    e v_j = j (m-j+1) v_{j-1}."""

    weight: int
    e: Matrix
    h: Matrix
    f: Matrix

    @property
    def dim(self) -> int:
        return self.weight + 1

    def action(self, gen: str) -> Matrix:
        return {"e": self.e, "h": self.h, "f": self.f}[gen]


def build_sl2_module(m: int) -> Sl2Module:
    """Action matrices of e, h, f on the weight-m module, verified to satisfy
    [x,y]·v = x·(y·v) - y·(x·v) on all basis triples."""
    if m < 0:
        raise ValueError("highest weight must be nonnegative")
    d = m + 1
    e_rows = [[ZERO] * d for _ in range(d)]
    h_rows = [[ZERO] * d for _ in range(d)]
    f_rows = [[ZERO] * d for _ in range(d)]
    for j in range(d):
        h_rows[j][j] = Fraction(m - 2 * j)
        if j + 1 < d:
            f_rows[j + 1][j] = ONE
        if j - 1 >= 0:
            e_rows[j - 1][j] = Fraction(j * (m - j + 1))
    mod = Sl2Module(m, Matrix.from_rows(e_rows), Matrix.from_rows(h_rows),
                    Matrix.from_rows(f_rows))
    sl2 = build_sl2()
    gens = ["e", "h", "f"]
    for xi, x in enumerate(gens):
        for yi, y in enumerate(gens):
            combo = sl2.tensor_value((xi, yi))
            lhs = Matrix.zeros(d, d)
            for gi, coef in enumerate(combo):
                if coef:
                    lhs = lhs.add(mod.action(gens[gi]).scale(coef))
            rhs = mod.action(x).mul(mod.action(y)).add(
                mod.action(y).mul(mod.action(x)).scale(-ONE))
            if lhs.entries != rhs.entries:
                raise RuntimeError("internal error: module action violates the bracket")
    return mod


@dataclass(frozen=True)
class BipartiteSpec:
    """Bipartite description of a semisimple non-Lie algebra: simple Lie
    summands on the left, simple modules on the right, an edge wherever the
    module carries a nontrivial action (weights are positive).

    ``left`` holds type tags (only "sl2" at this scale); ``right`` holds, per
    module, the map 0-based-left-index -> highest weight.
    """

    left: tuple[str, ...]
    right: tuple[dict, ...]

    def __post_init__(self) -> None:
        for t in self.left:
            if t != "sl2":
                raise ValueError(f"unsupported simple type {t!r}")
        for weights in self.right:
            if not weights:
                raise ValueError("every module needs at least one adjacent simple summand")
            for i, w in weights.items():
                if not 0 <= i < len(self.left):
                    raise ValueError(f"module references missing summand {i}")
                if int(w) < 1:
                    raise ValueError("edge weights must be positive")

    def is_connected(self) -> bool:
        nodes = [("g", i) for i in range(len(self.left))] + \
                [("m", k) for k in range(len(self.right))]
        if not nodes:
            return True
        adj: dict = {nd: set() for nd in nodes}
        for k, weights in enumerate(self.right):
            for i in weights:
                adj[("m", k)].add(("g", i))
                adj[("g", i)].add(("m", k))
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(nodes)


def _module_basis_tuples(weights: dict) -> tuple[list[int], list[tuple[int, ...]]]:
    """Adjacent left indices in order, and the lexicographic basis tuples of
    the tensor-product module over them."""
    adj = sorted(weights)
    shape = [weights[i] + 1 for i in adj]
    return adj, list(product(*[range(s) for s in shape]))


def build_semisimple_leibniz(spec: BipartiteSpec) -> NAryAlgebra:
    """Semisimple non-Lie binary algebra from a bipartite description.

    Coordinates: one 3-dimensional block per simple summand (basis e, h, f),
    then one block per module (tensor product of weight spaces over its
    adjacent summands, acted on factor by factor).  Brackets: the Lie bracket
    on the simple part, [v, x] = -(x·v) for the module action, and zero for
    [x, v] and [v, w] — squares then sweep exactly the module part.
    """
    m = len(spec.left)
    sl2 = build_sl2()
    gens = ["e", "h", "f"]
    g_dim = 3 * m
    module_info = []
    off = g_dim
    for weights in spec.right:
        adj, tuples = _module_basis_tuples(weights)
        mods = {i: build_sl2_module(weights[i]) for i in adj}
        module_info.append((off, adj, tuples, mods))
        off += len(tuples)
    d = off

    labels = []
    for i in range(m):
        suffix = str(i + 1) if m > 1 else ""
        labels += [g + suffix for g in gens]
    for k, (boff, adj, tuples, mods) in enumerate(module_info):
        for t in tuples:
            labels.append(f"v{k + 1}_" + "".join(str(j) for j in t))

    tensor: dict[tuple[int, ...], Vector] = {}
    for blk in range(m):
        base = 3 * blk
        for (xi, yi), val in sl2.tensor.items():
            out = [ZERO] * d
            for gi, c in enumerate(val):
                out[base + gi] = c
            tensor[(base + xi, base + yi)] = tuple(out)
    for boff, adj, tuples, mods in module_info:
        index = {t: boff + i for i, t in enumerate(tuples)}
        for ti, t in enumerate(tuples):
            for gpos, i in enumerate(adj):
                act = mods[i]
                for gi, gen in enumerate(gens):
                    mat = act.action(gen)
                    out = [ZERO] * d
                    nonzero = False
                    for r in range(act.dim):
                        c = mat.entries[r][t[gpos]]
                        if c:
                            moved = t[:gpos] + (r,) + t[gpos + 1:]
                            out[index[moved]] -= c
                            nonzero = True
                    if nonzero:
                        tensor[(boff + ti, 3 * i + gi)] = tuple(out)

    right_doc = [{str(i + 1): int(w) for i, w in sorted(ws.items())} for ws in spec.right]
    meta = {
        "recipe": {"kind": "bipartite",
                   "spec": {"left": [{"type": t} for t in spec.left],
                            "right": [{"weights": ws} for ws in right_doc]}},
        "levi": {"g_blocks": [list(range(3 * i, 3 * i + 3)) for i in range(m)],
                 "rad": list(range(g_dim, d))},
    }
    desc = ",".join("V(" + "/".join(str(w) for _, w in sorted(ws.items())) + ")"
                    for ws in spec.right)
    name = f"bipartite(sl2^{m};{desc})" if spec.right else f"bipartite(sl2^{m})"
    alg = NAryAlgebra(2, d, tensor, labels, name=name, meta=meta)
    ident = check_fundamental_identity(alg)
    if not ident.holds:
        raise RuntimeError("internal error: bipartite build violates the Leibniz identity")
    return alg


def build_lie_semidirect(weights: list[int]) -> NAryAlgebra:
    """Lie semidirect product of the split simple Lie algebra with the direct
    sum of the weight-m modules: [x, v] = x·v, [v, x] = -(x·v), [v, w] = 0."""
    sl2 = build_sl2()
    gens = ["e", "h", "f"]
    mods = [build_sl2_module(int(w)) for w in weights]
    d = 3 + sum(mod.dim for mod in mods)

    labels = list(sl2.labels)
    offsets = []
    off = 3
    for k, mod in enumerate(mods):
        offsets.append(off)
        labels += [f"v{k + 1}_{j}" for j in range(mod.dim)]
        off += mod.dim

    tensor: dict[tuple[int, ...], Vector] = {}
    for (xi, yi), val in sl2.tensor.items():
        tensor[(xi, yi)] = tuple(val) + zero_vector(d - 3)
    for k, mod in enumerate(mods):
        boff = offsets[k]
        for gi, gen in enumerate(gens):
            mat = mod.action(gen)
            for j in range(mod.dim):
                col = [mat.entries[r][j] for r in range(mod.dim)]
                if all(c == 0 for c in col):
                    continue
                out = [ZERO] * d
                for r, c in enumerate(col):
                    out[boff + r] = c
                tensor[(gi, boff + j)] = tuple(out)
                tensor[(boff + j, gi)] = tuple(-c for c in out)
    meta = {
        "recipe": {"kind": "lie-semidirect", "weights": [int(w) for w in weights]},
        "levi": {"g_blocks": [[0, 1, 2]], "rad": list(range(3, d))},
    }
    name = "sl2⋉V(" + ",".join(str(w) for w in weights) + ")"
    alg = NAryAlgebra(2, d, tensor, labels, name=name, meta=meta)
    ident = check_fundamental_identity(alg)
    if not ident.holds:
        raise RuntimeError("internal error: semidirect build violates the Leibniz identity")
    return alg


def catalog_binary() -> dict[str, NAryAlgebra]:
    """Named binary instances the verification suites run over."""
    from .core import direct_sum

    sl2 = build_sl2()
    return {
        "sl2": sl2,
        "l2": build_l2(),
        "sl2+sl2": direct_sum(sl2, build_sl2()),
        "bip-v1": build_semisimple_leibniz(BipartiteSpec(("sl2",), ({0: 1},))),
        "bip-v1v3": build_semisimple_leibniz(BipartiteSpec(("sl2",), ({0: 1}, {0: 3}))),
        "sd-v1": build_lie_semidirect([1]),
        "sd-v0": build_lie_semidirect([0]),
    }


def catalog_nary() -> dict[str, NAryAlgebra]:
    """Named higher-arity instances (direct builds, not right-normed images)."""
    return {
        "vn3": build_vn(3),
        "vn4": build_vn(4),
        "inv3": build_invertible_example([1, -1, 5], 3),
    }
