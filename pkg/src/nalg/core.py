"""Structure tensors for n-ary algebras and the checks that live on them.

An :class:`NAryAlgebra` is an arity-n bracket on Q^d given through structure
constants: ``tensor[(i1, ..., in)]`` is the coordinate vector of the bracket
of basis elements ``i1..in`` (0-based); absent tuples are zero products.
Arity 2 plays the role of a binary (Leibniz) algebra — there is no separate
type.  Axiom checks enumerate basis tuples only, which is exhaustive by
multilinearity, and always report the lexicographically first violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .exactlin import (
    ONE,
    ZERO,
    Matrix,
    Subspace,
    Vector,
    nullspace,
    unit_vector,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    vector,
    zero_vector,
)


class NAryAlgebra:
    """Arity-n algebra with a rational structure tensor.

    Treated as immutable after construction; all operations below are pure.
    ``meta`` is free-form provenance (builder recipe, coordinate spans of a
    known Levi-style decomposition, human notes) and never affects algebraic
    results — only verdict certification reads it.
    """

    def __init__(
        self,
        arity: int,
        dim: int,
        tensor: Mapping[tuple[int, ...], Sequence] | None = None,
        labels: Sequence[str] | None = None,
        name: str = "",
        meta: dict | None = None,
    ):
        if arity < 2:
            raise ValueError("arity must be at least 2")
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.arity = arity
        self.dim = dim
        if labels is None:
            labels = [f"e{i + 1}" for i in range(dim)]
        if len(labels) != dim:
            raise ValueError("label count must equal the dimension")
        self.labels = tuple(str(l) for l in labels)
        normalized: dict[tuple[int, ...], Vector] = {}
        for key, val in (tensor or {}).items():
            idx = tuple(int(i) for i in key)
            if len(idx) != arity:
                raise ValueError(f"product key {idx} does not have arity {arity}")
            if any(i < 0 or i >= dim for i in idx):
                raise ValueError(f"product key {idx} out of range for dimension {dim}")
            v = vector(val)
            if len(v) != dim:
                raise ValueError(f"product value for {idx} has wrong length")
            if not vec_is_zero(v):
                normalized[idx] = v
        self.tensor = normalized
        self.name = name
        self.meta = dict(meta) if meta else {}

    def tensor_value(self, key: Sequence[int]) -> Vector:
        return self.tensor.get(tuple(key), zero_vector(self.dim))

    def products(self) -> list[tuple[tuple[int, ...], Vector]]:
        return sorted(self.tensor.items())

    @property
    def is_abelian(self) -> bool:
        return not self.tensor

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def __repr__(self) -> str:
        nm = f" {self.name!r}" if self.name else ""
        return f"NAryAlgebra(arity {self.arity}, dim {self.dim}{nm})"


@dataclass(frozen=True)
class LinearMap:
    """Square matrix acting on an algebra's coordinate space."""

    matrix: Matrix

    def __post_init__(self) -> None:
        if self.matrix.rows != self.matrix.cols:
            raise ValueError("a linear map on an algebra must be square")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def apply(self, v: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(v)

    def column(self, j: int) -> Vector:
        return self.matrix.column(j)

    def compose(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix.mul(other.matrix))

    @classmethod
    def from_flat(cls, flat: Sequence[Fraction], dim: int) -> "LinearMap":
        """Rebuild a map from row-major flattened coordinates (index r*dim+c)."""
        if len(flat) != dim * dim:
            raise ValueError("flattened length must be dim^2")
        rows = [tuple(flat[r * dim + c] for c in range(dim)) for r in range(dim)]
        return cls(Matrix.from_rows(rows, cols=dim))

    def to_flat(self) -> Vector:
        return tuple(x for row in self.matrix.entries for x in row)


@dataclass
class Witness:
    """Concrete counterexample: where a check failed and the two sides.

    Basis indices inside ``data`` are 1-based, matching the file format.
    """

    data: dict
    lhs: Vector | None = None
    rhs: Vector | None = None

    def to_dict(self) -> dict:
        from .fileformat import vector_to_strings
        out = dict(self.data)
        if self.lhs is not None:
            out["lhs"] = vector_to_strings(self.lhs)
        if self.rhs is not None:
            out["rhs"] = vector_to_strings(self.rhs)
        return out


@dataclass
class CheckReport:
    """Outcome of an exhaustive check; ``holds`` is True iff no witness."""

    holds: bool
    witness: Witness | None = None
    data: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds


def _one_based(t: Sequence[int]) -> list[int]:
    return [i + 1 for i in t]


def bracket(alg: NAryAlgebra, args: Sequence[Sequence[Fraction]]) -> Vector:
    """Evaluate the n-ary bracket on arbitrary coordinate vectors by full
    multilinear expansion over the structure tensor."""
    if len(args) != alg.arity:
        raise ValueError(f"bracket needs {alg.arity} arguments, got {len(args)}")
    for a in args:
        if len(a) != alg.dim:
            raise ValueError("argument length does not match algebra dimension")
    out = [ZERO] * alg.dim
    if not alg.tensor:
        return tuple(out)
    supports = [[(i, c) for i, c in enumerate(a) if c] for a in args]
    for combo in product(*supports):
        entry = alg.tensor.get(tuple(i for i, _ in combo))
        if entry is None:
            continue
        coef = ONE
        for _, c in combo:
            coef *= c
        for j, e in enumerate(entry):
            if e:
                out[j] += coef * e
    return tuple(out)


def check_fundamental_identity(alg: NAryAlgebra) -> CheckReport:
    """Exhaustive check of the defining identity

        [[x1..xn], y1..y_{n-1}] = sum_i [x1.., [xi, y1..y_{n-1}], ..xn]

    over all basis tuples (for arity 2 this is the Leibniz identity).
    Multilinearity makes basis tuples sufficient.  The first violated
    instance, in lexicographic tuple order, is reported as the witness.
    """
    n, d = alg.arity, alg.dim
    basis = [alg.basis_vector(i) for i in range(d)]
    for xs in product(range(d), repeat=n):
        inner = alg.tensor_value(xs)
        for ys in product(range(d), repeat=n - 1):
            yvecs = [basis[y] for y in ys]
            lhs = bracket(alg, [inner] + yvecs)
            rhs = zero_vector(d)
            for i in range(n):
                repl = alg.tensor_value((xs[i],) + ys)
                if vec_is_zero(repl):
                    continue
                args = [basis[x] for x in xs]
                args[i] = repl
                rhs = vec_add(rhs, bracket(alg, args))
            if lhs != rhs:
                w = Witness({"x": _one_based(xs), "y": _one_based(ys)}, lhs=lhs, rhs=rhs)
                return CheckReport(False, w)
    return CheckReport(True)


def check_skew(alg: NAryAlgebra) -> CheckReport:
    """True iff every adjacent-slot transposition negates the bracket on basis
    tuples.  Over Q this is equivalent to the bracket being alternating, i.e.
    factoring through the n-th exterior power."""
    n, d = alg.arity, alg.dim
    for t in product(range(d), repeat=n):
        val = alg.tensor_value(t)
        for p in range(n - 1):
            s = list(t)
            s[p], s[p + 1] = s[p + 1], s[p]
            swapped = alg.tensor_value(s)
            if val != vec_scale(-ONE, swapped):
                w = Witness({"tuple": _one_based(t), "swap_pos": p + 1},
                            lhs=val, rhs=vec_scale(-ONE, swapped))
                return CheckReport(False, w)
    return CheckReport(True)


def right_mult(alg: NAryAlgebra, xs: Sequence[Sequence[Fraction]]) -> LinearMap:
    """Right multiplication operator z -> [z, x2, ..., xn]; column j is the
    bracket of the j-th basis vector with the given (n-1)-tuple."""
    if len(xs) != alg.arity - 1:
        raise ValueError(f"right multiplication needs {alg.arity - 1} vectors")
    cols = [bracket(alg, [alg.basis_vector(j), *xs]) for j in range(alg.dim)]
    rows = [tuple(cols[j][r] for j in range(alg.dim)) for r in range(alg.dim)]
    return LinearMap(Matrix.from_rows(rows, cols=alg.dim))


def is_derivation(alg: NAryAlgebra, m: LinearMap) -> CheckReport:
    """Check d([x1..xn]) = sum_k [x1, .., d(xk), .., xn] on all basis tuples."""
    if m.dim != alg.dim:
        raise ValueError("map dimension does not match the algebra")
    n, d = alg.arity, alg.dim
    basis = [alg.basis_vector(i) for i in range(d)]
    cols = [m.column(j) for j in range(d)]
    for t in product(range(d), repeat=n):
        lhs = m.apply(alg.tensor_value(t))
        rhs = zero_vector(d)
        for k in range(n):
            args = [basis[i] for i in t]
            args[k] = cols[t[k]]
            rhs = vec_add(rhs, bracket(alg, args))
        if lhs != rhs:
            return CheckReport(False, Witness({"tuple": _one_based(t)}, lhs=lhs, rhs=rhs))
    return CheckReport(True)


def derivation_space(alg: NAryAlgebra) -> Subspace:
    """All derivations, as a subspace of Q^(d^2) in row-major flattened
    coordinates (entry (r, c) of the map sits at index r*d + c).

    The derivation condition on every basis tuple is one linear system in the
    d^2 matrix entries; its nullspace is returned.
    """
    n, d = alg.arity, alg.dim
    if d == 0:
        return Subspace.zero(0)

    def equation_rows():
        seen: set[tuple[Fraction, ...]] = set()
        for t in product(range(d), repeat=n):
            tv = alg.tensor_value(t)
            for r in range(d):
                row = [ZERO] * (d * d)
                for c in range(d):
                    if tv[c]:
                        row[r * d + c] += tv[c]
                for k in range(n):
                    for a in range(d):
                        sub = list(t)
                        sub[k] = a
                        val = alg.tensor.get(tuple(sub))
                        if val is not None and val[r]:
                            row[a * d + t[k]] -= val[r]
                key = tuple(row)
                if not vec_is_zero(row) and key not in seen:
                    seen.add(key)
                    yield row

    return nullspace(equation_rows(), d * d)


def is_homomorphism(src: NAryAlgebra, dst: NAryAlgebra, m: Matrix) -> CheckReport:
    """Check m([x1..xn]) = [m x1, .., m xn] on all basis tuples of ``src``.

    ``m`` maps source coordinates to destination coordinates and need not be
    square.
    """
    if src.arity != dst.arity:
        raise ValueError("homomorphism requires equal arities")
    if m.cols != src.dim or m.rows != dst.dim:
        raise ValueError("matrix shape does not map source to destination coordinates")
    cols = [m.column(j) for j in range(src.dim)]
    for t in product(range(src.dim), repeat=src.arity):
        lhs = m.apply(src.tensor_value(t))
        rhs = bracket(dst, [cols[i] for i in t])
        if lhs != rhs:
            return CheckReport(False, Witness({"tuple": _one_based(t)}, lhs=lhs, rhs=rhs))
    return CheckReport(True)


def _dedupe_label(label: str, used: set[str]) -> str:
    while label in used:
        label += "'"
    return label


def _merge_levi(a: NAryAlgebra, b: NAryAlgebra) -> dict | None:
    la, lb = a.meta.get("levi"), b.meta.get("levi")
    if la is None or lb is None:
        return None
    off = a.dim
    return {
        "g_blocks": [list(blk) for blk in la["g_blocks"]]
        + [[c + off for c in blk] for blk in lb["g_blocks"]],
        "rad": list(la["rad"]) + [c + off for c in lb["rad"]],
    }


def direct_sum(a: NAryAlgebra, b: NAryAlgebra) -> NAryAlgebra:
    """Block direct sum: both tensors side by side, mixed products zero."""
    if a.arity != b.arity:
        raise ValueError("direct sum requires equal arities")
    d = a.dim + b.dim
    tensor: dict[tuple[int, ...], Vector] = {}
    for key, val in a.tensor.items():
        tensor[key] = tuple(val) + zero_vector(b.dim)
    for key, val in b.tensor.items():
        tensor[tuple(i + a.dim for i in key)] = zero_vector(a.dim) + tuple(val)
    labels = list(a.labels)
    used = set(labels)
    for l in b.labels:
        nl = _dedupe_label(l, used)
        labels.append(nl)
        used.add(nl)
    meta: dict = {"recipe": {"kind": "direct-sum",
                             "parts": [a.meta.get("recipe"), b.meta.get("recipe")]}}
    levi = _merge_levi(a, b)
    if levi is not None:
        meta["levi"] = levi
    name = f"{a.name or 'A'}+{b.name or 'B'}"
    return NAryAlgebra(a.arity, d, tensor, labels, name=name, meta=meta)


def equal_tensor(a: NAryAlgebra, b: NAryAlgebra) -> bool:
    """Structure-tensor identity: same arity, dimension and constants.

    Deliberately not an isomorphism test; labels and metadata are ignored.
    """
    return a.arity == b.arity and a.dim == b.dim and a.tensor == b.tensor


def basis_change(alg: NAryAlgebra, p: Matrix, name: str | None = None) -> NAryAlgebra:
    """Conjugate the structure tensor by an invertible matrix ``p`` (columns
    of ``p`` are the new basis in old coordinates).  Validity-preserving: the
    result satisfies exactly the identities the input does."""
    if p.rows != alg.dim or p.cols != alg.dim:
        raise ValueError("basis-change matrix shape does not match the algebra")
    p_inv = p.inverse()
    cols = [p.column(j) for j in range(alg.dim)]
    tensor: dict[tuple[int, ...], Vector] = {}
    for t in product(range(alg.dim), repeat=alg.arity):
        v = bracket(alg, [cols[i] for i in t])
        if not vec_is_zero(v):
            tensor[t] = p_inv.apply(v)
    meta = {"recipe": {"kind": "basis-change", "source": alg.meta.get("recipe")}}
    return NAryAlgebra(alg.arity, alg.dim, tensor, alg.labels,
                       name=name or f"{alg.name}~", meta=meta)
