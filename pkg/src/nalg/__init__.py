"""Exact-arithmetic toolkit for binary and n-ary Leibniz-type algebras over Q.

Everything computes with rational structure tensors: bracket evaluation and
identity checks, ideal machinery and kernels, derived series and radicals,
and the constructions moving between binary and n-ary brackets, plus a small
catalog of concrete instances and a batch verification suite.
"""

from .core import (
    CheckReport,
    LinearMap,
    NAryAlgebra,
    Witness,
    basis_change,
    bracket,
    check_fundamental_identity,
    check_skew,
    derivation_space,
    direct_sum,
    equal_tensor,
    is_derivation,
    is_homomorphism,
    right_mult,
)
from .exactlin import (
    Matrix,
    Scalar,
    Subspace,
    contains,
    rref,
    solve,
    span,
    subspace_intersect,
    subspace_sum,
)
from .fileformat import (
    ParseError,
    load_algebra,
    load_bipartite_spec,
    save_algebra,
)
from .functors import (
    BipartiteSpec,
    build_invertible_example,
    build_l2,
    build_lie_semidirect,
    build_semisimple_leibniz,
    build_sl2,
    build_sl2_module,
    build_vn,
    catalog_binary,
    catalog_nary,
    dt_basic,
    u_n,
)
from .ideals import (
    IdealVerdict,
    enumerate_semisimple_ideals,
    i_ij,
    ideal_closure,
    ideal_verdict,
    is_s_ideal,
    leibniz_kernel_2,
    leibniz_n_kernel,
    quotient,
    u3_ideal_criterion,
)
from .solvability import (
    DerivedSeries,
    SimplicityVerdict,
    derivation_preserves_radical,
    derived_series,
    invertible_r_implies_kernel,
    is_semisimple_leibniz,
    k_derived_step,
    killing_form,
    rad_k_of_un,
    radical_leibniz,
    simplicity,
)

__version__ = "0.1.0"
