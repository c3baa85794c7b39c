"""Signatures, sawtooth signatures and Euler-Maclaurin expansions for piecewise-linear paths."""
from .bernoulli import (
    BernoulliTable,
    bernoulli_number,
    bernoulli_numbers,
    bernoulli_polynomial,
    faulhaber,
    faulhaber_exact,
)
from .eml import (
    EmlReport,
    classical_eml,
    classical_remainder,
    generalized_eml,
    preliminary_eml,
    remainder_integral,
    riemann_sum,
    stieltjes_integral,
    trapezoid_sum,
)
from .optimal import level_objective, optimal_tensor, optimal_tensor_lambda, optimality_check
from .paths import (
    PathEnsemble,
    PiecewiseLinearPath,
    TimeSeries,
    increment,
    interpolate_linear,
    line_path,
    reparametrize_arclength,
    total_variation,
)
from .polynomial import ControlledIntegrand, PolynomialMap
from .sawtooth import Direction, TensorPolyPath, sawtooth, sawtooth_closed_form, sawtooth_lambda_1d
from .signature import flip_signature, signature
from .tensor import (
    TruncatedTensor,
    gamma_involution,
    tensor_exp,
    tensor_inverse,
    tensor_mul,
    tensor_norm,
    unit,
)
from .words import (
    Composition,
    compositions,
    hoffman_map,
    non_unity_projection,
    quasi_shuffle,
    quasi_shuffle_antipode,
    shuffle,
    shuffle_antipode,
    unity_projection,
)

__all__ = [name for name in dir() if not name.startswith("_")]
