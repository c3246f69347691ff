"""From a strongly nilpotent brace back to its pre-Lie algebra.

The product is the limit of 2^n (a/2^n) * b.  Over an exact field that
limit is never reached at finite n, but t -> star(t*a, b) is a
polynomial with zero constant term, so the limit is exactly its
degree-one coefficient; ``dot`` extracts it by interpolation and checks
it against the degree-one graded map.  ``limit_witness`` keeps the
sequence view as a verifiable certificate: the deviation from the limit
scales componentwise by 2^(1-k) per halving step.
"""

from .errors import InternalInconsistency, NotPreLie, Violation, ValidationFailure
from .flows import to_brace
from .free_expansion import (StarExpr, StarWord, X, Y, Z, evaluate,
                             expand_sum_star)
from .linalg import Vec, polynomial_curve_coefficients
from .prelie import PreLieAlgebra
from .sampling import random_scalar, random_vec, rng_from


def _star_curve(B, a, b):
    """Graded coefficients c_0..c_{s-1} of t -> star(t*a, b)."""
    deg = max(B.class_bound - 1, 1)
    return polynomial_curve_coefficients(
        lambda t: B.star(a * t, b), B.field, deg)


def dot(B, a, b):
    """The limit product: degree-one coefficient of t -> star(t*a, b).

    Computed twice (interpolation and the stored degree-one map) and
    compared; the interpolated constant term must come out exactly zero.
    """
    coeffs = _star_curve(B, a, b)
    if not coeffs[0].is_zero():
        raise InternalInconsistency("star curve has a nonzero constant term")
    direct = B.lambda_map(1).apply_diagonal(a, b)
    if coeffs[1] != direct:
        raise InternalInconsistency(
            "interpolated limit disagrees with the degree-one map")
    return coeffs[1]


def limit_witness(B, a, b, n_max):
    """The finite sequence 2^n star(a/2^n, b) for n = 0..n_max.

    Verifies the exact closed form sum_k 2^(n(1-k)) L_k(a,..,a;b)
    against every term before returning, so each deviation from the
    limit halves per degree as the certificate demands."""
    field = B.field
    pieces = {k: lam.apply_diagonal(a, b) for k, lam in B.lambdas.items()}
    seq = []
    for n in range(n_max + 1):
        direct = B.star(a * field.inv_int(2 ** n), b) * field.of(2 ** n)
        closed = Vec.zero(field, B.dim)
        for k, g in pieces.items():
            closed = closed + g * field.inv_int(2 ** (n * (k - 1)))
        if direct != closed:
            raise InternalInconsistency("scaling sequence left its closed form")
        seq.append(direct)
    return seq


def check_bilinearity(B, trials=50, seed=None):
    """Exact two-sided linearity of the limit product on seeded random
    scalars and vectors."""
    rng = rng_from(seed)
    field, d = B.field, B.dim
    for t in range(trials):
        alpha, gamma = random_scalar(field, rng), random_scalar(field, rng)
        a, b, c = (random_vec(field, d, rng) for _ in range(3))
        lhs = dot(B, a * alpha + b * gamma, c)
        rhs = dot(B, a, c) * alpha + dot(B, b, c) * gamma
        if lhs != rhs:
            return Violation("limit product left linearity", ("random", t), lhs - rhs)
        lhs = dot(B, a, b * alpha + c * gamma)
        rhs = dot(B, a, b) * alpha + dot(B, a, c) * gamma
        if lhs != rhs:
            return Violation("limit product right linearity", ("random", t), lhs - rhs)
    return None


def to_prelie(B):
    """Pre-Lie algebra with structure constants dot(e_i, e_j).

    Validation of the result (identity plus nilpotency) is part of the
    contract: a failure means the input was not a genuine strongly
    nilpotent brace and surfaces as NotPreLie."""
    d = B.dim
    structure = {}
    for i in range(d):
        for j in range(d):
            v = dot(B, B.basis_vector(i), B.basis_vector(j))
            if not v.is_zero():
                structure[(i, j)] = v
    try:
        return PreLieAlgebra(B.field, d, structure, basis_names=B.basis_names)
    except ValidationFailure as exc:
        raise NotPreLie(str(exc)) from exc


def roundtrip_prelie(alg, trials=20, seed=None):
    """PASS (None) iff to_prelie(to_brace(alg)) reproduces the structure
    constants of alg exactly."""
    back = to_prelie(to_brace(alg, trials=trials, seed=seed))
    for i in range(alg.dim):
        for j in range(alg.dim):
            if back.products[i][j] != alg.products[i][j]:
                return Violation("pre-Lie round trip", (i, j),
                                 back.products[i][j] - alg.products[i][j])
    return None


def roundtrip_brace(B, trials=20, seed=None):
    """PASS (None) iff to_brace(to_prelie(B)) reproduces every graded
    map of B exactly."""
    back = to_brace(to_prelie(B), trials=trials, seed=seed)
    for k in sorted(set(B.lambdas) | set(back.lambdas)):
        lam, lam2 = B.lambda_map(k), back.lambda_map(k)
        if lam != lam2:
            keys = sorted(set(lam.table) | set(lam2.table))
            site = next(key for key in keys if lam.table.get(key) != lam2.table.get(key))
            return Violation("brace round trip", (k,) + site)
    return None


def check_associator_correction_identity(B, trials=20, seed=None):
    """Exact check that the star associator asymmetry equals the swap
    difference of the degree >= 3 correction terms:

        x*(y*z) - (x*y)*z - y*(x*z) + (y*x)*z = d(y,x,z) - d(x,y,z)

    where d collects everything the expansion of (x+y)*z adds beyond
    x*z + y*z + x*(y*z) - (x*y)*z."""
    bound = max(B.class_bound, 3)
    full = expand_sum_star(X, Y, Z, bound)
    display = (StarExpr.word(StarWord.product(X, Z))
               + StarExpr.word(StarWord.product(Y, Z))
               + StarExpr.word(StarWord.product(X, StarWord.product(Y, Z)))
               - StarExpr.word(StarWord.product(StarWord.product(X, Y), Z)))
    d_expr = full - display
    rng = rng_from(seed)
    for t in range(trials):
        a, b, c = (random_vec(B.field, B.dim, rng) for _ in range(3))
        lhs = (B.star(a, B.star(b, c)) - B.star(B.star(a, b), c)
               - B.star(b, B.star(a, c)) + B.star(B.star(b, a), c))
        rhs = (evaluate(d_expr, {"x": b, "y": a, "z": c}, B)
               - evaluate(d_expr, {"x": a, "y": b, "z": c}, B))
        if lhs != rhs:
            return Violation("associator correction identity", ("random", t), lhs - rhs)
    return None
