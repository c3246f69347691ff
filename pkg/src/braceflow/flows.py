"""Group of flows of a nilpotent pre-Lie algebra.

With L_a the left multiplication by a, the construction goes

    exp_L(a, b) = b + a.b + (1/2!) a.(a.b) + ...        (finite: nilpotency)
    W(a)        = a + (1/2!) a.a + (1/3!) a.(a.a) + ...
    Omega       = the compositional inverse of W
    a ∘ b       = a + exp_L(Omega(a), b)

which makes (A, +, ∘) a left brace sharing the addition of A.  The
formal unit behind W is never materialized; W is summed directly.
``to_brace`` extracts the graded multilinear form of a*b = a∘b - a - b
by exact interpolation in a scaling parameter followed by polarization.
"""

import itertools

from .brace import GradedBrace, SymmetricMap
from .errors import ConvergenceFailure, InternalInconsistency
from .linalg import Vec, polynomial_curve_coefficients
from .sampling import random_vec, rng_from


def exp_L(alg, a, b):
    """exp of left multiplication: sum_k (1/k!) L_a^k(b), exact."""
    acc = b
    cur = b
    for k in range(1, alg.nilpotency_class):
        cur = alg.multiply(a, cur)
        if cur.is_zero():
            break
        acc = acc + cur * alg.field.inv_factorial(k)
    return acc


def w_map(alg, a):
    """W(a) = sum_{k>=1} (1/k!) L_a^{k-1}(a); bijective on a nilpotent algebra."""
    acc = a
    cur = a
    for k in range(2, alg.nilpotency_class + 1):
        cur = alg.multiply(a, cur)
        if cur.is_zero():
            break
        acc = acc + cur * alg.field.inv_factorial(k)
    return acc


def omega(alg, a):
    """The unique x with W(x) = a.

    Fixed-point iteration x <- a - (W(x) - x); every step corrects one
    more degree, so at most the nilpotency class many iterations are
    needed.  The result is verified against W before returning."""
    x = a
    for _ in range(alg.nilpotency_class + 1):
        nxt = a - (w_map(alg, x) - x)
        if nxt == x:
            break
        x = nxt
    if w_map(alg, x) != a:
        raise ConvergenceFailure("Omega iteration did not stabilize")
    return x


def circ(alg, a, b):
    """Group-of-flows multiplication a∘b = a + exp_L(Omega(a), b)."""
    return a + exp_L(alg, omega(alg, a), b)


def star(alg, a, b):
    """a*b = a∘b - a - b."""
    return circ(alg, a, b) - a - b


def to_brace(alg, trials=20, seed=None):
    """Extract the graded brace of the group of flows.

    For each direction x the curve t -> star(t*x, b) is a polynomial
    with zero constant term; exact interpolation gives its graded
    diagonal pieces, and polarization over subset sums recovers the full
    symmetric multilinear maps.  The result is checked against ∘ on a
    full basis-pair sweep plus ``trials`` seeded random pairs.
    """
    field, d, s = alg.field, alg.dim, alg.nilpotency_class
    deg = s - 1

    diag_cache = {}

    def diag(x, j):
        # graded pieces c_1..c_{s-1} of t -> star(t*x, e_j)
        key = (x.entries, j)
        if key not in diag_cache:
            ej = alg.basis_vector(j)
            coeffs = polynomial_curve_coefficients(
                lambda t: star(alg, x * t, ej), field, deg)
            if not coeffs[0].is_zero():
                raise InternalInconsistency("star curve has a nonzero constant term")
            diag_cache[key] = coeffs[1:]
        return diag_cache[key]

    lambdas = {}
    for k in range(1, s):
        inv_kfact = field.inv_factorial(k)
        entries = {}
        for tup in itertools.combinations_with_replacement(range(d), k):
            for j in range(d):
                val = Vec.zero(field, d)
                for m in range(1, k + 1):
                    for positions in itertools.combinations(range(k), m):
                        x = Vec.zero(field, d)
                        for p in positions:
                            x = x + Vec.basis(field, d, tup[p])
                        piece = diag(x, j)[k - 1]
                        val = val + piece if (k - m) % 2 == 0 else val - piece
                val = val * inv_kfact
                if not val.is_zero():
                    entries[(tup, j)] = val
        lam = SymmetricMap(field, d, k, entries)
        if not lam.is_zero():
            lambdas[k] = lam

    B = GradedBrace(field, d, lambdas, class_bound=s,
                    basis_names=alg.basis_names, trials=trials, seed=seed)

    rng = rng_from(seed)
    pairs = [(alg.basis_vector(i), alg.basis_vector(j))
             for i in range(d) for j in range(d)]
    pairs += [(random_vec(field, d, rng), random_vec(field, d, rng))
              for _ in range(trials)]
    for a, b in pairs:
        if B.star(a, b) != star(alg, a, b):
            raise InternalInconsistency(
                "extracted graded star disagrees with the flows product")
    return B
