"""Strongly nilpotent braces on a coordinate space.

The star operation a*b = a∘b - a - b is stored as a graded family of
multilinear maps: for each k >= 1 a map with k symmetric "left" slots
and one "right" slot, so that star(a, b) = sum_k L_k(a, ..., a; b).
This form is closed under both directions of the correspondence with
pre-Lie algebras, and makes linearity of the star in its right argument
(the F-brace axiom) structural.
"""

import itertools

from dataclasses import dataclass

from .errors import (ConvergenceFailure, DimensionMismatch, FieldMismatch,
                     ValidationFailure, Violation)
from .linalg import Subspace, Vec, span
from .sampling import random_vec, rng_from


def _multinomial(k, counts):
    out = 1
    for i in range(2, k + 1):
        out *= i
    for c in counts:
        for i in range(2, c + 1):
            out //= i
    return out


class SymmetricMap:
    """Multilinear map with ``arity`` symmetric left slots and one right slot.

    Stored sparsely: table[(i_1 <= ... <= i_k, j)] is the value on the
    basis tuple (e_{i_1}, ..., e_{i_k}; e_j); zero values are dropped.
    Keying by sorted tuples makes left-slot symmetry structural.
    """

    __slots__ = ("field", "dim", "arity", "table")

    def __init__(self, field, dim, arity, entries=()):
        self.field = field
        self.dim = dim
        self.arity = arity
        table = {}
        items = entries.items() if isinstance(entries, dict) else entries
        for (tup, j), val in items:
            tup = tuple(sorted(tup))
            if len(tup) != arity:
                raise DimensionMismatch(f"left tuple {tup} has arity != {arity}")
            if any(not 0 <= i < dim for i in tup) or not 0 <= j < dim:
                raise DimensionMismatch(f"index out of range in ({tup}, {j})")
            v = val if isinstance(val, Vec) else Vec(field, val)
            key = (tup, j)
            v = table[key] + v if key in table else v
            if v.is_zero():
                table.pop(key, None)
            else:
                table[key] = v
        self.table = table

    def is_zero(self):
        return not self.table

    def value(self, tup, j):
        return self.table.get((tuple(sorted(tup)), j), Vec.zero(self.field, self.dim))

    def apply(self, lefts, right):
        """Full multilinear evaluation on arbitrary vectors."""
        if len(lefts) != self.arity:
            raise DimensionMismatch(f"expected {self.arity} left arguments")
        acc = [self.field.zero] * self.dim
        for (tup, j), val in self.table.items():
            w = right.entries[j]
            if not w:
                continue
            coeff = self.field.zero
            for arrangement in set(itertools.permutations(tup)):
                prod = w
                for v, idx in zip(lefts, arrangement):
                    prod = prod * v.entries[idx]
                    if not prod:
                        break
                else:
                    coeff = coeff + prod
            if coeff:
                for k, c in enumerate(val.entries):
                    if c:
                        acc[k] = acc[k] + coeff * c
        return Vec(self.field, acc)

    def apply_diagonal(self, a, b):
        """Evaluation with every left slot equal to a."""
        acc = [self.field.zero] * self.dim
        for (tup, j), val in self.table.items():
            coeff = b.entries[j]
            if not coeff:
                continue
            for idx in tup:
                coeff = coeff * a.entries[idx]
                if not coeff:
                    break
            else:
                counts = [tup.count(i) for i in set(tup)]
                coeff = coeff * self.field.of(_multinomial(self.arity, counts))
                for k, c in enumerate(val.entries):
                    if c:
                        acc[k] = acc[k] + coeff * c
        return Vec(self.field, acc)

    def __eq__(self, other):
        return (isinstance(other, SymmetricMap) and other.field == self.field
                and other.dim == self.dim and other.arity == self.arity
                and other.table == self.table)

    def __hash__(self):
        return hash((self.field, self.dim, self.arity,
                     tuple(sorted(self.table.items(), key=lambda kv: kv[0]))))

    def __repr__(self):
        return f"SymmetricMap(arity {self.arity}, {len(self.table)} entries)"


class GradedBrace:
    """Brace with star(a, b) = sum_k L_k(a, ..., a; b).

    ``lambdas`` maps each degree k >= 1 to the SymmetricMap L_k of arity
    k; identically zero maps are dropped.  Unless disabled, construction
    verifies the brace laws, the group laws and strong nilpotency, and
    sets ``class_bound`` to the strong nilpotency index.
    """

    __slots__ = ("field", "dim", "lambdas", "class_bound", "basis_names")

    def __init__(self, field, dim, lambdas, class_bound=None, basis_names=None,
                 validate=True, trials=20, seed=None):
        self.field = field
        self.dim = dim
        clean = {}
        for k, lam in sorted(lambdas.items()):
            if k < 1:
                raise DimensionMismatch(f"lambda degree {k} < 1")
            if not isinstance(lam, SymmetricMap):
                lam = SymmetricMap(field, dim, k, lam)
            if lam.arity != k or lam.field != field or lam.dim != dim:
                raise DimensionMismatch(f"lambda {k} has mismatched shape")
            if not lam.is_zero():
                clean[k] = lam
        self.lambdas = clean
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            f"e{i + 1}" for i in range(dim))
        self.class_bound = class_bound
        if validate:
            viol = check_left_brace(self, trials=trials, seed=seed)
            if viol is None:
                viol = check_group(self, trials=trials, seed=seed)
            if viol is not None:
                raise ValidationFailure(str(viol), viol)
            report = radical_chains(self)
            if not report.strongly_nilpotent:
                raise ValidationFailure("brace is not strongly nilpotent")
            if class_bound is not None and report.strong_index > class_bound:
                raise ValidationFailure(
                    f"strong nilpotency index {report.strong_index} exceeds "
                    f"declared class bound {class_bound}")
            if class_bound is None:
                self.class_bound = report.strong_index
        elif class_bound is None:
            self.class_bound = 1 + max(clean, default=1)

    @classmethod
    def trivial(cls, field, dim, basis_names=None):
        return cls(field, dim, {}, basis_names=basis_names)

    def basis_vector(self, i):
        return Vec.basis(self.field, self.dim, i)

    def lambda_map(self, k):
        return self.lambdas.get(k, SymmetricMap(self.field, self.dim, k))

    def _check_vec(self, v):
        if not isinstance(v, Vec) or v.field != self.field:
            raise FieldMismatch(f"expected Vec over {self.field}")
        if v.dim != self.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {v.dim}")

    def star(self, a, b):
        self._check_vec(a)
        self._check_vec(b)
        out = Vec.zero(self.field, self.dim)
        for lam in self.lambdas.values():
            out = out + lam.apply_diagonal(a, b)
        return out

    def circ(self, a, b):
        return a + b + self.star(a, b)

    def circ_inverse(self, a):
        """The unique x with a∘x = 0, by the fixed-point iteration
        x <- -a - star(a, x); verifies x is a two-sided inverse."""
        self._check_vec(a)
        bound = (self.class_bound or (1 + max(self.lambdas, default=1))) + 1
        x = -a
        for _ in range(bound + 1):
            nxt = -a - self.star(a, x)
            if nxt == x:
                break
            x = nxt
        if not (self.circ(a, x).is_zero() and self.circ(x, a).is_zero()):
            raise ConvergenceFailure("circ inverse iteration did not stabilize")
        return x

    def __eq__(self, other):
        return (isinstance(other, GradedBrace) and other.field == self.field
                and other.dim == self.dim and other.lambdas == self.lambdas)

    def __hash__(self):
        return hash((self.field, self.dim, tuple(sorted(self.lambdas.items()))))

    def __repr__(self):
        ks = ",".join(str(k) for k in self.lambdas) or "-"
        return f"GradedBrace(dim {self.dim} over {self.field}, degrees {ks})"


def _triple_stream(B, trials, seed):
    d = B.dim
    for i in range(d):
        for j in range(d):
            for k in range(d):
                yield ((i, j, k), B.basis_vector(i), B.basis_vector(j), B.basis_vector(k))
    rng = rng_from(seed)
    for t in range(trials):
        yield (("random", t), random_vec(B.field, d, rng),
               random_vec(B.field, d, rng), random_vec(B.field, d, rng))


def check_left_brace(B, trials=50, seed=None):
    """Exact check of the left-brace laws on all basis triples plus
    seeded random triples:

        (a + b + a*b) * c = a*c + b*c + a*(b*c)
        a * (b + c)       = a*b + a*c

    Together with the group laws these characterize a left brace; the
    first law is where a corrupted star tensor shows up.
    """
    for site, a, b, c in _triple_stream(B, trials, seed):
        ab = B.star(a, b)
        lhs = B.star(a + b + ab, c)
        rhs = B.star(a, c) + B.star(b, c) + B.star(a, B.star(b, c))
        if lhs != rhs:
            return Violation("left-brace law (a+b+a*b)*c", site, lhs - rhs)
        lhs = B.star(a, b + c)
        rhs = B.star(a, b) + B.star(a, c)
        if lhs != rhs:
            return Violation("left-brace law a*(b+c)", site, lhs - rhs)
    return None


def check_group(B, trials=50, seed=None):
    """Group axioms for ∘: associativity on basis triples plus seeded
    random triples, 0 as two-sided identity, two-sided inverses."""
    zero = Vec.zero(B.field, B.dim)
    for site, a, b, c in _triple_stream(B, trials, seed):
        lhs = B.circ(B.circ(a, b), c)
        rhs = B.circ(a, B.circ(b, c))
        if lhs != rhs:
            return Violation("circ associativity", site, lhs - rhs)
    for i in range(B.dim):
        a = B.basis_vector(i)
        if B.circ(zero, a) != a or B.circ(a, zero) != a:
            return Violation("circ identity", (i,))
        try:
            B.circ_inverse(a)
        except ConvergenceFailure:
            return Violation("circ inverse", (i,))
    return None


def check_fbrace(B, trials=50, seed=None):
    """Scalar linearity in the right slot: star(a, e*b) = e*star(a, b).

    Automatic for the graded representation; exists to vet imported
    braces and the zero / minus-one edge cases."""
    rng = rng_from(seed)
    d = B.dim
    zero = Vec.zero(B.field, d)
    for t in range(trials):
        a = random_vec(B.field, d, rng)
        b = random_vec(B.field, d, rng)
        for e in (B.field.zero, B.field.of(-1),
                  B.field.of(rng.randrange(1, max(B.field.characteristic, 7)))):
            lhs = B.star(a, b * e)
            rhs = B.star(a, b) * e
            if lhs != rhs:
                return Violation("F-brace linearity", ("random", t), lhs - rhs)
        if not B.star(a, zero).is_zero():
            return Violation("F-brace linearity", ("random", t, "zero"))
    return None


def star_subspaces(B, left, right):
    """Span of all star(a, b) with a in ``left`` and b in ``right``.

    Because a -> star(a, b) is polynomial with symmetric multilinear
    graded parts, this span equals the span of the graded maps over
    basis tuples of the left subspace, which is what gets computed."""
    gens = []
    for k, lam in B.lambdas.items():
        for tup in itertools.combinations_with_replacement(left.basis, k):
            for y in right.basis:
                gens.append(lam.apply(list(tup), y))
    return span(gens, field=B.field, dim=B.dim)


@dataclass(frozen=True)
class ChainReport:
    """The three descending radical chains of a brace, each listed from
    the full space down to its stabilization or to zero, plus the
    nilpotency indices (position of the first zero term, 1-based; None
    if the chain never vanishes)."""

    left: tuple
    right: tuple
    strong: tuple
    left_index: int
    right_index: int
    strong_index: int

    @property
    def left_nilpotent(self):
        return self.left_index is not None

    @property
    def right_nilpotent(self):
        return self.right_index is not None

    @property
    def strongly_nilpotent(self):
        return self.strong_index is not None

    def dims(self, chain):
        return tuple(s.dim for s in chain)


def radical_chains(B):
    """Compute the left chain A^{i+1} = A * A^i, the right chain
    A^(i+1) = A^(i) * A, and the strong chain A^[i] = sum of
    A^[j] * A^[i-j], until each vanishes or provably stabilizes."""
    full = Subspace.full(B.field, B.dim)

    def one_sided(step):
        chain = [full]
        while not chain[-1].is_zero():
            nxt = step(chain[-1])
            if nxt == chain[-1]:
                return tuple(chain), None  # stalled at a nonzero fixed point
            chain.append(nxt)
        return tuple(chain), len(chain)

    left, left_index = one_sided(lambda s: star_subspaces(B, full, s))
    right, right_index = one_sided(lambda s: star_subspaces(B, s, full))

    strong = [full]
    strong_index = None
    cap = 2 * B.dim + 3
    for i in range(2, cap + 1):
        gens = []
        for j in range(1, i):
            gens.extend(star_subspaces(B, strong[j - 1], strong[i - j - 1]).basis)
        nxt = span(gens, field=B.field, dim=B.dim)
        strong.append(nxt)
        if nxt.is_zero():
            strong_index = i
            break
    return ChainReport(left, right, tuple(strong), left_index, right_index, strong_index)
