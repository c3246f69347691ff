"""Finite-dimensional pre-Lie algebras given by structure constants.

A pre-Lie (left-symmetric) algebra has a bilinear product whose
associator (xy)z - x(yz) is symmetric in x and y.  Structures accepted
here are additionally nilpotent: some power s exists with every product
of s elements equal to zero.  Both properties are verified at
construction unless explicitly disabled (used only to build deliberately
broken fixtures in tests).
"""

from .errors import (CharacteristicTooSmall, DimensionMismatch, FieldMismatch,
                     ValidationFailure, Violation)
from .linalg import Subspace, Vec, span


class PreLieAlgebra:
    """Algebra on basis e_0..e_{d-1} with products e_i*e_j stored as vectors.

    ``structure`` may be a dense d x d x d nested sequence of scalars
    (c[i][j][k] is the e_k coordinate of e_i*e_j) or a sparse mapping
    {(i, j): {k: value}} with omitted products zero.
    """

    __slots__ = ("field", "dim", "products", "basis_names", "_pairs", "_class")

    def __init__(self, field, dim, structure, basis_names=None, validate=True):
        self.field = field
        self.dim = dim
        zero = Vec.zero(field, dim)
        table = [[zero] * dim for _ in range(dim)]
        if isinstance(structure, dict):
            for (i, j), out in structure.items():
                if not (0 <= i < dim and 0 <= j < dim):
                    raise DimensionMismatch(f"product index ({i},{j}) out of range")
                if isinstance(out, Vec):
                    v = out
                elif isinstance(out, dict):
                    ent = [field.zero] * dim
                    for k, val in out.items():
                        if not 0 <= k < dim:
                            raise DimensionMismatch(f"output index {k} out of range")
                        ent[k] = field.of(val)
                    v = Vec(field, ent)
                else:
                    v = Vec(field, out)
                if v.dim != dim:
                    raise DimensionMismatch("product vector has wrong dimension")
                table[i][j] = v
        else:
            rows = list(structure)
            if len(rows) != dim:
                raise DimensionMismatch("structure tensor must be d x d x d")
            for i, row in enumerate(rows):
                row = list(row)
                if len(row) != dim:
                    raise DimensionMismatch("structure tensor must be d x d x d")
                for j, out in enumerate(row):
                    v = out if isinstance(out, Vec) else Vec(field, out)
                    if v.dim != dim:
                        raise DimensionMismatch("structure tensor must be d x d x d")
                    table[i][j] = v
        self.products = tuple(tuple(row) for row in table)
        self.basis_names = tuple(basis_names) if basis_names else tuple(
            f"e{i + 1}" for i in range(dim))
        if len(self.basis_names) != dim:
            raise DimensionMismatch("basis name count != dim")
        self._pairs = tuple(
            (i, j, tuple((k, c) for k, c in enumerate(self.products[i][j]) if c))
            for i in range(dim) for j in range(dim) if not self.products[i][j].is_zero())
        self._class = None
        if validate:
            viol = check_prelie_identity(self)
            if viol is not None:
                raise ValidationFailure(str(viol), viol)
            s = nilpotency_index(self)
            if s is None:
                raise ValidationFailure("algebra is not nilpotent")
            self._class = s
            p = field.characteristic
            if p and p <= s:
                raise CharacteristicTooSmall(
                    f"characteristic {p} must exceed the nilpotency class {s}")

    @classmethod
    def zero(cls, field, dim, basis_names=None):
        return cls(field, dim, {}, basis_names)

    @property
    def nilpotency_class(self):
        if self._class is None:
            self._class = nilpotency_index(self)
        return self._class

    def basis_vector(self, i):
        return Vec.basis(self.field, self.dim, i)

    def _check_vec(self, v):
        if not isinstance(v, Vec) or v.field != self.field:
            raise FieldMismatch(f"expected Vec over {self.field}")
        if v.dim != self.dim:
            raise DimensionMismatch(f"dim {self.dim} vs {v.dim}")

    def multiply(self, x, y):
        """Bilinear product x*y from the structure constants."""
        self._check_vec(x)
        self._check_vec(y)
        acc = [self.field.zero] * self.dim
        for i, j, out in self._pairs:
            c = x.entries[i] * y.entries[j]
            if c:
                for k, val in out:
                    acc[k] = acc[k] + c * val
        return Vec(self.field, acc)

    def lie_bracket(self, x, y):
        """[x, y] = x*y - y*x, the associated Lie bracket."""
        return self.multiply(x, y) - self.multiply(y, x)

    def structure_equal(self, other):
        return (isinstance(other, PreLieAlgebra) and other.field == self.field
                and other.dim == self.dim and other.products == self.products)

    def __repr__(self):
        return f"PreLieAlgebra(dim {self.dim} over {self.field})"


def check_prelie_identity(alg):
    """Exact check of (xy)z - x(yz) = (yx)z - y(xz) on all basis triples.

    Bilinearity makes the basis sweep sufficient for all elements.
    Returns None on success, else a Violation at the first failing triple
    with residual (e_i e_j)e_k - e_i(e_j e_k) - (e_j e_i)e_k + e_j(e_i e_k).
    """
    d = alg.dim
    basis = [alg.basis_vector(i) for i in range(d)]
    for i in range(d):
        for j in range(d):
            if i == j:
                continue  # the residual is identically zero for i = j
            for k in range(d):
                r = (alg.multiply(alg.products[i][j], basis[k])
                     - alg.multiply(basis[i], alg.products[j][k])
                     - alg.multiply(alg.products[j][i], basis[k])
                     + alg.multiply(basis[j], alg.products[i][k]))
                if not r.is_zero():
                    return Violation("pre-Lie identity", (i, j, k), r)
    return None


def nilpotency_index(alg):
    """Smallest s with every product of s elements zero, or None.

    Computes the descending chain D_1 = A, D_{i+1} = span of all
    products D_j * D_{i+1-j} (0 < j < i+1), i.e. the span of all
    products of exactly i+1 elements with any bracketing.  The chain is
    monotone, so for a nilpotent algebra it reaches zero within d+1
    steps; the loop runs to d+2 before giving up.
    """
    d = alg.dim
    chain = [None, Subspace.full(alg.field, d)]
    for i in range(2, d + 3):
        gens = []
        for j in range(1, i):
            for u in chain[j].basis:
                for v in chain[i - j].basis:
                    gens.append(alg.multiply(u, v))
        nxt = span(gens, field=alg.field, dim=d)
        chain.append(nxt)
        if nxt.is_zero():
            return i
    return None
