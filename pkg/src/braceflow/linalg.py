"""Dense exact linear algebra over a ScalarField.

Everything is immutable after construction and all operations are pure.
Subspaces are kept in reduced row-echelon form so that equal subspaces
compare equal as objects.
"""

from .errors import (CharacteristicTooSmall, DimensionMismatch, DuplicateNode,
                     FieldMismatch)


class Vec:
    """Immutable coordinate vector over a ScalarField."""

    __slots__ = ("field", "entries")

    def __init__(self, field, entries):
        self.field = field
        self.entries = tuple(field.of(e) for e in entries)

    @classmethod
    def zero(cls, field, dim):
        z = field.zero
        return cls(field, (z,) * dim)

    @classmethod
    def basis(cls, field, dim, i):
        z, o = field.zero, field.one
        return cls(field, tuple(o if k == i else z for k in range(dim)))

    @property
    def dim(self):
        return len(self.entries)

    def is_zero(self):
        return not any(self.entries)

    def _check(self, other):
        if not isinstance(other, Vec):
            raise TypeError(f"expected Vec, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if len(other.entries) != len(self.entries):
            raise DimensionMismatch(f"{len(self.entries)} vs {len(other.entries)}")

    def __add__(self, other):
        self._check(other)
        return Vec(self.field, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check(other)
        return Vec(self.field, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return Vec(self.field, tuple(-a for a in self.entries))

    def __mul__(self, scalar):
        c = self.field.of(scalar)
        return Vec(self.field, tuple(a * c for a in self.entries))

    __rmul__ = __mul__

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        return (isinstance(other, Vec) and other.field == self.field
                and other.entries == self.entries)

    def __hash__(self):
        return hash((self.field, self.entries))

    def __repr__(self):
        return "(" + ", ".join(self.field.to_str(e) for e in self.entries) + ")"


class Mat:
    """Immutable dense matrix over a ScalarField."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows):
        self.field = field
        self.rows = tuple(tuple(field.of(e) for e in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise DimensionMismatch("ragged rows")

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    def entry(self, i, j):
        return self.rows[i][j]

    def matvec(self, v):
        if not isinstance(v, Vec):
            raise TypeError("matvec expects a Vec")
        if v.field != self.field:
            raise FieldMismatch(f"{self.field} vs {v.field}")
        if v.dim != self.ncols:
            raise DimensionMismatch(f"{self.ncols} cols vs vector of dim {v.dim}")
        return Vec(self.field, tuple(
            sum((a * x for a, x in zip(row, v.entries)), self.field.zero)
            for row in self.rows))

    def __mul__(self, other):
        if isinstance(other, Vec):
            return self.matvec(other)
        if isinstance(other, Mat):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            if other.nrows != self.ncols:
                raise DimensionMismatch(f"{self.ncols} vs {other.nrows}")
            cols = list(zip(*other.rows)) if other.rows else []
            return Mat(self.field, tuple(
                tuple(sum((a * b for a, b in zip(row, col)), self.field.zero) for col in cols)
                for row in self.rows))
        c = self.field.of(other)
        return Mat(self.field, tuple(tuple(a * c for a in row) for row in self.rows))

    __rmul__ = __mul__

    def __add__(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if (other.nrows, other.ncols) != (self.nrows, self.ncols):
            raise DimensionMismatch("shape mismatch")
        return Mat(self.field, tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)))

    def __sub__(self, other):
        return self + (other * self.field.of(-1))

    def inverse(self):
        """Exact inverse by Gauss-Jordan; raises on singular input."""
        n = self.nrows
        if n != self.ncols:
            raise DimensionMismatch("inverse of non-square matrix")
        aug = [list(row) + list(irow)
               for row, irow in zip(self.rows, Mat.identity(self.field, n).rows)]
        rows, pivots = _rref(self.field, aug)
        if len(pivots) != n or any(c >= n for c in pivots):
            raise ZeroDivisionError("singular matrix")
        return Mat(self.field, tuple(tuple(row[n:]) for row in rows))

    def transpose(self):
        return Mat(self.field, tuple(zip(*self.rows)) if self.rows else ())

    def is_upper_triangular(self):
        return all(not self.rows[i][j] for i in range(self.nrows) for j in range(min(i, self.ncols)))

    def diagonal(self):
        return tuple(self.rows[i][i] for i in range(min(self.nrows, self.ncols)))

    def __eq__(self, other):
        return (isinstance(other, Mat) and other.field == self.field
                and other.rows == self.rows)

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        return "[" + "; ".join(
            " ".join(self.field.to_str(e) for e in row) for row in self.rows) + "]"


def _rref(field, rows):
    """In-place reduced row echelon form; returns (rows, pivot columns)."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


def solve_linear(m, rhs):
    """Solve m*x = rhs exactly.

    Returns the solution with all free variables set to zero, or None if
    the system is inconsistent.
    """
    if rhs.field != m.field:
        raise FieldMismatch(f"{m.field} vs {rhs.field}")
    if m.nrows != rhs.dim:
        raise DimensionMismatch(f"{m.nrows} rows vs rhs of dim {rhs.dim}")
    aug = [list(row) + [b] for row, b in zip(m.rows, rhs.entries)]
    rows, pivots = _rref(m.field, aug)
    n = m.ncols
    if any(c == n for c in pivots):
        return None
    x = [m.field.zero] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    return Vec(m.field, x)


class Subspace:
    """Linear subspace with a canonical reduced-row-echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis")

    def __init__(self, field, ambient_dim, vectors=()):
        self.field = field
        self.ambient_dim = ambient_dim
        rows = []
        for v in vectors:
            if isinstance(v, Vec):
                if v.field != field:
                    raise FieldMismatch(f"{field} vs {v.field}")
                if v.dim != ambient_dim:
                    raise DimensionMismatch(f"{ambient_dim} vs {v.dim}")
                rows.append(list(v.entries))
            else:
                rows.append([field.of(e) for e in v])
        if rows:
            rows, pivots = _rref(field, rows)
            rows = rows[:len(pivots)]
        self.basis = tuple(Vec(field, r) for r in rows)

    @classmethod
    def full(cls, field, dim):
        return cls(field, dim, (Vec.basis(field, dim, i) for i in range(dim)))

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def contains(self, v):
        if v.dim != self.ambient_dim:
            raise DimensionMismatch(f"{self.ambient_dim} vs {v.dim}")
        res = list(v.entries)
        for b in self.basis:
            lead = next(i for i, e in enumerate(b.entries) if e)
            if res[lead]:
                f = res[lead]
                res = [a - f * c for a, c in zip(res, b.entries)]
        return not any(res)

    def __le__(self, other):
        return all(other.contains(b) for b in self.basis)

    def sum(self, other):
        if other.field != self.field or other.ambient_dim != self.ambient_dim:
            raise FieldMismatch("subspace sum over mismatched spaces")
        return Subspace(self.field, self.ambient_dim, self.basis + other.basis)

    def __eq__(self, other):
        return (isinstance(other, Subspace) and other.field == self.field
                and other.ambient_dim == self.ambient_dim and other.basis == self.basis)

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"


def span(vectors, field=None, dim=None):
    """Canonical echelon span of the given vectors.

    For an empty collection the field and ambient dimension must be
    passed explicitly.
    """
    vectors = list(vectors)
    if vectors:
        first = vectors[0]
        field = field or first.field
        dim = dim if dim is not None else first.dim
    elif field is None or dim is None:
        raise ValueError("empty span needs explicit field and dim")
    return Subspace(field, dim, vectors)


def interpolation_nodes(field, degree_bound):
    """Nodes for exact polynomial interpolation of a degree-bounded curve.

    Over Q the nodes are 1, 1/2, ..., 2^-degree_bound, mirroring the
    halving scheme used by the limit construction; over GF(p) they are
    1, 2, ..., degree_bound + 1 (distinct because the characteristic
    exceeds the degree bound wherever this is used).
    """
    if field.characteristic == 0:
        return [field.of(1) / field.of(2 ** k) for k in range(degree_bound + 1)]
    if degree_bound + 1 >= field.characteristic:
        raise CharacteristicTooSmall(
            f"need {degree_bound + 1} distinct nonzero nodes in {field}")
    return [field.of(k) for k in range(1, degree_bound + 2)]


def interpolate_coefficients(points, degree_bound):
    """Coefficient vectors c_0..c_degree_bound of the unique polynomial
    curve f(t) = sum c_k t^k through the given (t, f(t)) samples.

    Requires exactly degree_bound + 1 samples with pairwise distinct t.
    """
    points = list(points)
    if len(points) != degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} points, got {len(points)}")
    first_vec = points[0][1]
    field, d = first_vec.field, first_vec.dim
    ts = [field.of(t) for t, _ in points]
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            if ts[i] == ts[j]:
                raise DuplicateNode(f"node {field.to_str(ts[i])} repeated")
    n = degree_bound + 1
    aug = []
    for t, f_t in zip(ts, (p[1] for p in points)):
        powers = [field.one]
        for _ in range(degree_bound):
            powers.append(powers[-1] * t)
        aug.append(powers + list(f_t.entries))
    rows, pivots = _rref(field, aug)
    assert pivots == list(range(n)), "Vandermonde system must be nonsingular"
    return [Vec(field, rows[k][n:]) for k in range(n)]


def polynomial_curve_coefficients(curve, field, degree_bound):
    """Sample a polynomial curve t -> Vec at canonical nodes and return
    its exact coefficient vectors c_0..c_degree_bound."""
    nodes = interpolation_nodes(field, degree_bound)
    return interpolate_coefficients([(t, curve(t)) for t in nodes], degree_bound)
