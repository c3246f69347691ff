"""Exact scalar arithmetic: the rationals and prime fields GF(p).

Rational scalars are ``fractions.Fraction`` values (always stored in
lowest terms with positive denominator, so equality is bitwise).
Prime-field scalars are ``Fp`` residues.  No floating point is accepted
anywhere.
"""

from fractions import Fraction

from .errors import CharacteristicTooSmall, FieldMismatch


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Fp:
    """Residue in GF(p), canonical representative in [0, p)."""

    __slots__ = ("p", "r")

    def __init__(self, p, value):
        self.p = p
        self.r = value % p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, int):
            return Fp(self.p, other)
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise CharacteristicTooSmall(
                    f"denominator {other.denominator} not invertible mod {self.p}")
            return Fp(self.p, other.numerator * pow(other.denominator, -1, self.p))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.p, self.r + o.r)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.p, self.r - o.r)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.p, o.r - self.r)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.p, self.r * o.r)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.r == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return Fp(self.p, self.r * pow(o.r, -1, self.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self):
        return Fp(self.p, -self.r)

    def __pow__(self, k):
        if k < 0:
            if self.r == 0:
                raise ZeroDivisionError(f"division by zero in GF({self.p})")
            return Fp(self.p, pow(self.r, k, self.p))
        return Fp(self.p, pow(self.r, k, self.p))

    def __bool__(self):
        return self.r != 0

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.r == other.r
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.r))

    def __repr__(self):
        return f"{self.r}"


class ScalarField:
    """Coefficient field: characteristic 0 means the rationals, a prime p
    means GF(p).

    Prime characteristics must strictly exceed the nilpotency class of
    whatever structure they scalar; that is checked at the point of use
    (algebra/brace validation), not here.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic=0):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        self.characteristic = characteristic

    @property
    def is_prime_field(self):
        return self.characteristic != 0

    def of(self, value):
        """Coerce an int, Fraction, decimal-free string, or element into
        a canonical scalar of this field.  Floats are rejected."""
        if isinstance(value, float):
            raise TypeError("floating point is not allowed; use Fraction or int")
        p = self.characteristic
        if p == 0:
            if isinstance(value, Fp):
                raise FieldMismatch(f"GF({value.p}) scalar used over Q")
            if isinstance(value, Fraction):
                return value
            if isinstance(value, (int, str)):
                return Fraction(value)
            raise TypeError(f"cannot coerce {value!r} to a rational")
        if isinstance(value, Fp):
            if value.p != p:
                raise FieldMismatch(f"GF({value.p}) scalar used over GF({p})")
            return value
        if isinstance(value, int):
            return Fp(p, value)
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, Fraction):
            return Fp(p, 0)._coerce(value)
        raise TypeError(f"cannot coerce {value!r} to GF({p})")

    @property
    def zero(self):
        return self.of(0)

    @property
    def one(self):
        return self.of(1)

    def inv_int(self, n):
        """1/n in this field; CharacteristicTooSmall if p divides n."""
        if n == 0:
            raise ZeroDivisionError("1/0")
        p = self.characteristic
        if p == 0:
            return Fraction(1, n)
        if n % p == 0:
            raise CharacteristicTooSmall(f"{n} is not invertible mod {p}")
        return Fp(p, pow(n % p, -1, p))

    def inv_factorial(self, k):
        """1/k! in this field; requires characteristic 0 or > k."""
        f = 1
        for i in range(2, k + 1):
            f *= i
        return self.inv_int(f) if k >= 2 else self.one

    def contains(self, x):
        if self.characteristic == 0:
            return isinstance(x, Fraction) or isinstance(x, int)
        return isinstance(x, Fp) and x.p == self.characteristic

    def to_str(self, x):
        """Canonical printing: "num/den" in lowest terms over Q (bare
        integer when the denominator is 1), the residue over GF(p)."""
        x = self.of(x)
        if self.characteristic == 0:
            if x.denominator == 1:
                return str(x.numerator)
            return f"{x.numerator}/{x.denominator}"
        return str(x.r)

    def from_str(self, s):
        return self.of(s)

    def __eq__(self, other):
        return isinstance(other, ScalarField) and self.characteristic == other.characteristic

    def __hash__(self):
        return hash(("ScalarField", self.characteristic))

    def __repr__(self):
        if self.characteristic == 0:
            return "Q"
        return f"GF({self.characteristic})"


Q = ScalarField(0)


def GF(p):
    return ScalarField(p)
