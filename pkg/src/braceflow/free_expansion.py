"""Formal star-monomial calculus for strongly nilpotent braces.

Words are bracketed products of abstract generators under the brace
star; expressions are exact rational combinations of words.  The star
is linear in its right slot, but expanding a sum in the LEFT slot
introduces correction terms.  Writing d and d' for the pair chain

    d_0 = a,  d'_0 = b,  d_{i+1} = d_i + d'_i,  d'_{i+1} = d_i * d'_i,

the expansion valid in every brace of class at most the degree bound is

    (a+b)*c = a*c + b*c + sum_i (-1)^{i+1} ((d_i*d'_i)*c - d_i*(d'_i*c)).

The minimum degree of d'_i grows strictly with i, so the sum is finite
once terms above the degree bound are dropped (they vanish in any brace
of that class).  Everything here has exact integer left-slot
coefficients: an integer multiple in a left slot is a sum of copies,
and a negated word in a left slot is resolved through the same chain
applied to the cancelling pair (w, -w).
"""

import functools
import itertools

from fractions import Fraction

from .errors import PreconditionViolated, UnboundSymbol, Violation
from .linalg import Mat, Vec
from .scalars import Q


class StarWord:
    """Immutable bracketing tree; leaves are generator symbols."""

    __slots__ = ("symbol", "left", "right", "degree", "_key", "_hash")

    def __init__(self, symbol=None, left=None, right=None):
        self.symbol = symbol
        self.left = left
        self.right = right
        if symbol is not None:
            self.degree = 1
            self._key = (symbol,)
        else:
            self.degree = left.degree + right.degree
            # "~" sorts after letters, so right-nested words come first
            self._key = ("~",) + left._key + right._key
        self._hash = hash(self._key)

    @classmethod
    def leaf(cls, symbol):
        return cls(symbol=symbol)

    @classmethod
    def product(cls, left, right):
        return cls(left=left, right=right)

    @property
    def is_leaf(self):
        return self.symbol is not None

    def tail(self):
        """Symbol of the rightmost leaf."""
        node = self
        while not node.is_leaf:
            node = node.right
        return node.symbol

    def leaves(self):
        if self.is_leaf:
            return (self.symbol,)
        return self.left.leaves() + self.right.leaves()

    def count(self, symbol):
        return self.leaves().count(symbol)

    def sort_key(self):
        return (self.degree, self._key)

    def __eq__(self, other):
        return isinstance(other, StarWord) and other._key == self._key

    def __hash__(self):
        return self._hash

    def __str__(self):
        if self.is_leaf:
            return self.symbol
        return f"({self.left}*{self.right})"

    __repr__ = __str__


X = StarWord.leaf("x")
Y = StarWord.leaf("y")
Z = StarWord.leaf("z")


def word_order(u, v):
    """Total order on words: by degree, then by the canonical
    serialization; returns -1, 0 or 1."""
    ku, kv = u.sort_key(), v.sort_key()
    return -1 if ku < kv else (0 if ku == kv else 1)


def _bracketings(labels):
    if len(labels) == 1:
        yield StarWord.leaf(labels[0])
        return
    for cut in range(1, len(labels)):
        for left in _bracketings(labels[:cut]):
            for right in _bracketings(labels[cut:]):
                yield StarWord.product(left, right)


def xy_words(degree_bound):
    """All words with every leaf x except a tail y, degree 2..bound,
    in canonical order (the scaling-word basis)."""
    words = []
    for deg in range(2, degree_bound + 1):
        words.extend(_bracketings(("x",) * (deg - 1) + ("y",)))
    return sorted(words, key=StarWord.sort_key)


def xyz_words(degree_bound):
    """All words over {x, y} with a tail z, at least one x and one y,
    degree 3..bound, in canonical order."""
    words = []
    for deg in range(3, degree_bound + 1):
        for heads in itertools.product("xy", repeat=deg - 1):
            if "x" in heads and "y" in heads:
                words.extend(_bracketings(heads + ("z",)))
    return sorted(words, key=StarWord.sort_key)


class StarExpr:
    """Immutable exact-coefficient formal sum of star words."""

    __slots__ = ("_terms", "_items", "_hash")

    def __init__(self, terms=()):
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for w, c in items:
            c = Fraction(c)
            if not c:
                continue
            c = clean.get(w, Fraction(0)) + c
            if c:
                clean[w] = c
            else:
                del clean[w]
        self._terms = clean
        self._items = tuple(sorted(clean.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = hash(self._items)

    @classmethod
    def zero(cls):
        return _ZERO

    @classmethod
    def word(cls, w, coeff=1):
        return cls(((w, coeff),))

    def terms(self):
        return self._items

    def coefficient(self, w):
        return self._terms.get(w, Fraction(0))

    def is_zero(self):
        return not self._terms

    def min_degree(self):
        return min((w.degree for w in self._terms), default=None)

    def truncate(self, degree_bound):
        return StarExpr((w, c) for w, c in self._items if w.degree <= degree_bound)

    def __add__(self, other):
        return StarExpr(self._items + other._items)

    def __sub__(self, other):
        return StarExpr(self._items + tuple((w, -c) for w, c in other._items))

    def __neg__(self):
        return StarExpr(tuple((w, -c) for w, c in self._items))

    def scale(self, c):
        c = Fraction(c)
        return StarExpr(tuple((w, cv * c) for w, cv in self._items))

    def __eq__(self, other):
        return isinstance(other, StarExpr) and other._items == self._items

    def __hash__(self):
        return self._hash

    def __str__(self):
        if not self._items:
            return "0"
        out = []
        for w, c in self._items:
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            body = str(w) if mag == 1 else f"{mag}*{w}"
            out.append(f"{sign} {body}" if out else (f"-{body}" if c < 0 else body))
        return " ".join(out)

    __repr__ = __str__


_ZERO = StarExpr()


class _Expander:
    """Star-product expansion over pure words at a fixed degree bound.

    Every internal call carries a ``budget``, the largest output degree
    it must get right.  Correction terms are themselves star products
    sitting in degree-raising positions, so their sub-expansions run at
    strictly smaller budgets; that is what makes the recursion
    well-founded (the chain re-assembles the original sum, so without
    the budget the expansion of (a+b)*v at degree 5 would ask for
    itself).  Dropping a left monomial above ``budget - deg(v)`` never
    changes output degrees within the budget, because every term it
    feeds gains at least deg(v) more.

    The memo tables only ever store finished results of a pure
    function, so sharing an expander across threads can at worst
    duplicate work, never change a value."""

    def __init__(self, bound):
        self.bound = bound
        self._left_memo = {}
        self._neg_memo = {}

    def star(self, e1, e2, budget=None):
        """Expansion of e1 * e2; e1 must have integer coefficients."""
        budget = self.bound if budget is None else budget
        units = self._units(e1)
        out = _ZERO
        for v, beta in e2.terms():
            piece = self._star_left(units, v, budget)
            if not piece.is_zero():
                out = out + piece.scale(beta)
        return out

    def _units(self, expr):
        units = []
        for w, c in expr.terms():
            if c.denominator != 1:
                raise PreconditionViolated(
                    f"left star slot needs integer coefficients, got {c}")
            sign = 1 if c > 0 else -1
            units.extend((sign, w) for _ in range(abs(c.numerator)))
        return tuple(units)

    def _star_left(self, units, v, budget):
        if not units:
            return _ZERO
        key = (units, v, budget)
        hit = self._left_memo.get(key)
        if hit is not None:
            return hit
        sign, w = units[0]
        if w.degree + v.degree > budget:
            head = _ZERO
        elif sign > 0:
            head = StarExpr.word(StarWord.product(w, v))
        else:
            head = self._neg_star(w, v, budget)
        if len(units) == 1:
            out = head
        else:
            rest = units[1:]
            a_expr = StarExpr.word(w, sign)
            b_expr = StarExpr(tuple((u, s) for s, u in rest))
            out = (head + self._star_left(rest, v, budget)
                   + self._corrections(a_expr, b_expr, v, budget))
        self._left_memo[key] = out
        return out

    def _corrections(self, d, dp, v, budget):
        """sum_i (-1)^{i+1} ((d_i*d'_i)*v - d_i*(d'_i*v)) along the chain
        d_{i+1} = d_i + d'_i, d'_{i+1} = d_i * d'_i."""
        out = _ZERO
        v_expr = StarExpr.word(v)
        for i in range(2 * self.bound + 1):
            if dp.is_zero():
                break
            if 1 + dp.min_degree() + v.degree > budget:
                break  # this and all later terms truncate to zero
            inner = self.star(d, dp, budget - v.degree)  # d_i * d'_i
            term = (self.star(inner, v_expr, budget)
                    - self.star(d, self.star(dp, v_expr, budget - 1), budget))
            out = out + (term if (i + 1) % 2 == 0 else -term)
            d, dp = d + dp, inner
        return out

    def _neg_star(self, w, v, budget):
        """(-w) * v, resolved from the cancelling pair (w, -w):

            0 = (w + (-w))*v
              = w*v + (-w)*v - ((w*(-w))*v - w*((-w)*v))

        i.e.  N = -(w*v) + N(w*w, v) - w*N  where N = (-w)*v.  The last
        term raises degree, so iterating the right-hand side stabilizes
        within the degree bound."""
        key = (w, v, budget)
        hit = self._neg_memo.get(key)
        if hit is not None:
            return hit
        if w.degree + v.degree > budget:
            self._neg_memo[key] = _ZERO
            return _ZERO
        ww = StarWord.product(w, w)
        base = StarExpr.word(StarWord.product(w, v), -1)
        if ww.degree + v.degree <= budget:
            base = base + self._neg_star(ww, v, budget)
        w_expr = StarExpr.word(w)
        cur = _ZERO
        for _ in range(budget + 1):
            nxt = base - self.star(w_expr, cur, budget)
            if nxt == cur:
                break
            cur = nxt
        self._neg_memo[key] = cur
        return cur


@functools.lru_cache(maxsize=None)
def _expander(bound):
    return _Expander(bound)


def as_expr(e):
    return StarExpr.word(e) if isinstance(e, StarWord) else e


def star_expand(e1, e2, degree_bound):
    """Fully expanded e1 * e2 over pure words, truncated past the bound.

    The left expression must have integer coefficients (a rational
    multiple in a left slot has no universal finite expansion)."""
    return _expander(degree_bound).star(as_expr(e1), as_expr(e2))


def expand_sum_star(a, b, c, degree_bound):
    """Fully expanded (a+b)*c.

    Follows the correction chain seeded with d_0 = a, d'_0 = b, so for
    single generators and bound 3 the result is the four-term form
    x*z + y*z + x*(y*z) - (x*y)*z."""
    if degree_bound < 2:
        raise PreconditionViolated("degree bound must be at least 2")
    a, b, c = as_expr(a), as_expr(b), as_expr(c)
    eng = _expander(degree_bound)
    out = eng.star(a, c) + eng.star(b, c)
    for v, beta in c.terms():
        corr = eng._corrections(a, b, v, degree_bound)
        if not corr.is_zero():
            out = out + corr.scale(beta)
    return out


def double_substitution(word, degree_bound):
    """Expansion of the word with the generator x replaced by x + x."""
    eng = _expander(degree_bound)

    def subst(node):
        if node.is_leaf:
            return StarExpr.word(node, 2 if node.symbol == "x" else 1)
        return eng.star(subst(node.left), subst(node.right))

    return subst(word)


@functools.lru_cache(maxsize=None)
def doubling_matrix(degree_bound):
    """Matrix M over Q with M V_{x,y} = V_{2x,y} on the scaling-word
    basis of degree <= degree_bound, returned with that basis.

    M is upper triangular with diagonal entry 2^(number of x leaves)
    for each word: doubling x multiplies the word's own coefficient by
    2 per x leaf, and every correction strictly raises the degree."""
    if degree_bound < 2:
        raise PreconditionViolated("degree bound must be at least 2")
    basis = tuple(xy_words(degree_bound))
    index = {w: i for i, w in enumerate(basis)}
    rows = []
    for w in basis:
        expansion = double_substitution(w, degree_bound)
        row = [Fraction(0)] * len(basis)
        for mono, coeff in expansion.terms():
            assert mono in index, f"expansion left the scaling-word basis: {mono}"
            row[index[mono]] = coeff
        rows.append(row)
    return Mat(Q, rows), basis


def evaluate(expr, bindings, B):
    """Substitute vectors for generators and the brace star for the
    formal star; linear in the coefficients."""
    expr = as_expr(expr)
    cache = {}

    def ev(word):
        if word.is_leaf:
            try:
                return bindings[word.symbol]
            except KeyError:
                raise UnboundSymbol(f"generator {word.symbol!r} is unbound") from None
        hit = cache.get(word)
        if hit is None:
            hit = B.star(ev(word.left), ev(word.right))
            cache[word] = hit
        return hit

    out = Vec.zero(B.field, B.dim)
    for w, c in expr.terms():
        out = out + ev(w) * B.field.of(c)
    return out


def scaling_matrix_check(B, a, b, n_max):
    """Verify 2^n V_{a/2^n, b} = (2 M^{-1})^n V_{a,b} exactly for
    n = 1..n_max in the concrete brace B."""
    bound = max(B.class_bound, 2)
    m, basis = doubling_matrix(bound)
    field = B.field
    n_words = len(basis)
    two_m_inv = m.inverse() * Fraction(2)
    rows = [[field.of(two_m_inv.entry(i, j)) for j in range(n_words)]
            for i in range(n_words)]

    cur = [evaluate(StarExpr.word(w), {"x": a, "y": b}, B) for w in basis]
    for n in range(1, n_max + 1):
        cur = [sum((v * rows[i][j] for j, v in enumerate(cur)),
                   Vec.zero(field, B.dim)) for i in range(n_words)]
        scale_in = field.inv_int(2 ** n)
        scale_out = field.of(2 ** n)
        for i, w in enumerate(basis):
            direct = evaluate(StarExpr.word(w), {"x": a * scale_in, "y": b}, B) * scale_out
            if direct != cur[i]:
                return Violation("doubling-matrix scaling identity", (n, str(w)),
                                 direct - cur[i])
    return None
