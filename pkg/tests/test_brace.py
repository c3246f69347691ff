import random

from fractions import Fraction

import pytest

from braceflow.brace import (GradedBrace, SymmetricMap, check_fbrace,
                             check_group, check_left_brace, radical_chains,
                             star_subspaces)
from braceflow.errors import ValidationFailure
from braceflow.linalg import Subspace, Vec, span
from braceflow.sampling import random_vec
from braceflow.scalars import Q


def test_trivial_brace_star_and_circ():
    B = GradedBrace.trivial(Q, 2)
    a, b = Vec(Q, (1, 2)), Vec(Q, (3, 4))
    assert B.star(a, b).is_zero()
    assert B.circ(a, b) == a + b
    assert B.circ_inverse(a) == -a


def test_n2_brace_values(braces_q):
    B = braces_q["n2"]
    a, b = Vec(Q, (3, 5)), Vec(Q, (2, 7))
    assert B.star(a, b) == Vec(Q, (0, 6))
    assert B.circ(a, b) == Vec(Q, (5, 18))
    assert B.circ_inverse(a) == Vec(Q, (-3, -5 + 9))


def test_f4_brace_star_basis(braces_q):
    B = braces_q["f4"]
    e1 = B.basis_vector(0)
    assert B.star(e1, e1) == Vec(Q, (0, 1, -Fraction(1, 2), Fraction(1, 2)))


def test_circ_inverse_identity_and_random(braces_q):
    B = braces_q["v5"]
    zero = Vec.zero(Q, B.dim)
    assert B.circ_inverse(zero) == zero
    rng = random.Random(9)
    for _ in range(20):
        a = random_vec(Q, B.dim, rng)
        x = B.circ_inverse(a)
        assert B.circ(a, x).is_zero()
        assert B.circ(x, a).is_zero()


def test_symmetric_map_left_slot_symmetry(braces_q):
    lam2 = braces_q["v5"].lambda_map(2)
    rng = random.Random(31)
    u, v, b = (random_vec(Q, 4, rng) for _ in range(3))
    assert lam2.apply([u, v], b) == lam2.apply([v, u], b)


@pytest.mark.parametrize("name", ["zero3", "n2", "h3", "f4", "v5"])
def test_axiom_suites_pass(name, braces_q):
    B = braces_q[name]
    assert check_left_brace(B, trials=30) is None
    assert check_group(B, trials=30) is None
    assert check_fbrace(B, trials=30) is None


def _corrupt(B, degree, key, out_index, delta=1):
    lam = B.lambda_map(degree)
    table = dict(lam.table)
    old = table.get(key, Vec.zero(B.field, B.dim))
    entries = list(old.entries)
    entries[out_index] = entries[out_index] + B.field.of(delta)
    table[key] = Vec(B.field, entries)
    lambdas = dict(B.lambdas)
    lambdas[degree] = SymmetricMap(B.field, B.dim, degree, table)
    return GradedBrace(B.field, B.dim, lambdas, class_bound=B.class_bound,
                       validate=False)


def test_corrupted_brace_fails_left_brace_law(braces_q):
    bad = _corrupt(braces_q["f4"], 2, ((0, 0), 0), 0)
    viol = check_left_brace(bad, trials=10)
    assert viol is not None
    # the reported site must actually violate the law it names
    if all(isinstance(i, int) for i in viol.site):
        i, j, k = viol.site
        a, b, c = (bad.basis_vector(n) for n in (i, j, k))
        if "a*(b+c)" in viol.check:
            residual = bad.star(a, b + c) - bad.star(a, b) - bad.star(a, c)
        else:
            residual = (bad.star(a + b + bad.star(a, b), c)
                        - bad.star(a, c) - bad.star(b, c)
                        - bad.star(a, bad.star(b, c)))
        assert residual == viol.residual
        assert not residual.is_zero()


def test_corrupted_brace_rejected_at_construction(braces_q):
    B = braces_q["f4"]
    bad = _corrupt(B, 2, ((0, 0), 0), 0)
    with pytest.raises(ValidationFailure):
        GradedBrace(Q, B.dim, bad.lambdas, class_bound=B.class_bound)


def test_fbrace_edge_cases(braces_q):
    B = braces_q["f4"]
    rng = random.Random(2)
    a, b = random_vec(Q, 4, rng), random_vec(Q, 4, rng)
    assert B.star(a, Vec.zero(Q, 4)).is_zero()
    assert B.star(a, -b) == -B.star(a, b)


def test_chains_trivial_brace():
    report = radical_chains(GradedBrace.trivial(Q, 2))
    assert report.dims(report.left) == (2, 0)
    assert report.dims(report.right) == (2, 0)
    assert report.dims(report.strong) == (2, 0)
    assert (report.left_index, report.right_index, report.strong_index) == (2, 2, 2)


def test_chains_n2(braces_q):
    report = radical_chains(braces_q["n2"])
    assert report.dims(report.left) == (2, 1, 0)
    assert report.dims(report.right) == (2, 1, 0)
    assert report.dims(report.strong) == (2, 1, 0)
    assert report.strong_index == 3
    assert report.left[1] == span([Vec(Q, (0, 1))])


def test_chains_f4(braces_q):
    report = radical_chains(braces_q["f4"])
    assert report.strong_index == 4
    assert report.strong[3].is_zero()


@pytest.mark.parametrize("name", ["zero1", "n2", "h3", "f4", "v5"])
def test_chain_containments_and_equivalence(name, braces_q):
    report = radical_chains(braces_q[name])
    # strong chain dominates both one-sided chains, term by term
    for i, strong in enumerate(report.strong):
        if i < len(report.left):
            assert report.left[i] <= strong
        if i < len(report.right):
            assert report.right[i] <= strong
    assert report.strongly_nilpotent == (
        report.left_nilpotent and report.right_nilpotent)


def test_star_subspaces_matches_direct_span(braces_q):
    # polarization turns the span of star(a, b) over subspaces into a
    # finite computation; cross-check against random sampling
    B = braces_q["v5"]
    full = Subspace.full(Q, B.dim)
    computed = star_subspaces(B, full, full)
    rng = random.Random(77)
    sampled = span([B.star(random_vec(Q, 4, rng), random_vec(Q, 4, rng))
                    for _ in range(60)], field=Q, dim=4)
    assert sampled <= computed
    for b in computed.basis:
        assert computed.contains(b)
