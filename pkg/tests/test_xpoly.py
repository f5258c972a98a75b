"""Quaternary forms: evaluation, composition with the surface map, division."""

import random

import numpy as np
import pytest

from tensurf.bipoly import DEFAULT_PRIME, parse_poly
from tensurf.xpoly import (XPoly, compose_with_map, divide_with_remainder,
                           eval_matrix, grid_from_bipoly, linear_substitute,
                           monomials_of_degree, num_monomials, parse_xpoly,
                           vanishes_on_map, xpoly_to_str)

P = DEFAULT_PRIME


def random_xpoly(rng, degree, n_terms=6):
    monos = monomials_of_degree(degree)
    terms = {}
    for exp in rng.sample(monos, min(n_terms, len(monos))):
        terms[exp] = rng.randrange(1, P)
    return XPoly(P, terms)


def test_monomial_count_and_order():
    assert num_monomials(2) == 10
    monos = monomials_of_degree(2)
    assert len(monos) == 10
    assert monos[0] == (2, 0, 0, 0)
    assert monos[-1] == (0, 0, 0, 2)


def test_parse_and_print_round_trip():
    f = parse_xpoly("x0*x3 - x1*x2", P)
    assert f.terms == {(1, 0, 0, 1): 1, (0, 1, 1, 0): P - 1}
    assert xpoly_to_str(f) == "x0*x3 - x1*x2"
    rng = random.Random(7)
    for _ in range(15):
        g = random_xpoly(rng, rng.randrange(1, 5))
        assert parse_xpoly(xpoly_to_str(g), P) == g


def test_degree_and_homogeneity():
    f = parse_xpoly("x0^2 + x1*x2", P)
    assert f.degree() == 2
    assert f.is_homogeneous(2)
    assert parse_xpoly("x0 + x1^2", P).degree() is None
    assert XPoly.const(P, 5).degree() == 0
    assert XPoly.zero(P).degree() is None


def test_eval_matrix_matches_pointwise_eval():
    rng = random.Random(13)
    f = random_xpoly(rng, 3)
    pts = np.array([[rng.randrange(P) for _ in range(4)] for _ in range(8)],
                   dtype=np.int64)
    M = eval_matrix(3, pts, P)
    vec = f.coeff_vector(3)
    vals = np.zeros(8, dtype=np.int64)
    for k in range(M.shape[1]):
        vals = (vals + M[:, k] * int(vec[k])) % P
    for i in range(8):
        assert int(vals[i]) == f.eval(pts[i])
    assert np.array_equal(f.eval_many(pts) % P, vals)


def test_arithmetic_and_powers():
    rng = random.Random(19)
    f = random_xpoly(rng, 2)
    g = random_xpoly(rng, 2)
    pt = [rng.randrange(P) for _ in range(4)]
    assert (f * g).eval(pt) == f.eval(pt) * g.eval(pt) % P
    assert (f ** 3).eval(pt) == pow(f.eval(pt), 3, P)
    assert (f - f).is_zero


def test_grid_and_composition(example_input, example_oracle):
    a, b = example_input.a, example_input.b
    g0 = grid_from_bipoly(example_input.gens[0], a, b)
    assert g0.shape == (a + 1, b + 1)
    comp = compose_with_map(example_oracle.f, example_input.gens, a, b)
    d = example_oracle.degree
    assert comp.shape == (d * a + 1, d * b + 1)
    assert not np.any(comp)
    assert vanishes_on_map(example_oracle.f, example_input.gens, a, b)
    probe = parse_xpoly("x0^10", P)
    assert not vanishes_on_map(probe, example_input.gens, a, b)


def test_compose_with_map_agrees_with_pointwise(segre_input):
    rng = random.Random(23)
    f = parse_xpoly("x0*x3 - 5*x1*x2 + x0^2", P)
    comp = compose_with_map(f, segre_input.gens, 1, 1)
    for _ in range(10):
        s0, t0, u0, v0 = (rng.randrange(P) for _ in range(4))
        img = [g.eval(s0, t0, u0, v0) for g in segre_input.gens]
        want = f.eval(img)
        got = 0
        for (i, j) in np.ndindex(comp.shape):
            got = (got + int(comp[i, j])
                   * pow(s0, comp.shape[0] - 1 - i, P) * pow(t0, i, P)
                   * pow(u0, comp.shape[1] - 1 - j, P) * pow(v0, j, P)) % P
        assert got == want


def test_divide_with_remainder_round_trip():
    rng = random.Random(29)
    for _ in range(12):
        g = random_xpoly(rng, rng.randrange(1, 3), n_terms=4)
        q = random_xpoly(rng, rng.randrange(1, 3), n_terms=4)
        r = random_xpoly(rng, 1, n_terms=2)
        f = g * q + r
        q2, r2 = divide_with_remainder(f, g)
        assert g * q2 + r2 == f
        # exact multiples leave no remainder
        q3, r3 = divide_with_remainder(g * q, g)
        assert r3.is_zero
        assert q3 == q


def test_divide_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        divide_with_remainder(parse_xpoly("x0", P), XPoly.zero(P))


def test_linear_substitute_matches_eval():
    rng = random.Random(31)
    f = random_xpoly(rng, 3)
    mat = np.array([[rng.randrange(P) for _ in range(4)] for _ in range(4)],
                   dtype=np.int64)
    sub = linear_substitute(f, mat)
    for _ in range(10):
        y = np.array([rng.randrange(P) for _ in range(4)], dtype=np.int64)
        my = np.zeros(4, dtype=np.int64)
        for k in range(4):
            my = (my + mat[:, k] * int(y[k])) % P
        assert sub.eval(y) == f.eval(my)


def test_linear_substitute_identity_is_noop():
    f = parse_xpoly("x0^2*x3 - 7*x1*x2*x3", P)
    assert linear_substitute(f, np.eye(4, dtype=np.int64)) == f
