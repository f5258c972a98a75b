"""The square degree-strand matrix and its determinant."""

import random

import numpy as np

from tensurf.bipoly import DEFAULT_PRIME
from tensurf.cases import run_case
from tensurf.strand import (build_d1_strand, build_strand, eval_det,
                            reconstruct_det)
from tensurf.syzygy import analyze
from tensurf.xpoly import parse_xpoly

P = DEFAULT_PRIME


def random_point(rng):
    return [rng.randrange(P) for _ in range(4)]


def test_example_strand_shape_and_labels(example_strand):
    s = example_strand
    assert s.size == 20
    assert s.tensor.shape == (20, 20, 4)
    counts = {}
    for label, _ in s.column_labels:
        counts[label] = counts.get(label, 0) + 1
    assert counts == {"S": 8, "S1": 4, "S2": 4, "S3": 4}


def test_build_d1_strand_is_build_strand(example_case):
    a = build_strand(example_case)
    b = build_d1_strand(example_case)
    assert np.array_equal(a.tensor, b.tensor)
    assert a.column_labels == b.column_labels


def test_matrix_entries_are_linear_in_the_point(example_strand):
    rng = random.Random(3)
    y = np.array(random_point(rng), dtype=np.int64)
    z = np.array(random_point(rng), dtype=np.int64)
    my = example_strand.eval_matrix_at(y)
    mz = example_strand.eval_matrix_at(z)
    myz = example_strand.eval_matrix_at((y + z) % P)
    assert np.array_equal((my + mz) % P, myz)


def test_det_is_homogeneous_of_degree_2ab(example_strand):
    rng = random.Random(11)
    d = 2 * example_strand.a * example_strand.b
    for _ in range(20):
        y = random_point(rng)
        lam = rng.randrange(1, P)
        scaled = [c * lam % P for c in y]
        assert eval_det(example_strand, scaled) == \
            eval_det(example_strand, y) * pow(lam, d, P) % P


def test_det_not_identically_zero(example_strand):
    rng = random.Random(17)
    assert any(eval_det(example_strand, random_point(rng)) != 0
               for _ in range(10))


def test_det_at_many_matches_single_eval(example_strand):
    rng = random.Random(23)
    pts = np.array([random_point(rng) for _ in range(12)], dtype=np.int64)
    batch = example_strand.det_at_many(pts)
    for k in range(12):
        assert int(batch[k]) == example_strand.det_at(pts[k])


def test_reconstruct_det_agrees_with_eval(example_strand):
    det_poly = reconstruct_det(example_strand)
    d = 2 * example_strand.a * example_strand.b
    assert det_poly.is_homogeneous(d)
    rng = random.Random(29)
    for _ in range(10):
        y = random_point(rng)
        assert det_poly.eval(y) == eval_det(example_strand, y)


def test_segre_strand_det_is_the_transformed_quadric(segre_input):
    from tensurf.oracle import implicit_by_elimination, verify_implicitization
    from tensurf.xpoly import linear_substitute

    va = analyze(segre_input)
    case = run_case(va, check_level="full")
    strand = build_strand(case)
    assert strand.size == 2
    orc = implicit_by_elimination(segre_input)
    assert orc.f == parse_xpoly("x0*x3 - x1*x2", P)
    cert = verify_implicitization(strand, orc, va.point_transform,
                                  segre_input.field, mode="interpolate")
    assert cert.exponent == 1
    # the determinant is the quadric written in the working coordinates
    want = linear_substitute(orc.f, va.point_transform).scale(cert.c)
    assert reconstruct_det(strand) == want


def test_strand_nonsingular_on_corpus_sample(corpus):
    rng = random.Random(31)
    for gi in corpus[::10]:
        strand = build_strand(gi.case)
        assert strand.size == 2 * gi.input.a * gi.input.b
        assert any(strand.det_at(random_point(rng)) != 0 for _ in range(5))
