"""Minimal singly graded syzygies and the derived coefficient span."""

import numpy as np
import pytest

from tensurf.bipoly import (DEFAULT_PRIME, FieldConfig, HypothesisError,
                            parse_poly, uni_to_str)
from tensurf.syzygy import (SurfaceInput, analyze, build_f_family,
                            find_minimal_syzygy, syzygy_system)

P = DEFAULT_PRIME


def test_surface_input_validation():
    field = FieldConfig(seed=0)
    with pytest.raises(HypothesisError):
        SurfaceInput.from_strings(1, 1, ["s*u", "s*v", "t*u", "0"], field)
    with pytest.raises(HypothesisError):
        # wrong bidegree
        SurfaceInput.from_strings(2, 1, ["s*u", "s*v", "t*u", "t*v"], field)
    with pytest.raises(HypothesisError):
        # dependent generators
        SurfaceInput.from_strings(1, 1, ["s*u", "s*v", "t*u", "s*u + s*v"],
                                  field)


def test_mirror_round_trip(example_input):
    m = example_input.mirror()
    assert (m.a, m.b) == (5, 2)
    back = m.mirror()
    assert back.gens == example_input.gens


def test_segre_analysis_frozen(segre_input):
    va = analyze(segre_input)
    assert va.n == 1
    assert va.kernel_dim == 2
    assert va.dim_v == 2
    assert tuple(uni_to_str(g) for g in va.g) == ("u", "v")


def test_example_analysis_frozen(example_analysis):
    va = example_analysis
    assert va.n == 3
    assert va.kernel_dim == 1
    assert va.dim_v == 4
    assert tuple(uni_to_str(g) for g in va.g) == ("u^3", "u^2*v", "u*v^2",
                                                  "v^3")
    assert np.array_equal(va.transition % P, np.eye(4, dtype=np.int64))
    assert np.array_equal(va.point_transform % P, np.eye(4, dtype=np.int64))
    assert va.new_gens == va.input.gens


def test_syzygy_system_shape(example_input):
    M = syzygy_system(example_input, 3)
    # rows: bidegree (2, 8) monomials; cols: 4 * (n + 1) unknowns
    assert M.shape == (3 * 9, 16)


def test_find_minimal_syzygy_respects_cap(example_input):
    with pytest.raises(HypothesisError):
        find_minimal_syzygy(example_input, cap=2)
    n, kern = find_minimal_syzygy(example_input)
    assert n == 3 and len(kern) == 1


def test_build_f_family_annihilates(example_input):
    n, kern = find_minimal_syzygy(example_input)
    A, fam = build_f_family(example_input, kern[0], n)
    assert A.shape == (4, n + 1)
    total = parse_poly("0", P)
    for j, f in enumerate(fam):
        total = total + f.times_monomial(0, 0, n - j, j)
    assert total.is_zero


def test_analysis_identity_on_corpus_sample(corpus):
    # g annihilates the reduced family on every tenth corpus instance
    for gi in corpus[::10]:
        va = gi.analysis
        acc = parse_poly("0", P)
        for gk, fk in zip(va.g, va.f_prime):
            acc = acc + gk.to_bipoly() * fk
        assert acc.is_zero
        assert len(va.g) == va.dim_v
