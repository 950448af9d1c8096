"""Parameter degeneracy maps: construction, group structure and noise splits."""

import numpy as np
import pytest

from nvqa.channels import NoiseSpec
from nvqa.circuits import (
    build_2q_circuit,
    build_4q_vqe,
    build_hea,
    build_valley_demo,
    evaluate_pure,
)
from nvqa.degen import DegeneracyMap, degeneracy_split, generate_degeneracy_maps
from nvqa.qstate import pure_state

TWO_PI = 2.0 * np.pi


@pytest.mark.parametrize(
    "circuit, count",
    [
        (build_valley_demo(), 2),
        (build_2q_circuit("a"), 2),
        (build_2q_circuit("b"), 2),
        (build_2q_circuit("c"), 4),
        # the first ansatz layer admits no shift, every later layer adds 4
        # independent generators: 2^(4(L-1)) maps in total
        (build_hea(1), 1),
        (build_hea(2), 16),
        (build_hea(4), 4096),
        (build_4q_vqe(), 256),
    ],
    ids=["valley", "2q-a", "2q-b", "2q-c", "hea-1", "hea-2", "hea-4", "4q-vqe"],
)
def test_map_counts(circuit, count):
    maps = generate_degeneracy_maps(circuit)
    assert len(maps) == count


def test_identity_map_is_first():
    maps = generate_degeneracy_maps(build_2q_circuit("c"))
    assert maps[0].is_identity
    assert sum(m.is_identity for m in maps) == 1


def test_maps_preserve_the_noiseless_state(rng):
    c = build_hea(2)
    maps = generate_degeneracy_maps(c)
    theta = rng.uniform(0.0, TWO_PI, c.n_params)
    psi = evaluate_pure(c, theta)
    for m in maps:
        phi = evaluate_pure(c, m.apply(theta))
        assert abs(abs(np.vdot(psi, phi)) - 1.0) < 1e-10


def test_maps_form_a_group_under_composition():
    maps = generate_degeneracy_maps(build_2q_circuit("c"))
    keys = {(m.signs, m.shifts) for m in maps}
    for a in maps:
        for b in maps:
            c = a.compose(b)
            assert (c.signs, c.shifts) in keys


def test_apply_wraps_angles(rng):
    maps = generate_degeneracy_maps(build_2q_circuit("a"))
    theta = rng.uniform(0.0, TWO_PI, 3)
    for m in maps:
        out = m.apply(theta)
        assert np.all(out >= 0.0) and np.all(out < TWO_PI)


def test_cap_truncates_with_warning():
    with pytest.warns(RuntimeWarning):
        maps = generate_degeneracy_maps(build_hea(4), cap=16)
    assert len(maps) == 16


def test_split_is_flat_at_zero_noise(rng):
    c = build_hea(2)
    maps = generate_degeneracy_maps(c)
    theta = rng.uniform(0.0, TWO_PI, c.n_params)
    target = pure_state(evaluate_pure(c, theta))
    fids = degeneracy_split(c, theta, maps, None, target)
    assert fids.shape == (len(maps),)
    assert np.abs(fids - 1.0).max() < 1e-10


@pytest.mark.parametrize("kind, flat", [("phase", True), ("depolarising", True), ("amplitude", False)])
def test_split_by_channel_kind(kind, flat, rng):
    """Phase and depolarising noise treat all degenerate minima alike;
    amplitude damping separates them."""
    c = build_hea(2)
    maps = generate_degeneracy_maps(c)
    theta = rng.uniform(0.0, TWO_PI, c.n_params)
    target = pure_state(evaluate_pure(c, theta))
    spec = NoiseSpec.uniform(kind, 0.05, 4)
    fids = degeneracy_split(c, theta, maps, spec, target)
    spread = fids.max() - fids.min()
    if flat:
        assert spread < 1e-9
    else:
        assert spread > 1e-4


def test_degeneracy_map_validation():
    with pytest.raises(ValueError):
        DegeneracyMap(signs=(1, 2), shifts=(0, 0))
    with pytest.raises(ValueError):
        DegeneracyMap(signs=(1, -1), shifts=(0, 3))
    with pytest.raises(ValueError):
        DegeneracyMap(signs=(1,), shifts=(0, 1))
