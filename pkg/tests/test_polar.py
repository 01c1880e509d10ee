import numpy as np

from conekit import (
    HalfspaceCone,
    PolyhedralCone,
    cone_member_batch,
    default_probes,
    double_polar_closure_check,
    halfspace_member,
    halfspace_member_batch,
    polar,
    polar_generators,
    sample_polar_directions,
)
from conekit.randgen import make_rng, random_cone_generators, unit_vectors


def test_polar_orthant():
    h = polar(PolyhedralCone.from_generators([[1.0, 0.0], [0.0, 1.0]]))
    assert halfspace_member(h, [-1.0, -2.0])
    assert not halfspace_member(h, [1.0, 0.0])
    assert not halfspace_member(h, [0.0, 1e-3])


def test_polar_of_subspace_is_complement(rng):
    # F given as cone{+-b_i}: its polar is the orthogonal complement
    b = unit_vectors(rng, 2, 4)
    c = PolyhedralCone.from_generators(np.vstack([b, -b]))
    h = polar(c)
    probes = default_probes(4, None, rng, count=500)
    for x in probes:
        in_polar = halfspace_member(h, x)
        ortho = np.max(np.abs(b @ x)) <= 1e-7 * (1.0 + np.linalg.norm(x))
        assert in_polar == ortho


def test_polar_wedge_sign_oracle(rng):
    c = PolyhedralCone.from_generators([[1.0, 1.0], [1.0, -1.0]])
    h = polar(c)
    probes = default_probes(2, c.generators, rng, count=1000)
    for x in probes:
        direct = (x[0] + x[1] <= 1e-7 * (1 + np.linalg.norm(x))
                  and x[0] - x[1] <= 1e-7 * (1 + np.linalg.norm(x)))
        assert halfspace_member(h, x) == direct


def test_halfspace_member_trivial():
    whole = HalfspaceCone(2, np.zeros((0, 2)))
    assert halfspace_member(whole, [5.0, -7.0])
    h = HalfspaceCone(2, np.array([[1.0, 0.0]]))
    assert not halfspace_member(h, [1.0, 0.0])
    assert halfspace_member(h, [-1.0, 3.0])


def test_halfspace_member_definitional_oracle(rng):
    for _ in range(20):
        dim = int(rng.integers(2, 6))
        h = HalfspaceCone(dim, rng.standard_normal((4, dim)))
        X = rng.standard_normal((50, dim))
        flags = halfspace_member_batch(h, X)
        for x, flag in zip(X, flags):
            thr = 1e-7 * (1.0 + np.linalg.norm(x))
            assert flag == all(n @ x <= thr for n in h.normals)


def test_double_polar_orthant_axes():
    c = PolyhedralCone.from_generators([[1.0, 0.0], [0.0, 1.0]])
    probes = np.vstack([np.eye(2), -np.eye(2)])
    assert double_polar_closure_check(c, probes)


def test_double_polar_half_plane(rng):
    c = PolyhedralCone.from_generators([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])
    probes = unit_vectors(rng, 100, 2)
    assert double_polar_closure_check(c, probes, rng=rng)


def test_double_polar_single_ray(rng):
    c = PolyhedralCone.from_generators([[1.0, 0.0, 0.0]])
    probes = unit_vectors(rng, 200, 3)
    member = cone_member_batch(c, probes)
    # closed-form ray test oracle
    for x, flag in zip(probes, member):
        on_ray = (abs(x[1]) <= 1e-7 and abs(x[2]) <= 1e-7 and x[0] >= -1e-7)
        assert flag == on_ray
    assert double_polar_closure_check(c, probes, rng=rng)


def test_double_polar_random_all_dims(rng):
    for dim in range(2, 7):
        for _ in range(6):
            G = random_cone_generators(rng, dim, int(rng.integers(3, 9)),
                                       seeded_pair=bool(rng.integers(0, 2)))
            c = PolyhedralCone(dim, G)
            probes = default_probes(dim, G, rng, count=300)
            assert double_polar_closure_check(c, probes, rng=rng)


def test_polar_generators_2d_matches_moreau(rng):
    c = PolyhedralCone.from_generators([[1.0, 1.0], [1.0, -1.0]])
    rays = polar_generators(c)
    sampled = sample_polar_directions(c, 64, rng)
    # every sampled polar direction must be a nonneg combo of the rays:
    # in 2-D both extreme rays bound the polar wedge, check by sign
    for f in sampled:
        assert np.max(c.generators @ f) <= 1e-9
    for r in rays:
        assert np.max(c.generators @ r) <= 1e-9


def test_antitonicity(rng):
    for _ in range(15):
        dim = int(rng.integers(2, 6))
        GA = rng.standard_normal((3, dim))
        GB = np.vstack([GA, rng.standard_normal((2, dim))])
        probes = default_probes(dim, GB, rng, count=300)
        small = halfspace_member_batch(polar(PolyhedralCone(dim, GA)), probes)
        big = halfspace_member_batch(polar(PolyhedralCone(dim, GB)), probes)
        assert not np.any(big & ~small)


def test_sum_rule(rng):
    for _ in range(15):
        dim = int(rng.integers(2, 6))
        GA = rng.standard_normal((3, dim))
        GB = rng.standard_normal((3, dim))
        probes = default_probes(dim, None, rng, count=300)
        merged = halfspace_member_batch(
            polar(PolyhedralCone(dim, np.vstack([GA, GB]))), probes)
        both = (halfspace_member_batch(polar(PolyhedralCone(dim, GA)), probes)
                & halfspace_member_batch(polar(PolyhedralCone(dim, GB)), probes))
        assert np.array_equal(merged, both)


def test_negation_rule(rng):
    for _ in range(15):
        dim = int(rng.integers(2, 6))
        G = rng.standard_normal((4, dim))
        probes = default_probes(dim, G, rng, count=300)
        neg = halfspace_member_batch(polar(PolyhedralCone(dim, -G)), probes)
        pos_negated = halfspace_member_batch(polar(PolyhedralCone(dim, G)), -probes)
        assert np.array_equal(neg, pos_negated)
