import numpy as np
import pytest

from conekit import (
    PolyhedralCone,
    PreconditionError,
    Subspace,
    cone_member,
    cone_member_batch,
    decompose,
    default_probes,
    delta_construction,
    flatten_structured,
    is_pointed,
    is_proper,
    lineality_space,
    orthonormalize,
    reconstruct_lineality_check,
    structured_member,
    structured_member_batch,
    structured_polar_member,
    subspaces_equal,
)
from conekit.cone import StructuredCone, halfspace_member, polar
from conekit.randgen import make_rng, random_cone_generators

from conftest import lattice_cone_points


def quadrant():
    return PolyhedralCone.from_generators([[1.0, 0.0], [0.0, 1.0]])


def half_plane():
    return PolyhedralCone.from_generators([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]])


def test_membership_examples():
    c = quadrant()
    assert cone_member(c, [2.0, 3.0])
    assert not cone_member(c, [-1.0, 0.0])
    assert cone_member(c, [0.0, 0.0])  # zero belongs to every cone


def test_membership_lattice_oracle_dim4():
    rng = make_rng(99)
    for _ in range(200):
        G = rng.standard_normal((4, 4))
        c = PolyhedralCone(4, G)
        pts = lattice_cone_points(G, coefs=(0.0, 0.7, 1.3), limit=81)
        flags = cone_member_batch(c, pts)
        assert flags.all()


def test_zero_generators_dropped():
    c = PolyhedralCone.from_generators([[0.0, 0.0], [1.0, 0.0]])
    assert c.generators.shape == (1, 2)


def test_lineality_examples():
    assert lineality_space(half_plane()).rank == 1
    b = lineality_space(half_plane()).basis[0]
    assert np.allclose(np.abs(b), [1.0, 0.0])
    assert lineality_space(quadrant()).rank == 0


def test_lineality_diagonal_case():
    # lattice oracle view: -(1,1) is reachable, (1,0) is not negatable
    G = np.array([[1.0, 1.0], [-1.0, -1.0], [1.0, 0.0]])
    c = PolyhedralCone(2, G)
    assert cone_member(c, [-1.0, -1.0])
    assert not cone_member(c, [-1.0, 0.0])
    lin = lineality_space(c)
    assert lin.rank == 1
    assert abs(abs(lin.basis[0] @ np.array([1.0, 1.0]) / np.sqrt(2)) - 1.0) < 1e-9


def test_is_pointed_examples():
    orthant3 = PolyhedralCone.from_generators(np.eye(3))
    assert is_pointed(orthant3)
    plane = PolyhedralCone.from_generators([[1, 0], [-1, 0], [0, 1], [0, -1]])
    assert not is_pointed(plane)


def test_random_pair_never_pointed(rng):
    for _ in range(25):
        dim = int(rng.integers(2, 7))
        G = random_cone_generators(rng, dim, int(rng.integers(3, 13)), seeded_pair=True)
        assert not is_pointed(PolyhedralCone(dim, G))


def test_is_proper_certificate_orthant():
    f = is_proper(quadrant())
    assert f is not None
    assert np.max(quadrant().generators @ f) <= 1e-7


def test_is_proper_whole_space_none():
    whole = PolyhedralCone.from_generators([[1, 0], [-1, 0], [0, 1], [0, -1]])
    assert is_proper(whole) is None


def test_pointed_implies_proper(rng):
    # closure of a pointed cone is a proper cone
    found = 0
    while found < 40:
        dim = int(rng.integers(2, 7))
        G = random_cone_generators(rng, dim, int(rng.integers(3, 13)))
        c = PolyhedralCone(dim, G)
        if not is_pointed(c):
            continue
        found += 1
        f = is_proper(c)
        assert f is not None
        assert np.max(c.generators @ f) <= 1e-7


def test_decompose_examples():
    s = decompose(half_plane())
    assert s.lineality.rank == 1
    assert s.pointed_generators.shape[0] == 1
    assert np.allclose(np.abs(s.pointed_generators[0]), [0.0, 1.0])

    pointed = decompose(quadrant())
    assert pointed.lineality.rank == 0
    assert np.allclose(pointed.pointed_generators, quadrant().generators)

    diag = decompose(PolyhedralCone.from_generators([[1, 1], [-1, -1], [1, 0]]))
    assert diag.lineality.rank == 1
    assert np.allclose(np.sort(diag.pointed_generators[0]), [-0.5, 0.5])


def test_decompose_roundtrip_membership(rng):
    for _ in range(25):
        dim = int(rng.integers(2, 7))
        G = random_cone_generators(rng, dim, int(rng.integers(3, 13)),
                                   seeded_pair=bool(rng.integers(0, 2)))
        c = PolyhedralCone(dim, G)
        s = decompose(c)
        if s.pointed_generators.shape[0]:
            assert is_pointed(PolyhedralCone(dim, s.pointed_generators))
        probes = default_probes(dim, G, rng, count=300)
        assert np.array_equal(cone_member_batch(c, probes),
                              structured_member_batch(s, probes))


def test_structured_member_examples():
    s = StructuredCone(Subspace(2, np.array([[1.0, 0.0]])),
                       np.array([[0.0, 1.0]]))
    assert structured_member(s, [-5.0, 2.0])
    assert not structured_member(s, [0.0, -1.0])


def test_structured_member_flattening_oracle(rng):
    for _ in range(10):
        lin = orthonormalize(rng.standard_normal((1, 4)))
        comp_base = rng.standard_normal((3, 4))
        comp_base -= (comp_base @ lin.basis.T) @ lin.basis
        s = StructuredCone(lin, comp_base)
        flat = flatten_structured(s)
        probes = default_probes(4, flat.generators, rng, count=250)
        assert np.array_equal(structured_member_batch(s, probes),
                              cone_member_batch(flat, probes))


def test_reconstruct_lineality_trivial():
    f = Subspace(3, np.array([[1.0, 0.0, 0.0]]))
    assert reconstruct_lineality_check(f, [[0.0, 1.0, 0.0]])
    assert reconstruct_lineality_check(Subspace.zero(3), [[0.0, 1.0, 0.0]])


def test_reconstruct_lineality_random(rng):
    for _ in range(15):
        dim = int(rng.integers(3, 7))
        rank = int(rng.integers(1, dim - 1))
        f = orthonormalize(rng.standard_normal((rank, dim)))
        v = rng.standard_normal((int(rng.integers(1, 4)), dim))
        v -= (v @ f.basis.T) @ f.basis
        norms = np.linalg.norm(v, axis=1)
        v = v[norms > 1e-9]
        if v.shape[0] == 0 or not is_pointed(PolyhedralCone(dim, v)):
            continue
        assert reconstruct_lineality_check(f, v)


def test_reconstruct_lineality_precondition():
    f = Subspace(2, np.array([[1.0, 0.0]]))
    with pytest.raises(PreconditionError):
        reconstruct_lineality_check(f, [[1.0, 1.0]])  # not orthogonal to f


def test_delta_construction_examples(rng):
    # gamma = x-axis in R^3 with psi on the y-axis
    gamma = Subspace(3, np.array([[1.0, 0.0, 0.0]]))
    s = delta_construction(gamma, [[0.0, 1.0, 0.0]])
    flat_polar = polar(flatten_structured(s))
    probes = default_probes(3, None, rng, count=300)
    for f in probes:
        assert structured_polar_member(s, f) == halfspace_member(flat_polar, f)

    # degenerate gamma: delta polar equals the plain polar of psi
    s0 = delta_construction(Subspace.zero(2), [[0.0, 1.0]])
    plain = polar(PolyhedralCone.from_generators([[0.0, 1.0]]))
    for f in default_probes(2, None, rng, count=200):
        assert structured_polar_member(s0, f) == halfspace_member(plain, f)

    # diagonal gamma with anti-diagonal psi
    r2 = 1.0 / np.sqrt(2.0)
    gamma2 = Subspace(2, np.array([[r2, r2]]))
    s2 = delta_construction(gamma2, [[r2, -r2]])
    flat2 = polar(flatten_structured(s2))
    agree = 0
    probes2 = default_probes(2, None, rng, count=1000)
    for f in probes2:
        agree += int(structured_polar_member(s2, f) == halfspace_member(flat2, f))
    assert agree == probes2.shape[0]
    assert structured_polar_member(s2, [-r2, r2])
    assert not structured_polar_member(s2, [r2, -r2])


def test_delta_construction_preconditions():
    gamma = Subspace(2, np.array([[1.0, 0.0]]))
    with pytest.raises(PreconditionError):
        delta_construction(gamma, [[1.0, 1.0]])
    with pytest.raises(PreconditionError):
        delta_construction(Subspace.zero(2), [[0.0, 1.0], [0.0, -1.0]])


def test_default_probes_deterministic():
    a = default_probes(3, np.eye(3), make_rng(5), count=100)
    b = default_probes(3, np.eye(3), make_rng(5), count=100)
    assert np.array_equal(a, b)
