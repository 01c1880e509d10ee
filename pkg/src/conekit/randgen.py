"""Seeded random instance generation.

All randomness in the package flows through numpy's PCG64 generator so that
a single integer seed reproduces every probe, direction, and fixture stream
byte for byte; reports record the generator name and seed.
"""

import numpy as np

GENERATOR_NAME = "PCG64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def unit_vectors(rng: np.random.Generator, count: int, dim: int) -> np.ndarray:
    """Uniform directions on the unit sphere (normalized Gaussians)."""
    z = rng.standard_normal((count, dim))
    norms = np.linalg.norm(z, axis=1)
    bad = norms < 1e-12
    while bad.any():
        z[bad] = rng.standard_normal((int(bad.sum()), dim))
        norms = np.linalg.norm(z, axis=1)
        bad = norms < 1e-12
    return z / norms[:, None]


def random_cone_generators(rng: np.random.Generator, dim: int, n_generators: int,
                           seeded_pair: bool = False) -> np.ndarray:
    """Gaussian generators; optionally append the negative of one of them so
    the cone acquires a nontrivial lineality direction."""
    G = rng.standard_normal((n_generators, dim))
    if seeded_pair:
        j = int(rng.integers(0, n_generators))
        G = np.vstack([G, -G[j]])
    return G


def random_point_cloud(rng: np.random.Generator, count: int, dim: int,
                       scale: float = 1.0) -> np.ndarray:
    return scale * rng.standard_normal((count, dim))


def star_body_points(rng: np.random.Generator, count: int, dim: int,
                     r_min: float = 1.0, r_max: float = 2.0) -> np.ndarray:
    """Point cloud guaranteed to contain the origin in its hull interior:
    one point per +-coordinate axis plus random directions, all with radii
    in [r_min, r_max]."""
    eye = np.eye(dim)
    axes = np.vstack([eye, -eye])
    dirs = np.vstack([axes, unit_vectors(rng, max(count - 2 * dim, 0), dim)])
    radii = rng.uniform(r_min, r_max, size=dirs.shape[0])
    return dirs * radii[:, None]
