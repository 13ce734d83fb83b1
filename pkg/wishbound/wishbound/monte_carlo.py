"""
Monte-Carlo sampling of uncorrelated Rayleigh channels.

Samples are generated in fixed blocks of BLOCK_SIZE channels. Block b draws
from a Philox generator seeded with SeedSequence(seed, spawn_key=(b,)), so
channel i is always row i % BLOCK_SIZE of block i // BLOCK_SIZE whatever the
number of worker threads. Block sums are reduced in block order with
math.fsum.
"""

import math
import logging
from functools import lru_cache
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from .eigen import channel_eigenvalues
from .exact_ring import ExpPoly, RationalLike, to_rational
from .pep import CurveSource, PepCurve, attach_slope, db_to_gamma, diversity_exponent, DEFAULT_WINDOW
from .wishart import Dimensions, check_split, split_indices

logger = logging.getLogger(__name__)

BLOCK_SIZE = 4096
MIN_BIN_COUNT = 50
DOMINANCE_SIGMAS = 5.0


@dataclass(frozen=True)
class ChannelSample:
    """One M x N complex channel and where it came from."""
    entries: np.ndarray
    seed: int
    index: int


@dataclass(frozen=True)
class EigenSample:
    mu: np.ndarray


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    n: int
    gamma: float


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def sample_block(dims: Dimensions, seed: int, block: int, size: int = BLOCK_SIZE) -> np.ndarray:
    """(size, M, N) channels with unit-variance circular complex Gaussian entries."""
    rng = block_generator(seed, block)
    draws = rng.standard_normal((size, dims.m, dims.n, 2)) * math.sqrt(0.5)
    return draws[..., 0] + 1j * draws[..., 1]


def sample_channel(dims: Dimensions, seed: int, index: int) -> ChannelSample:
    """The channel with the given sample index under a master seed."""
    block, row = divmod(index, BLOCK_SIZE)
    return ChannelSample(sample_block(dims, seed, block, row + 1)[row], seed, index)


def ordered_eigenvalues(h: ChannelSample) -> EigenSample:
    return EigenSample(channel_eigenvalues(h.entries[None])[0])


@lru_cache(maxsize=512)
def _block_eigenvalues(dims: Dimensions, seed: int, block: int, size: int) -> np.ndarray:
    mu = channel_eigenvalues(sample_block(dims, seed, block, size))
    mu.setflags(write=False)
    return mu


def _block_sizes(n: int) -> List[int]:
    full, rest = divmod(n, BLOCK_SIZE)
    return [BLOCK_SIZE] * full + ([rest] if rest else [])


def sample_eigenvalues(dims: Dimensions, n: int, seed: int, workers: int = 1,
                       progress: bool = False) -> List[np.ndarray]:
    """Ordered eigenvalues of n channels, as a list of per-block (size, Y) arrays in block order."""
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    sizes = _block_sizes(n)

    def run(block: int) -> np.ndarray:
        return _block_eigenvalues(dims, seed, block, sizes[block])

    with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
        blocks = list(tqdm(pool.map(run, range(len(sizes))), total=len(sizes),
                           desc=f"sampling {dims}", unit="block",
                           disable=not progress, leave=False))
    logger.debug(f"Sampled {n} channels for {dims} in {len(blocks)} blocks (seed {seed})")
    return blocks


def _estimate(weighted: List[np.ndarray], gamma: float, n: int) -> McEstimate:
    values = [np.exp(-gamma * w) for w in weighted]
    mean = math.fsum(float(np.sum(v)) for v in values) / n
    if n > 1:
        squares = math.fsum(float(np.sum((v - mean) ** 2)) for v in values)
        stderr = math.sqrt(squares / (n - 1) / n)
    else:
        stderr = float('nan')
    return McEstimate(mean, stderr, n, gamma)


def estimate_pep_curve(dims: Dimensions, alpha: Sequence[RationalLike], gammas: Sequence[RationalLike],
                       n: int, seed: int, workers: int = 1, progress: bool = False) -> List[McEstimate]:
    """
    Sample-mean estimates of E[exp(-gamma sum alpha_j mu_j)] for every gamma.

    The same n channels are reused for every gamma.
    """
    split = split_indices(alpha)
    check_split(dims, split)
    weights = np.array([float(a) for a in split.alpha])
    blocks = sample_eigenvalues(dims, n, seed, workers, progress)
    weighted = [mu @ weights for mu in blocks]
    return [_estimate(weighted, float(to_rational(g)), n) for g in gammas]


def estimate_pep(dims: Dimensions, alpha: Sequence[RationalLike], gamma: RationalLike,
                 n: int, seed: int, workers: int = 1) -> McEstimate:
    return estimate_pep_curve(dims, alpha, [gamma], n, seed, workers)[0]


def mc_pep_curve(dims: Dimensions, alpha: Sequence[RationalLike], gamma_db_grid: Sequence[float],
                 n: int, seed: int, window: int = DEFAULT_WINDOW, workers: int = 1,
                 progress: bool = False) -> PepCurve:
    """Monte-Carlo PepCurve with per-point standard errors."""
    if list(gamma_db_grid) != sorted(gamma_db_grid):
        raise ValueError("gamma_db_grid must be ascending")
    split = split_indices(alpha)
    gammas = [db_to_gamma(db) for db in gamma_db_grid]
    estimates = estimate_pep_curve(dims, split.alpha, gammas, n, seed, workers, progress)
    curve = PepCurve(
        dims, split.alpha, gammas, [float(db) for db in gamma_db_grid],
        [e.mean for e in estimates], CurveSource.MONTE_CARLO,
        diversity_exponent(dims, split.alpha),
        stderr=[e.stderr for e in estimates], samples=n,
    )
    return attach_slope(curve, window)


@dataclass(frozen=True)
class MarginalHistogram:
    """Density histogram of one ordered eigenvalue over (0, max sample]."""
    index: int
    edges: np.ndarray
    density: np.ndarray
    counts: np.ndarray
    n: int

    @property
    def midpoints(self) -> np.ndarray:
        return 0.5 * (self.edges[:-1] + self.edges[1:])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)

    @property
    def standard_errors(self) -> np.ndarray:
        return np.sqrt(self.counts) / (self.n * self.widths)

    def integral(self) -> float:
        return float(np.sum(self.density * self.widths))


def marginal_histogram(dims: Dimensions, index: int, bins: int, n: int, seed: int,
                       workers: int = 1) -> MarginalHistogram:
    """
    Histogram of mu_index from n sampled channels.

    Args:
        dims: Antenna counts
        index: 1-based eigenvalue index
        bins: Number of bins (at least 10)
        n: Number of channels (at least 100000)
        seed: Master seed
    """
    if bins < 10:
        raise ValueError(f"bins must be at least 10, got {bins}")
    if n < 100_000:
        raise ValueError(f"n must be at least 100000, got {n}")
    if not 1 <= index <= dims.y:
        raise ValueError(f"index must be in 1..{dims.y}, got {index}")
    samples = np.concatenate([mu[:, index - 1] for mu in sample_eigenvalues(dims, n, seed, workers)])
    top = float(samples.max())
    counts, edges = np.histogram(samples, bins=bins, range=(0.0, top))
    density, _ = np.histogram(samples, bins=bins, range=(0.0, top), density=True)
    return MarginalHistogram(index, edges, density, counts, n)


@dataclass(frozen=True)
class BinViolation:
    left: float
    right: float
    density: float
    bound: float
    slack: float
    stderr: float


def histogram_dominance(hist: MarginalHistogram, bound: ExpPoly,
                        sigmas: float = DOMINANCE_SIGMAS,
                        min_count: int = MIN_BIN_COUNT,
                        reference: Optional[ExpPoly] = None) -> List[BinViolation]:
    """
    Bins whose density exceeds a single-variable bound density.

    A bin passes when density <= bound(mid) + slack + sigmas * stderr, where
    slack = max(bound(left), bound(right)) - bound(mid), floored at zero.
    Bins expected to hold fewer than min_count samples are skipped. The
    expected count is n * width * reference(mid) for a reference density
    (the exact marginal); without one the observed count stands in.
    """
    for poly in (bound, reference):
        if poly is not None and len(poly.varnames) != 1:
            raise ValueError(f"Density must depend on one variable, got {poly.varnames}")
    if reference is None:
        expected = hist.counts.astype(float)
    else:
        expected = np.array([hist.n * float(w) * reference.evaluate_float([float(c)])
                             for c, w in zip(hist.midpoints, hist.widths)])
    violations = []
    for left, right, centre, density, count, se in zip(hist.edges[:-1], hist.edges[1:], hist.midpoints,
                                                       hist.density, expected, hist.standard_errors):
        if count < min_count:
            continue
        mid = bound.evaluate_float([float(centre)])
        slack = max(bound.evaluate_float([left]), bound.evaluate_float([right]), mid) - mid
        if density > mid + slack + sigmas * se:
            violations.append(BinViolation(float(left), float(right), float(density), mid, slack, float(se)))
    return violations
