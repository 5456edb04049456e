"""Likelihood analysis of latent seeds.

Measures how plausible a latent seed is under the isotropic Gaussian prior
of the latent space, summarizes populations of such measurements, and
compares populations with a 1-D Earth Mover's Distance. The headline
metric is the relative distance: the EMD of the erased-set NLLs to the
normal baseline, normalized by the EMD of the reference-set NLLs to the
same baseline. A value near 1 means erased-concept seeds are as likely as
ordinary ones.

The NLL of a k-dimensional standard-normal sample concentrates: its mean is
k * (log(2*pi)/2 + 1/2) ~= 1.41894*k and its variance is k/2, so for large k
the population is well approximated by a 1-D Gaussian. That approximation
(``CltReference``) serves as the analytic stand-in for the normal baseline.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from scipy.special import ndtri

from .errors import DegenerateReferenceError

LOG_2PI = math.log(2.0 * math.pi)

#: Per-coordinate mean NLL of a standard normal sample: log(2*pi)/2 + 1/2.
NLL_MEAN_PER_DIM = 0.5 * LOG_2PI + 0.5

#: Interpretation anchors for report labels, from published SD-scale runs:
#: a relative distance around 43 meant a clearly separated erased set, while
#: the best published erasure only reached about 2.49 (still overlapping).
#: Never asserted at toy scale; used to phrase report summaries only.
RELATIVE_DISTANCE_FAR = 43.02
RELATIVE_DISTANCE_OVERLAPPING = 2.49


def nll_gaussian(z: np.ndarray, mu: float = 0.0, sigma: float = 1.0) -> float:
    """Negative log density of ``z`` under N(mu*1, sigma^2*I).

    Computed as (k/2)*log(2*pi*sigma^2) + ||z - mu||^2 / (2*sigma^2) with
    float64 accumulation, k being the element count.
    """
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    zv = np.asarray(z, dtype=np.float64).ravel()
    k = zv.size
    if k == 0:
        raise ValueError("z must be non-empty")
    sq = float(np.dot(zv - mu, zv - mu))
    return 0.5 * k * math.log(2.0 * math.pi * sigma * sigma) + sq / (2.0 * sigma * sigma)


@dataclass(frozen=True)
class CltReference:
    """1-D Gaussian approximation of the NLL of k-dimensional prior samples."""

    k: int
    sigma: float
    mu: float
    var: float

    @property
    def std(self) -> float:
        return math.sqrt(self.var)


def clt_reference(k: int, sigma: float = 1.0) -> CltReference:
    """Analytic NLL reference N(mu, var) for dimension ``k``.

    mu = k * (log(2*pi*sigma^2)/2 + 1/2) and var = k/2. Refuses k < 100,
    where the normal approximation of the NLL sum is not trustworthy.
    """
    if k < 100:
        raise ValueError(f"CLT reference needs k >= 100, got {k}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    mu = k * (0.5 * math.log(2.0 * math.pi * sigma * sigma) + 0.5)
    return CltReference(k=k, sigma=sigma, mu=mu, var=k / 2.0)


@dataclass(frozen=True)
class NllSampleSet:
    """A bag of scalar NLL values for one population of seeds.

    Args:
        values: One NLL per seed, finite and positive.
        tag: Population label, conventionally "E" (erased), "R" (reference)
            or "N" (normal baseline samples).
        k: Latent dimensionality the NLLs were computed at.
    """

    values: np.ndarray
    tag: str
    k: int

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64).ravel()
        if vals.size == 0:
            raise ValueError("NllSampleSet must be non-empty")
        if not np.all(np.isfinite(vals)):
            raise ValueError("NllSampleSet values must all be finite")
        if self.k >= 2 and not np.all(vals > 0):
            raise ValueError("NLL values must be positive for k >= 2")
        object.__setattr__(self, "values", vals)

    def __len__(self) -> int:
        return int(self.values.size)


def _empirical_quantiles(sorted_x: np.ndarray, m: int) -> np.ndarray:
    # Midpoint-rule inverse CDF; for m == len(x) this returns x itself.
    n = sorted_x.size
    idx = np.floor((np.arange(m) + 0.5) * n / m).astype(np.int64)
    return sorted_x[np.clip(idx, 0, n - 1)]


def gaussian_quantiles(mu: float, var: float, m: int) -> np.ndarray:
    """``m`` midpoint-rule quantiles of N(mu, var)."""
    if m < 1:
        raise ValueError("need at least one quantile")
    if not var > 0:
        raise ValueError(f"var must be positive, got {var}")
    p = (np.arange(m) + 0.5) / m
    return mu + math.sqrt(var) * ndtri(p)


def emd_1d(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> float:
    """1-D Wasserstein-1 distance between two empirical sample sets.

    Both sets are sorted and resampled to a common grid of
    m = max(|a|, |b|) midpoint quantiles; the distance is the mean absolute
    quantile difference. For equal sample counts this is the exact optimal
    coupling of sorted samples.
    """
    av = np.sort(np.asarray(a, dtype=np.float64).ravel())
    bv = np.sort(np.asarray(b, dtype=np.float64).ravel())
    if av.size == 0 or bv.size == 0:
        raise ValueError("emd_1d inputs must be non-empty")
    m = max(av.size, bv.size)
    qa = _empirical_quantiles(av, m)
    qb = _empirical_quantiles(bv, m)
    return float(np.mean(np.abs(qa - qb)))


def emd_to_reference(s: NllSampleSet, ref: CltReference) -> float:
    """EMD between a sample set and its analytic normal reference.

    The reference is discretized to |s| equally spaced quantiles rather than
    sampled, so the result is deterministic.
    """
    if s.k != ref.k:
        raise ValueError(f"dimension mismatch: sample set k={s.k}, reference k={ref.k}")
    q = gaussian_quantiles(ref.mu, ref.var, len(s))
    return emd_1d(s.values, q)


def relative_distance(e: NllSampleSet, r: NllSampleSet, ref: CltReference) -> float:
    """EMD(E, N) / EMD(R, N): how far the erased set sits from the prior,
    in units of the reference set's own distance.

    Raises:
        DegenerateReferenceError: If EMD(R, N) is zero, meaning the reference
            set is indistinguishable from the baseline and the ratio cannot
            be formed.
    """
    if not (e.k == r.k == ref.k):
        raise ValueError(
            f"dimension mismatch: E k={e.k}, R k={r.k}, reference k={ref.k}"
        )
    den = emd_to_reference(r, ref)
    if den == 0.0:
        raise DegenerateReferenceError(
            "reference set has zero EMD to the normal baseline; "
            "relative distance is undefined"
        )
    return emd_to_reference(e, ref) / den


@dataclass(frozen=True)
class HistogramTable:
    """Plot-ready shared-bin histogram of one or more NLL sample sets."""

    bin_centers: np.ndarray
    ref_density: np.ndarray
    counts: dict[str, np.ndarray] = field(default_factory=dict)

    def write_csv(self, path: str | Path) -> None:
        tags = list(self.counts)
        with open(path, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["bin_center", "ref_density"] + [f"count_{t}" for t in tags])
            for i, center in enumerate(self.bin_centers):
                row = [repr(float(center)), repr(float(self.ref_density[i]))]
                row += [str(int(self.counts[t][i])) for t in tags]
                w.writerow(row)


def histogram_export(
    sets: Iterable[NllSampleSet], ref: CltReference, bins: int = 40
) -> HistogramTable:
    """Bin the sample sets on shared edges and sample the reference density.

    Edges span the union of all sample ranges and the reference's +-4 sigma
    band; empty bins emit zero counts rather than missing rows.
    """
    sets = list(sets)
    if bins < 10:
        raise ValueError(f"need at least 10 bins, got {bins}")
    lo = ref.mu - 4.0 * ref.std
    hi = ref.mu + 4.0 * ref.std
    for s in sets:
        lo = min(lo, float(s.values.min()))
        hi = max(hi, float(s.values.max()))
    edges = np.linspace(lo, hi, bins + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    density = np.exp(-0.5 * (centers - ref.mu) ** 2 / ref.var) / math.sqrt(
        2.0 * math.pi * ref.var
    )
    counts = {}
    for s in sets:
        hist, _ = np.histogram(s.values, bins=edges)
        counts[s.tag] = hist.astype(np.int64)
    return HistogramTable(bin_centers=centers, ref_density=density, counts=counts)


def write_nll_csv(path: str | Path, s: NllSampleSet) -> None:
    """Dump one sample set as CSV: metadata header comment, one value per line."""
    with open(path, "w", newline="") as f:
        f.write(f"# tag={s.tag} k={s.k} n={len(s)}\n")
        for v in s.values:
            f.write(f"{v!r}\n")


def read_nll_csv(path: str | Path) -> NllSampleSet:
    """Read a sample set written by :func:`write_nll_csv`."""
    with open(path) as f:
        header = f.readline().strip()
        if not header.startswith("#"):
            raise ValueError(f"{path}: missing metadata header")
        meta = dict(kv.split("=", 1) for kv in header[1:].split())
        values = np.array([float(line) for line in f if line.strip()])
    return NllSampleSet(values=values, tag=meta["tag"], k=int(meta["k"]))
