"""Shared instance generators and independent reference computations."""

import math

import numpy as np

from impuritypart import JointDistribution, Partition, build_joint


def random_joint(rng, m, n) -> JointDistribution:
    """Continuous random instance with strictly positive row masses."""
    return build_joint(rng.random((m, n)) + 1e-9)


def dyadic_joint(rng, m, n, hi=1000) -> JointDistribution:
    """Random integer counts padded so the total is a power of two.

    Every probability is then an exact dyadic rational and all sums of
    likelihood masses evaluate exactly in float64, so e-value comparisons
    between different code paths are meaningful at zero tolerance.
    """
    counts = rng.integers(1, hi, size=(m, n)).astype(float)
    total = counts.sum()
    target = 2.0 ** math.ceil(math.log2(total))
    counts[0, 0] += target - total
    return build_joint(counts)


def random_partition(rng, m, k) -> Partition:
    return Partition(rng.integers(0, k, size=m), k)


def stats_reference(p, assignment, k, f_scalar):
    """Plain-Python tabulation of (impurity, e) for cross-checking.

    Deliberately independent of the package's vectorized accumulation.
    """
    m, n = p.shape
    pxz = [[0.0] * n for _ in range(k)]
    for j in range(m):
        for i in range(n):
            pxz[assignment[j]][i] += p[j][i]
    impurity = 0.0
    e = 0.0
    for row in pxz:
        pz = sum(row)
        if pz > 0.0:
            impurity += pz * sum(f_scalar(v / pz) for v in row)
            e += max(row)
    return impurity, e


def mutual_information_uniform(channel) -> float:
    """I(X;Z) in bits for a column-stochastic channel under uniform input."""
    a = np.asarray(channel, dtype=float)
    n = a.shape[1]
    joint = a / n
    pz = joint.sum(axis=1)
    px = joint.sum(axis=0)
    total = 0.0
    for k in range(a.shape[0]):
        for i in range(n):
            if joint[k, i] > 0.0:
                total += joint[k, i] * math.log2(joint[k, i] / (pz[k] * px[i]))
    return total


def all_assignment_e_values(p, k):
    """(assignments, e) over every k**m labeling, lexicographic order."""
    m = p.shape[0]
    pows = k ** np.arange(m - 1, -1, -1, dtype=np.int64)
    idx = np.arange(k ** m, dtype=np.int64)
    digits = (idx[:, None] // pows[None, :]) % k
    e = np.zeros(idx.size)
    for label in range(k):
        e += ((digits == label).astype(float) @ p).max(axis=1)
    return digits, e


def leq(a, b, rel=1e-12,_abs=1e-15) -> bool:
    """a <= b up to the test-wide relative impurity tolerance."""
    return a <= b + rel * max(1.0, abs(a), abs(b)) + _abs
