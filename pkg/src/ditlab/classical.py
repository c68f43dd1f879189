"""Classical logical entropy and its compound forms.

The logical entropy of a partition under a probability distribution is the
probability that two independent draws land in different blocks:

    h(pi) = 1 - sum_B Pr(B)^2

Joint, conditional and mutual versions are the product measures of the
union, differences and intersection of the two ditsets, so they satisfy
inclusion-exclusion identities exactly.  Replacing each averaged dit-count
``1 - Pr(.)`` by ``log2(1/Pr(.))`` term by term turns every formula of the
logical profile into the corresponding Shannon formula; that transform is
exposed here so the correspondence is executable rather than folklore.

Arithmetic is exact when the weights are :class:`fractions.Fraction` (or
int) valued; with float weights the same code runs in floating point and
comparisons use a 1e-12 tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import (
    InternalInconsistency,
    InvalidDistribution,
    LengthMismatch,
    UniverseMismatch,
)
from .partitions import (
    DITSET_MATERIALIZE_BOUND,
    PairSet,
    Partition,
    Universe,
    ditset,
    join,
)

Number = Union[Fraction, int, float]

#: Comparison tolerance for the float backend.
FLOAT_TOL = 1e-12


def _is_exact(x: Number) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


@dataclass(frozen=True)
class ProbDist:
    """A probability distribution on ``{0, ..., n-1}``.

    Weights may be Fractions/ints (exact backend) or floats.  They must be
    nonnegative and sum to one (exactly in the exact backend, within 1e-12
    otherwise).
    """

    weights: tuple

    def __post_init__(self):
        w = tuple(self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise InvalidDistribution("a distribution needs at least one weight")
        for x in w:
            if x < 0:
                raise InvalidDistribution(f"negative weight {x}")
        total = sum(w)
        if self.is_exact:
            if total != 1:
                raise InvalidDistribution(f"weights sum to {total}, expected 1")
        elif abs(total - 1) > FLOAT_TOL:
            raise InvalidDistribution(f"weights sum to {total!r}, expected 1 within {FLOAT_TOL}")

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def universe(self) -> Universe:
        return Universe(len(self.weights))

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(x) for x in self.weights)

    @staticmethod
    def uniform(n: int) -> "ProbDist":
        return ProbDist(tuple(Fraction(1, n) for _ in range(n)))

    def prob(self, indices: Sequence[int]) -> Number:
        """Probability of the event given by a collection of outcome indices."""
        return sum(self.weights[i] for i in indices)


@dataclass(frozen=True)
class JointDist:
    """A joint distribution on ``X x Y``; ``weights[x][y]`` is p(x, y)."""

    weights: tuple

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.weights)
        object.__setattr__(self, "weights", rows)
        if not rows or not rows[0]:
            raise InvalidDistribution("a joint distribution needs at least one cell")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise LengthMismatch("joint distribution rows have unequal length")
            for x in r:
                if x < 0:
                    raise InvalidDistribution(f"negative weight {x}")
        total = sum(sum(r) for r in rows)
        if self.is_exact:
            if total != 1:
                raise InvalidDistribution(f"weights sum to {total}, expected 1")
        elif abs(total - 1) > FLOAT_TOL:
            raise InvalidDistribution(f"weights sum to {total!r}, expected 1 within {FLOAT_TOL}")

    @property
    def x_size(self) -> int:
        return len(self.weights)

    @property
    def y_size(self) -> int:
        return len(self.weights[0])

    @property
    def is_exact(self) -> bool:
        return all(_is_exact(x) for r in self.weights for x in r)

    def marginal_x(self) -> ProbDist:
        return ProbDist(tuple(sum(r) for r in self.weights))

    def marginal_y(self) -> ProbDist:
        return ProbDist(tuple(sum(r[j] for r in self.weights) for j in range(self.y_size)))


@dataclass(frozen=True)
class EntropyProfile:
    """The six compound quantities for a pair of partitions.

    Satisfies ``h_joint = h_pi_given_sigma + mutual + h_sigma_given_pi`` and
    ``mutual = h_pi + h_sigma - h_joint`` (exactly in the exact backend).
    """

    h_pi: Number
    h_sigma: Number
    h_joint: Number
    h_pi_given_sigma: Number
    h_sigma_given_pi: Number
    mutual: Number


def _check_dist(pi: Partition, p: ProbDist, what: str) -> None:
    if pi.universe.size != p.size:
        raise UniverseMismatch(
            f"{what}: partition on size {pi.universe.size}, distribution on {p.size}"
        )


def block_probabilities(pi: Partition, p: ProbDist) -> list:
    """Pr(B) for each block of ``pi``, in canonical block order."""
    _check_dist(pi, p, "block probabilities")
    return [p.prob(b) for b in pi.blocks]


def logical_entropy(pi: Partition, p: ProbDist) -> Number:
    """Two-draw distinction probability ``1 - sum_B Pr(B)^2``."""
    return 1 - sum(q * q for q in block_probabilities(pi, p))


def product_measure(region: PairSet, p: ProbDist) -> Number:
    """Probability that an independent pair of draws lands in ``region``."""
    if region.universe.size != p.size:
        raise UniverseMismatch(
            f"product measure: pair set on size {region.universe.size}, "
            f"distribution on {p.size}"
        )
    w = p.weights
    return sum(w[a] * w[b] for a, b in region)


def _close(a: Number, b: Number, exact: bool) -> bool:
    if exact:
        return a == b
    return abs(a - b) <= FLOAT_TOL


def entropy_profile(
    pi: Partition,
    sigma: Partition,
    p: ProbDist,
    method: str = "auto",
) -> EntropyProfile:
    """All six compound logical entropies for a pair of partitions.

    ``method="closed"`` uses the block-probability closed forms, with the
    conditional and mutual parts obtained by subtraction.  ``"regions"``
    computes each quantity as the product measure of its own ditset region
    (union, differences, intersection) and is the oracle path.  ``"auto"``
    (default) computes the closed forms and, when the ditsets are small
    enough to materialize, checks them against the region path.
    """
    if pi.universe != sigma.universe:
        raise UniverseMismatch("entropy profile needs partitions on one universe")
    _check_dist(pi, p, "entropy profile")
    if method not in ("auto", "closed", "regions"):
        raise ValueError(f"unknown method {method!r}")

    if method in ("auto", "closed"):
        h_pi = logical_entropy(pi, p)
        h_sigma = logical_entropy(sigma, p)
        cell_sq = 0
        for bp in pi.blocks:
            bset = set(bp)
            for cs in sigma.blocks:
                q = p.prob([x for x in cs if x in bset])
                cell_sq += q * q
        h_joint = 1 - cell_sq
        closed = EntropyProfile(
            h_pi=h_pi,
            h_sigma=h_sigma,
            h_joint=h_joint,
            h_pi_given_sigma=h_joint - h_sigma,
            h_sigma_given_pi=h_joint - h_pi,
            mutual=h_pi + h_sigma - h_joint,
        )
        if method == "closed" or pi.universe.size > DITSET_MATERIALIZE_BOUND:
            return closed

    dit_pi = ditset(pi)
    dit_sigma = ditset(sigma)
    regions = EntropyProfile(
        h_pi=product_measure(dit_pi, p),
        h_sigma=product_measure(dit_sigma, p),
        h_joint=product_measure(dit_pi.union(dit_sigma), p),
        h_pi_given_sigma=product_measure(dit_pi.difference(dit_sigma), p),
        h_sigma_given_pi=product_measure(dit_sigma.difference(dit_pi), p),
        mutual=product_measure(dit_pi.intersection(dit_sigma), p),
    )
    if method == "regions":
        return regions
    exact = p.is_exact
    for name in ("h_pi", "h_sigma", "h_joint", "h_pi_given_sigma", "h_sigma_given_pi", "mutual"):
        a, b = getattr(closed, name), getattr(regions, name)
        if not _close(a, b, exact):
            raise InternalInconsistency(
                f"entropy profile: closed form and region measure disagree on {name}: {a} vs {b}"
            )
    return closed


def shannon_entropy(pi: Partition, p: ProbDist) -> float:
    """Shannon entropy of the block distribution, in bits.

    Blocks of probability zero contribute zero.
    """
    h = 0.0
    for q in block_probabilities(pi, p):
        q = float(q)
        if q > 0.0:
            h -= q * math.log2(q)
    return h


def shannon_profile(pi: Partition, sigma: Partition, p: ProbDist) -> EntropyProfile:
    """Joint/conditional/mutual Shannon entropies (bits) for a partition pair.

    The joint entropy is the entropy of the join; conditionals and mutual
    information come from the standard subtraction identities.
    """
    if pi.universe != sigma.universe:
        raise UniverseMismatch("shannon profile needs partitions on one universe")
    h_pi = shannon_entropy(pi, p)
    h_sigma = shannon_entropy(sigma, p)
    h_joint = shannon_entropy(join(pi, sigma), p)
    return EntropyProfile(
        h_pi=h_pi,
        h_sigma=h_sigma,
        h_joint=h_joint,
        h_pi_given_sigma=h_joint - h_sigma,
        h_sigma_given_pi=h_joint - h_pi,
        mutual=h_pi + h_sigma - h_joint,
    )


def shannon_profile_from_transform(pi: Partition, sigma: Partition, p: ProbDist) -> EntropyProfile:
    """Shannon profile obtained by the dit-count -> bit-count substitution.

    Each logical quantity is first written as an average of dit counts
    ``sum Pr(.) (1 - Pr(.))`` over its defining blocks or block pairs; the
    substitution ``1 - Pr(.) => log2(1/Pr(.))`` then yields these sums,
    computed here directly from the block pair table without forming the
    join partition.  Agrees with :func:`shannon_profile` within float error.
    """
    if pi.universe != sigma.universe:
        raise UniverseMismatch("shannon profile needs partitions on one universe")
    _check_dist(pi, p, "shannon profile")

    def bits(q: float) -> float:
        return -q * math.log2(q) if q > 0.0 else 0.0

    sum_pi = sum(bits(float(q)) for q in block_probabilities(pi, p))
    sum_sigma = sum(bits(float(q)) for q in block_probabilities(sigma, p))
    sum_cells = 0.0
    for bp in pi.blocks:
        bset = set(bp)
        for cs in sigma.blocks:
            sum_cells += bits(float(p.prob([x for x in cs if x in bset])))
    return EntropyProfile(
        h_pi=sum_pi,
        h_sigma=sum_sigma,
        h_joint=sum_cells,
        h_pi_given_sigma=sum_cells - sum_sigma,
        h_sigma_given_pi=sum_cells - sum_pi,
        mutual=sum_pi + sum_sigma - sum_cells,
    )


def hamming_distance(pi: Partition, sigma: Partition, p: ProbDist) -> Number:
    """Probability that two draws are distinguished by exactly one partition.

    Equals ``h(pi|sigma) + h(sigma|pi)`` and also
    ``2 h(join) - h(pi) - h(sigma)``; a pseudo-metric on partitions (zero
    iff the partitions identify the same probability-carrying blocks).
    """
    prof = entropy_profile(pi, sigma, p)
    return prof.h_pi_given_sigma + prof.h_sigma_given_pi


def cross_entropy_partitions(pi: Partition, sigma: Partition, p: ProbDist) -> Number:
    """Two-draw probability of a distinction by at least one partition.

    Symmetric; equals the logical entropy of the join, and reduces to plain
    logical entropy when the two partitions coincide.
    """
    prof = entropy_profile(pi, sigma, p)
    return prof.h_joint


def twoset_profile(
    pi: Partition,
    sigma: Partition,
    joint: JointDist,
    method: str = "auto",
) -> EntropyProfile:
    """Compound logical entropies for partitions on *different* sets.

    ``pi`` partitions X, ``sigma`` partitions Y, and ``joint`` is a
    distribution on ``X x Y``.  Distinctions are judged on independent
    draws of pairs: the ``pi`` side distinguishes two pairs when their X
    components fall in different blocks, likewise for Y.  With
    ``pi = top(X)`` and ``sigma = top(Y)`` this reduces to the ordinary
    two-variable logical entropies of the joint distribution.

    ``method`` works as in :func:`entropy_profile`: ``"regions"`` is the
    brute-force double sum over ordered pairs of cells, ``"closed"`` uses
    the aggregated block-pair table, ``"auto"`` cross-checks the two.
    """
    if pi.universe.size != joint.x_size:
        raise UniverseMismatch(
            f"pi partitions size {pi.universe.size}, joint X side is {joint.x_size}"
        )
    if sigma.universe.size != joint.y_size:
        raise UniverseMismatch(
            f"sigma partitions size {sigma.universe.size}, joint Y side is {joint.y_size}"
        )
    if method not in ("auto", "closed", "regions"):
        raise ValueError(f"unknown method {method!r}")

    closed = None
    if method in ("auto", "closed"):
        # q[i][j] = probability of (pi-block i, sigma-block j)
        q = [[0] * sigma.n_blocks for _ in range(pi.n_blocks)]
        for x in range(joint.x_size):
            bi = pi.block_containing(x)
            row = joint.weights[x]
            for y in range(joint.y_size):
                q[bi][sigma.block_containing(y)] += row[y]
        qx = [sum(row) for row in q]
        qy = [sum(q[i][j] for i in range(pi.n_blocks)) for j in range(sigma.n_blocks)]
        h_pi = 1 - sum(v * v for v in qx)
        h_sigma = 1 - sum(v * v for v in qy)
        h_joint = 1 - sum(v * v for row in q for v in row)
        closed = EntropyProfile(
            h_pi=h_pi,
            h_sigma=h_sigma,
            h_joint=h_joint,
            h_pi_given_sigma=h_joint - h_sigma,
            h_sigma_given_pi=h_joint - h_pi,
            mutual=h_pi + h_sigma - h_joint,
        )
        if method == "closed":
            return closed
        if (joint.x_size * joint.y_size) ** 2 > 10 ** 6:
            return closed

    sums = {"pi": 0, "sigma": 0, "joint": 0, "pi_only": 0, "sigma_only": 0, "both": 0}
    cells = [
        (pi.block_containing(x), sigma.block_containing(y), joint.weights[x][y])
        for x in range(joint.x_size)
        for y in range(joint.y_size)
    ]
    for bi, cj, w in cells:
        if not w:
            continue
        for bi2, cj2, w2 in cells:
            m = w * w2
            df = bi != bi2
            dg = cj != cj2
            if df:
                sums["pi"] += m
            if dg:
                sums["sigma"] += m
            if df or dg:
                sums["joint"] += m
            if df and not dg:
                sums["pi_only"] += m
            if dg and not df:
                sums["sigma_only"] += m
            if df and dg:
                sums["both"] += m
    regions = EntropyProfile(
        h_pi=sums["pi"],
        h_sigma=sums["sigma"],
        h_joint=sums["joint"],
        h_pi_given_sigma=sums["pi_only"],
        h_sigma_given_pi=sums["sigma_only"],
        mutual=sums["both"],
    )
    if method == "regions":
        return regions
    exact = joint.is_exact
    for name in ("h_pi", "h_sigma", "h_joint", "h_pi_given_sigma", "h_sigma_given_pi", "mutual"):
        a, b = getattr(closed, name), getattr(regions, name)
        if not _close(a, b, exact):
            raise InternalInconsistency(
                f"two-set profile: closed form and double sum disagree on {name}: {a} vs {b}"
            )
    return closed


def dist_entropy(p: ProbDist) -> Number:
    """Logical entropy of a distribution: two draws differ, ``1 - sum p_i^2``."""
    return 1 - sum(w * w for w in p.weights)


def dist_cross_entropy(p: ProbDist, q: ProbDist) -> Number:
    """Two independent draws, one from each distribution, differ: ``1 - sum p_i q_i``.

    Symmetric in its arguments and equal to :func:`dist_entropy` on the
    diagonal ``q = p``.
    """
    if p.size != q.size:
        raise LengthMismatch(f"distributions have sizes {p.size} and {q.size}")
    return 1 - sum(a * b for a, b in zip(p.weights, q.weights))
