"""Quantum logical entropy of observables, states and density pairs.

An observable distinguishes a pair of its eigenbasis vectors when their
eigenvalues differ.  For a state ``psi`` the quantum logical entropy
``h(F : psi)`` is the product-measure weight of those distinguished pairs
under the eigenbasis outcome probabilities ``p_j = |<u_j|psi>|^2``; it is
simultaneously

* a diagonal-projector trace ``tr[P (rho x rho)]`` over the doubled space,
* the classical logical entropy of the eigenvalue partition under ``p``,
* the post-measurement mixed-state entropy ``1 - tr[rho'^2]``,

and :func:`h_observable_state` computes all three routes and insists they
agree.  The two-observable quantities (commuting and not), the spectral
pair profile for two density matrices, the cross entropy ``1 - tr[rho tau]``
and the Hamming distance (which coincides with the squared Hilbert-Schmidt
norm of the difference) follow the same pattern: a combinatorial index-set
reduction implemented directly, with dense-matrix oracles kept alongside
for validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import classical, density
from .classical import JointDist, ProbDist
from .errors import (
    BoundExceeded,
    DimensionMismatch,
    InternalInconsistency,
    InvalidObservable,
    NotCommuting,
)
from .partitions import PairSet, Partition, Universe, ditset

#: Tolerance used when grouping float eigenvalues into classes.
EIGENVALUE_GROUP_TOL = 1e-9

#: Agreement tolerance for the independent computation routes.
ROUTE_TOL = 1e-10

#: Commutator max-norm below which joint diagonalization is attempted.
COMMUTATION_TOL = 1e-8


def _is_exact_number(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


@dataclass(frozen=True, eq=False)
class Observable:
    """A Hermitian observable given by eigenvalues and an eigenbasis.

    ``eigenvalues[j]`` belongs to basis column ``j``.  ``eigenbasis=None``
    means the computational basis.  Eigenvalues may repeat (degeneracy);
    equal values form one eigenvalue class.
    """

    eigenvalues: tuple
    eigenbasis: Optional[np.ndarray] = None

    def __post_init__(self):
        vals = []
        for v in self.eigenvalues:
            if isinstance(v, bool):
                raise InvalidObservable(f"eigenvalue {v!r} is not a real number")
            if isinstance(v, complex):
                if v.imag != 0:
                    raise InvalidObservable(f"eigenvalue {v!r} is not a real number")
                v = v.real
            if _is_exact_number(v):
                vals.append(v)
            else:
                vals.append(float(v))
        object.__setattr__(self, "eigenvalues", tuple(vals))
        if not vals:
            raise InvalidObservable("an observable needs at least one eigenvalue")
        if self.eigenbasis is not None:
            b = np.asarray(self.eigenbasis).astype(np.complex128, copy=True)
            if b.ndim != 2 or b.shape[0] != b.shape[1]:
                raise InvalidObservable(f"eigenbasis must be square, got shape {b.shape}")
            if b.shape[0] != len(vals):
                raise DimensionMismatch(
                    f"{len(vals)} eigenvalues but a {b.shape[0]}-dimensional basis"
                )
            gap = float(np.max(np.abs(b.conj().T @ b - np.eye(b.shape[0]))))
            if gap > ROUTE_TOL:
                raise InvalidObservable(
                    f"eigenbasis columns are not orthonormal: max deviation {gap:.3e}"
                )
            b.flags.writeable = False
            object.__setattr__(self, "eigenbasis", b)

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    @classmethod
    def from_matrix(cls, mat, tol: float = ROUTE_TOL) -> "Observable":
        """Eigendecompose a Hermitian matrix into an Observable."""
        m = np.asarray(mat).astype(np.complex128, copy=False)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidObservable(f"expected a square matrix, got shape {m.shape}")
        if float(np.max(np.abs(m - m.conj().T))) > tol:
            raise InvalidObservable("matrix is not Hermitian within tolerance")
        vals, vecs = np.linalg.eigh(m)
        return cls(tuple(float(v) for v in vals), vecs)

    def basis_matrix(self) -> np.ndarray:
        if self.eigenbasis is None:
            return np.eye(self.dim, dtype=np.complex128)
        return self.eigenbasis

    def matrix(self) -> np.ndarray:
        """Reconstruct ``sum_j value_j |u_j><u_j|``."""
        u = self.basis_matrix()
        d = np.array([float(v) for v in self.eigenvalues])
        return (u * d) @ u.conj().T

    def eigenvalue_partition(self, tol: float = EIGENVALUE_GROUP_TOL) -> Partition:
        """Partition of basis indices by equal eigenvalue.

        Exact equality when every eigenvalue is an int or Fraction;
        otherwise values within ``tol`` of each other (transitively) share
        a class.
        """
        n = self.dim
        if all(_is_exact_number(v) for v in self.eigenvalues):
            groups = {}
            for j, v in enumerate(self.eigenvalues):
                groups.setdefault(Fraction(v), []).append(j)
            blocks = tuple(tuple(g) for g in groups.values())
        else:
            order = sorted(range(n), key=lambda j: float(self.eigenvalues[j]))
            blocks_list = [[order[0]]]
            for prev, cur in zip(order, order[1:]):
                if float(self.eigenvalues[cur]) - float(self.eigenvalues[prev]) > tol:
                    blocks_list.append([])
                blocks_list[-1].append(cur)
            blocks = tuple(tuple(sorted(b)) for b in blocks_list)
        return Partition(Universe(n), blocks)

    def class_values(self, tol: float = EIGENVALUE_GROUP_TOL) -> list:
        """Representative eigenvalue of each class, in canonical block order."""
        part = self.eigenvalue_partition(tol)
        return [self.eigenvalues[block[0]] for block in part.blocks]


def eigenvalue_partition(F: Observable, tol: float = EIGENVALUE_GROUP_TOL) -> Partition:
    return F.eigenvalue_partition(tol)


def qudit_pairs(F: Observable) -> PairSet:
    """Eigenbasis index pairs the observable distinguishes (eigenvalues differ)."""
    return ditset(F.eigenvalue_partition())


def state_probabilities(F: Observable, psi) -> np.ndarray:
    """Outcome weights ``p_j = |<u_j|psi>|^2`` in the observable's eigenbasis."""
    v = density.validate_state(psi)
    if v.shape[0] != F.dim:
        raise DimensionMismatch(f"state dimension {v.shape[0]}, observable dimension {F.dim}")
    v = v / np.linalg.norm(v)
    amps = F.basis_matrix().conj().T @ v
    return np.abs(amps) ** 2


@dataclass(frozen=True)
class ObservableStateEntropy:
    """``h(F : psi)`` with the three independent computation routes."""

    value: float
    via_qudit_pairs: float
    via_partition: float
    via_measurement: float

    def __float__(self) -> float:
        return self.value


def h_observable_state(F: Observable, psi, tol: float = ROUTE_TOL) -> ObservableStateEntropy:
    """Quantum logical entropy of measuring ``F`` on ``psi``.

    Computed three ways: the double sum of ``p_j p_k`` over distinguished
    index pairs, the classical logical entropy of the eigenvalue partition
    under ``p``, and the post-measurement entropy ``1 - tr[rho'^2]``.
    Raises :class:`InternalInconsistency` if any two routes disagree beyond
    ``tol``.
    """
    p = state_probabilities(F, psi)
    part = F.eigenvalue_partition()
    ids = [part.block_containing(j) for j in range(F.dim)]

    via_pairs = 0.0
    for j in range(F.dim):
        for k in range(F.dim):
            if ids[j] != ids[k]:
                via_pairs += float(p[j]) * float(p[k])

    via_partition = float(
        classical.logical_entropy(part, ProbDist(tuple(float(x) for x in p / p.sum())))
    )

    rho_after = measure(F, psi)
    via_measurement = density.dm_logical_entropy(rho_after)

    for a, b in ((via_pairs, via_partition), (via_pairs, via_measurement), (via_partition, via_measurement)):
        if abs(a - b) > tol:
            raise InternalInconsistency(
                f"h(F:psi) routes disagree beyond {tol}: "
                f"pairs={via_pairs!r} partition={via_partition!r} measurement={via_measurement!r}"
            )
    return ObservableStateEntropy(via_pairs, via_pairs, via_partition, via_measurement)


def measure(F: Observable, psi) -> np.ndarray:
    """Lüders mixture of ``|psi><psi|`` over the eigenspace projectors of ``F``."""
    v = density.validate_state(psi)
    if v.shape[0] != F.dim:
        raise DimensionMismatch(f"state dimension {v.shape[0]}, observable dimension {F.dim}")
    v = v / np.linalg.norm(v)
    projs = density.projectors_from_eigenbasis(F.basis_matrix(), F.eigenvalue_partition())
    return density.luders(np.outer(v, v.conj()), projs)


@dataclass(frozen=True)
class FundamentalCheck:
    """Entropy increase of a measurement next to its decoherence sum."""

    entropy_increase: float
    decohered_sumsq: float

    @property
    def residual(self) -> float:
        return abs(self.entropy_increase - self.decohered_sumsq)


def quantum_fundamental_check(F: Observable, psi) -> FundamentalCheck:
    """Entropy created by measuring ``psi`` with ``F`` vs the squared entries zeroed.

    The two numbers are computed independently (trace of the square vs
    entrywise sums) and coincide up to rounding.
    """
    v = density.validate_state(psi)
    v = v / np.linalg.norm(v)
    rho_before = np.outer(v, v.conj())
    rho_after = measure(F, v)
    increase = density.dm_logical_entropy(rho_after) - density.dm_logical_entropy(rho_before)
    lost = density.decohered_sumsq(rho_before, rho_after)
    return FundamentalCheck(entropy_increase=increase, decohered_sumsq=lost)


# ------------------------------------------------------------ two observables

@dataclass(frozen=True)
class QuantumProfile:
    """Joint/conditional/mutual quantum logical entropies for two observables."""

    h_f: float
    h_g: float
    h_joint: float
    h_f_given_g: float
    h_g_given_f: float
    mutual: float


def _profile_from_classical(prof: classical.EntropyProfile) -> QuantumProfile:
    return QuantumProfile(
        h_f=float(prof.h_pi),
        h_g=float(prof.h_sigma),
        h_joint=float(prof.h_joint),
        h_f_given_g=float(prof.h_pi_given_sigma),
        h_g_given_f=float(prof.h_sigma_given_pi),
        mutual=float(prof.mutual),
    )


def _joint_eigenbasis(F: Observable, G: Observable, commutation_tol: float):
    """Shared basis and per-column eigenvalue lists for commuting observables.

    Prefers an explicitly shared eigenbasis.  Otherwise checks the
    commutator and rotates within each eigenspace of ``F`` to diagonalize
    ``G`` there; raises :class:`NotCommuting` when that cannot work.
    """
    if F.dim != G.dim:
        raise DimensionMismatch(f"observable dimensions {F.dim} and {G.dim} differ")
    uf, ug = F.basis_matrix(), G.basis_matrix()
    if np.allclose(uf, ug, atol=1e-12, rtol=0.0):
        return uf, list(F.eigenvalues), list(G.eigenvalues)

    fm, gm = F.matrix(), G.matrix()
    comm = float(np.max(np.abs(fm @ gm - gm @ fm)))
    if comm > commutation_tol:
        raise NotCommuting(
            f"max |FG - GF| = {comm:.3e} exceeds {commutation_tol}; "
            "supply a shared eigenbasis or commuting observables"
        )
    part = F.eigenvalue_partition()
    cols = []
    f_vals: list = []
    g_vals: list = []
    for block in part.blocks:
        ub = uf[:, list(block)]
        sub = ub.conj().T @ gm @ ub
        sub = (sub + sub.conj().T) / 2
        vals, rot = np.linalg.eigh(sub)
        cols.append(ub @ rot)
        f_vals.extend([F.eigenvalues[block[0]]] * len(block))
        g_vals.extend(float(v) for v in vals)
    basis = np.hstack(cols)
    gap = float(np.max(np.abs(basis.conj().T @ gm @ basis - np.diag(g_vals))))
    if gap > math.sqrt(commutation_tol):
        raise NotCommuting(
            f"joint diagonalization failed: residual off-diagonal {gap:.3e}"
        )
    return basis, f_vals, g_vals


def commuting_profile(
    F: Observable,
    G: Observable,
    psi,
    commutation_tol: float = COMMUTATION_TOL,
) -> QuantumProfile:
    """Compound entropies for two commuting observables measured on one state.

    On the shared eigenbasis the joint measurement is classical: the
    profile is exactly the classical one of the two eigenvalue partitions
    under the shared outcome distribution.
    """
    basis, f_vals, g_vals = _joint_eigenbasis(F, G, commutation_tol)
    v = density.validate_state(psi)
    if v.shape[0] != F.dim:
        raise DimensionMismatch(f"state dimension {v.shape[0]}, observable dimension {F.dim}")
    v = v / np.linalg.norm(v)
    p = np.abs(basis.conj().T @ v) ** 2
    pi_f = Observable(tuple(f_vals)).eigenvalue_partition()
    pi_g = Observable(tuple(g_vals)).eigenvalue_partition()
    dist = ProbDist(tuple(float(x) for x in p / p.sum()))
    return _profile_from_classical(classical.entropy_profile(pi_f, pi_g, dist))


def noncommuting_profile(
    F: Observable,
    G: Observable,
    psi2,
    method: str = "auto",
) -> QuantumProfile:
    """Compound entropies for two observables evaluated on a doubled state.

    ``psi2`` lives on the tensor square (dimension ``n^2``); the outcome
    weights are ``p(x, y) = |<x_i (x) y_j|psi2>|^2`` over the two
    eigenbases, and the six quantities are the two-set region sums of the
    eigenvalue partitions under that joint distribution.  No commutation is
    required.  ``method`` is forwarded to the two-set computation
    (``"regions"`` is the quadruple-sum oracle path).
    """
    if F.dim != G.dim:
        raise DimensionMismatch(f"observable dimensions {F.dim} and {G.dim} differ")
    n = F.dim
    v = density.validate_state(psi2)
    if v.shape[0] != n * n:
        raise DimensionMismatch(
            f"doubled state has dimension {v.shape[0]}, expected {n * n}"
        )
    v = v / np.linalg.norm(v)
    amp = F.basis_matrix().conj().T @ v.reshape(n, n) @ G.basis_matrix().conj()
    p = np.abs(amp) ** 2
    p = p / p.sum()
    joint = JointDist(tuple(tuple(float(x) for x in row) for row in p))
    prof = classical.twoset_profile(
        F.eigenvalue_partition(), G.eigenvalue_partition(), joint, method=method
    )
    return _profile_from_classical(prof)


_REGIONS = ("f", "g", "joint", "f_only", "g_only", "mutual")


def qudit_region_tuples(F: Observable, G: Observable, region: str) -> list:
    """Index 4-tuples ``(i, j, i2, j2)`` of the requested distinction region.

    Indices run over the two eigenbases; ``(i, j, i2, j2)`` is in the
    ``"f"`` region when the eigenvalue classes of ``i`` and ``i2`` differ,
    in ``"g"`` when those of ``j`` and ``j2`` differ, and the remaining
    regions are the boolean combinations (``"mutual"`` = both differ).
    """
    if region not in _REGIONS:
        raise ValueError(f"unknown region {region!r}; expected one of {_REGIONS}")
    if F.dim != G.dim:
        raise DimensionMismatch(f"observable dimensions {F.dim} and {G.dim} differ")
    n = F.dim
    fpart = F.eigenvalue_partition()
    gpart = G.eigenvalue_partition()
    fid = [fpart.block_containing(i) for i in range(n)]
    gid = [gpart.block_containing(j) for j in range(n)]
    out = []
    for i in range(n):
        for j in range(n):
            for i2 in range(n):
                for j2 in range(n):
                    df = fid[i] != fid[i2]
                    dg = gid[j] != gid[j2]
                    keep = {
                        "f": df,
                        "g": dg,
                        "joint": df or dg,
                        "f_only": df and not dg,
                        "g_only": dg and not df,
                        "mutual": df and dg,
                    }[region]
                    if keep:
                        out.append((i, j, i2, j2))
    return out


def mutual_qudit_tuples(F: Observable, G: Observable) -> list:
    """The mutual-distinction index set; nonempty iff both observables split."""
    return qudit_region_tuples(F, G, "mutual")


def noncommuting_profile_dense(F: Observable, G: Observable, psi2) -> QuantumProfile:
    """Dense-projector oracle for :func:`noncommuting_profile`.

    Builds, for each region, the explicit projector onto the span of the
    product vectors ``(x_i (x) y_j) (x) (x_i2 (x) y_j2)`` on the doubled
    doubled space and evaluates ``tr[P (rho (x) rho)]`` with full matrices.
    Exponentially sized, so guarded to dimension <= 4 (matrices up to
    256 x 256); it exists to validate the combinatorial reduction.
    """
    if F.dim != G.dim:
        raise DimensionMismatch(f"observable dimensions {F.dim} and {G.dim} differ")
    n = F.dim
    if n > 4:
        raise BoundExceeded(f"dense oracle materializes {n ** 4}^2 entries; limit is dim 4")
    v = density.validate_state(psi2)
    if v.shape[0] != n * n:
        raise DimensionMismatch(
            f"doubled state has dimension {v.shape[0]}, expected {n * n}"
        )
    v = v / np.linalg.norm(v)
    rho = np.outer(v, v.conj())
    big = np.kron(rho, rho)
    x = F.basis_matrix()
    y = G.basis_matrix()
    prod = {}
    for i in range(n):
        for j in range(n):
            prod[(i, j)] = np.kron(x[:, i], y[:, j])

    def region_value(region: str) -> float:
        tuples = qudit_region_tuples(F, G, region)
        if not tuples:
            return 0.0
        w = np.column_stack([np.kron(prod[(i, j)], prod[(i2, j2)]) for i, j, i2, j2 in tuples])
        proj = w @ w.conj().T
        return float(np.real(np.trace(proj @ big)))

    return QuantumProfile(
        h_f=region_value("f"),
        h_g=region_value("g"),
        h_joint=region_value("joint"),
        h_f_given_g=region_value("f_only"),
        h_g_given_f=region_value("g_only"),
        mutual=region_value("mutual"),
    )


def degeneracy_check(
    F: Observable,
    G: Observable,
    tol: float = EIGENVALUE_GROUP_TOL,
) -> list:
    """Accidental eigenvalue-product coincidences between two observables.

    Returns the class-index pairs ``((i, j), (i2, j2))`` with ``i != i2``,
    ``j != j2`` and ``value_i * value_j == value_i2 * value_j2`` (within
    ``tol`` for float values).  Empty means products separate the classes,
    so a product observable has no accidental degeneracy.
    """
    fv = F.class_values(tol)
    gv = G.class_values(tol)
    exact = all(_is_exact_number(v) for v in fv + gv)
    out = []
    cells = [(i, j) for i in range(len(fv)) for j in range(len(gv))]
    for a in range(len(cells)):
        i, j = cells[a]
        for b in range(a + 1, len(cells)):
            i2, j2 = cells[b]
            if i == i2 or j == j2:
                continue
            p1 = fv[i] * gv[j]
            p2 = fv[i2] * gv[j2]
            same = p1 == p2 if exact else abs(float(p1) - float(p2)) <= tol
            if same:
                out.append(((i, j), (i2, j2)))
    return out


# ---------------------------------------------------------- density matrices

def spectral_pair_bruteforce(lam: Sequence[float], mu: Sequence[float]) -> QuantumProfile:
    """Oracle: the six quantities as explicit quadruple sums over spectra.

    A draw is a pair of independent eigenvalue indices for each matrix;
    distinctions are index inequalities on each side.
    """
    lam = [float(x) for x in lam]
    mu = [float(x) for x in mu]
    sums = {"f": 0.0, "g": 0.0, "joint": 0.0, "f_only": 0.0, "g_only": 0.0, "mutual": 0.0}
    for i, li in enumerate(lam):
        for i2, li2 in enumerate(lam):
            for j, mj in enumerate(mu):
                for j2, mj2 in enumerate(mu):
                    w = li * li2 * mj * mj2
                    df = i != i2
                    dg = j != j2
                    if df:
                        sums["f"] += w
                    if dg:
                        sums["g"] += w
                    if df or dg:
                        sums["joint"] += w
                    if df and not dg:
                        sums["f_only"] += w
                    if dg and not df:
                        sums["g_only"] += w
                    if df and dg:
                        sums["mutual"] += w
    return QuantumProfile(
        h_f=sums["f"],
        h_g=sums["g"],
        h_joint=sums["joint"],
        h_f_given_g=sums["f_only"],
        h_g_given_f=sums["g_only"],
        mutual=sums["mutual"],
    )


def density_pair_profile(rho, tau, tol: float = ROUTE_TOL) -> QuantumProfile:
    """Compound entropies of an independent pair of density matrices.

    With purities ``a = tr[rho^2]`` and ``b = tr[tau^2]`` the closed forms
    are ``h_joint = 1 - ab``, ``h_f_given_g = (1 - a) b``,
    ``h_g_given_f = a (1 - b)`` and ``mutual = (1 - a)(1 - b)``.  For
    small dimensions the spectral quadruple-sum oracle is run alongside and
    disagreement raises :class:`InternalInconsistency`.
    """
    r = density.validate_density(rho)
    t = density.validate_density(tau)
    lam = np.clip(np.linalg.eigvalsh((r + r.conj().T) / 2), 0.0, None)
    mu = np.clip(np.linalg.eigvalsh((t + t.conj().T) / 2), 0.0, None)
    a = float(np.sum(lam ** 2))
    b = float(np.sum(mu ** 2))
    prof = QuantumProfile(
        h_f=1.0 - a,
        h_g=1.0 - b,
        h_joint=1.0 - a * b,
        h_f_given_g=(1.0 - a) * b,
        h_g_given_f=a * (1.0 - b),
        mutual=(1.0 - a) * (1.0 - b),
    )
    if (len(lam) * len(mu)) ** 2 <= 10 ** 6:
        brute = spectral_pair_bruteforce(lam, mu)
        for name in ("h_f", "h_g", "h_joint", "h_f_given_g", "h_g_given_f", "mutual"):
            x, y = getattr(prof, name), getattr(brute, name)
            if abs(x - y) > tol:
                raise InternalInconsistency(
                    f"density pair profile: closed form and quadruple sum "
                    f"disagree on {name}: {x!r} vs {y!r}"
                )
    return prof


def quantum_cross_entropy(rho, tau, tol: float = ROUTE_TOL) -> float:
    """``1 - tr[rho tau]``: two draws, one from each matrix, distinguished.

    Symmetric; equals the plain logical entropy on the diagonal.  The trace
    is cross-checked against its eigenbasis overlap expansion
    ``sum_ij lambda_i mu_j |<u_i|v_j>|^2``.
    """
    r = density.validate_density(rho)
    t = density.validate_density(tau)
    if r.shape != t.shape:
        raise DimensionMismatch(f"shapes {r.shape} and {t.shape} differ")
    overlap = float(np.real(np.trace(r @ t)))
    lam, u = np.linalg.eigh((r + r.conj().T) / 2)
    mu, v = np.linalg.eigh((t + t.conj().T) / 2)
    gram = np.abs(u.conj().T @ v) ** 2
    expansion = float(lam @ gram @ mu)
    if abs(overlap - expansion) > tol:
        raise InternalInconsistency(
            f"tr[rho tau] = {overlap!r} but its overlap expansion gives {expansion!r}"
        )
    return 1.0 - overlap


def hilbert_schmidt_distance(rho, tau) -> float:
    """``tr[(rho - tau)^2]``, the squared Hilbert-Schmidt norm of the gap."""
    r = density.validate_density(rho)
    t = density.validate_density(tau)
    if r.shape != t.shape:
        raise DimensionMismatch(f"shapes {r.shape} and {t.shape} differ")
    d = r - t
    return float(np.real(np.trace(d @ d)))


def quantum_hamming(rho, tau, tol: float = 1e-12) -> float:
    """Entropy-form distance ``2 h(rho||tau) - h(rho) - h(tau)``.

    Equals ``tr[rho^2] + tr[tau^2] - 2 tr[rho tau] = tr[(rho - tau)^2]``,
    which is asserted within ``tol``; nonnegative, and zero exactly when
    the two matrices coincide.
    """
    r = density.validate_density(rho)
    t = density.validate_density(tau)
    if r.shape != t.shape:
        raise DimensionMismatch(f"shapes {r.shape} and {t.shape} differ")
    a = float(np.real(np.trace(r @ r)))
    b = float(np.real(np.trace(t @ t)))
    c = float(np.real(np.trace(r @ t)))
    d = a + b - 2.0 * c
    hs = hilbert_schmidt_distance(r, t)
    if abs(d - hs) > tol:
        raise InternalInconsistency(
            f"distance forms disagree: trace form {d!r}, Hilbert-Schmidt {hs!r}"
        )
    return d
