"""Symmetry classes of tensors and derivatives of the induced operator.

For an irreducible character chi of S_m and V = C^n, the symmetrizer

    K_chi = (chi(id)/m!) * sum_sigma chi(sigma) P(sigma)

is an orthogonal projection of the m-fold tensor power onto the symmetry
class V_chi, where P(sigma) permutes Kronecker factors,
``P(sigma)(v_1 (x) ... (x) v_m) = v_{sigma^{-1}(1)} (x) ... (x) v_{sigma^{-1}(m)}``.
Columns of the assembled projector are the decomposable symmetrized
tensors e*_alpha in product-basis coordinates.

The class carries three distinguished index sets:

* omega: alpha whose e*_alpha is nonzero (equivalently, chi majorizes the
  multiplicity partition of alpha);
* delta_bar: the weakly increasing members of omega (one per orbit);
* delta_hat: a basis extension delta_bar <= delta_hat <= omega, chosen by
  a greedy lexicographic rank sweep, so {e*_alpha : alpha in delta_hat} is
  a basis of V_chi.

All operators on V_chi are returned as matrices in the orthonormal basis
obtained by Gram-Schmidt from that e*-basis, so operator norms equal
spectral norms of coordinate matrices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .combinat import (
    MultiIndex,
    Partition,
    all_permutations,
    enumerate_maps,
    majorizes,
    multiplicity_partition,
)
from .denselin import as_matrix, dimension_cap, gram_schmidt, kron_all, kron_power
from .errors import DomainError, NumericError, ResourceError
from .symgroup import char_table, character_sum_over_stabilizer, degree

__all__ = [
    "SymmetryClass",
    "build_symmetry_class",
    "delta_hat_basis",
    "symmetrized_kron",
    "sym_op_product",
    "k_chi_matrix",
    "dk_kchi",
    "MAX_TENSOR_FACTORS",
    "RANK_EXTENSION_TOL",
]

MAX_TENSOR_FACTORS = 6
RANK_EXTENSION_TOL = 1e-9


@dataclass(frozen=True)
class SymmetryClass:
    """The symmetry class of C^n associated with an irreducible character.

    ``projector`` is the n^m x n^m symmetrizer; ``inclusion`` holds the
    orthonormal basis of the class as columns in product-basis coordinates;
    ``basis_b`` is the upper triangular change of basis expressing those
    orthonormal vectors through the e*-basis indexed by ``delta_hat``.
    """

    chi: Partition
    n: int
    projector: np.ndarray
    domain: tuple[MultiIndex, ...]
    omega: tuple[MultiIndex, ...]
    delta_bar: tuple[MultiIndex, ...]
    delta_hat: tuple[MultiIndex, ...]
    basis_b: np.ndarray
    inclusion: np.ndarray
    _position: dict = field(repr=False)

    @property
    def m(self) -> int:
        return self.chi.size

    @property
    def dim(self) -> int:
        """Dimension of the symmetry class."""
        return len(self.delta_hat)

    def index_of(self, alpha: MultiIndex) -> int:
        """Position of ``alpha`` in the lexicographic listing of the domain."""
        try:
            return self._position[alpha]
        except KeyError:
            raise DomainError(
                f"{alpha} is not a multi-index of this class (m={self.m}, n={self.n})"
            ) from None

    def estar_coords(self, alpha: MultiIndex) -> np.ndarray:
        """Coordinates of e*_alpha in the product basis (a projector column)."""
        return self.projector[:, self.index_of(alpha)].copy()


def build_symmetry_class(chi: Partition, n: int) -> SymmetryClass:
    """Assemble the symmetry class of C^n for the character labeled by chi."""
    m = chi.size
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if m > MAX_TENSOR_FACTORS:
        raise ResourceError(
            f"tensor power capped at m <= {MAX_TENSOR_FACTORS}, got m={m}"
        )
    cap = dimension_cap()
    if n**m > cap:
        raise ResourceError(f"n^m = {n**m} exceeds the dimension cap {cap}")
    if chi.length > n:
        raise DomainError(
            f"symmetry class is zero: chi={chi} has {chi.length} parts but n={n}"
        )

    table = char_table(m)
    domain = enumerate_maps("gamma", m, n)
    size = n**m
    entries0 = np.array([a.entries for a in domain], dtype=np.intp) - 1
    weights = np.array([n ** (m - 1 - i) for i in range(m)], dtype=np.intp)
    deg = degree(chi)

    projector = np.zeros((size, size), dtype=np.complex128)
    cols = np.arange(size)
    for sigma in all_permutations(m):
        value = table.value(chi, sigma.cycle_type())
        if value == 0:
            continue
        inv = np.array(sigma.inverse().images, dtype=np.intp) - 1
        rows = entries0[:, inv] @ weights
        projector[rows, cols] += value
    projector *= deg / math.factorial(m)

    omega = []
    for alpha in domain:
        by_sum = character_sum_over_stabilizer(chi, alpha) != 0
        by_majorization = majorizes(chi, multiplicity_partition(alpha))
        if by_sum != by_majorization:
            raise NumericError(
                f"membership routes disagree at alpha={alpha}: "
                f"character sum says {by_sum}, majorization says {by_majorization}"
            )
        if by_sum:
            omega.append(alpha)
    if not omega:
        raise NumericError("no surviving symmetrized tensors despite l(chi) <= n")

    position = {alpha: i for i, alpha in enumerate(domain)}
    delta_bar = tuple(a for a in omega if a.is_weakly_increasing())
    delta_hat = _greedy_basis(projector, omega, position)
    if not set(delta_bar) <= set(delta_hat):
        raise NumericError("basis sweep dropped an orbit representative")

    columns = projector[:, [position[a] for a in delta_hat]]
    inclusion, basis_b = gram_schmidt(columns)

    return SymmetryClass(
        chi=chi,
        n=n,
        projector=projector,
        domain=domain,
        omega=tuple(omega),
        delta_bar=delta_bar,
        delta_hat=delta_hat,
        basis_b=basis_b,
        inclusion=inclusion,
        _position=position,
    )


def _greedy_basis(
    projector: np.ndarray,
    omega: list[MultiIndex],
    position: dict,
) -> tuple[MultiIndex, ...]:
    # Sweep omega in lexicographic order, keeping alpha whenever e*_alpha
    # enlarges the span.  Distinct orbits are orthogonal, so the first
    # element seen from each orbit (its weakly increasing representative)
    # always survives.
    size = projector.shape[0]
    rank = int(round(float(np.real(np.trace(projector)))))
    basis = np.zeros((size, 0), dtype=np.complex128)
    kept = []
    for alpha in omega:
        if basis.shape[1] == rank:
            break
        v = projector[:, position[alpha]]
        w = v - basis @ (basis.conj().T @ v)
        w = w - basis @ (basis.conj().T @ w)
        norm = float(np.linalg.norm(w))
        if norm > RANK_EXTENSION_TOL:
            kept.append(alpha)
            basis = np.hstack([basis, (w / norm)[:, None]])
    if len(kept) != rank:
        raise NumericError(
            f"rank sweep found {len(kept)} basis tensors, projector rank is {rank}"
        )
    return tuple(kept)


def delta_hat_basis(sc: SymmetryClass) -> tuple[MultiIndex, ...]:
    """The lexicographic basis extension delta_bar <= delta_hat <= omega."""
    return sc.delta_hat


def _check_ops(sc: SymmetryClass, ops, expected: int) -> list[np.ndarray]:
    mats = [as_matrix(op, square=True) for op in ops]
    if len(mats) != expected:
        raise DomainError(f"expected {expected} operators, got {len(mats)}")
    for mat in mats:
        if mat.shape != (sc.n, sc.n):
            raise DomainError(
                f"operator of shape {mat.shape} does not act on C^{sc.n}"
            )
    return mats


def symmetrized_kron(ops) -> np.ndarray:
    """The symmetrized tensor product (1/m!) sum_sigma X^{sigma(1)} (x) ... (x) X^{sigma(m)}.

    Permutations that pick equal factors in the same slots give equal
    Kronecker products, so the sum runs over the distinct arrangements of
    the multiset of factors (in sorted order, for bit-stable results) with
    the common multiplicity as weight.
    """
    mats = [as_matrix(op, square=True) for op in ops]
    if not mats:
        raise DomainError("symmetrized product needs at least one factor")
    m = len(mats)
    reps: list[np.ndarray] = []
    labels: list[int] = []
    for mat in mats:
        for i, rep in enumerate(reps):
            if mat.shape == rep.shape and np.array_equal(mat, rep):
                labels.append(i)
                break
        else:
            labels.append(len(reps))
            reps.append(mat)
    arrangements = sorted(set(itertools.permutations(labels)))
    total = None
    for arrangement in arrangements:
        term = kron_all([reps[i] for i in arrangement])
        total = term if total is None else total + term
    return total / len(arrangements)


def sym_op_product(sc: SymmetryClass, ops) -> np.ndarray:
    """The compression of the symmetrized tensor product to the class.

    Takes m operators on C^n and returns the |delta_hat| x |delta_hat|
    matrix of X^1 * ... * X^m in the orthonormal basis; the result is
    invariant under permuting the operators.
    """
    mats = _check_ops(sc, ops, sc.m)
    middle = symmetrized_kron(mats)
    return sc.inclusion.conj().T @ middle @ sc.inclusion


def k_chi_matrix(sc: SymmetryClass, a) -> np.ndarray:
    """Matrix of the induced operator on the class in the orthonormal basis.

    The class is invariant under the m-fold Kronecker power of ``a``, so
    the compression of that power is exactly the induced operator; the
    map is multiplicative in ``a``.
    """
    (mat,) = _check_ops(sc, [a], 1)
    power = kron_power(mat, sc.m)
    return sc.inclusion.conj().T @ power @ sc.inclusion


def dk_kchi(sc: SymmetryClass, t, xs) -> np.ndarray:
    """k-th directional derivative of the induced-operator map at ``t``.

    With k = len(xs) directions the value is
    ``(m!/(m-k)!) * t * ... * t * x^1 * ... * x^k`` (m-k copies of t in the
    symmetrized compressed product); it vanishes identically for k > m,
    and for k = m it does not depend on ``t``.  k = 0 returns the induced
    operator itself.
    """
    (t_mat,) = _check_ops(sc, [t], 1)
    x_mats = [as_matrix(x, square=True) for x in xs]
    for mat in x_mats:
        if mat.shape != (sc.n, sc.n):
            raise DomainError(
                f"direction of shape {mat.shape} does not act on C^{sc.n}"
            )
    k = len(x_mats)
    if k > sc.m:
        return np.zeros((sc.dim, sc.dim), dtype=np.complex128)
    factor = math.factorial(sc.m) // math.factorial(sc.m - k)
    return factor * sym_op_product(sc, [t_mat] * (sc.m - k) + x_mats)
