"""Truncated two-mode Fock space and the operator algebra acting on it.

Coordinates are Pauli-matrix bilinears in two bosonic modes,

    x_j = lam * sigma^j_{ab} * adag_a a_b,

which close into su(2): [x_i, x_j] = 2i lam eps_ijk x_k.  States are
matrices on the same Fock space ("wave operators"), normed by a weighted
trace.  The free Hamiltonian H0 and the velocity operators V1..V3 plus the
companion V4 act on wave operators by left/right ladder multiplication with
a radial prefactor 1/(2r); r is realized as left multiplication by the
diagonal matrix lam*(N+1), the same weight that appears in the trace norm.

Truncation keeps total occupation n1+n2 <= n_max and drops creation matrix
elements that would leave the retained block, so operator identities hold
exactly only on interior blocks.  Every residual reported here is measured
on the block whose depth equals the number of ladder applications involved:
depth 1 for a single superoperator, depth 2 for a squared one.

Wave operators that represent functions of the coordinates commute with the
total number operator, i.e. they are block diagonal in n1+n2.  The cutoff
identity sum_i Vi^2 + V4^2 = 1/lam^2 holds on that sector (plane waves are
diagonal, hence inside it); random test states are drawn from it.
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import sparse

__all__ = [
    "FockSpace",
    "LadderOps",
    "CoordinateOps",
    "WaveOp",
    "SuperOp",
    "NCOperators",
    "build_space",
    "ladder_matrices",
    "coordinates",
    "nc_operators",
    "interior_mask",
    "block_max",
    "ladder_commutation_residual",
    "check_commutators",
    "self_adjoint_residual",
    "apply_X",
    "apply_H0",
    "apply_V",
    "apply_V4",
    "plane_wave",
    "eigen_residual",
    "linearity_residual",
    "check_cutoff_identity",
    "trace_norm",
    "random_waveop",
    "dump_operators",
]

_PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


@dataclass(frozen=True)
class FockSpace:
    """Basis |n1,n2> with n1+n2 <= n_max, graded lexicographic order.

    States are ordered by ascending total occupation, then ascending n1, so
    the block with total t occupies the contiguous index range starting at
    t*(t+1)/2.  The order is fixed; golden files depend on it.
    """

    n_max: int
    states: tuple

    @property
    def dim(self):
        return len(self.states)

    def index_of(self, n1, n2):
        """Basis index of |n1,n2>; inverse of ``states[i]``."""
        if n1 < 0 or n2 < 0 or n1 + n2 > self.n_max:
            raise ValueError(f"state ({n1},{n2}) outside truncation n_max={self.n_max}")
        t = n1 + n2
        return t * (t + 1) // 2 + n1

    def totals(self):
        """Total occupation n1+n2 per basis index."""
        return np.array([n1 + n2 for n1, n2 in self.states])


def build_space(n_max):
    """Truncated two-mode Fock space with dim (n_max+1)(n_max+2)/2."""
    if not isinstance(n_max, (int, np.integer)) or n_max < 1:
        raise ValueError(f"n_max must be an integer >= 1, got {n_max!r}")
    states = tuple(
        (n1, t - n1) for t in range(n_max + 1) for n1 in range(t + 1)
    )
    return FockSpace(n_max=int(n_max), states=states)


@dataclass(frozen=True, eq=False)
class LadderOps:
    """Annihilation/creation matrices; adag is the hard-cutoff transpose of a."""

    space: FockSpace
    a1: sparse.csr_array
    a2: sparse.csr_array
    adag1: sparse.csr_array
    adag2: sparse.csr_array


@lru_cache(maxsize=32)
def ladder_matrices(space):
    """Ladder matrices on the truncated space.

    a_alpha|n1,n2> = sqrt(n_alpha)|..,n_alpha-1,..| exactly; creation entries
    that would leave the retained block are dropped, which is automatic here
    because adag is the conjugate transpose of the retained a.
    """
    dim = space.dim
    mats = []
    for alpha in (0, 1):
        rows, cols, vals = [], [], []
        for j, (n1, n2) in enumerate(space.states):
            n = (n1, n2)[alpha]
            if n >= 1:
                dst = (n1 - 1, n2) if alpha == 0 else (n1, n2 - 1)
                rows.append(space.index_of(*dst))
                cols.append(j)
                vals.append(math.sqrt(n))
        mats.append(
            sparse.csr_array(
                (np.asarray(vals, dtype=complex), (rows, cols)), shape=(dim, dim)
            )
        )
    a1, a2 = mats
    return LadderOps(
        space=space, a1=a1, a2=a2,
        adag1=a1.conj().T.tocsr(), adag2=a2.conj().T.tocsr(),
    )


@dataclass(frozen=True, eq=False)
class CoordinateOps:
    """Coordinate matrices x_j = lam * sigma^j_{ab} adag_a a_b."""

    space: FockSpace
    lam: float
    x1: sparse.csr_array
    x2: sparse.csr_array
    x3: sparse.csr_array

    def as_tuple(self):
        return (self.x1, self.x2, self.x3)


def coordinates(space, lam):
    """Assemble the three coordinate matrices from the ladder matrices."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    lad = ladder_matrices(space)
    a = (lad.a1, lad.a2)
    adag = (lad.adag1, lad.adag2)
    xs = []
    for sig in _PAULI:
        x = sparse.csr_array((space.dim, space.dim), dtype=complex)
        for al in (0, 1):
            for be in (0, 1):
                if sig[al, be] != 0:
                    x = x + (lam * sig[al, be]) * (adag[al] @ a[be])
        xs.append(x.tocsr())
    return CoordinateOps(space=space, lam=float(lam), x1=xs[0], x2=xs[1], x3=xs[2])


@dataclass(frozen=True, eq=False)
class WaveOp:
    """A state: complex matrix over the Fock basis, with the scale lam."""

    space: FockSpace
    lam: float
    psi: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.psi, dtype=complex)
        if mat.shape != (self.space.dim, self.space.dim):
            raise ValueError(
                f"psi shape {mat.shape} does not match space dim {self.space.dim}"
            )
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        object.__setattr__(self, "psi", mat)


@dataclass(frozen=True, eq=False)
class SuperOp:
    """Linear map on wave operators: psi -> sum_k c_k * L_k psi R_k.

    ``terms`` is a tuple of (coef, left, right); a None factor is the
    identity.  Application is linear to round-off by construction.
    """

    space: FockSpace
    terms: tuple

    def apply_matrix(self, mat):
        if mat.shape != (self.space.dim, self.space.dim):
            raise ValueError(
                f"psi shape {mat.shape} does not match space dim {self.space.dim}"
            )
        out = np.zeros_like(mat, dtype=complex)
        for coef, left, right in self.terms:
            term = mat
            if left is not None:
                term = left @ term
            if right is not None:
                term = term @ right
            out += coef * term
        return out

    def __call__(self, psi):
        if isinstance(psi, WaveOp):
            return WaveOp(space=psi.space, lam=psi.lam, psi=self.apply_matrix(psi.psi))
        return self.apply_matrix(np.asarray(psi, dtype=complex))


@dataclass(frozen=True, eq=False)
class NCOperators:
    """The superoperators of the model at fixed (space, lam)."""

    space: FockSpace
    lam: float
    coords: CoordinateOps
    X: tuple      # X1, X2, X3: psi -> (x_i psi + psi x_i)/2
    H0: SuperOp   # psi -> 1/(2 lam^2 (N+1)) sum_a [adag_a, [a_a, psi]]
    V: tuple      # V1, V2, V3: psi -> i/(2 lam (N+1)) sigma^i_{ab} (adag_a psi a_b - a_b psi adag_a)
    V4: SuperOp   # psi -> 1/(2 lam (N+1)) sum_a (adag_a psi a_a + a_a psi adag_a)


@lru_cache(maxsize=32)
def nc_operators(space, lam):
    """Build (and cache) all superoperators for one (space, lam)."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    lam = float(lam)
    lad = ladder_matrices(space)
    crd = coordinates(space, lam)
    a = (lad.a1, lad.a2)
    adag = (lad.adag1, lad.adag2)
    tot = space.totals()

    # 1/(2r) with r = lam*(N+1), acting from the left.
    inv_2r = sparse.diags_array(1.0 / (2.0 * lam * (tot + 1.0)), format="csr").astype(complex)
    inv_2lamr = sparse.diags_array(1.0 / (2.0 * lam * lam * (tot + 1.0)), format="csr").astype(complex)

    X = tuple(
        SuperOp(space=space, terms=((0.5, x, None), (0.5, None, x)))
        for x in crd.as_tuple()
    )

    h_terms = []
    for al in (0, 1):
        h_terms.append((1.0, (inv_2lamr @ (adag[al] @ a[al])).tocsr(), None))
        h_terms.append((-1.0, (inv_2lamr @ adag[al]).tocsr(), a[al]))
        h_terms.append((-1.0, (inv_2lamr @ a[al]).tocsr(), adag[al]))
        h_terms.append((1.0, inv_2lamr, (a[al] @ adag[al]).tocsr()))
    H0 = SuperOp(space=space, terms=tuple(h_terms))

    V = []
    for sig in _PAULI:
        v_terms = []
        for al in (0, 1):
            for be in (0, 1):
                s = sig[al, be]
                if s != 0:
                    v_terms.append((1.0j * s, (inv_2r @ adag[al]).tocsr(), a[be]))
                    v_terms.append((-1.0j * s, (inv_2r @ a[be]).tocsr(), adag[al]))
        V.append(SuperOp(space=space, terms=tuple(v_terms)))

    v4_terms = []
    for al in (0, 1):
        v4_terms.append((1.0, (inv_2r @ adag[al]).tocsr(), a[al]))
        v4_terms.append((1.0, (inv_2r @ a[al]).tocsr(), adag[al]))
    V4 = SuperOp(space=space, terms=tuple(v4_terms))

    return NCOperators(space=space, lam=lam, coords=crd, X=X, H0=H0, V=tuple(V), V4=V4)


def interior_mask(space, depth):
    """Boolean mask of basis states with total occupation <= n_max - depth."""
    if depth < 0 or depth > space.n_max:
        raise ValueError(f"no interior block of depth {depth} for n_max={space.n_max}")
    return space.totals() <= space.n_max - depth


def block_max(mat, mask):
    """Largest entry magnitude of mat restricted to rows and columns in mask."""
    sub = np.asarray(mat)[np.ix_(mask, mask)]
    return float(np.max(np.abs(sub))) if sub.size else 0.0


def ladder_commutation_residual(space):
    """Max interior deviation of [a_alpha, adag_beta] from delta_ab * I."""
    lad = ladder_matrices(space)
    a = (lad.a1, lad.a2)
    adag = (lad.adag1, lad.adag2)
    mask = interior_mask(space, 1)
    eye = np.eye(space.dim)
    worst = 0.0
    for al in (0, 1):
        for be in (0, 1):
            comm = (a[al] @ adag[be] - adag[be] @ a[al]).toarray()
            if al == be:
                comm = comm - eye
            worst = max(worst, block_max(comm, mask))
    return worst


def check_commutators(space, lam):
    """Max interior residual of [x_i, x_j] - 2i lam eps_ijk x_k over all pairs."""
    if space.n_max < 2:
        raise ValueError("commutator check needs n_max >= 2 (no interior block)")
    crd = coordinates(space, lam)
    xs = [x.toarray() for x in crd.as_tuple()]
    mask = interior_mask(space, 1)
    worst = 0.0
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        resid = xs[i] @ xs[j] - xs[j] @ xs[i] - 2.0j * lam * xs[k]
        worst = max(worst, block_max(resid, mask))
    return worst


def self_adjoint_residual(space, lam):
    """Max interior deviation of each x_j from its conjugate transpose."""
    crd = coordinates(space, lam)
    mask = interior_mask(space, 1)
    return max(
        block_max(x.toarray() - x.conj().T.toarray(), mask) for x in crd.as_tuple()
    )


def _ops_for(psi):
    return nc_operators(psi.space, psi.lam)


def apply_X(i, psi):
    """Coordinate superoperator X_i psi = (x_i psi + psi x_i)/2, i in {1,2,3}."""
    if i not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {i}")
    return _ops_for(psi).X[i - 1](psi)


def apply_H0(psi):
    """Free Hamiltonian H0 psi = 1/(2 lam^2 (N+1)) sum_a [adag_a, [a_a, psi]]."""
    return _ops_for(psi).H0(psi)


def apply_V(i, psi):
    """Velocity superoperator V_i, i in {1,2,3}."""
    if i not in (1, 2, 3):
        raise ValueError(f"axis must be 1, 2 or 3, got {i}")
    return _ops_for(psi).V[i - 1](psi)


def apply_V4(psi):
    """Companion superoperator V4; plane waves are eigenstates with cos(lam q)/lam."""
    return _ops_for(psi).V4(psi)


def plane_wave(space, q, lam):
    """Diagonal wave operator with entries exp(i lam q (n1 - n2))."""
    phases = np.array([np.exp(1.0j * lam * q * (n1 - n2)) for n1, n2 in space.states])
    return WaveOp(space=space, lam=float(lam), psi=np.diag(phases))


def eigen_residual(op, psi, nu, depth=1):
    """Max entry magnitude of (op(psi) - nu*psi) on the depth-interior block."""
    resid = op.apply_matrix(psi.psi) - nu * psi.psi
    return block_max(resid, interior_mask(psi.space, depth))


def linearity_residual(op, psi1, psi2, alpha, beta):
    """Max entry magnitude of op(a*p1 + b*p2) - a*op(p1) - b*op(p2)."""
    combined = op.apply_matrix(alpha * psi1.psi + beta * psi2.psi)
    split = alpha * op.apply_matrix(psi1.psi) + beta * op.apply_matrix(psi2.psi)
    return float(np.max(np.abs(combined - split)))


def check_cutoff_identity(psi):
    """Max residual of (sum_i V_i^2 + V4^2 - 1/lam^2) psi, doubly interior block.

    Two ladder applications are composed, so the statement is exact only for
    row and column totals <= n_max - 2.  It also requires psi to be number
    conserving (plane waves and anything produced by random_waveop are).
    """
    space = psi.space
    if space.n_max < 2:
        raise ValueError("cutoff identity needs n_max >= 2 (no doubly interior block)")
    ops = nc_operators(space, psi.lam)
    acc = -psi.psi / (psi.lam * psi.lam)
    for v in ops.V:
        acc = acc + v.apply_matrix(v.apply_matrix(psi.psi))
    acc = acc + ops.V4.apply_matrix(ops.V4.apply_matrix(psi.psi))
    return block_max(acc, interior_mask(space, 2))


def trace_norm(psi):
    """Squared trace norm 4 pi lam^3 Tr[psi^dag (N+1) psi]; zero iff psi = 0."""
    weights = psi.space.totals() + 1.0
    quad = float(np.sum(weights[:, None] * np.abs(psi.psi) ** 2))
    return 4.0 * math.pi * psi.lam**3 * quad


def random_waveop(space, lam, seed, hermitian=True):
    """Random wave operator in the physical (number-conserving) sector.

    Functions of the coordinates commute with the total number operator, so
    states are block diagonal in n1+n2; entries are complex Gaussian,
    Hermitized when requested.  Seeds are fixed by the callers.
    """
    rng = np.random.default_rng(seed)
    dim = space.dim
    mat = rng.standard_normal((dim, dim)) + 1.0j * rng.standard_normal((dim, dim))
    tot = space.totals()
    mat = np.where(tot[:, None] == tot[None, :], mat, 0.0)
    if hermitian:
        mat = 0.5 * (mat + mat.conj().T)
    return WaveOp(space=space, lam=float(lam), psi=mat)


def _sparse_triplets(mat):
    coo = mat.tocoo()
    order = np.lexsort((coo.col, coo.row))
    return [
        [int(coo.row[k]), int(coo.col[k]), float(coo.data[k].real), float(coo.data[k].imag)]
        for k in order
    ]


def dump_operators(space, lam):
    """JSON-able dump of the operator matrices as (row, col, re, im) triplets."""
    lad = ladder_matrices(space)
    crd = coordinates(space, lam)
    return {
        "schema": 1,
        "n_max": space.n_max,
        "dim": space.dim,
        "lambda": float(lam),
        "basis": [[n1, n2] for n1, n2 in space.states],
        "operators": {
            "a1": _sparse_triplets(lad.a1),
            "a2": _sparse_triplets(lad.a2),
            "adag1": _sparse_triplets(lad.adag1),
            "adag2": _sparse_triplets(lad.adag2),
            "x1": _sparse_triplets(crd.x1),
            "x2": _sparse_triplets(crd.x2),
            "x3": _sparse_triplets(crd.x3),
        },
    }
