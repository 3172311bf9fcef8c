"""Conjugacy classes of self-adjoint operators, encoded as eigen-flags.

A class is fixed by a signature: distinct eigenvalues a_i from the fixed
subfield and eigenspace dimensions n_i.  An operator in the class is the
same data as its eigen-flag, an ordered tuple of mutually orthogonal
nondegenerate subspaces X_i with dim X_i = n_i spanning the ambient
space; the matrix is sum a_i P_{X_i}.

Two operators A, B in one class are adjacent when

  (rank condition)       rank(B - A) = 2, and
  (invariance condition) Img(B - A) and Ker(B - A) are invariant
                         under both A and B.

The geometric counterpart: exactly two flag slots move, each to an
adjacent subspace of the same dimension (intersection a hyperplane in
both).  The equivalence of the two descriptions is checked exhaustively
over finite backends in the test suite, not assumed here.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import enumeration
from .linalg import Matrix, Subspace, is_invariant, rank_of_rows


class NotInClassError(ValueError):
    """Matrix does not decompose with the requested spectrum and dims."""


@dataclass(frozen=True)
class ClassSignature:
    """Spectrum and eigenspace dimensions (sigma, d); slots are 0-based."""

    field: object
    sigma: tuple
    dims: tuple

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "dims", tuple(self.dims))
        if len(self.sigma) != len(self.dims):
            raise ValueError("sigma and dims must have equal length")
        if len(self.sigma) < 2:
            raise ValueError("a class needs at least two eigenvalues")
        if len(set(self.sigma)) != len(self.sigma):
            raise ValueError("eigenvalues must be pairwise distinct")
        for a in self.sigma:
            if not self.field.is_fixed(a):
                raise ValueError("eigenvalues must lie in the fixed subfield")
        if any(n < 1 for n in self.dims):
            raise ValueError("eigenspace dimensions must be positive")
        if self.ambient < 3:
            raise ValueError("ambient dimension must be at least 3")

    @property
    def ambient(self):
        return sum(self.dims)

    @property
    def k(self):
        return len(self.dims)

    def contracted(self, i, j):
        """Merge slot i into slot j: n_j grows by n_i, a_i disappears."""
        if i == j:
            raise ValueError("contraction needs two distinct slots")
        if self.k < 3:
            raise ValueError("contraction of a two-slot signature leaves no class")
        sigma = tuple(a for t, a in enumerate(self.sigma) if t != i)
        dims = list(self.dims)
        dims[j] += dims[i]
        del dims[i]
        return ClassSignature(self.field, sigma, tuple(dims))

    def slot_after_contraction(self, i, j):
        """Index of slot j in the contracted signature."""
        return j - 1 if i < j else j

    def to_json(self):
        sj = self.field.scalar_to_json
        return {"sigma": [sj(a) for a in self.sigma], "dims": list(self.dims)}

    @classmethod
    def from_json(cls, field, obj):
        sf = field.scalar_from_json
        return cls(field, tuple(sf(a) for a in obj["sigma"]), tuple(obj["dims"]))


@dataclass(frozen=True)
class SdPermutation:
    """Permutation of slots preserving eigenspace dimensions."""

    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("not a permutation")

    def validate_for(self, sig: ClassSignature):
        if len(self.images) != sig.k:
            raise ValueError("permutation size does not match signature")
        for i, im in enumerate(self.images):
            if sig.dims[i] != sig.dims[im]:
                raise ValueError("permutation does not preserve dimensions")

    def __call__(self, i):
        return self.images[i]


class EigenFlag:
    """Ordered orthogonal decomposition carrying one operator of a class."""

    __slots__ = ("signature", "spaces", "_matrix", "_key")

    def __init__(self, signature: ClassSignature, spaces, check=True):
        spaces = tuple(spaces)
        self.signature = signature
        self.spaces = spaces
        self._matrix = None
        self._key = None
        if check:
            self._validate()

    def _validate(self):
        sig = self.signature
        if len(self.spaces) != sig.k:
            raise NotInClassError("one subspace per slot required")
        for n, X in zip(sig.dims, self.spaces):
            if X.ambient != sig.ambient:
                raise NotInClassError("subspace has wrong ambient dimension")
            if X.dim != n:
                raise NotInClassError("subspace dimension does not match signature")
            if not X.is_nondegenerate():
                raise NotInClassError("eigenspaces must be nondegenerate")
        for r in range(sig.k):
            for s in range(r + 1, sig.k):
                if not self.spaces[r].is_orthogonal_to(self.spaces[s]):
                    raise NotInClassError("eigenspaces must be mutually orthogonal")
        # orthogonal nondegenerate spaces are independent, so dims suffice
        if sum(X.dim for X in self.spaces) != sig.ambient:
            raise NotInClassError("eigenspaces must span the ambient space")

    def matrix(self) -> Matrix:
        if self._matrix is None:
            f = self.signature.field
            acc = Matrix.zero(f, self.signature.ambient)
            for a, X in zip(self.signature.sigma, self.spaces):
                acc = acc + X.projection().scale(a)
            self._matrix = acc
        return self._matrix

    def key(self):
        if self._key is None:
            self._key = tuple(X.rows for X in self.spaces)
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, EigenFlag)
            and self.signature == other.signature
            and self.key() == other.key()
        )

    def __hash__(self):
        return hash(self.key())

    def map_spaces(self, fn, check=True):
        """New flag in the same class with fn applied to every slot."""
        return EigenFlag(self.signature, [fn(X) for X in self.spaces], check=check)

    def permute_slots(self, delta: SdPermutation):
        """Slot i of the result is the old slot delta(i)."""
        delta.validate_for(self.signature)
        return EigenFlag(
            self.signature, [self.spaces[delta(i)] for i in range(self.signature.k)],
            check=False,
        )

    def to_json(self):
        return {
            "signature": self.signature.to_json(),
            "spaces": [X.to_json() for X in self.spaces],
        }

    @classmethod
    def from_json(cls, field, obj):
        sig = ClassSignature.from_json(field, obj["signature"])
        return cls(sig, [Subspace.from_json(field, s) for s in obj["spaces"]])

    def __repr__(self):
        return f"EigenFlag{self.spaces!r}"


def assemble_matrix(flag: EigenFlag) -> Matrix:
    return flag.matrix()


def coordinate_flag(sig: ClassSignature) -> EigenFlag:
    """The flag whose slots are consecutive standard-basis slices."""
    f = sig.field
    spaces = []
    start = 0
    for d in sig.dims:
        rows = [
            tuple(f.one if c == r else f.zero for c in range(sig.ambient))
            for r in range(start, start + d)
        ]
        spaces.append(Subspace(f, sig.ambient, rows))
        start += d
    return EigenFlag(sig, spaces)


def flag_from_matrix(sig: ClassSignature, M: Matrix) -> EigenFlag:
    """Recover the eigen-flag of M, or raise NotInClassError."""
    f = sig.field
    if not M.is_hermitian():
        raise NotInClassError("matrix is not self-adjoint")
    spaces = []
    ident = Matrix.identity(f, sig.ambient)
    for a, n in zip(sig.sigma, sig.dims):
        K = (M - ident.scale(a)).kernel()
        if K.dim != n:
            raise NotInClassError(
                f"eigenspace dimension {K.dim} does not match required {n}"
            )
        spaces.append(K)
    try:
        return EigenFlag(sig, spaces)
    except ValueError as e:
        raise NotInClassError(str(e)) from None


def difference_rows(a: EigenFlag, b: EigenFlag):
    f = a.signature.field
    sub = f.sub
    return [
        [sub(x, y) for x, y in zip(rb, ra)]
        for ra, rb in zip(a.matrix().rows, b.matrix().rows)
    ]


def _check_same_class(a, b):
    if a.signature != b.signature:
        raise ValueError("flags lie in different classes")


def rank_condition(a: EigenFlag, b: EigenFlag) -> bool:
    """rank(B - A) = 2."""
    _check_same_class(a, b)
    f = a.signature.field
    return rank_of_rows(f, difference_rows(a, b)) == 2


def invariance_condition(a: EigenFlag, b: EigenFlag) -> bool:
    """Img(B - A) and Ker(B - A) invariant under both operators."""
    _check_same_class(a, b)
    f = a.signature.field
    D = Matrix(f, difference_rows(a, b))
    img = D.image()
    ker = D.kernel()
    for op in (a.matrix(), b.matrix()):
        if not is_invariant(op.rows, f, img):
            return False
        if not is_invariant(op.rows, f, ker):
            return False
    return True


def adjacent(a: EigenFlag, b: EigenFlag) -> bool:
    """The defining test: rank condition plus invariance condition."""
    return rank_condition(a, b) and invariance_condition(a, b)


def adjacency_slots(a: EigenFlag, b: EigenFlag):
    """The geometric test: the moved slot pair (i, j), or None.

    Returns the unique pair of slots where the eigenspaces differ,
    provided exactly two differ and each moved to an adjacent subspace.
    """
    _check_same_class(a, b)
    moved = [t for t, (X, Y) in enumerate(zip(a.spaces, b.spaces)) if X != Y]
    if len(moved) != 2:
        return None
    i, j = moved
    if not a.spaces[i].adjacent_to(b.spaces[i]):
        return None
    if not a.spaces[j].adjacent_to(b.spaces[j]):
        return None
    return (i, j)


def contract(flag: EigenFlag, i, j) -> EigenFlag:
    """Merge slot i into slot j; the new eigenspace there is X_i + X_j.

    The operator identity matrix(A) = matrix(result) + (a_i - a_j) P_{X_i}
    holds by construction and is exercised in tests.
    """
    sig = flag.signature
    new_sig = sig.contracted(i, j)
    spaces = list(flag.spaces)
    merged = spaces[j].plus(spaces[i])
    spaces[j] = merged
    del spaces[i]
    return EigenFlag(new_sig, spaces, check=False)


def fiber(T: EigenFlag, i, j, sig: ClassSignature):
    """All flags of sig that contract to T at (i, j).  Finite backends only.

    Splits the merged eigenspace W into a nondegenerate n_i-part X and its
    relative orthocomplement; X runs over all admissible subspaces of W.
    """
    if not sig.field.is_finite:
        raise ValueError("fiber enumeration requires a finite backend")
    if T.signature != sig.contracted(i, j):
        raise ValueError("flag does not lie in the contracted class")
    pos = sig.slot_after_contraction(i, j)
    W = T.spaces[pos]
    out = []
    for X in enumeration.nondegenerate_subspaces_within(W, sig.dims[i]):
        R = W.intersect(X.orthocomplement())
        if R.dim != W.dim - X.dim or not R.is_nondegenerate():
            continue
        spaces = list(T.spaces)
        spaces[pos] = R
        spaces.insert(i, X)
        out.append(EigenFlag(sig, spaces, check=False))
    return out


def enumerate_class(sig: ClassSignature):
    """Every eigen-flag of the class, each exactly once.  Finite backends."""
    if not sig.field.is_finite:
        raise ValueError("class enumeration requires a finite backend")
    flags = [
        EigenFlag(sig, spaces, check=False)
        for spaces in enumeration.orthogonal_decompositions(
            sig.field, sig.ambient, sig.dims
        )
    ]
    flags.sort(key=lambda fl: fl.key())
    return tuple(flags)


@dataclass
class PairCensus:
    """Dual classification of every unordered pair of a flag list."""

    total: int
    rank_other: int          # rank of the difference is not 2
    adjacent_count: int      # rank and invariance conditions both hold
    rank_only: list          # rank 2 but invariance fails, as index pairs
    edges: list              # ((u, v), (i, j)) for adjacent pairs
    mismatches: list         # pairs where conditions and geometry disagree

    @property
    def rank_only_count(self):
        return len(self.rank_only)


def _census_row(f, flags, mats, u):
    """Classify the pairs (u, v) for v > u; one unit of census work."""
    sub = f.sub
    Au = mats[u]
    fu = flags[u]
    rank_other = 0
    adjacent_count = 0
    rank_only = []
    edges = []
    mismatches = []
    for v in range(u + 1, len(flags)):
        rows = [
            [sub(x, y) for x, y in zip(rb, ra)]
            for ra, rb in zip(Au, mats[v])
        ]
        slots = adjacency_slots(fu, flags[v])
        if rank_of_rows(f, rows) != 2:
            rank_other += 1
            if slots is not None:
                mismatches.append((u, v))
            continue
        if invariance_condition(fu, flags[v]):
            adjacent_count += 1
            edges.append(((u, v), slots))
            if slots is None:
                mismatches.append((u, v))
        else:
            rank_only.append((u, v))
            if slots is not None:
                mismatches.append((u, v))
    return rank_other, adjacent_count, rank_only, edges, mismatches


def classify_pairs(flags, workers=1) -> PairCensus:
    """Compare the condition-based and geometric adjacency on all pairs.

    Every pair gets both verdicts computed independently; a disagreement
    lands in `mismatches` (none are expected, the tests assert so).
    Leading indices can spread over a thread pool; the merge runs in
    index order, so the census never depends on the worker count.
    """
    flags = list(flags)
    n = len(flags)
    if n == 0:
        return PairCensus(0, 0, 0, [], [], [])
    f = flags[0].signature.field
    mats = [fl.matrix().rows for fl in flags]
    if workers and workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(
                pool.map(lambda u: _census_row(f, flags, mats, u), range(n)))
    else:
        partials = [_census_row(f, flags, mats, u) for u in range(n)]
    return PairCensus(
        n * (n - 1) // 2,
        sum(p[0] for p in partials),
        sum(p[1] for p in partials),
        [pair for p in partials for pair in p[2]],
        [e for p in partials for e in p[3]],
        [m for p in partials for m in p[4]],
    )
