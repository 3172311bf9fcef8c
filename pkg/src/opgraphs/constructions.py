"""Natural vertex maps of class graphs and the groups they generate.

Isometries of the form, automorphisms of the scalar star-field fixing
the spectrum, and dimension-preserving slot permutations all act on a
class; over a finite field the subgroup of the graph automorphism
group they generate is computed exactly.  The module also carries the
two-slot orthocomplement twist, the independent-pair swap, and the
one-sided path obstruction.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

from .autgroup import StabChain, is_automorphism
from .linalg import Matrix, Subspace, herm_form, relative_orthocomplement
from .spectral import EigenFlag, SdPermutation, adjacency_slots


class ConstructionError(RuntimeError):
    """A construction's preconditions fail on the given data."""


def is_isometry(field, M: Matrix) -> bool:
    """Whether M preserves the form: M* M = I."""
    n = len(M.rows)
    return (M.conj_transpose() @ M) == Matrix.identity(field, n)


def _norm_one_vectors(field, n):
    out = []
    for v in product(field.elements(), repeat=n):
        if herm_form(field, v, v) == field.one:
            out.append(v)
    return out


@lru_cache(maxsize=None)
def _unitary_group_cached(p, e, n):
    from .starfield import galois_field

    field = galois_field(p, e)
    vectors = _norm_one_vectors(field, n)
    group = []

    def extend(cols):
        if len(cols) == n:
            rows = tuple(tuple(cols[c][r] for c in range(n)) for r in range(n))
            group.append(Matrix(field, rows))
            return
        for v in vectors:
            if all(herm_form(field, v, c) == field.zero for c in cols):
                extend(cols + (v,))

    extend(())
    return tuple(group)


def unitary_group(field, n):
    """All isometries of the standard form on field^n, built column by column."""
    if not field.is_finite:
        raise ConstructionError("isometry enumeration needs a finite star-field")
    return _unitary_group_cached(field.p, field.e, n)


@lru_cache(maxsize=None)
def _unitary_generators_cached(p, e, n):
    from .starfield import galois_field

    field = galois_field(p, e)
    group = _unitary_group_cached(p, e, n)
    target = len(group)
    ordered = sorted(group, key=lambda M: M.rows)
    ident = Matrix.identity(field, n)

    def closure_size(gens):
        seen = {ident.rows}
        frontier = [ident]
        while frontier:
            M = frontier.pop()
            for G in gens:
                P = G @ M
                if P.rows not in seen:
                    seen.add(P.rows)
                    frontier.append(P)
            if len(seen) == target:
                return target
        return len(seen)

    gens = []
    have = 1
    for M in ordered:
        if have == target:
            break
        size = closure_size(gens + [M])
        if size > have:
            gens.append(M)
            have = size
    return tuple(gens)


def unitary_generators(field, n):
    """A small deterministic generating set: greedy closure over the
    isometries in row order."""
    if not field.is_finite:
        raise ConstructionError("isometry enumeration needs a finite star-field")
    return _unitary_generators_cached(field.p, field.e, n)


# ---------------------------------------------------------------------------
# vertex maps of a finite class graph


def _graph_perm(graph, image_fn):
    out = []
    for flag in graph.vertices:
        img = image_fn(flag)
        v = graph.index.get(img.key())
        if v is None:
            raise ConstructionError("image flag is not a vertex of the class")
        out.append(v)
    return tuple(out)


def linear_vertex_map(graph, M: Matrix):
    """Vertex permutation from an invertible linear map sending the class
    into itself (slotwise images)."""
    return _graph_perm(
        graph,
        lambda flag: flag.map_spaces(
            lambda S: S.map_rows(lambda row: tuple(M.apply(row))), check=False))


def field_automorphism_vertex_map(graph, phi):
    """Vertex permutation from a star-field automorphism fixing the spectrum."""
    sig = graph.vertices[0].signature
    for a in sig.sigma:
        if phi(a) != a:
            raise ConstructionError("field automorphism moves an eigenvalue")
    return _graph_perm(
        graph,
        lambda flag: flag.map_spaces(
            lambda S: S.map_rows(lambda row: tuple(phi(x) for x in row)),
            check=False))


def slot_permutation_vertex_map(graph, delta: SdPermutation):
    """Vertex permutation from a dimension-preserving slot relabeling."""
    return _graph_perm(graph, lambda flag: flag.permute_slots(delta))


def sd_generators(sig):
    """Transpositions generating the dimension-preserving slot permutations."""
    gens = []
    by_dim = {}
    for i, d in enumerate(sig.dims):
        by_dim.setdefault(d, []).append(i)
    for slots in by_dim.values():
        for a, b in zip(slots, slots[1:]):
            images = list(range(sig.k))
            images[a], images[b] = images[b], images[a]
            gens.append(SdPermutation(tuple(images)))
    return gens


def sd_group_order(sig):
    out = 1
    by_dim = {}
    for d in sig.dims:
        by_dim[d] = by_dim.get(d, 0) + 1
    for c in by_dim.values():
        for t in range(2, c + 1):
            out *= t
    return out


def induced_generators(graph):
    """Labeled vertex permutations of the natural maps.

    Isometry generators, the nontrivial star-field automorphisms fixing
    the spectrum, and slot-permutation generators.  Returns a list of
    (kind, data, perm) triples.
    """
    sig = graph.vertices[0].signature
    field = sig.field
    out = []
    for M in unitary_generators(field, sig.ambient):
        out.append(("isometry", M.rows, linear_vertex_map(graph, M)))
    for phi in field.automorphisms():
        if phi.name == "id":
            continue
        if any(phi(a) != a for a in sig.sigma):
            continue
        out.append(("field-automorphism", phi.name,
                    field_automorphism_vertex_map(graph, phi)))
    for delta in sd_generators(sig):
        out.append(("slot-permutation", delta.images,
                    slot_permutation_vertex_map(graph, delta)))
    return out


def induced_subgroup(graph, extra_perms=()):
    """Stabilizer chain of the group the natural maps generate."""
    adj = graph.adjacency()
    chain = StabChain(graph.n)
    gens = induced_generators(graph)
    for kind, data, perm in gens:
        if not is_automorphism(adj, perm):
            raise ConstructionError(f"{kind} map failed the automorphism check")
        chain.add(perm)
    for perm in extra_perms:
        chain.add(tuple(perm))
    return chain, gens


# ---------------------------------------------------------------------------
# orthocomplement twist on two-slot classes


def chow_image(flag: EigenFlag, M: Matrix) -> EigenFlag:
    """Two-slot twist: first slot maps through M, second is replaced by
    the orthocomplement of the image.

    M need not be an isometry; the image is a class member whenever the
    mapped first slot stays nondegenerate.  Raises ConstructionError
    when it degenerates.
    """
    sig = flag.signature
    if sig.k != 2:
        raise ConstructionError("the orthocomplement twist needs exactly two slots")
    X1 = flag.spaces[0]
    img = Subspace(sig.field, sig.ambient,
                   [tuple(M.apply(r)) for r in X1.rows])
    if not img.is_nondegenerate():
        raise ConstructionError("mapped first slot is degenerate")
    return EigenFlag(sig, (img, img.orthocomplement()))


def chow_vertex_map(graph, M: Matrix):
    """The twist as a vertex permutation, with a non-slotwise witness.

    Returns (perm, witness) where witness is a vertex at which the
    twisted second slot differs from the slotwise image of the old
    second slot, or None when the twist coincides with the slotwise
    map everywhere (which happens exactly when M respects
    orthogonality on the class).
    """
    sig = graph.vertices[0].signature
    field = sig.field
    perm = []
    witness = None
    for v, flag in enumerate(graph.vertices):
        img = chow_image(flag, M)
        w = graph.index.get(img.key())
        if w is None:
            raise ConstructionError("twisted image is not a vertex of the class")
        perm.append(w)
        if witness is None:
            slot2 = Subspace(field, sig.ambient,
                             [tuple(M.apply(r)) for r in flag.spaces[1].rows])
            if slot2 != img.spaces[1]:
                witness = v
    perm = tuple(perm)
    if len(set(perm)) != len(perm):
        raise ConstructionError("twist is not injective on the class")
    return perm, witness


# ---------------------------------------------------------------------------
# independent-pair swap


def swap_flag(A: EigenFlag, B: EigenFlag, pair1, pair2) -> EigenFlag:
    """Mix two flags that move two independent slot pairs.

    A and B must agree on every slot outside pair1 and pair2, and must
    redistribute the same orthogonal summand inside each pair.  The
    result keeps A's spaces on pair1 and B's on pair2; it is a class
    member by construction.
    """
    i, j = sorted(pair1)
    i2, j2 = sorted(pair2)
    if len({i, j, i2, j2}) != 4:
        raise ConstructionError("the two slot pairs must be disjoint")
    if A.signature != B.signature:
        raise ConstructionError("flags come from different classes")
    k = A.signature.k
    for t in range(k):
        if t in (i, j, i2, j2):
            continue
        if A.spaces[t] != B.spaces[t]:
            raise ConstructionError(f"flags differ at frozen slot {t}")
    for a, b in ((i, j), (i2, j2)):
        if A.spaces[a].plus(A.spaces[b]) != B.spaces[a].plus(B.spaces[b]):
            raise ConstructionError(
                f"slots {a},{b} redistribute different summands")
    spaces = list(A.spaces)
    spaces[i2] = B.spaces[i2]
    spaces[j2] = B.spaces[j2]
    return EigenFlag(A.signature, spaces)


def verify_swap(A, B, pair1, pair2):
    """Build the mixed flag and check its adjacency to both inputs.

    Returns a report dict; the mixed flag is adjacent to A exactly at
    pair2 and to B exactly at pair1 whenever the pair moves are genuine
    (spaces actually change inside each pair).
    """
    C = swap_flag(A, B, pair1, pair2)
    to_a = adjacency_slots(C, A)
    to_b = adjacency_slots(C, B)
    return {
        "mixed_flag": C,
        "adjacent_to_first": to_a,
        "adjacent_to_second": to_b,
        "ok": to_a == tuple(sorted(pair2)) and to_b == tuple(sorted(pair1)),
    }


# ---------------------------------------------------------------------------
# one-sided path obstruction


def obstruction_witness(A: EigenFlag, i, j, t):
    """Two flags reachable from A by ordered two-slot moves but not in
    the other order.

    Produces B and a middle flag C with C adjacent to A at (i, j) and
    adjacent to B at (j, t); the deliberate failure of orthogonality
    between the untouched slot i space of A and the moved slot t space
    of B blocks any middle flag adjacent to A at (j, t) and to B at
    (i, j).  Slots j and t must be one-dimensional.  Deterministic:
    scans candidate lines in enumeration order.
    """
    sig = A.signature
    if sig.dims[j] != 1 or sig.dims[t] != 1:
        raise ConstructionError("the obstruction recipe moves one-dimensional slots")
    if len({i, j, t}) != 3:
        raise ConstructionError("three distinct slots are required")
    field = sig.field
    Xi, Xj, Xt = A.spaces[i], A.spaces[j], A.spaces[t]
    W = Xi.plus(Xj)
    big = W.plus(Xt)

    def candidates():
        # tilt the last basis line of slot i against slot j; finitely
        # many slopes suffice on every backend
        w = Xj.rows[0]
        slopes = (field.elements() if field.is_finite
                  else [field.scalar(1), field.scalar(2), field.scalar(1, 1),
                        field.scalar(1, -1), field.scalar(3)])
        for lam in slopes:
            if lam == field.zero:
                continue
            tilted = tuple(field.add(a, field.mul(lam, b))
                           for a, b in zip(Xi.rows[-1], w))
            yield Subspace(field, sig.ambient, Xi.rows[:-1] + (tilted,))

    for Yi in candidates():
        if Yi.dim != sig.dims[i] or not Yi.is_nondegenerate():
            continue
        if Yi == Xi:
            continue
        Q = relative_orthocomplement(Yi, W)
        if not Q.is_nondegenerate():
            continue
        # slot t of B sits partly inside the old (i, j) summand
        Yt = Q
        if Xi.is_orthogonal_to(Yt):
            continue
        Yj = relative_orthocomplement(Yi.plus(Yt), big)
        if not Yj.is_nondegenerate():
            continue
        spaces_b = list(A.spaces)
        spaces_b[i], spaces_b[j], spaces_b[t] = Yi, Yj, Yt
        B = EigenFlag(sig, spaces_b)
        Zj = relative_orthocomplement(Yi, W)
        spaces_c = list(A.spaces)
        spaces_c[i], spaces_c[j] = Yi, Zj
        C = EigenFlag(sig, spaces_c)
        if adjacency_slots(C, A) != tuple(sorted((i, j))):
            continue
        if adjacency_slots(C, B) != tuple(sorted((j, t))):
            continue
        return {"start": A, "end": B, "middle": C,
                "blocking": (i, t),
                "nonorthogonal": not Xi.is_orthogonal_to(Yt)}
    raise ConstructionError("no obstruction configuration found from this flag")


def reverse_middle_flags(graph, A, B, i, j, t):
    """All vertices adjacent to A at (j, t) and to B at (i, j).

    Exhaustive over the finite class; the obstruction claim is that
    this list is empty for the constructed pair.
    """
    va = graph.index[A.key()]
    vb = graph.index[B.key()]
    first = tuple(sorted((j, t)))
    second = tuple(sorted((i, j)))
    out = []
    for v in range(graph.n):
        if v in (va, vb):
            continue
        D = graph.vertices[v]
        if (adjacency_slots(D, A) == first
                and adjacency_slots(D, B) == second):
            out.append(v)
    return out
