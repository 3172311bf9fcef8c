"""Seeded random flags, subspaces, and vectors.

Over the rational backend orthogonalization always succeeds (the form is
positive definite there); over finite backends isotropic vectors force
retries, so every sampler takes an explicit rng and loops.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix, Subspace, herm_form


def random_scalar(field, rng, height=4):
    """Entry of bounded complexity: numerators and denominators up to
    `height` over the rationals, any element over a finite backend."""
    if field.is_finite:
        return rng.randrange(field.order)
    re = Fraction(rng.randint(-height, height), rng.randint(1, height))
    im = Fraction(rng.randint(-height, height), rng.randint(1, height))
    return field.scalar(re, im)


def random_vector(field, length, rng, height=4):
    return tuple(random_scalar(field, rng, height) for _ in range(length))


def random_invertible(field, n, rng, height=4):
    while True:
        M = Matrix(field, [random_vector(field, n, rng, height) for _ in range(n)])
        if M.det() != field.zero:
            return M


def orthogonalize(field, vectors):
    """Exact Gram-Schmidt without normalization.

    Returns None when a running vector is isotropic (finite backends);
    callers resample.
    """
    out = []
    norms = []
    sub, mul, div = field.sub, field.mul, field.div
    for v in vectors:
        w = list(v)
        for u, nu in zip(out, norms):
            c = div(herm_form(field, w, u), nu)
            if c != field.zero:
                w = [sub(x, mul(c, y)) for x, y in zip(w, u)]
        nw = herm_form(field, w, w)
        if nw == field.zero:
            return None
        out.append(tuple(w))
        norms.append(nw)
    return out


def random_orthogonal_basis(field, n, rng, height=4):
    while True:
        M = random_invertible(field, n, rng, height)
        basis = orthogonalize(field, M.rows)
        if basis is not None:
            return basis


def random_nondegenerate_subspace(field, ambient, k, rng, height=4):
    basis = random_orthogonal_basis(field, ambient, rng, height)
    return Subspace(field, ambient, basis[:k])


def random_flag(sig, rng, height=4):
    """Uniform-ish random member of the class, built from a random
    orthogonal basis grouped into slots of the signature's dimensions."""
    from .spectral import EigenFlag

    field = sig.field
    while True:
        basis = random_orthogonal_basis(field, sig.ambient, rng, height)
        spaces = []
        at = 0
        for n in sig.dims:
            spaces.append(Subspace(field, sig.ambient, basis[at : at + n]))
            at += n
        try:
            return EigenFlag(sig, spaces)
        except ValueError:
            continue
