"""Maps into class graphs: isometries, field maps, slot moves, the
orthocomplement twist, the independent-pair swap, and the one-sided
path obstruction."""

from fractions import Fraction

import pytest

from opgraphs.autgroup import is_automorphism
from opgraphs.constructions import (
    ConstructionError,
    chow_image,
    chow_vertex_map,
    field_automorphism_vertex_map,
    induced_generators,
    is_isometry,
    linear_vertex_map,
    obstruction_witness,
    reverse_middle_flags,
    sd_generators,
    sd_group_order,
    slot_permutation_vertex_map,
    swap_flag,
    unitary_generators,
    unitary_group,
    verify_swap,
    _norm_one_vectors,
)
from opgraphs.graphs import LabeledGraph
from opgraphs.linalg import Matrix, Subspace
from opgraphs.spectral import EigenFlag, SdPermutation, adjacency_slots, coordinate_flag
from opgraphs.starfield import QI, galois_field
from tests.conftest import signature

GEN_ROWS_U3_GF9 = (
    ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
    ((0, 0, 1), (0, 1, 0), (2, 0, 0)),
    ((0, 0, 1), (0, 1, 0), (3, 0, 0)),
    ((0, 0, 1), (0, 2, 0), (1, 0, 0)),
    ((0, 0, 1), (0, 3, 0), (1, 0, 0)),
    ((0, 0, 1), (1, 0, 0), (0, 1, 0)),
    ((0, 0, 1), (4, 4, 0), (4, 8, 0)),
)


def qi(re, im=0):
    return QI.scalar(Fraction(re), Fraction(im))


def test_isometry_group_orders(f9):
    assert len(_norm_one_vectors(f9, 3)) == 252
    assert len(unitary_group(f9, 2)) == 96
    group = unitary_group(f9, 3)
    assert len(group) == 24192
    for m in group[:50]:
        assert is_isometry(f9, m)
    with pytest.raises(ConstructionError):
        unitary_group(QI, 3)


def test_isometry_generators_are_frozen_and_generate(f9):
    gens = unitary_generators(f9, 3)
    assert tuple(m.rows for m in gens) == GEN_ROWS_U3_GF9
    # independent closure: breadth-first product walk recovers the group
    ident = Matrix.identity(f9, 3)
    seen = {ident.rows}
    frontier = [ident]
    while frontier:
        m = frontier.pop()
        for g in gens:
            p = g @ m
            if p.rows not in seen:
                seen.add(p.rows)
                frontier.append(p)
    assert len(seen) == 24192


def test_linear_vertex_maps_from_isometries(flagship_graph, f9):
    for m in unitary_generators(f9, 3):
        perm = linear_vertex_map(flagship_graph, m)
        assert sorted(perm) == list(range(flagship_graph.n))
        assert is_automorphism(flagship_graph.adjacency(), perm)


def test_linear_vertex_map_rejects_non_isometries(flagship_graph, f9):
    shear = Matrix(f9, ((f9.one, f9.one, f9.zero),
                        (f9.zero, f9.one, f9.zero),
                        (f9.zero, f9.zero, f9.one)))
    assert not is_isometry(f9, shear)
    with pytest.raises(ConstructionError):
        linear_vertex_map(flagship_graph, shear)


def test_field_automorphism_vertex_map(flagship_graph, f9):
    frob = next(phi for phi in f9.automorphisms() if phi.name != "id")
    perm = field_automorphism_vertex_map(flagship_graph, frob)
    assert is_automorphism(flagship_graph.adjacency(), perm)
    # applying it twice gives the identity: x -> x^9 = x
    n = flagship_graph.n
    assert tuple(perm[perm[v]] for v in range(n)) == tuple(range(n))


def test_field_automorphism_must_fix_the_spectrum(f16):
    # eigenvalues inside GF(4) but outside GF(2) move under x -> x^2
    w = f16.fixed_elements()[2]
    sig = signature(f16, ("0", "2"), (1, 2))
    assert sig.sigma[1] == w
    graph = LabeledGraph.build(sig)
    assert graph.n == 208  # 273 lines, 65 isotropic
    moving = next(phi for phi in f16.automorphisms() if phi(w) != w)
    with pytest.raises(ConstructionError):
        field_automorphism_vertex_map(graph, moving)
    fixing = [phi for phi in f16.automorphisms()
              if phi.name != "id" and phi(w) == w]
    for phi in fixing:
        perm = field_automorphism_vertex_map(graph, phi)
        assert is_automorphism(graph.adjacency(), perm)


def test_slot_permutation_vertex_maps(flagship_graph):
    for delta in sd_generators(flagship_graph.vertices[0].signature):
        perm = slot_permutation_vertex_map(flagship_graph, delta)
        assert is_automorphism(flagship_graph.adjacency(), perm)


def test_sd_group_bookkeeping():
    sig3 = signature(QI, ("1", "2", "3"), (1, 1, 1))
    assert len(sd_generators(sig3)) == 2
    assert sd_group_order(sig3) == 6
    sig_grass = signature(QI, ("1", "2"), (1, 2))
    assert sd_generators(sig_grass) == []
    assert sd_group_order(sig_grass) == 1
    sig_paired = signature(QI, ("1", "2", "3", "4"), (1, 1, 2, 2))
    assert len(sd_generators(sig_paired)) == 2
    assert sd_group_order(sig_paired) == 4


def test_induced_generator_inventory(flagship_graph, flagship_groups):
    chain_ind, gens, _ = flagship_groups
    kinds = [kind for kind, _, _ in gens]
    assert kinds.count("isometry") == 7
    assert kinds.count("field-automorphism") == 1
    assert kinds.count("slot-permutation") == 2
    assert len(gens) == 10
    for _, _, perm in gens:
        assert is_automorphism(flagship_graph.adjacency(), perm)
        assert chain_ind.contains(perm)
    assert chain_ind.order() == 72576


def test_induced_generators_keep_only_spectrum_fixing_field_maps(flagship_groups, f9):
    _, gens, _ = flagship_groups
    names = [data for kind, data, _ in gens if kind == "field-automorphism"]
    frob = next(phi for phi in f9.automorphisms() if phi.name != "id")
    assert names == [frob.name]
    for a in (f9.parse_fixed("0"), f9.parse_fixed("1"), f9.parse_fixed("2")):
        assert frob(a) == a


def test_chow_image_twists_the_second_slot():
    sig = signature(QI, ("1", "2"), (1, 2))
    flag = EigenFlag(sig, (
        Subspace.line(QI, (qi(1), qi(0), qi(1))),
        Subspace(QI, 3, [(qi(1), qi(0), qi(-1)), (qi(0), qi(1), qi(0))]),
    ))
    m = Matrix.diagonal(QI, [qi(1), qi(1), qi(2)])
    img = chow_image(flag, m)
    assert img.spaces[0] == Subspace.line(QI, (qi(1), qi(0), qi(2)))
    assert img.spaces[1] == img.spaces[0].orthocomplement()
    # the twist genuinely differs from the slotwise image of the old slot
    slotwise = flag.spaces[1].map_rows(lambda r: tuple(m.apply(r)))
    assert img.spaces[1] != slotwise
    # isometries never disagree with the slotwise map
    swap01 = Matrix(QI, ((qi(0), qi(1), qi(0)), (qi(1), qi(0), qi(0)), (qi(0), qi(0), qi(1))))
    img2 = chow_image(flag, swap01)
    assert img2.spaces[1] == flag.spaces[1].map_rows(lambda r: tuple(swap01.apply(r)))


def test_chow_image_needs_two_slots(qi_sig):
    with pytest.raises(ConstructionError):
        chow_image(coordinate_flag(qi_sig), Matrix.identity(QI, 3))


def test_chow_image_rejects_degenerating_maps():
    sig = signature(QI, ("1", "2"), (1, 2))
    # send the first slot onto an isotropic line of the twisted form:
    # no isotropic lines exist over the rationals with the definite
    # form, so degeneration cannot happen there; use GF(9) instead
    f9 = galois_field(3, 1)
    gsig = signature(f9, ("0", "1"), (1, 2))
    graph = LabeledGraph.build(gsig)
    # an invertible map sending some nondegenerate line to an isotropic one
    shear = Matrix(f9, ((f9.one, f9.one, f9.zero),
                        (f9.zero, f9.one, f9.zero),
                        (f9.zero, f9.zero, f9.one)))
    with pytest.raises(ConstructionError):
        for flag in graph.vertices:
            chow_image(flag, shear)


def test_chow_vertex_map_with_unitary_agrees_slotwise(grassmann_graph, f9):
    two = f9.from_int(2)  # 2 = -1 over GF(3): unitary diagonal
    m = Matrix.diagonal(f9, [f9.one, f9.one, two])
    assert is_isometry(f9, m)
    perm, witness = chow_vertex_map(grassmann_graph, m)
    assert witness is None
    assert perm == linear_vertex_map(grassmann_graph, m)
    assert is_automorphism(grassmann_graph.adjacency(), perm)


def test_chow_vertex_map_rejects_shears(grassmann_graph, f9):
    shear = Matrix(f9, ((f9.one, f9.one, f9.zero),
                        (f9.zero, f9.one, f9.zero),
                        (f9.zero, f9.zero, f9.one)))
    with pytest.raises(ConstructionError):
        chow_vertex_map(grassmann_graph, shear)


def swap_instance():
    sig = signature(QI, ("1", "2", "3", "4"), (1, 1, 1, 1))
    a = coordinate_flag(sig)
    b = EigenFlag(sig, (
        Subspace.line(QI, (qi(1), qi(1), qi(0), qi(0))),
        Subspace.line(QI, (qi(1), qi(-1), qi(0), qi(0))),
        Subspace.line(QI, (qi(0), qi(0), qi(1), qi(1))),
        Subspace.line(QI, (qi(0), qi(0), qi(1), qi(-1))),
    ))
    return sig, a, b


def test_swap_mixes_independent_pairs():
    sig, a, b = swap_instance()
    mixed = swap_flag(a, b, (0, 1), (2, 3))
    assert mixed.spaces[:2] == a.spaces[:2]
    assert mixed.spaces[2:] == b.spaces[2:]
    assert adjacency_slots(mixed, a) == (2, 3)
    assert adjacency_slots(mixed, b) == (0, 1)
    report = verify_swap(a, b, (0, 1), (2, 3))
    assert report["ok"]
    assert report["adjacent_to_first"] == (2, 3)
    assert report["adjacent_to_second"] == (0, 1)
    assert report["mixed_flag"] == mixed


def test_swap_precondition_errors():
    sig, a, b = swap_instance()
    with pytest.raises(ConstructionError):
        swap_flag(a, b, (0, 1), (1, 2))  # overlapping pairs
    # same summand redistributed differently: pairs must carry the
    # same orthogonal pieces
    c = EigenFlag(sig, (
        Subspace.line(QI, (qi(1), qi(0), qi(0), qi(0))),
        Subspace.line(QI, (qi(0), qi(0), qi(1), qi(0))),
        Subspace.line(QI, (qi(0), qi(1), qi(0), qi(0))),
        Subspace.line(QI, (qi(0), qi(0), qi(0), qi(1))),
    ))
    with pytest.raises(ConstructionError):
        swap_flag(a, c, (0, 1), (2, 3))
    other = signature(QI, ("1", "2", "3", "5"), (1, 1, 1, 1))
    with pytest.raises(ConstructionError):
        swap_flag(a, coordinate_flag(other), (0, 1), (2, 3))


def test_obstruction_witness_over_the_rationals(qi_sig):
    a = coordinate_flag(qi_sig)
    w = obstruction_witness(a, 0, 1, 2)
    b, c = w["end"], w["middle"]
    assert adjacency_slots(c, a) == (0, 1)
    assert adjacency_slots(c, b) == (1, 2)
    assert w["nonorthogonal"]
    assert not a.spaces[0].is_orthogonal_to(b.spaces[2])


def test_obstruction_witness_requires_line_slots():
    sig = signature(QI, ("1", "2", "3"), (1, 2, 1))
    a = coordinate_flag(sig)
    with pytest.raises(ConstructionError):
        obstruction_witness(a, 0, 1, 2)  # slot j is a plane
    with pytest.raises(ConstructionError):
        obstruction_witness(a, 0, 0, 2)  # slots not distinct


def test_no_reverse_middle_exists_in_the_finite_class(flagship_graph):
    a = flagship_graph.vertices[0]
    w = obstruction_witness(a, 0, 1, 2)
    b, c = w["end"], w["middle"]
    assert c.key() in flagship_graph.index
    assert reverse_middle_flags(flagship_graph, a, b, 0, 1, 2) == []
