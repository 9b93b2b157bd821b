"""Conjugacy decisions: single hyperbolic elements, centralizers, tuples.

The pipeline for tuples: find a hyperbolic element in the subgroup the
first tuple generates (an element, or a product of two, or a certificate
that none exists); align it with its counterpart from the second tuple;
then search the centralizer of the aligned element.  That centralizer is
a lattice of axis-fixing vertex elements extended by a minimal-shift
hyperbolic, so the remaining search splits into a shift (read off from
axis-intersection offsets) and a lattice intersection (solved by the
exponent-equation machinery).  Tuples generating an elliptic subgroup
are decidable only over rank-1 vertex groups and are delegated to the
reachability module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .equations import local_conjugators
from .graph import AdaptedPresentation
from .linalg import AffineLattice, AffineLatticeUnion, IntVec, Lattice
from .modulus import WholeAxis, classify_intersection, shift_length
from .tree import (
    HYPERBOLIC,
    TreeVertex,
    base_vertex,
    stabilizer_coords,
    stabilizer_element,
    translation_length,
    translation_profile,
    tree_path,
)
from .words import (
    Word,
    commutator,
    concat,
    conjugate,
    invert_word,
    is_trivial,
    word_power,
    word_simplify,
    words_equal,
)


@dataclass(frozen=True)
class Conjugate:
    witness: Word


@dataclass(frozen=True)
class NotConjugate:
    reason: str


@dataclass(frozen=True)
class ReducedToPolycyclic:
    """Both tuples live on one axis; deciding further needs conjugacy in
    the lattice-by-shift group generated by the data below."""

    pairs: tuple[tuple[Word, Word], ...]
    elliptic: Lattice
    shift_generator: Word
    basepoint: TreeVertex


@dataclass(frozen=True)
class EllipticUnsupported:
    explanation: str


@dataclass(frozen=True)
class Inconclusive:
    explored: int
    budget: int


ConjugacyAnswer = (
    Conjugate | NotConjugate | ReducedToPolycyclic | EllipticUnsupported | Inconclusive
)


@dataclass(frozen=True)
class HyperbolicWitness:
    """A hyperbolic element of the generated subgroup, with the tuple
    indices (one or two) whose product produced it."""

    word: Word
    indices: tuple[int, ...]


@dataclass(frozen=True)
class EllipticCertificate:
    vertex: TreeVertex


@dataclass(frozen=True)
class Centralizer:
    """Centralizer of a hyperbolic element: the lattice of commuting
    vertex elements at an axis basepoint, extended by a commuting
    hyperbolic of minimal translation length."""

    basepoint: TreeVertex
    elliptic: Lattice
    shift_generator: Word


def _first_point(sols: AffineLatticeUnion) -> IntVec:
    return tuple(int(x) for x in sols.parts[0].base)


def find_hyperbolic_in_tuple(
    pres: AdaptedPresentation, items: tuple[Word, ...]
) -> HyperbolicWitness | EllipticCertificate:
    """First hyperbolic element, else first hyperbolic pairwise product,
    else a certificate vertex fixed by the whole tuple.

    When every element and every pairwise product is elliptic the fixed
    subtrees pairwise intersect, and pairwise intersecting subtrees of a
    tree share a vertex, so the generated subgroup is elliptic.
    """
    items = tuple(items)
    if not items:
        raise ValueError("tuple must be nonempty")
    for i, w in enumerate(items):
        if translation_profile(pres, w).kind == HYPERBOLIC:
            return HyperbolicWitness(w, (i,))
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            prod = word_simplify(pres, concat(items[i], items[j]))
            if translation_profile(pres, prod).kind == HYPERBOLIC:
                return HyperbolicWitness(prod, (i, j))
    return EllipticCertificate(_common_fixed_vertex(pres, items))


def _common_fixed_vertex(pres, items) -> TreeVertex:
    # Successive projection: project the running common vertex onto the
    # next fixed subtree; the projection stays inside all earlier ones.
    current = None
    for w in items:
        if is_trivial(pres, w):
            continue
        if current is None:
            current = translation_profile(pres, w).fixed
        elif stabilizer_coords(pres, current, w) is None:
            path = tree_path(pres, current, translation_profile(pres, w).fixed)
            current = next(
                v for v in path.vertices if stabilizer_coords(pres, v, w) is not None
            )
    if current is None:
        return base_vertex(pres)
    for w in items:
        assert is_trivial(pres, w) or stabilizer_coords(pres, current, w) is not None
    return current


def conjugate_hyperbolic(pres: AdaptedPresentation, a: Word, b: Word) -> ConjugacyAnswer:
    """Decide conjugacy of two hyperbolic elements.

    Any conjugator can be adjusted by a power of b until it carries a
    chosen axis vertex of a into the fundamental domain of b, so it
    suffices to scan those finitely many vertices and solve for a
    stabilizer correction at each.
    """
    pa = translation_profile(pres, a)
    pb = translation_profile(pres, b)
    if pa.kind != HYPERBOLIC or pb.kind != HYPERBOLIC:
        raise ValueError("both elements must be hyperbolic")
    if pa.length != pb.length:
        return NotConjugate("translation lengths differ")
    v = pa.fundamental_domain.vertices[0]
    dom = pb.fundamental_domain
    for j in range(pb.length):
        vj = dom.vertices[j]
        if vj.rep != v.rep:
            continue
        mover = word_simplify(pres, concat(vj.carrier, invert_word(pres, v.carrier)))
        sols = local_conjugators(pres, vj, conjugate(pres, a, mover), b)
        if sols.is_empty():
            continue
        witness = word_simplify(
            pres, concat(stabilizer_element(pres, vj, _first_point(sols)), mover)
        )
        assert is_trivial(
            pres, concat(witness, a, invert_word(pres, witness), invert_word(pres, b))
        )
        return Conjugate(witness)
    return NotConjugate("no axis alignment conjugates the first element to the second")


def centralizer_hyperbolic(pres: AdaptedPresentation, h: Word) -> Centralizer:
    """Centralizer of a hyperbolic element as lattice + minimal shift.

    Commuting elliptic elements fix the whole axis, so they form the
    self-conjugation lattice at any axis vertex.  The hyperbolic part is
    found by scanning fundamental-domain vertices in the basepoint orbit
    for the smallest realizable shift; h itself realizes the full period,
    so the scan always succeeds.
    """
    profile = translation_profile(pres, h)
    if profile.kind != HYPERBOLIC:
        raise ValueError("centralizers are computed for hyperbolic elements")
    dom = profile.fundamental_domain
    w0 = dom.vertices[0]

    sols = local_conjugators(pres, w0, h, h)
    parts = sols.parts
    assert len(parts) == 1 and all(x == 0 for x in parts[0].base)
    lattice = parts[0].lattice

    shift = None
    for k in range(1, profile.length + 1):
        vk = dom.vertices[k]
        if vk.rep != w0.rep:
            continue
        mover = word_simplify(pres, concat(vk.carrier, invert_word(pres, w0.carrier)))
        cand = local_conjugators(
            pres, w0, h, conjugate(pres, h, invert_word(pres, mover))
        )
        if cand.is_empty():
            continue
        shift = word_simplify(
            pres, concat(mover, stabilizer_element(pres, w0, _first_point(cand)))
        )
        break
    assert shift is not None

    assert is_trivial(pres, commutator(pres, shift, h))
    assert profile.length % translation_length(pres, shift) == 0
    for j in range(lattice.rank):
        gen = stabilizer_element(pres, w0, lattice.basis.column(j))
        assert is_trivial(pres, commutator(pres, gen, h))
    return Centralizer(w0, lattice, shift)


def _assemble(items: tuple[Word, ...], indices: tuple[int, ...]) -> Word:
    if len(indices) == 1:
        return items[indices[0]]
    i, j = indices
    return concat(items[i], items[j])


def multi_conjugate(
    pres: AdaptedPresentation,
    first: tuple[Word, ...],
    second: tuple[Word, ...],
    state_budget: int = 100_000,
) -> ConjugacyAnswer:
    """Is there one element conjugating the first tuple onto the second,
    coordinate by coordinate?

    Decides whenever the first tuple generates a non-elliptic subgroup;
    elliptic tuples are delegated to the rank-1 reachability procedure
    when the graph allows it and refused otherwise.  A fully axis-aligned
    instance is returned as ReducedToPolycyclic rather than decided.
    """
    first = tuple(first)
    second = tuple(second)
    if not first or len(first) != len(second):
        raise ValueError("tuples must be nonempty and of equal length")
    if all(words_equal(pres, x, y) for x, y in zip(first, second)):
        return Conjugate(Word.identity())

    found = find_hyperbolic_in_tuple(pres, first)
    if isinstance(found, EllipticCertificate):
        if any(v.rank != 1 for v in pres.graph.vertices):
            return EllipticUnsupported(
                "the first tuple generates an elliptic subgroup; deciding this "
                "needs every vertex group to have rank 1"
            )
        from .gbs import gbs_multi_conjugate

        return gbs_multi_conjugate(pres, first, second, state_budget=state_budget)

    anchor = found.word
    counterpart = word_simplify(pres, _assemble(second, found.indices))
    if translation_profile(pres, counterpart).kind != HYPERBOLIC:
        return NotConjugate("matching product of the second tuple is not hyperbolic")
    aligned = conjugate_hyperbolic(pres, anchor, counterpart)
    if isinstance(aligned, NotConjugate):
        return aligned
    g0 = aligned.witness
    g0_inv = invert_word(pres, g0)
    matched = tuple(word_simplify(pres, concat(g0_inv, y, g0)) for y in second)

    # Remaining freedom is the centralizer of the anchor: witness = g0·s(x)·h^m.
    cen = centralizer_hyperbolic(pres, anchor)
    shapes: list[tuple[object, object] | None] = []
    for x, y in zip(first, matched):
        if is_trivial(pres, x) or is_trivial(pres, y):
            if is_trivial(pres, x) != is_trivial(pres, y):
                return NotConjugate("an identity coordinate faces a nontrivial one")
            shapes.append(None)
            continue
        sx = classify_intersection(pres, x, anchor)
        sy = classify_intersection(pres, y, anchor)
        if type(sx) is not type(sy):
            return NotConjugate("axis intersection kinds differ at a coordinate")
        shapes.append((sx, sy))

    anchored = [p for p in shapes if p is not None and not isinstance(p[0], WholeAxis)]
    if not anchored:
        return ReducedToPolycyclic(
            tuple(zip(first, matched)), cen.elliptic, cen.shift_generator, cen.basepoint
        )

    offsets = {shift_length(pres, anchor, sx, sy) for sx, sy in anchored}
    if len(offsets) > 1:
        return NotConjugate("coordinates require different shifts along the axis")
    offset = offsets.pop()
    step = translation_length(pres, cen.shift_generator)
    if offset % step:
        return NotConjugate("required shift is not realizable in the centralizer")
    power = word_power(pres, cen.shift_generator, offset // step)
    power_inv = invert_word(pres, power)

    rank = pres.vertex_rank(cen.basepoint.rep)
    sols = AffineLatticeUnion.single(AffineLattice((0,) * rank, cen.elliptic))
    for x, y in zip(first, matched):
        if is_trivial(pres, x):
            continue
        shifted = word_simplify(pres, concat(power, x, power_inv))
        sols = sols.intersect(local_conjugators(pres, cen.basepoint, shifted, y))
        if sols.is_empty():
            return NotConjugate("no centralizer element aligns every coordinate")

    witness = word_simplify(
        pres,
        concat(g0, stabilizer_element(pres, cen.basepoint, _first_point(sols)), power),
    )
    witness_inv = invert_word(pres, witness)
    for x, y in zip(first, second):
        assert is_trivial(pres, concat(witness, x, witness_inv, invert_word(pres, y)))
    return Conjugate(witness)
