"""Moduli of hyperbolic elements and intersections along their axes.

Conjugating by a hyperbolic element h shifts its axis one period.  On the
vertex group of an axis basepoint this induces a partial linear map: the
composite of the edge transports along one period.  Its largest invariant
rational subspace is the modulus domain, and the restricted map (the
modulus) controls which elliptic elements fix long stretches of the axis.
An eigenvalue condition on the modulus decides whether an element fixes a
full half-line, which in turn classifies how a fixed subtree or a second
axis meets the axis of h: not at all, in a finite segment, in a half-line,
or along the whole axis.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import AdaptedPresentation
from .linalg import (
    Lattice,
    RatMatrix,
    RatSubspace,
    affine_preimage,
    image_lattice,
    intersect_lattices,
    minimal_polynomial,
    rat_inverse,
    restriction_matrix,
    saturate_lattice,
    smallest_invariant_subspace,
)
from .tree import (
    ELLIPTIC,
    HYPERBOLIC,
    TreePath,
    TreeVertex,
    axis_offset,
    axis_vertex,
    on_characteristic_space,
    stabilizer_coords,
    translate,
    translation_length,
    translation_profile,
    tree_path,
)
from .words import Word, commutator, invert_word, is_trivial

# Directional walks along an axis terminate whenever the half-line test
# says they must; the bound only turns an internal bug into a loud error.
_WALK_LIMIT = 10_000


@dataclass(frozen=True)
class Modulus:
    """One-period conjugation action on a basepoint vertex group."""

    basepoint: TreeVertex
    domain: RatSubspace
    matrix: RatMatrix


@dataclass(frozen=True)
class Empty:
    """Disjoint characteristic spaces, joined by the bridge geodesic."""

    bridge: TreePath


@dataclass(frozen=True)
class Finite:
    """Intersection is a segment, ordered from the negative end of the axis."""

    segment: TreePath


@dataclass(frozen=True)
class PositiveHalfLine:
    origin: TreeVertex


@dataclass(frozen=True)
class NegativeHalfLine:
    origin: TreeVertex


@dataclass(frozen=True)
class WholeAxis:
    pass


IntersectionShape = Empty | Finite | PositiveHalfLine | NegativeHalfLine | WholeAxis


def compute_modulus(
    pres: AdaptedPresentation, h: Word, basepoint: TreeVertex | None = None
) -> Modulus:
    """Domain and matrix of the one-period action of a hyperbolic h.

    The basepoint must lie on the axis; by default the start of the
    fundamental domain is used.  For x in the domain with s(x) the
    corresponding vertex element, h s(x) h^-1 has coordinates matrix @ x.
    """
    profile = translation_profile(pres, h)
    if profile.kind != HYPERBOLIC:
        raise ValueError("modulus is only defined for hyperbolic elements")
    if basepoint is None:
        basepoint = profile.fundamental_domain.vertices[0]
    key = (h, basepoint)
    cached = pres._moduli.get(key)
    if cached is not None:
        return cached
    if not on_characteristic_space(pres, h, basepoint):
        raise ValueError("basepoint is not on the axis")

    rank = pres.vertex_rank(basepoint.rep)
    pulled = translate(pres, invert_word(pres, h), basepoint)
    period = tree_path(pres, basepoint, pulled)

    # x fixes the path to h^-1 basepoint iff every partial transport of x
    # lands in the corresponding edge image; the full composite is then
    # the coordinate vector of h s(x) h^-1 back at the basepoint.
    transport = RatMatrix.identity(rank)
    fixators = Lattice.full(rank)
    for step in period.steps:
        pre = affine_preimage(
            (0,) * rank, transport, pres.edge_image(step.edge)
        )
        assert pre is not None  # homogeneous, so 0 always solves
        fixators = intersect_lattices(fixators, pre.lattice)
        transport = pres.edge_data(step.edge).transport.mul(transport)

    span = saturate_lattice(fixators)
    while True:
        _, scaled = transport.clear_denominators()
        forward = saturate_lattice(image_lattice(scaled, span))
        refined = intersect_lattices(forward, span)
        if refined == span:
            break
        span = refined

    domain = span.span()
    result = Modulus(basepoint, domain, restriction_matrix(domain.basis, transport))
    pres._moduli[key] = result
    return result


def halfline_fixation(
    pres: AdaptedPresentation,
    h: Word,
    g: Word,
    direction: int,
    basepoint: TreeVertex | None = None,
) -> bool:
    """Does the elliptic g fix the full half-line of the h axis from the
    basepoint in the given direction (+1 with h, -1 against)?

    The coordinate vectors of the successive conjugates of g are the
    modulus-power images of its coordinates, so g fixes the half-line iff
    those powers generate a finitely generated integral module.  That
    holds iff the modulus restricted to the cyclic subspace of g has an
    integer minimal polynomial (inverted for the positive direction), and
    finitely many explicit fixation checks then certify the whole ray.
    """
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    mod = compute_modulus(pres, h, basepoint)
    coords = stabilizer_coords(pres, mod.basepoint, g)
    if coords is None:
        return False
    in_domain = mod.domain.coords(coords)
    if in_domain is None:
        return False
    cyclic, restricted = smallest_invariant_subspace(mod.matrix, in_domain)
    if direction == 1:
        try:
            restricted = rat_inverse(restricted)
        except ValueError:
            return False
    if not minimal_polynomial(restricted).is_integral():
        return False
    period = translation_length(pres, h)
    for m in range(1, period * cyclic.dim + 1):
        probe = axis_vertex(pres, h, mod.basepoint, direction * m)
        if stabilizer_coords(pres, probe, g) is None:
            return False
    return True


def _last_in(pres, h, start: TreeVertex, direction: int, member) -> TreeVertex:
    m = 0
    while m < _WALK_LIMIT:
        if not member(axis_vertex(pres, h, start, direction * (m + 1))):
            return axis_vertex(pres, h, start, direction * m)
        m += 1
    raise AssertionError("axis walk did not terminate")


def _capped_extent(pres, h, start: TreeVertex, direction: int, member, cap: int):
    """Fixed prefix length in one direction, stopping at cap steps."""
    m = 0
    while m < cap and member(axis_vertex(pres, h, start, direction * (m + 1))):
        m += 1
    return m, m == cap


def classify_intersection(pres: AdaptedPresentation, g: Word, h: Word) -> IntersectionShape:
    """Shape of (characteristic space of g) ∩ (axis of h).

    g may be elliptic (fixed subtree) or hyperbolic (its own axis); h must
    be hyperbolic.  Half-lines and segments are reported relative to the
    translation direction of h.
    """
    h_profile = translation_profile(pres, h)
    if h_profile.kind != HYPERBOLIC:
        raise ValueError("second element must be hyperbolic")
    if is_trivial(pres, g):
        raise ValueError("first element must be nontrivial")
    g_profile = translation_profile(pres, g)
    elliptic = g_profile.kind == ELLIPTIC

    if elliptic:
        witness_g = g_profile.fixed
        member = lambda v: stabilizer_coords(pres, v, g) is not None
    else:
        witness_g = g_profile.fundamental_domain.vertices[0]
        member = lambda v: on_characteristic_space(pres, g, v)
    witness_h = h_profile.fundamental_domain.vertices[0]

    # Both characteristic spaces are convex, so along the connecting path
    # membership in the first is a prefix and in the second a suffix.
    path = tree_path(pres, witness_g, witness_h)
    a = 0
    while a < path.length and member(path.vertices[a + 1]):
        a += 1
    b = path.length
    while b > 0 and on_characteristic_space(pres, h, path.vertices[b - 1]):
        b -= 1
    if a < b:
        return Empty(bridge=path.subpath(a, b))
    meet = path.vertices[b]

    if elliptic:
        return _classify_elliptic(pres, g, h, meet, member)

    cap = translation_length(pres, g) + translation_length(pres, h) + 1
    pos, pos_capped = _capped_extent(pres, h, meet, 1, member, cap)
    neg, neg_capped = _capped_extent(pres, h, meet, -1, member, cap)
    if not pos_capped and not neg_capped:
        return Finite(
            tree_path(
                pres,
                axis_vertex(pres, h, meet, -neg),
                axis_vertex(pres, h, meet, pos),
            )
        )

    # The overlap exceeds the sum of the translation lengths, so the
    # commutator is elliptic and its fixed subtree meets the h axis with
    # the same kind of shape; only the endpoints need recomputing.
    comm = commutator(pres, g, h)
    if is_trivial(pres, comm):
        return WholeAxis()
    assert translation_profile(pres, comm).kind == ELLIPTIC
    inner = classify_intersection(pres, comm, h)
    if isinstance(inner, WholeAxis):
        return WholeAxis()
    if isinstance(inner, PositiveHalfLine):
        return PositiveHalfLine(_last_in(pres, h, meet, -1, member))
    if isinstance(inner, NegativeHalfLine):
        return NegativeHalfLine(_last_in(pres, h, meet, 1, member))
    assert isinstance(inner, Finite)
    return Finite(
        tree_path(
            pres,
            _last_in(pres, h, meet, -1, member),
            _last_in(pres, h, meet, 1, member),
        )
    )


def _classify_elliptic(pres, g, h, meet, member) -> IntersectionShape:
    positive = halfline_fixation(pres, h, g, 1, meet)
    negative = halfline_fixation(pres, h, g, -1, meet)
    if positive and negative:
        return WholeAxis()
    if positive:
        return PositiveHalfLine(_last_in(pres, h, meet, -1, member))
    if negative:
        return NegativeHalfLine(_last_in(pres, h, meet, 1, member))
    return Finite(
        tree_path(
            pres,
            _last_in(pres, h, meet, -1, member),
            _last_in(pres, h, meet, 1, member),
        )
    )


def _shape_anchor(shape: IntersectionShape) -> TreeVertex:
    if isinstance(shape, Empty):
        return shape.bridge.end
    if isinstance(shape, Finite):
        return shape.segment.start
    return shape.origin


def shift_length(
    pres: AdaptedPresentation, h: Word, first: IntersectionShape, second: IntersectionShape
) -> int | None:
    """Signed offset along the h axis between two intersection shapes of
    the same kind, or None when the kinds differ.  Whole-axis shapes have
    no distinguished point, so they are rejected."""
    if type(first) is not type(second):
        return None
    if isinstance(first, WholeAxis):
        raise ValueError("whole-axis intersections carry no offset")
    return axis_offset(pres, h, _shape_anchor(first), _shape_anchor(second))
