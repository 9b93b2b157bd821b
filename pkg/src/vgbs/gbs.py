"""Elliptic tuple conjugacy over rank-1 vertex groups, via reachability.

When every vertex group is infinite cyclic, an elliptic element is a
power of a vertex generator up to conjugacy, and conjugating a power
across one edge multiplies its exponent by tau/sigma whenever sigma
divides it.  Only finitely many primes can ever appear in an exponent,
so a power is described exactly by a vector of prime multiplicities plus
a sign and the vertex where it lives.  Each oriented edge then becomes a
counter move with a guard, and conjugacy of gcd-normalized powers turns
into reachability between two such states, explored breadth-first up to
a state budget.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from .conjugacy import (
    Conjugate,
    ConjugacyAnswer,
    EllipticCertificate,
    EllipticUnsupported,
    Inconclusive,
    NotConjugate,
    find_hyperbolic_in_tuple,
)
from .graph import AdaptedPresentation
from .tree import ELLIPTIC, TreeVertex, stabilizer_coords, translation_profile
from .words import Word, concat, invert_word, is_trivial, letter_word, word_simplify


@dataclass(frozen=True)
class VASState:
    """Prime-multiplicity vector of an exponent, its sign, and the vertex
    carrying the power."""

    exponents: tuple[int, ...]
    sign: int
    vertex: str


@dataclass(frozen=True)
class VASTransition:
    """Counter move for conjugating across one oriented edge: applicable
    when the multiplicities dominate the guard, adds delta, flips the
    sign when the edge maps have opposite signs."""

    edge: str
    guard: tuple[int, ...]
    delta: tuple[int, ...]
    sign_flip: bool
    from_vertex: str
    to_vertex: str


@dataclass(frozen=True)
class ReachabilityInstance:
    primes: tuple[int, ...]
    source: VASState
    target: VASState
    transitions: tuple[VASTransition, ...]


@dataclass(frozen=True)
class Reachable:
    """Edge ids in application order: conjugating by their letters, first
    id first, carries the source power to the target power."""

    edges: tuple[str, ...]


@dataclass(frozen=True)
class DefinitivelyUnreachable:
    closure_size: int


@dataclass(frozen=True)
class InconclusiveSearch:
    explored: int
    budget: int


ReachabilityResult = Reachable | DefinitivelyUnreachable | InconclusiveSearch


def _factor(n: int) -> dict[int, int]:
    n = abs(n)
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _multiplicities(n: int, primes: tuple[int, ...]) -> tuple[int, ...]:
    factors = _factor(n)
    vec = tuple(factors.pop(p, 0) for p in primes)
    assert not factors
    return vec


def _require_rank_one(pres: AdaptedPresentation) -> None:
    if any(v.rank != 1 for v in pres.graph.vertices):
        raise ValueError("every vertex group must have rank 1")


def _edge_scalar(mat) -> int:
    return mat.entries[0][0]


def elliptic_exponent_form(
    pres: AdaptedPresentation, g: Word
) -> tuple[str, int, Word]:
    """(vertex id, exponent, conjugator): conjugating g by the returned
    word gives that power of the vertex generator."""
    _require_rank_one(pres)
    profile = translation_profile(pres, g)
    if profile.kind != ELLIPTIC:
        raise ValueError("element is not elliptic")
    fixed = profile.fixed
    coords = stabilizer_coords(pres, fixed, g)
    assert coords is not None
    return fixed.rep, coords[0], invert_word(pres, fixed.carrier)


def build_reachability_instance(
    pres: AdaptedPresentation, m: int, vertex: str, n: int, target_vertex: str
) -> ReachabilityInstance:
    """Encode "is the m-th power at one vertex conjugate to the n-th
    power at another" as counter reachability."""
    _require_rank_one(pres)
    if m == 0 or n == 0:
        raise ValueError("exponents must be nonzero")
    pres.graph.vertex(vertex)
    pres.graph.vertex(target_vertex)
    seen_primes: set[int] = set()
    for x in (m, n):
        seen_primes.update(_factor(x))
    for e in pres.graph.edges:
        seen_primes.update(_factor(_edge_scalar(e.inj_initial)))
        seen_primes.update(_factor(_edge_scalar(e.inj_terminal)))
    primes = tuple(sorted(seen_primes))

    transitions = []
    for e in pres.graph.edges:
        sigma = _edge_scalar(e.inj_initial)
        tau = _edge_scalar(e.inj_terminal)
        guard = _multiplicities(sigma, primes)
        image = _multiplicities(tau, primes)
        transitions.append(
            VASTransition(
                e.id,
                guard,
                tuple(i - g for i, g in zip(image, guard)),
                sigma * tau < 0,
                e.frm,
                e.to,
            )
        )

    def state(x: int, v: str) -> VASState:
        return VASState(_multiplicities(x, primes), 1 if x > 0 else -1, v)

    return ReachabilityInstance(
        primes, state(m, vertex), state(n, target_vertex), tuple(transitions)
    )


def bounded_reachability(
    instance: ReachabilityInstance, state_budget: int = 100_000
) -> ReachabilityResult:
    """Breadth-first closure of the source.  The closure is often finite
    (guards block unbounded growth), giving a definitive no; when it is
    not, the budget turns the search into an honest refusal."""
    if state_budget < 1:
        raise ValueError("state budget must be positive")
    if instance.source == instance.target:
        return Reachable(())
    parents: dict[VASState, tuple[VASState, str] | None] = {instance.source: None}
    queue = deque([instance.source])
    while queue:
        current = queue.popleft()
        for tr in instance.transitions:
            if tr.from_vertex != current.vertex:
                continue
            if any(c < g for c, g in zip(current.exponents, tr.guard)):
                continue
            nxt = VASState(
                tuple(c + d for c, d in zip(current.exponents, tr.delta)),
                -current.sign if tr.sign_flip else current.sign,
                tr.to_vertex,
            )
            if nxt in parents:
                continue
            parents[nxt] = (current, tr.edge)
            if nxt == instance.target:
                edges: list[str] = []
                state = nxt
                while (link := parents[state]) is not None:
                    state, eid = link
                    edges.append(eid)
                return Reachable(tuple(reversed(edges)))
            if len(parents) >= state_budget:
                return InconclusiveSearch(len(parents), state_budget)
            queue.append(nxt)
    return DefinitivelyUnreachable(len(parents))


def replay_witness(pres: AdaptedPresentation, edges: tuple[str, ...]) -> Word:
    """Conjugator realizing a reachability path: the letters of the
    traversed edges, later steps applied on the left.  Tree-edge letters
    are the identity and are skipped."""
    letters = [
        letter_word(eid) for eid in reversed(edges) if not pres.is_tree_edge(eid)
    ]
    return concat(*letters)


def gbs_multi_conjugate(
    pres: AdaptedPresentation,
    first: tuple[Word, ...],
    second: tuple[Word, ...],
    state_budget: int = 100_000,
) -> ConjugacyAnswer:
    """Tuple conjugacy when both tuples generate elliptic subgroups.

    After moving each tuple into a single vertex group, a conjugator must
    send generator powers to generator powers with one scaling factor, so
    the exponent patterns must agree up to that factor and the gcd powers
    must be conjugate, which bounded reachability answers.
    """
    first = tuple(first)
    second = tuple(second)
    if not first or len(first) != len(second):
        raise ValueError("tuples must be nonempty and of equal length")
    if any(v.rank != 1 for v in pres.graph.vertices):
        return EllipticUnsupported(
            "elliptic tuple conjugacy needs every vertex group to have rank 1"
        )
    found_first = find_hyperbolic_in_tuple(pres, first)
    if not isinstance(found_first, EllipticCertificate):
        raise ValueError("first tuple generates a non-elliptic subgroup")
    found_second = find_hyperbolic_in_tuple(pres, second)
    if not isinstance(found_second, EllipticCertificate):
        return NotConjugate("one side is elliptic, the other is not")

    def exponents(items: tuple[Word, ...], vertex: TreeVertex) -> tuple[int, ...]:
        out = []
        for w in items:
            coords = stabilizer_coords(pres, vertex, w)
            assert coords is not None
            out.append(coords[0])
        return tuple(out)

    va, vb = found_first.vertex, found_second.vertex
    ms = exponents(first, va)
    ns = exponents(second, vb)
    if any((m == 0) != (n == 0) for m, n in zip(ms, ns)):
        return NotConjugate("an identity coordinate faces a nontrivial one")
    live = [(m, n) for m, n in zip(ms, ns) if m != 0]
    if not live:
        return Conjugate(Word.identity())

    # One scaling factor must relate the exponent patterns exactly.
    mu = gcd(*(m for m, _ in live))
    ratios = [(m // mu, n) for m, n in live]
    r0, n0 = ratios[0]
    if n0 % r0:
        return NotConjugate("exponent patterns differ")
    nu = n0 // r0
    if any(n != nu * r for r, n in ratios):
        return NotConjugate("exponent patterns differ")

    instance = build_reachability_instance(pres, mu, va.rep, nu, vb.rep)
    result = bounded_reachability(instance, state_budget)
    if isinstance(result, InconclusiveSearch):
        return Inconclusive(result.explored, result.budget)
    if isinstance(result, DefinitivelyUnreachable):
        return NotConjugate(
            f"gcd powers are not conjugate (closure of {result.closure_size} states)"
        )
    witness = word_simplify(
        pres,
        concat(vb.carrier, replay_witness(pres, result.edges), invert_word(pres, va.carrier)),
    )
    witness_inv = invert_word(pres, witness)
    for x, y in zip(first, second):
        assert is_trivial(pres, concat(witness, x, witness_inv, invert_word(pres, y)))
    return Conjugate(witness)
