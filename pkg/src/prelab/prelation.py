"""Prelations: relations upper-closed in the domain and lower-closed in the codomain.

``Phi.mat[x, y]`` holds iff ``derr(x, Phi, y)``. Composition is diagrammatic:
``compose(Phi, Psi)`` runs ``Phi`` first.

Two duals live here. :func:`ddag` is the bound dual (joint upper and lower
bounds); it is the one whose iterates satisfy ``Phi <= Phi‡‡`` and
``Phi‡ = Phi‡‡‡``. :func:`converse_dual` transposes the generators of each
image; it is the plain converse on discrete orders and sends a map ``f`` to
``derr(b, f(a))``. Monoids take their comonoid from the latter.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

import numpy as np

from .order import (
    ClosedSet,
    Preorder,
    Side,
    _frozen,
    bool_matmul,
    one,
    opposite,
    product,
)


@dataclass(frozen=True, eq=False)
class Prelation:
    dom: Preorder
    cod: Preorder
    mat: np.ndarray

    def __post_init__(self):
        mat = _frozen(self.mat)
        if mat.shape != (self.dom.size, self.cod.size):
            raise ValueError(f"matrix shape {mat.shape} does not match "
                             f"{self.dom.size}x{self.cod.size}")
        closed = bool_matmul(bool_matmul(self.dom.rel, mat), self.cod.rel)
        if (closed & ~mat).any():
            x, y = (int(i) for i in np.argwhere(closed & ~mat)[0])
            raise ValueError(f"not closed: ({x}, {y}) is forced but missing")
        object.__setattr__(self, "mat", mat)

    def holds(self, x: int, y: int) -> bool:
        return bool(self.mat[x, y])

    def image(self, x: int) -> frozenset:
        return frozenset(np.flatnonzero(self.mat[x]).tolist())

    def preimage(self, y: int) -> frozenset:
        return frozenset(np.flatnonzero(self.mat[:, y]).tolist())

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(x), int(y)) for x, y in np.argwhere(self.mat)]

    def issubset(self, other: "Prelation") -> bool:
        _same_type(self, other)
        return not (self.mat & ~other.mat).any()

    def __eq__(self, other):
        if not isinstance(other, Prelation):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and bool((self.mat == other.mat).all()))

    def __hash__(self):
        return hash((self.dom, self.cod, self.mat.tobytes()))

    def __repr__(self):
        return f"Prelation({self.dom.size}->{self.cod.size}, {self.pairs()})"


def _same_type(a: Prelation, b: Prelation):
    if a.dom != b.dom or a.cod != b.cod:
        raise TypeError("prelations have different types")


def close_prelation(P: Preorder, Q: Preorder, gens: Iterable[tuple[int, int]]) -> Prelation:
    g = np.zeros((P.size, Q.size), dtype=bool)
    for x, y in gens:
        if not (0 <= x < P.size and 0 <= y < Q.size):
            raise ValueError(f"pair ({x}, {y}) out of range")
        g[x, y] = True
    # both orders are transitive, so one sandwich reaches the fixpoint
    return Prelation(P, Q, bool_matmul(bool_matmul(P.rel, g), Q.rel))


def identity(P: Preorder) -> Prelation:
    return Prelation(P, P, P.rel)


def empty(P: Preorder, Q: Preorder) -> Prelation:
    return Prelation(P, Q, np.zeros((P.size, Q.size), dtype=bool))


def full(P: Preorder, Q: Preorder) -> Prelation:
    return Prelation(P, Q, np.ones((P.size, Q.size), dtype=bool))


def compose(phi: Prelation, psi: Prelation) -> Prelation:
    if phi.cod != psi.dom:
        raise TypeError("cannot compose: codomain and domain differ")
    return Prelation(phi.dom, psi.cod, bool_matmul(phi.mat, psi.mat))


def tensor(phi: Prelation, psi: Prelation) -> Prelation:
    return Prelation(product(phi.dom, psi.dom), product(phi.cod, psi.cod),
                     np.kron(phi.mat, psi.mat))


def op_dual(phi: Prelation) -> Prelation:
    return Prelation(opposite(phi.cod), opposite(phi.dom), phi.mat.T)


def ddag(phi: Prelation) -> Prelation:
    """Bound dual ``cod -> dom``.

    ``derr(y, Phi‡, x)`` iff ``y`` lies below every ``v`` with ``Phi(x, v)`` and
    every ``u`` with ``Phi(u, y)`` lies below ``x``.
    """
    P, Q, m = phi.dom, phi.cod, phi.mat
    below_image = ~bool_matmul(~Q.rel, m.T)     # [y, x]: all v in Phi(x, -) have derr(y, v)
    preimage_below = ~bool_matmul(m.T, ~P.rel)  # [y, x]: all u in Phi(-, y) have derr(u, x)
    return Prelation(Q, P, below_image & preimage_below)


def minimal(P: Preorder, members: Iterable[int]) -> list[int]:
    """Members with nothing strictly derr-below them inside the set."""
    s = sorted(set(members))
    return [m for m in s if all(P.rel[m, v] or not P.rel[v, m] for v in s)]


def converse_dual(phi: Prelation) -> Prelation:
    """Generator converse ``cod -> dom``.

    ``derr(y, Phi°, x)`` iff some ``x'`` with ``derr(x', x)`` has a minimal
    ``m`` in its image with ``derr(y, m)``.
    """
    P, Q = phi.dom, phi.cod
    gens = np.zeros((Q.size, P.size), dtype=bool)
    for x in range(P.size):
        for m in minimal(Q, phi.image(x)):
            gens[m, x] = True
    return Prelation(Q, P, bool_matmul(bool_matmul(Q.rel, gens), P.rel))


class MapVerdict(NamedTuple):
    total: bool
    single_valued: bool
    representative: tuple[int, ...] | None

    @property
    def is_map(self) -> bool:
        return self.total and self.single_valued


def least(P: Preorder, members: Iterable[int]) -> int | None:
    """Lowest-index member lying derr-below every member, if any."""
    s = sorted(set(members))
    for a in s:
        if all(P.rel[a, v] for v in s):
            return a
    return None


def is_map(phi: Prelation) -> MapVerdict:
    """Totality and single-valuedness up to equivalence.

    An image is single-valued when it is principal, ``Phi(x, -) = ↓a``; its
    generators are then exactly the elements equivalent to ``a``.
    """
    reps = []
    total = single = True
    for x in range(phi.dom.size):
        img = phi.image(x)
        if not img:
            total = False
            reps.append(None)
            continue
        a = least(phi.cod, img)
        if a is None:
            single = False
        reps.append(a)
    rep = tuple(reps) if total and single else None
    return MapVerdict(total, single, rep)


def from_function(P: Preorder, Q: Preorder, f) -> Prelation:
    """The map ``x -> ↓f(x)``; ``f`` must be monotone."""
    return close_prelation(P, Q, [(x, f[x]) for x in range(P.size)])


def lower_set_prelation(L: ClosedSet) -> Prelation:
    if L.side is not Side.LOWER:
        raise ValueError("expected a lower set")
    return Prelation(one(), L.owner, L.vector[None, :])


def upper_set_prelation(V: ClosedSet) -> Prelation:
    if V.side is not Side.UPPER:
        raise ValueError("expected an upper set")
    return Prelation(V.owner, one(), V.vector[:, None])


def as_closed_set(phi: Prelation) -> ClosedSet:
    """Read a prelation from or to the unit preorder as a closed set."""
    if phi.dom.size == 1 and phi.dom == one():
        return ClosedSet(phi.cod, Side.LOWER, phi.image(0))
    if phi.cod == one():
        return ClosedSet(phi.dom, Side.UPPER, phi.preimage(0))
    raise TypeError("prelation does not start or end at the unit preorder")


class Diagonals(NamedTuple):
    delta: Prelation
    bang: Prelation
    rho: Prelation
    antibang: Prelation


def diagonal_structure(P: Preorder) -> Diagonals:
    PP = product(P, P)
    delta = close_prelation(P, PP, [(x, x * P.size + x) for x in range(P.size)])
    bang = full(P, one())
    return Diagonals(delta, bang, ddag(delta), ddag(bang))


@dataclass(frozen=True)
class GaloisExtensions:
    """The four extensions of ``Phi: A -> B`` to the completions.

    ``lower_star``: Up A -> Do B and ``upper_star``: Do B -> Up A intersect
    images and preimages of ``Phi``; the sharp pair does the same for ``Phi‡``.
    """
    phi: Prelation
    dual: Prelation

    def lower_star(self, V: ClosedSet) -> ClosedSet:
        _expect(V, self.phi.dom, Side.UPPER)
        return ClosedSet(self.phi.cod, Side.LOWER, _meet(self.phi.mat, V, axis=0))

    def upper_star(self, L: ClosedSet) -> ClosedSet:
        _expect(L, self.phi.cod, Side.LOWER)
        return ClosedSet(self.phi.dom, Side.UPPER, _meet(self.phi.mat, L, axis=1))

    def lower_sharp(self, W: ClosedSet) -> ClosedSet:
        _expect(W, self.phi.cod, Side.UPPER)
        return ClosedSet(self.phi.dom, Side.LOWER, _meet(self.dual.mat, W, axis=0))

    def upper_sharp(self, K: ClosedSet) -> ClosedSet:
        _expect(K, self.phi.dom, Side.LOWER)
        return ClosedSet(self.phi.cod, Side.UPPER, _meet(self.dual.mat, K, axis=1))


def _expect(S: ClosedSet, owner: Preorder, side: Side):
    if S.owner != owner or S.side is not side:
        raise ValueError(f"expected a {side.value} set of the matching preorder")


def _meet(mat: np.ndarray, S: ClosedSet, axis: int) -> frozenset:
    idx = sorted(S.members)
    if axis == 0:
        rows = mat[idx, :] if idx else np.ones((1, mat.shape[1]), dtype=bool)
    else:
        rows = mat[:, idx].T if idx else np.ones((1, mat.shape[0]), dtype=bool)
    return frozenset(np.flatnonzero(rows.all(axis=0)).tolist())


def galois_extensions(phi: Prelation) -> GaloisExtensions:
    return GaloisExtensions(phi, ddag(phi))


class Compact(NamedTuple):
    eta: Prelation
    eps: Prelation


def compact_cups(P: Preorder) -> Compact:
    """``eta: 1 -> P^o x P`` and ``eps: P x P^o -> 1``, both given by derr."""
    Po = opposite(P)
    eta = Prelation(one(), product(Po, P), P.rel.reshape(1, -1))
    eps = Prelation(product(P, Po), one(), P.rel.reshape(-1, 1))
    return Compact(eta, eps)


def snakes(P: Preorder) -> tuple[Prelation, Prelation]:
    """The two zigzag composites, each of which should be an identity."""
    eta, eps = compact_cups(P)
    Po = opposite(P)
    zig = compose(tensor(identity(P), eta), tensor(eps, identity(P)))
    zag = compose(tensor(eta, identity(Po)), tensor(identity(Po), eps))
    return zig, zag


def relational_map_laws(phi: Prelation, dual: Callable[[Prelation], Prelation]) -> tuple[bool, bool]:
    """``id <= Phi;Phi*`` and ``Phi*;Phi <= id`` for a chosen dual ``*``."""
    d = dual(phi)
    total = identity(phi.dom).issubset(compose(phi, d))
    single = compose(d, phi).issubset(identity(phi.cod))
    return total, single
