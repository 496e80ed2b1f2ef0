"""Finite preorders, their closed sets and completions.

Elements are dense indices ``0..n-1``. ``rel[x, y]`` holds iff ``derr(x, y)``.
Lower sets are closed under derr-successors, upper sets under
derr-predecessors, so ``principal(P, x, LOWER) = {y | derr(x, y)}``.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

import numpy as np

SIZE_LIMIT_ENV = "PRELAB_SIZE_LIMIT"
PREORDER_LIMIT = 4
COMPLETION_LIMIT = 16


class SizeLimitError(ValueError):
    """Raised when an exhaustive construction would exceed its guard."""


def size_limit(default: int) -> int:
    """The enumeration guard, overridden by ``$PRELAB_SIZE_LIMIT`` when set."""
    raw = os.environ.get(SIZE_LIMIT_ENV)
    if raw is None or not raw.strip():
        return default
    return int(raw)


def bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Relational composite: ``out[i, k] = any_j a[i, j] and b[j, k]``."""
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=bool)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Preorder:
    rel: np.ndarray
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        rel = _frozen(self.rel)
        if rel.ndim != 2 or rel.shape[0] != rel.shape[1]:
            raise ValueError(f"relation must be square, got shape {rel.shape}")
        if not rel.diagonal().all():
            x = int(np.flatnonzero(~rel.diagonal())[0])
            raise ValueError(f"not reflexive at {x}")
        bad = bool_matmul(rel, rel) & ~rel
        if bad.any():
            x, z = (int(i) for i in np.argwhere(bad)[0])
            raise ValueError(f"not transitive: derr({x},{z}) missing")
        object.__setattr__(self, "rel", rel)
        if self.names is not None:
            names = tuple(str(s) for s in self.names)
            if len(names) != rel.shape[0] or len(set(names)) != len(names):
                raise ValueError("names must be distinct, one per element")
            object.__setattr__(self, "names", names)

    @property
    def size(self) -> int:
        return self.rel.shape[0]

    def derr(self, x: int, y: int) -> bool:
        return bool(self.rel[x, y])

    def equiv(self, x: int, y: int) -> bool:
        return bool(self.rel[x, y] and self.rel[y, x])

    def label(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def index(self, name: str) -> int:
        if self.names is None:
            return int(name)
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown element {name!r}") from None

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(x), int(y)) for x, y in np.argwhere(self.rel)]

    def is_discrete(self) -> bool:
        return bool((self.rel == self.rel.T).all())

    def __eq__(self, other):
        if not isinstance(other, Preorder):
            return NotImplemented
        return self.rel.shape == other.rel.shape and bool((self.rel == other.rel).all())

    def __hash__(self):
        return hash((self.size, self.rel.tobytes()))

    def __repr__(self):
        strict = [(x, y) for x, y in self.pairs() if x != y]
        return f"Preorder(size={self.size}, derr={strict})"


def close_preorder(n: int, gens: Iterable[tuple[int, int]], names=None) -> Preorder:
    rel = np.eye(n, dtype=bool)
    for x, y in gens:
        if not (0 <= x < n and 0 <= y < n):
            raise ValueError(f"pair ({x}, {y}) out of range for {n} elements")
        rel[x, y] = True
    for k in range(n):
        rel |= np.outer(rel[:, k], rel[k, :])
    return Preorder(rel, names)


def discrete(n: int) -> Preorder:
    return Preorder(np.eye(n, dtype=bool))


def chain(n: int) -> Preorder:
    """``derr(i, j)`` iff ``i <= j``; ``chain(2)`` is the C2 fixture."""
    return Preorder(np.triu(np.ones((n, n), dtype=bool)))


def one() -> Preorder:
    """The unit preorder with a single element."""
    return discrete(1)


def quotient(P: Preorder) -> tuple[Preorder, tuple[int, ...]]:
    """Collapse equivalence classes, numbered by first occurrence."""
    classes: list[int] = []
    reps: list[int] = []
    for x in range(P.size):
        for c, r in enumerate(reps):
            if P.equiv(x, r):
                classes.append(c)
                break
        else:
            classes.append(len(reps))
            reps.append(x)
    rel = P.rel[np.ix_(reps, reps)]
    return Preorder(rel), tuple(classes)


def opposite(P: Preorder) -> Preorder:
    return Preorder(P.rel.T, P.names)


def direct_sum(P: Preorder, Q: Preorder) -> Preorder:
    n, m = P.size, Q.size
    rel = np.zeros((n + m, n + m), dtype=bool)
    rel[:n, :n] = P.rel
    rel[n:, n:] = Q.rel
    return Preorder(rel)


def product(P: Preorder, Q: Preorder) -> Preorder:
    """Componentwise order on pairs, the pair ``(x, y)`` stored at ``x * |Q| + y``.

    This flattening is strictly associative and unital, so ``(P x Q) x R`` and
    ``P x (Q x R)`` are literally the same preorder, as are ``P x one()`` and ``P``.
    """
    return Preorder(np.kron(P.rel, Q.rel))


def pair_index(Q: Preorder, x: int, y: int) -> int:
    return x * Q.size + y


def split_index(Q: Preorder, i: int) -> tuple[int, int]:
    return divmod(i, Q.size)


class Side(str, Enum):
    LOWER = "lower"
    UPPER = "upper"

    def flip(self) -> "Side":
        return Side.UPPER if self is Side.LOWER else Side.LOWER


@dataclass(frozen=True)
class ClosedSet:
    owner: Preorder
    side: Side
    members: frozenset

    def __post_init__(self):
        members = frozenset(int(x) for x in self.members)
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "side", Side(self.side))
        n = self.owner.size
        if any(not 0 <= x < n for x in members):
            raise ValueError(f"members {sorted(members)} out of range for {n} elements")
        rel = self.owner.rel
        for x in members:
            reach = rel[x] if self.side is Side.LOWER else rel[:, x]
            missing = set(np.flatnonzero(reach).tolist()) - members
            if missing:
                raise ValueError(
                    f"{sorted(members)} is not a {self.side.value} set: "
                    f"{x} forces {sorted(missing)}"
                )

    @property
    def vector(self) -> np.ndarray:
        v = np.zeros(self.owner.size, dtype=bool)
        v[list(self.members)] = True
        return v

    def sorted(self) -> list[int]:
        return sorted(self.members)

    def __contains__(self, x) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


def principal(P: Preorder, x: int, side: Side) -> ClosedSet:
    side = Side(side)
    row = P.rel[x] if side is Side.LOWER else P.rel[:, x]
    return ClosedSet(P, side, frozenset(np.flatnonzero(row).tolist()))


def generated(P: Preorder, gens: Iterable[int], side: Side) -> ClosedSet:
    """The smallest closed set of the given side containing ``gens``."""
    side = Side(side)
    out: set[int] = set()
    for g in gens:
        out |= principal(P, g, side).members
    return ClosedSet(P, side, frozenset(out))


def completion(P: Preorder, side: Side, limit: int | None = None) -> list[ClosedSet]:
    """All lower (or upper) sets of ``P``.

    Built by branching on each element in turn: putting ``x`` in forces its
    closure in, leaving it out forces everything that would force it out.
    """
    side = Side(side)
    limit = COMPLETION_LIMIT if limit is None else limit
    if P.size > limit:
        raise SizeLimitError(f"completion refused: size {P.size} exceeds limit {limit}")
    reach = P.rel if side is Side.LOWER else P.rel.T
    n = P.size
    found: list[frozenset] = []

    def branch(i: int, inside: frozenset, outside: frozenset):
        while i < n and (i in inside or i in outside):
            i += 1
        if i == n:
            found.append(inside)
            return
        forced_in = frozenset(np.flatnonzero(reach[i]).tolist())
        if not forced_in & outside:
            branch(i + 1, inside | forced_in, outside)
        forced_out = frozenset(np.flatnonzero(reach[:, i]).tolist())
        if not forced_out & inside:
            branch(i + 1, inside, outside | forced_out)

    branch(0, frozenset(), frozenset())
    found.sort(key=lambda s: (len(s), sorted(s)))
    return [ClosedSet(P, side, s) for s in found]


def enumerate_preorders(n: int, limit: int | None = None) -> Iterator[Preorder]:
    """Every labeled preorder on ``n`` elements, once each, in a fixed order.

    Preorders on ``n`` elements restrict to preorders on the first ``n - 1``,
    so each one is an extension of a smaller one by a row and a column.
    """
    limit = size_limit(PREORDER_LIMIT) if limit is None else limit
    if n > limit:
        raise SizeLimitError(f"enumeration refused: n={n} exceeds limit {limit}")
    if n < 0:
        raise ValueError("n must be non-negative")
    for rel in _extensions(n):
        yield Preorder(rel)


def _extensions(n: int) -> Iterator[np.ndarray]:
    if n == 0:
        yield np.zeros((0, 0), dtype=bool)
        return
    k = n - 1
    for base in _extensions(k):
        for bits in itertools.product((False, True), repeat=2 * k):
            rel = np.zeros((n, n), dtype=bool)
            rel[:k, :k] = base
            rel[k, :k] = bits[:k]
            rel[:k, k] = bits[k:]
            rel[k, k] = True
            if not (bool_matmul(rel, rel) & ~rel).any():
                yield rel


def is_monotone(P: Preorder, Q: Preorder, f: Sequence[int]) -> bool:
    return all(Q.rel[f[x], f[y]] for x, y in P.pairs())
