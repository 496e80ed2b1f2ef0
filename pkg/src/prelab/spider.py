"""Cayley representations, pregroup covers of spiders, and theorem verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .monoid import (
    MonoidLawError,
    PregroupStructure,
    PrelMonoid,
    SELECTED_PLUG,
    check_frobenius,
    check_residuated,
    check_special,
    close_nabla,
    comonoid,
    is_pointed,
    law_failure,
    search_adjoints,
)
from .order import ClosedSet, Preorder, Side, generated, principal, product
from .prelation import (
    Prelation,
    as_closed_set,
    compose,
    converse_dual,
    identity,
    lower_set_prelation,
    tensor,
    upper_set_prelation,
)

_LEFT = ("⋉", "left", "ltimes")
_RIGHT = ("⋊", "right", "rtimes")


def cayley(M: PrelMonoid, a: ClosedSet, side: str = "⋉") -> Prelation:
    """``a^⋉(x, y)`` iff some ``t`` in ``a`` has ``nabla(t, x, y)``; ``⋊`` acts on the right."""
    if a.owner != M.carrier or a.side is not Side.LOWER:
        raise ValueError("cayley takes a lower set of the carrier")
    idx = sorted(a.members)
    n = M.size
    if not idx:
        mat = np.zeros((n, n), dtype=bool)
    elif side in _LEFT:
        mat = M.nabla[idx].any(axis=0)
    elif side in _RIGHT:
        mat = M.nabla[:, idx].any(axis=1)
    else:
        raise ValueError(f"unknown side {side!r}")
    return Prelation(M.carrier, M.carrier, mat)


def element_cayley(M: PrelMonoid, x: int, side: str = "⋉") -> Prelation:
    return cayley(M, principal(M.carrier, x, Side.LOWER), side)


def _delta_prelation(M: PrelMonoid) -> Prelation:
    n = M.size
    return Prelation(M.carrier, product(M.carrier, M.carrier), comonoid(M).delta.reshape(n, n * n))


def dual_element(M: PrelMonoid, a: ClosedSet, side: str = "L") -> ClosedSet:
    """``a^L`` is the composite ``unit ; Delta ; (a‡ x id)``, ``a^R`` plugs the other leg."""
    if a.owner != M.carrier or a.side is not Side.LOWER:
        raise ValueError("dual_element takes a lower set of the carrier")
    a_dual = upper_set_prelation(as_closed_set(converse_dual(lower_set_prelation(a))))
    ident = identity(M.carrier)
    if side == "L":
        plug = tensor(a_dual, ident)
    elif side == "R":
        plug = tensor(ident, a_dual)
    else:
        raise ValueError(f"side must be 'L' or 'R', got {side!r}")
    start = compose(lower_set_prelation(M.unit), _delta_prelation(M))
    return as_closed_set(compose(start, plug))


def cayley_order(M: PrelMonoid, table) -> set[str]:
    """Which composite of translations represents products: ``"ab"``, ``"ba"`` or both.

    ``"ba"`` means ``(ab)^⋉ = b^⋉ ; a^⋉`` in diagrammatic order.
    """
    n = M.size
    fits = {"ab", "ba"}
    for a in range(n):
        for b in range(n):
            prod = element_cayley(M, table[a][b])
            A, B = element_cayley(M, a), element_cayley(M, b)
            if compose(A, B) != prod:
                fits.discard("ab")
            if compose(B, A) != prod:
                fits.discard("ba")
    return fits


# covers --------------------------------------------------------------------

class SpiderError(ValueError):
    pass


def restrict(M: PrelMonoid, elements: Sequence[int], unit: Iterable[int]) -> PrelMonoid:
    """The monoid induced on ``elements`` (ambient indices) with the given unit."""
    elements = list(elements)
    local = {x: i for i, x in enumerate(elements)}
    sub = Preorder(M.carrier.rel[np.ix_(elements, elements)])
    nabla = M.nabla[np.ix_(elements, elements, elements)]
    u = frozenset(local[x] for x in unit if x in local)
    return PrelMonoid(sub, nabla, ClosedSet(sub, Side.LOWER, u))


@dataclass(frozen=True)
class Piece:
    """A pregroup living on a subset of an ambient carrier."""
    elements: tuple[int, ...]
    pregroup: PregroupStructure
    basepoint: int | None = None

    def local(self, x: int) -> int:
        return self.elements.index(x)

    def mult(self, a: int, b: int) -> int:
        """Product of ambient elements, as an ambient element."""
        return self.elements[self.pregroup.mult(self.local(a), self.local(b))]

    def ell(self, a: int) -> int:
        return self.elements[self.pregroup.ell(self.local(a))]

    def arr(self, a: int) -> int:
        return self.elements[self.pregroup.arr(self.local(a))]

    @property
    def unit_elem(self) -> int:
        return self.elements[self.pregroup.unit_elem]

    def embedded_triples(self) -> list[tuple[int, int, int]]:
        e = self.elements
        return [(e[x], e[y], e[z]) for x, y, z in self.pregroup.base.triples()]

    def embedded_unit(self) -> list[int]:
        return [self.elements[u] for u in sorted(self.pregroup.base.unit.members)]


def cover_carrier(M: PrelMonoid, t: int) -> tuple[int, ...]:
    """``A_t``: elements whose translation absorbs ``t``'s on both sides."""
    T = element_cayley(M, t)
    out = []
    for x in range(M.size):
        X = element_cayley(M, x)
        if compose(X, T) == X and compose(T, X) == X:
            out.append(x)
    return tuple(out)


def cover_component(M: PrelMonoid, t: int, require_spider: bool = True) -> Piece:
    if t not in M.unit:
        raise ValueError(f"{t} is not in the unit")
    if require_spider:
        _require_spider(M)
    elements = cover_carrier(M, t)
    if not elements:
        raise SpiderError(f"component for {t} is empty")
    unit = principal(M.carrier, t, Side.LOWER).members
    try:
        sub = restrict(M, elements, unit)
    except MonoidLawError as err:
        raise SpiderError(f"component for {t} is not a monoid: {err}") from None
    search = search_adjoints(sub)
    if search.structure is None:
        x, why = search.missing
        raise SpiderError(f"component for {t} is not a pregroup: element "
                          f"{elements[x] if x >= 0 else x} lacks {why}")
    return Piece(elements, search.structure, t)


def _require_spider(M: PrelMonoid):
    f, s = check_frobenius(M), check_special(M)
    if not f.holds:
        raise SpiderError(f"not Frobenius at {f.witness}")
    if not s.holds:
        raise SpiderError(f"not special at {s.witness}")


@dataclass(frozen=True)
class Covering:
    ambient: PrelMonoid
    components: tuple[Piece, ...]

    def as_dict(self) -> dict:
        P = self.ambient.carrier
        comps = []
        for c in self.components:
            comps.append({
                "basepoint": P.label(c.basepoint),
                "carrier": [P.label(x) for x in c.elements],
                "unit": P.label(c.unit_elem),
                "mult_table": [[P.label(c.mult(a, b)) for b in c.elements] for a in c.elements],
                "ell": {P.label(a): P.label(c.ell(a)) for a in c.elements},
                "arr": {P.label(a): P.label(c.arr(a)) for a in c.elements},
            })
        return {"components": comps}


def pregroup_cover(M: PrelMonoid, require_spider: bool = True) -> Covering:
    """One pregroup per unit element, merged when carriers and restrictions agree."""
    if require_spider:
        _require_spider(M)
    comps: list[Piece] = []
    for t in sorted(M.unit.members):
        piece = cover_component(M, t, require_spider=False)
        if any(c.elements == piece.elements and c.pregroup.base == piece.pregroup.base
               for c in comps):
            continue
        comps.append(piece)
    cover = Covering(M, tuple(comps))
    problems = cover_problems(cover)
    if problems:
        raise SpiderError("; ".join(problems))
    return cover


def cover_problems(cover: Covering) -> list[str]:
    M = cover.ambient
    P = M.carrier
    out = []
    covered = set()
    for c in cover.components:
        if c.basepoint not in M.unit:
            out.append(f"basepoint {c.basepoint} outside the unit")
        for x in c.elements:
            covered |= principal(P, x, Side.LOWER).members
            for y in c.elements:
                if not any(z in c.elements for z in np.flatnonzero(M.nabla[x, y])):
                    out.append(f"A_{c.basepoint} not closed under {x}*{y}")
    if covered != set(range(M.size)):
        out.append(f"components miss {sorted(set(range(M.size)) - covered)}")
    if set().union(*(c.elements for c in cover.components)) != set(range(M.size)):
        out.append("carriers do not exhaust the ambient set")
    ident = identity(P)
    joined = np.zeros((M.size, M.size), dtype=bool)
    for t in sorted(M.unit.members):
        T = element_cayley(M, t)
        if not T.issubset(ident):
            out.append(f"translation by unit element {t} exceeds the identity")
        joined |= T.mat
    if (joined != P.rel).any():
        out.append("unit translations do not join to the identity")
    if not check_consistency(cover.components, P).holds:
        out.append("components are inconsistent")
    return out


class Consistency(NamedTuple):
    holds: bool
    witness: tuple | None = None


def check_consistency(pieces: Sequence[Piece], ambient: Preorder,
                      definitional: bool = False) -> Consistency:
    """Products of shared elements agree up to equivalence on every overlap.

    ``definitional=True`` instead compares the closed relations of the two
    pieces, lifted to the ambient carrier, along every row and column through
    a shared element.
    """
    pieces = list(pieces)
    lifted = None
    if definitional:
        lifted = [_lift(p, ambient) for p in pieces]
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            pi, pj = pieces[i], pieces[j]
            shared = sorted(set(pi.elements) & set(pj.elements))
            for a in shared:
                if definitional:
                    Ni, Nj = lifted[i], lifted[j]
                    if (Ni[a] != Nj[a]).any() or (Ni[:, a] != Nj[:, a]).any():
                        return Consistency(False, (i, j, a))
                    continue
                for x in shared:
                    if not ambient.equiv(pi.mult(a, x), pj.mult(a, x)):
                        return Consistency(False, (i, j, a, x))
                    if not ambient.equiv(pi.mult(x, a), pj.mult(x, a)):
                        return Consistency(False, (i, j, x, a))
    return Consistency(True)


def _lift(p: Piece, ambient: Preorder) -> np.ndarray:
    n = ambient.size
    g = np.zeros((n, n, n), dtype=bool)
    for t in p.embedded_triples():
        g[t] = True
    return close_nabla(ambient, g)


class UnionError(ValueError):
    pass


def union_monoid(pieces: Sequence[Piece], ambient: Preorder) -> PrelMonoid:
    """Glue consistent pregroups: union of relations and units, closed in ``ambient``."""
    pieces = list(pieces)
    c = check_consistency(pieces, ambient)
    if not c.holds:
        raise UnionError(f"inconsistent family at {c.witness}")
    covered = generated(ambient, [x for p in pieces for x in p.elements], Side.LOWER)
    if len(covered) != ambient.size:
        raise UnionError("pieces do not cover the ambient carrier")
    n = ambient.size
    g = np.zeros((n, n, n), dtype=bool)
    for p in pieces:
        for t in p.embedded_triples():
            g[t] = True
    nabla = close_nabla(ambient, g)
    unit = generated(ambient, [u for p in pieces for u in p.embedded_unit()], Side.LOWER)
    err = law_failure(ambient, nabla, unit.members)
    if err is not None:
        raise UnionError(f"union breaks the monoid laws: {err}")
    return PrelMonoid(ambient, nabla, unit)


def piece_from_monoid(M: PrelMonoid, elements: Sequence[int] | None = None,
                      basepoint: int | None = None) -> Piece:
    """Wrap a pregroup monoid as a piece of a larger carrier."""
    search = search_adjoints(M)
    if search.structure is None:
        raise ValueError(f"not a pregroup: {search.missing}")
    elements = tuple(range(M.size)) if elements is None else tuple(elements)
    return Piece(elements, search.structure, basepoint)


# theorem verification ------------------------------------------------------

@dataclass
class TheoremReport:
    theorem: int
    directions: list = field(default_factory=list)   # (name, passed, witness)

    @property
    def holds(self) -> bool:
        return all(ok for _, ok, _ in self.directions)

    def add(self, name: str, passed: bool, witness=None):
        self.directions.append((name, bool(passed), witness))

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "holds": self.holds,
            "directions": [{"name": n, "passed": ok, "witness": _jsonable(w)}
                           for n, ok, w in self.directions],
        }


def _jsonable(w):
    if w is None or isinstance(w, (bool, int, float, str)):
        return w
    if isinstance(w, (tuple, list)):
        return [_jsonable(v) for v in w]
    if isinstance(w, (np.integer,)):
        return int(w)
    return str(w)


def verify_theorem(which: int, subject, plug: str = SELECTED_PLUG) -> TheoremReport:
    """Check both directions of a theorem on one subject.

    ``which`` picks the characterization: 1 is pregroup iff pointed spider,
    2 is Frobenius iff residuated, 3 is spider iff pregroup-covered. The
    first two take a monoid; 3 also accepts ``(pieces, ambient)`` and then
    checks only the union direction.
    """
    rep = TheoremReport(which)
    if which == 1:
        search = search_adjoints(subject)
        pointed = is_pointed(subject)
        f, s = check_frobenius(subject), check_special(subject)
        rhs = pointed and f.holds and s.holds
        lhs = search.structure is not None
        rep.add("pregroup => pointed spider", (not lhs) or rhs,
                None if (not lhs) or rhs else ("pointed", pointed, f.witness, s.witness))
        rep.add("pointed spider => pregroup", (not rhs) or lhs,
                None if (not rhs) or lhs else search.missing)
        return rep
    if which == 2:
        f = check_frobenius(subject)
        left = check_residuated(subject, "left", plug)
        right = check_residuated(subject, "right", plug)
        for name, v in (("left", left), ("right", right)):
            rep.add(f"frobenius => {name} residuated", (not f.holds) or v.holds,
                    None if (not f.holds) or v.holds else v.witness)
            rep.add(f"{name} residuated => frobenius", (not v.holds) or f.holds,
                    None if (not v.holds) or f.holds else f.witness)
        return rep
    if which == 3:
        if isinstance(subject, tuple):
            pieces, ambient = subject
            _union_direction(rep, pieces, ambient)
            return rep
        M = subject
        spider = check_frobenius(M).holds and check_special(M).holds
        try:
            cover = pregroup_cover(M, require_spider=False)
            problem = _round_trip_problem(cover)
        except (SpiderError, UnionError) as err:
            cover, problem = None, str(err)
        built = cover is not None and problem is None
        rep.add("spider => pregroup cover", (not spider) or built,
                None if (not spider) or built else problem)
        rep.add("pregroup cover => spider", (not built) or spider,
                None if (not built) or spider else "cover exists for a non-spider")
        return rep
    raise ValueError(f"no theorem {which}")


def _round_trip_problem(cover: Covering) -> str | None:
    M = cover.ambient
    U = union_monoid(cover.components, M.carrier)
    if (U.nabla != M.nabla).any():
        return "union of components does not reproduce nabla"
    if U.unit.members != M.unit.members:
        return "union of components does not reproduce the unit"
    return None


def _union_direction(rep: TheoremReport, pieces, ambient: Preorder):
    try:
        U = union_monoid(pieces, ambient)
    except UnionError as err:
        rep.add("consistent union => spider", False, str(err))
        return
    f, s = check_frobenius(U), check_special(U)
    rep.add("consistent union => spider", f.holds and s.holds,
            None if f.holds and s.holds else (f.witness, s.witness))
