"""Prelational monoids and the predicates the theorems talk about.

A monoid is a carrier preorder, a closed ternary relation ``nabla[x, y, z]``
(upper-closed in ``x, y``, lower-closed in ``z``) and a unit lower set.
The comonoid ``delta[z, x, y]`` and counit are never stored; they are
computed from ``nabla`` and the unit by :func:`prelab.prelation.converse_dual`.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Callable, Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .order import ClosedSet, Preorder, Side, _frozen, completion, principal, product
from .prelation import (
    Prelation,
    as_closed_set,
    converse_dual,
    ddag,
    is_map,
    least,
    lower_set_prelation,
    upper_set_prelation,
)


class MonoidLawError(ValueError):
    def __init__(self, law: str, instance: tuple):
        self.law = law
        self.instance = instance
        super().__init__(f"{law} fails at {instance}")

    def __reduce__(self):
        return (MonoidLawError, (self.law, self.instance))


def _i(a: np.ndarray) -> np.ndarray:
    return a.astype(np.int64)


def close_nabla(P: Preorder, nabla) -> np.ndarray:
    """Smallest closed ternary relation containing ``nabla``."""
    R = _i(P.rel)
    out = np.einsum("ab,cd,bdf,fe->ace", R, R, _i(np.asarray(nabla, dtype=bool)), R) > 0
    return out


def law_failure(P: Preorder, nabla: np.ndarray, unit: Iterable[int]) -> MonoidLawError | None:
    """The first failing closure, associativity or unit instance, if any."""
    n = P.size
    closed = close_nabla(P, nabla)
    if (closed != nabla).any():
        return MonoidLawError("closure", tuple(int(i) for i in np.argwhere(closed != nabla)[0]))
    N = _i(nabla)
    left = np.einsum("xyu,uzw->xyzw", N, N) > 0
    right = np.einsum("xvw,yzv->xyzw", N, N) > 0
    if (left != right).any():
        return MonoidLawError("associativity",
                              tuple(int(i) for i in np.argwhere(left != right)[0]))
    idx = sorted(unit)
    zero = np.zeros((n, n), dtype=bool)
    lu = nabla[idx].any(axis=0) if idx else zero
    ru = nabla[:, idx].any(axis=1) if idx else zero
    for name, got in (("left unit", lu), ("right unit", ru)):
        if (got != P.rel).any():
            return MonoidLawError(name, tuple(int(i) for i in np.argwhere(got != P.rel)[0]))
    return None


@dataclass(frozen=True, eq=False)
class PrelMonoid:
    carrier: Preorder
    nabla: np.ndarray
    unit: ClosedSet

    def __post_init__(self):
        nabla = _frozen(self.nabla)
        n = self.carrier.size
        if nabla.shape != (n, n, n):
            raise ValueError(f"nabla shape {nabla.shape} does not match carrier size {n}")
        if self.unit.owner != self.carrier or self.unit.side is not Side.LOWER:
            raise ValueError("unit must be a lower set of the carrier")
        object.__setattr__(self, "nabla", nabla)
        err = law_failure(self.carrier, nabla, self.unit.members)
        if err is not None:
            raise err

    @property
    def size(self) -> int:
        return self.carrier.size

    def triples(self) -> list[tuple[int, int, int]]:
        return [tuple(int(i) for i in t) for t in np.argwhere(self.nabla)]

    def key(self) -> tuple:
        return (self.carrier.rel.tobytes(), self.nabla.tobytes(), tuple(sorted(self.unit.members)))

    def __eq__(self, other):
        if not isinstance(other, PrelMonoid):
            return NotImplemented
        return self.key() == other.key() and self.carrier == other.carrier

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return (f"PrelMonoid(size={self.size}, nabla={len(self.triples())} triples, "
                f"unit={sorted(self.unit.members)})")


def build_monoid(P: Preorder, nabla_gens: Iterable[tuple[int, int, int]],
                 unit_gens: Iterable[int]) -> PrelMonoid:
    n = P.size
    gens = np.zeros((n, n, n), dtype=bool)
    for t in nabla_gens:
        if len(t) != 3 or any(not 0 <= i < n for i in t):
            raise ValueError(f"triple {t} out of range")
        gens[tuple(t)] = True
    units = list(unit_gens)
    if any(not 0 <= u < n for u in units):
        raise ValueError(f"unit generators {units} out of range")
    unit = ClosedSet(P, Side.LOWER, frozenset().union(*(principal(P, u, Side.LOWER).members
                                                        for u in units)))
    return PrelMonoid(P, close_nabla(P, gens), unit)


def lift_table(P: Preorder, table: Sequence[Sequence[int]]) -> np.ndarray:
    """``nabla(x, y, z)`` iff ``derr(table[x][y], z)``."""
    T = np.asarray(table, dtype=np.int64)
    return P.rel[T]


def from_table(P: Preorder, table: Sequence[Sequence[int]], unit_elem: int) -> PrelMonoid:
    return PrelMonoid(P, lift_table(P, table), principal(P, unit_elem, Side.LOWER))


def nabla_prelation(M: PrelMonoid) -> Prelation:
    n = M.size
    return Prelation(product(M.carrier, M.carrier), M.carrier, M.nabla.reshape(n * n, n))


def unit_prelation(M: PrelMonoid) -> Prelation:
    return lower_set_prelation(M.unit)


class Comonoid(NamedTuple):
    delta: np.ndarray     # delta[z, x, y]
    counit: ClosedSet     # upper set


DualFn = Callable[[Prelation], Prelation]


def comonoid_of(M: PrelMonoid, dual: DualFn = converse_dual) -> Comonoid:
    n = M.size
    d = dual(nabla_prelation(M)).mat.reshape(n, n, n)
    top = as_closed_set(dual(unit_prelation(M)))
    return Comonoid(_frozen(d), top)


@lru_cache(maxsize=4096)
def _comonoid_cached(M: PrelMonoid) -> Comonoid:
    return comonoid_of(M)


def comonoid(M: PrelMonoid) -> Comonoid:
    """Cached :func:`comonoid_of` with the default dual."""
    return _comonoid_cached(M)


class Verdict(NamedTuple):
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def _first(mask: np.ndarray) -> tuple | None:
    hits = np.argwhere(mask)
    return tuple(int(i) for i in hits[0]) if len(hits) else None


def comonoid_law_failure(M: PrelMonoid, co: Comonoid | None = None) -> str | None:
    """Coassociativity and counit laws for the derived comonoid."""
    D = _i((co or comonoid(M)).delta)
    top = sorted((co or comonoid(M)).counit.members)
    left = np.einsum("wuz,uxy->wxyz", D, D) > 0
    right = np.einsum("wxv,vyz->wxyz", D, D) > 0
    if (left != right).any():
        return f"coassociativity at {_first(left != right)}"
    n = M.size
    zero = np.zeros((n, n), dtype=bool)
    lc = D[:, top, :].any(axis=1) if top else zero
    rc = D[:, :, top].any(axis=2) if top else zero
    if (lc != M.carrier.rel).any() or (rc != M.carrier.rel).any():
        return "counit"
    return None


def check_frobenius(M: PrelMonoid, co: Comonoid | None = None) -> Verdict:
    """Both Frobenius implications, first failure in lexicographic ``(x, y, u, v)``."""
    N = _i(M.nabla)
    D = _i((co or comonoid(M)).delta)
    middle = np.einsum("xyz,zuv->xyuv", N, D) > 0
    via_s = np.einsum("xsu,ysv->xyuv", N, D) > 0
    via_t = np.einsum("xut,tyv->xyuv", D, N) > 0
    bad = middle & ~(via_s & via_t)
    return Verdict(not bad.any(), _first(bad))


def check_special(M: PrelMonoid, co: Comonoid | None = None) -> Verdict:
    D = _i((co or comonoid(M)).delta)
    through = np.einsum("xuv,uvy->xy", D, _i(M.nabla)) > 0
    bad = through & ~M.carrier.rel
    return Verdict(not bad.any(), _first(bad))


def split_inclusion(M: PrelMonoid, co: Comonoid | None = None) -> Verdict:
    """``id <= Delta;nabla``: every ``derr(x, y)`` factors through some pair."""
    D = _i((co or comonoid(M)).delta)
    through = np.einsum("xuv,uvy->xy", D, _i(M.nabla)) > 0
    bad = M.carrier.rel & ~through
    return Verdict(not bad.any(), _first(bad))


def is_strict(M: PrelMonoid) -> bool:
    return is_map(nabla_prelation(M)).is_map


def is_pointed(M: PrelMonoid) -> bool:
    return is_map(unit_prelation(M)).is_map


def representation(M: PrelMonoid) -> tuple[tuple[tuple[int, ...], ...], int] | None:
    """Lowest-index multiplication table and unit element, when representable."""
    n = M.size
    rows = []
    for x in range(n):
        row = []
        for y in range(n):
            a = least(M.carrier, np.flatnonzero(M.nabla[x, y]).tolist())
            if a is None:
                return None
            row.append(a)
        rows.append(tuple(row))
    iota = least(M.carrier, M.unit.members)
    if iota is None:
        return None
    return tuple(rows), iota


@dataclass(frozen=True)
class PregroupStructure:
    base: PrelMonoid
    mult_table: tuple[tuple[int, ...], ...]
    unit_elem: int
    ell_table: tuple[int, ...]
    arr_table: tuple[int, ...]

    def mult(self, x: int, y: int) -> int:
        return self.mult_table[x][y]

    def ell(self, x: int) -> int:
        return self.ell_table[x]

    def arr(self, x: int) -> int:
        return self.arr_table[x]

    @property
    def carrier(self) -> Preorder:
        return self.base.carrier

    def derr(self, x: int, y: int) -> bool:
        return self.base.carrier.derr(x, y)


class AdjointSearch(NamedTuple):
    structure: PregroupStructure | None
    missing: tuple[int, str] | None   # (element, "left" | "right" | "representable")


def search_adjoints(M: PrelMonoid) -> AdjointSearch:
    rep = representation(M)
    if rep is None:
        return AdjointSearch(None, (-1, "representable"))
    table, iota = rep
    d = M.carrier.derr
    m = lambda a, b: table[a][b]
    ells, arrs = [], []
    for x in range(M.size):
        left = [c for c in range(M.size) if d(m(x, c), iota) and d(iota, m(c, x))]
        if not left:
            return AdjointSearch(None, (x, "left"))
        right = [c for c in range(M.size) if d(m(c, x), iota) and d(iota, m(x, c))]
        if not right:
            return AdjointSearch(None, (x, "right"))
        ells.append(left[0])
        arrs.append(right[0])
    pg = PregroupStructure(M, table, iota, tuple(ells), tuple(arrs))
    bad = correspondence_failure(pg)
    if bad is not None:
        raise AssertionError(f"adjoints found but correspondence fails at {bad}")
    return AdjointSearch(pg, None)


def pregroup_adjoints(M: PrelMonoid) -> PregroupStructure | None:
    return search_adjoints(M).structure


def correspondence_failure(pg: PregroupStructure) -> tuple | None:
    """``xa |- b <=> a |- x^l b`` and ``x^r a |- b <=> a |- xb`` for all ``a, b``."""
    d, m = pg.derr, pg.mult
    rng = range(pg.base.size)
    for x in rng:
        for a in rng:
            for b in rng:
                if d(m(x, a), b) != d(a, m(pg.ell(x), b)):
                    return ("left", x, a, b)
                if d(m(pg.arr(x), a), b) != d(a, m(x, b)):
                    return ("right", x, a, b)
    return None


def adjoint_bounds_hold(pg: PregroupStructure) -> bool:
    """``x^l`` tops ``{a | xa |- iota}`` and ``x^r`` bottoms ``{b | iota |- xb}``.

    Any other member bounding the set the same way must be equivalent.
    """
    d, m, i = pg.derr, pg.mult, pg.unit_elem
    rng = range(pg.base.size)
    for x in rng:
        S = [a for a in rng if d(m(x, a), i)]
        tops = [a for a in S if all(d(s, a) for s in S)]
        if pg.ell(x) not in tops or any(not pg.base.carrier.equiv(t, pg.ell(x)) for t in tops):
            return False
        T = [b for b in rng if d(i, m(x, b))]
        bottoms = [b for b in T if all(d(b, t) for t in T)]
        if pg.arr(x) not in bottoms or any(not pg.base.carrier.equiv(b, pg.arr(x)) for b in bottoms):
            return False
    return True


def frobenius_witnesses(pg: PregroupStructure, x: int, y: int, u: int, v: int):
    """Candidate ``s`` and ``t`` for ``xy |- uv``, canonical ones included."""
    d, m = pg.derr, pg.mult
    if not d(m(x, y), m(u, v)):
        raise ValueError(f"precondition fails: derr({m(x, y)}, {m(u, v)}) does not hold")
    rng = range(pg.base.size)
    s_cands = frozenset(s for s in rng if d(m(x, s), u) and d(y, m(s, v)))
    t_cands = frozenset(t for t in rng if d(x, m(u, t)) and d(m(t, y), v))
    s0, t0 = m(pg.ell(x), u), m(v, pg.arr(y))
    assert s0 in s_cands and t0 in t_cands, "canonical witness rejected"
    return s_cands, t_cands


class ConeError(AssertionError):
    pass


def cone(pg: PregroupStructure) -> frozenset:
    d, m, i = pg.derr, pg.mult, pg.unit_elem
    rng = range(pg.base.size)
    H = frozenset(h for h in rng if d(h, i))
    if i not in H or any(m(a, b) not in H for a in H for b in H):
        raise ConeError("positive cone is not a submonoid")
    if any(m(pg.arr(x), m(h, x)) not in H for h in H for x in rng):
        raise ConeError("positive cone is not closed under conjugation")
    if any(not pg.base.carrier.equiv(x, i) for x in rng if x in H and pg.arr(x) in H):
        raise ConeError("x and x^r both positive but x is not equivalent to the unit")
    return H


def order_from_cone(pg: PregroupStructure, H: Iterable[int]) -> Preorder:
    H = frozenset(H)
    n = pg.base.size
    rel = np.array([[pg.mult(pg.arr(y), x) in H for y in range(n)] for x in range(n)])
    P = Preorder(rel)
    if P != pg.base.carrier:
        raise ConeError("cone does not reconstruct the carrier order")
    return P


# residuation --------------------------------------------------------------

RESIDUALS = ("r>", "<r", "<l", "l>")
_ALIASES = {"r▷": "r>", "◁r": "<r", "◁ℓ": "<l", "ℓ▷": "l>", "<ℓ": "<l", "ℓ>": "l>"}
PLUG_EXISTS = "exists"
PLUG_FORALL_DUAL = "forall-dual"
PLUGS = (PLUG_EXISTS, PLUG_FORALL_DUAL)
SELECTED_PLUG = PLUG_EXISTS

# r> and <r consume lower sets and produce upper sets; <l and l> the reverse
RESIDUAL_INPUT = {"r>": Side.LOWER, "<r": Side.LOWER, "<l": Side.UPPER, "l>": Side.UPPER}


def residual(M: PrelMonoid, arg: ClosedSet, which: str, co: Comonoid | None = None) -> ClosedSet:
    which = _ALIASES.get(which, which)
    if which not in RESIDUALS:
        raise ValueError(f"unknown residual {which!r}")
    if arg.owner != M.carrier or arg.side is not RESIDUAL_INPUT[which]:
        raise ValueError(f"{which} takes a {RESIDUAL_INPUT[which].value} set of the carrier")
    co = co or comonoid(M)
    idx = sorted(arg.members)
    if not idx:
        return ClosedSet(M.carrier, arg.side.flip(), frozenset())
    if which in ("r>", "<r"):
        top = sorted(co.counit.members)
        if not top:
            return ClosedSet(M.carrier, Side.UPPER, frozenset())
        if which == "r>":
            hit = M.nabla[idx][:, :, top].any(axis=(0, 2))
        else:
            hit = M.nabla[:, idx][:, :, top].any(axis=(1, 2))
    else:
        bot = sorted(M.unit.members)
        if which == "<l":
            hit = co.delta[bot][:, :, idx].any(axis=(0, 2))
        else:
            hit = co.delta[bot][:, idx, :].any(axis=(0, 1))
    members = frozenset(np.flatnonzero(hit).tolist())
    return ClosedSet(M.carrier, arg.side.flip(), members)


def _plugged(S: ClosedSet, plug: str) -> tuple[list[int], Callable]:
    """Members and quantifier for a set plugged into a comonoid output."""
    if plug == PLUG_EXISTS:
        return sorted(S.members), np.any
    if plug == PLUG_FORALL_DUAL:
        dual = as_closed_set(ddag(upper_set_prelation(S)))
        return sorted(dual.members), np.all
    raise ValueError(f"unknown plug {plug!r}")


def _quant(arr: np.ndarray, idx: list[int], axis: int, q) -> np.ndarray:
    taken = np.take(arr, idx, axis=axis)
    if taken.shape[axis] == 0:
        shape = list(arr.shape)
        del shape[axis]
        return np.full(shape, q is np.all, dtype=bool)
    return q(taken, axis=axis)


def check_residuated(M: PrelMonoid, side: str, plug: str = SELECTED_PLUG,
                     co: Comonoid | None = None) -> Verdict:
    """The residuation equivalences for every closed set of the input side.

    ``right`` checks ``r>`` and ``<r``; ``left`` checks ``<l`` and ``l>``.
    """
    co = co or comonoid(M)
    N, D = M.nabla, co.delta
    if side == "right":
        for xi in completion(M.carrier, Side.LOWER):
            ix = sorted(xi.members)
            X, q = _plugged(residual(M, xi, "r>", co), plug)
            lhs = _quant(N, ix, 0, np.any)            # [y, z]
            rhs = _quant(D, X, 1, q)                   # [y, z]
            if (lhs != rhs).any():
                return Verdict(False, ("r>", tuple(ix)) + _first(lhs != rhs))
            X, q = _plugged(residual(M, xi, "<r", co), plug)
            lhs = _quant(N, ix, 1, np.any)            # [x, z]
            rhs = _quant(D, X, 2, q)                   # [x, z]
            if (lhs != rhs).any():
                return Verdict(False, ("<r", tuple(ix)) + _first(lhs != rhs))
        return Verdict(True)
    if side == "left":
        for zeta in completion(M.carrier, Side.UPPER):
            Z, q = _plugged(zeta, plug)
            w = sorted(residual(M, zeta, "<l", co).members)
            lhs = _quant(D, Z, 2, q)                   # [x, y]
            rhs = _quant(N, w, 1, np.any)             # [x, y]
            if (lhs != rhs).any():
                return Verdict(False, ("<l", tuple(sorted(zeta.members))) + _first(lhs != rhs))
            w = sorted(residual(M, zeta, "l>", co).members)
            lhs = _quant(D, Z, 1, q)                   # [x, z]
            rhs = _quant(N, w, 0, np.any)             # [x, z]
            if (lhs != rhs).any():
                return Verdict(False, ("l>", tuple(sorted(zeta.members))) + _first(lhs != rhs))
        return Verdict(True)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


class SemanticsSelection(NamedTuple):
    failures: dict
    selected: str | None


def select_residual_semantics(subjects: Iterable[PrelMonoid]) -> SemanticsSelection:
    """Count Frobenius/residuation disagreements under each plug reading."""
    subjects = list(subjects)
    failures = {}
    for plug in PLUGS:
        bad = 0
        for M in subjects:
            f = check_frobenius(M).holds
            if not (f == check_residuated(M, "left", plug).holds
                    == check_residuated(M, "right", plug).holds):
                bad += 1
        failures[plug] = bad
    valid = [p for p in PLUGS if failures[p] == 0]
    return SemanticsSelection(failures, valid[0] if len(valid) == 1 else None)


# classification -----------------------------------------------------------

@dataclass(frozen=True)
class PropertyVector:
    strict: bool
    pointed: bool
    representable: bool
    frobenius: bool
    special: bool
    spider: bool
    pregroup: bool
    left_residuated: bool
    right_residuated: bool
    counterexample: tuple | None = None

    def as_dict(self) -> dict:
        out = asdict(self)
        if self.counterexample is not None:
            out["counterexample"] = list(self.counterexample)
        return out


FLAGS = ("strict", "pointed", "representable", "frobenius", "special", "spider",
         "pregroup", "left_residuated", "right_residuated")


def classify(M: PrelMonoid, explain: str | None = None, plug: str = SELECTED_PLUG) -> PropertyVector:
    """All flags; ``counterexample`` names the first failing one (or ``explain``)."""
    co = comonoid(M)
    strict, pointed = is_strict(M), is_pointed(M)
    frob = check_frobenius(M, co)
    special = check_special(M, co)
    search = search_adjoints(M)
    left = check_residuated(M, "left", plug, co)
    right = check_residuated(M, "right", plug, co)
    flags = {
        "strict": strict, "pointed": pointed, "representable": strict and pointed,
        "frobenius": frob.holds, "special": special.holds,
        "spider": frob.holds and special.holds, "pregroup": search.structure is not None,
        "left_residuated": left.holds, "right_residuated": right.holds,
    }
    witnesses = {
        "frobenius": frob.witness, "special": special.witness,
        "spider": frob.witness or special.witness,
        "pregroup": search.missing, "left_residuated": left.witness,
        "right_residuated": right.witness,
    }
    names = [explain] if explain else list(FLAGS)
    cex = None
    for name in names:
        if not flags[name]:
            w = witnesses.get(name)
            cex = (name,) + (tuple(w) if w else ())
            break
    return PropertyVector(**flags, counterexample=cex)


# pointwise oracles for the infinite example monoids ------------------------

def _exponents(v, signed: bool) -> dict[int, int]:
    items = v.items() if isinstance(v, Mapping) else enumerate(v)
    out = {}
    for k, c in items:
        if not isinstance(k, (int, np.integer)) or not isinstance(c, (int, np.integer)) or k < 0:
            raise ValueError(f"malformed exponent entry {k!r}: {c!r}")
        if c < 0 and not signed:
            raise ValueError(f"negative multiplicity {c} at {k}")
        out[int(k)] = out.get(int(k), 0) + int(c)
    return out


def _weight(v: dict[int, int]) -> int:
    return sum(k * c for k, c in v.items())


def _shuffle_within(x: str, y: str, z: str) -> bool:
    """Does ``z`` contain, as a scattered subword, some interleaving of ``x`` and ``y``?"""
    @lru_cache(maxsize=None)
    def go(i: int, j: int, k: int) -> bool:
        if i == len(x) and j == len(y):
            return True
        if len(z) - k < (len(x) - i) + (len(y) - j):
            return False
        return (go(i, j, k + 1)
                or (i < len(x) and x[i] == z[k] and go(i + 1, j, k + 1))
                or (j < len(y) and y[j] == z[k] and go(i, j + 1, k + 1)))
    return go(0, 0, 0)


def example_nabla(family: str, x, y, z) -> bool:
    """Pointwise ``nabla(x, y, z)`` in the multiset, shuffle and signed-multiset monoids.

    Multisets are exponent vectors (sequence or mapping ``n -> multiplicity``)
    ordered by the weighted sum; words are strings ordered by scattered occurrence.
    """
    if family in ("multiset", "signed-multiset"):
        signed = family == "signed-multiset"
        ex, ey, ez = (_exponents(v, signed) for v in (x, y, z))
        return _weight(ex) + _weight(ey) <= _weight(ez)
    if family == "shuffle":
        if not all(isinstance(w, str) for w in (x, y, z)):
            raise ValueError("shuffle family takes words as strings")
        return _shuffle_within(x, y, z)
    raise ValueError(f"unknown family {family!r}")
