"""Monoid generation over small preorders, named fixtures, and the catalog sweep."""
from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .monoid import (
    FLAGS,
    MonoidLawError,
    PrelMonoid,
    build_monoid,
    check_frobenius,
    classify,
    from_table,
    law_failure,
    search_adjoints,
)
from .order import (
    Preorder,
    Side,
    SizeLimitError,
    chain,
    completion,
    discrete,
    enumerate_preorders,
    opposite,
    product,
    size_limit,
)
from .spider import Piece, piece_from_monoid, verify_theorem

MODE_LIMITS = {"general": 2, "representable": 3, "sampled": 3}
MODES = tuple(MODE_LIMITS)


def _guard(n: int, mode: str):
    if mode not in MODE_LIMITS:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    limit = size_limit(MODE_LIMITS[mode])
    if n > limit:
        raise SizeLimitError(f"{mode} enumeration refused: size {n} exceeds limit {limit}")


def closed_relations(P: Preorder) -> list[np.ndarray]:
    """All closed ternary relations on ``P``.

    A closed relation is exactly a lower set of ``P^o x P^o x P``, so these
    come straight out of that completion.
    """
    Q = product(product(opposite(P), opposite(P)), P)
    n = P.size
    out = []
    for L in completion(Q, Side.LOWER, limit=max(27, Q.size)):
        out.append(L.vector.reshape(n, n, n))
    return out


def general_monoids(P: Preorder) -> Iterator[PrelMonoid]:
    _guard(P.size, "general")
    units = [U for U in completion(P, Side.LOWER) if len(U) or P.size == 0]
    for nabla in closed_relations(P):
        for U in units:
            if law_failure(P, nabla, U.members) is None:
                yield PrelMonoid(P, nabla, U)


def _class_reps(P: Preorder) -> list[int]:
    return [x for x in range(P.size) if not any(P.equiv(x, y) for y in range(x))]


def representable_monoids(P: Preorder) -> Iterator[PrelMonoid]:
    """Tables valued in lowest-index class representatives, one per monoid.

    The unit laws pin row and column ``e`` to the representatives of their
    arguments, so only the remaining cells are searched.
    """
    _guard(P.size, "representable")
    n = P.size
    reps = _class_reps(P)
    rep_of = [next(r for r in reps if P.equiv(x, r)) for x in range(n)]
    for e in reps:
        free = [(x, y) for x in range(n) for y in range(n) if x != e and y != e]
        for values in itertools.product(reps, repeat=len(free)):
            table = [[0] * n for _ in range(n)]
            for x in range(n):
                table[e][x] = rep_of[x]
                table[x][e] = rep_of[x]
            for (x, y), v in zip(free, values):
                table[x][y] = v
            try:
                yield from_table(P, table, e)
            except MonoidLawError:
                continue


def _random_candidate(P: Preorder, rng: random.Random) -> tuple[list, list] | None:
    n = P.size
    lowers = [U for U in completion(P, Side.LOWER) if len(U)]
    U = rng.choice(lowers)
    units = sorted(U.members)
    gens = []
    for x in range(n):
        gens.append((rng.choice(units), x, x))
        gens.append((x, rng.choice(units), x))
    for _ in range(rng.randint(0, n * n)):
        gens.append((rng.randrange(n), rng.randrange(n), rng.randrange(n)))
    return gens, units


def sampled_monoids(P: Preorder, seed: int, count: int,
                    max_attempts: int | None = None) -> Iterator[PrelMonoid]:
    """Law-passing monoids from seeded random generator sets.

    Each attempt picks a nonempty unit, seeds the unit laws, adds random
    triples, closes, and keeps the result if the laws hold. Repeats are kept:
    this is a sample, not an enumeration.
    """
    _guard(P.size, "sampled")
    rng = random.Random(seed)
    budget = max_attempts if max_attempts is not None else 200 * max(count, 1)
    found = 0
    for _ in range(budget):
        if found >= count:
            return
        gens, units = _random_candidate(P, rng)
        try:
            M = build_monoid(P, gens, units)
        except MonoidLawError:
            continue
        found += 1
        yield M


def enumerate_monoids(P: Preorder, mode: str = "general", seed: int = 0,
                      count: int = 100) -> Iterator[PrelMonoid]:
    if mode == "general":
        return general_monoids(P)
    if mode == "representable":
        return representable_monoids(P)
    if mode == "sampled":
        return sampled_monoids(P, seed, count)
    raise ValueError(f"unknown mode {mode!r}")


def subjects(size: int, mode: str, seed: int = 0, count: int = 100) -> list[PrelMonoid]:
    """Every subject on preorders of size ``1..size`` in canonical order.

    In sampled mode each preorder draws from its own seed, derived from
    ``seed`` and its position, and ``count`` is split as evenly as possible, earlier
    preorders taking the remainder.
    """
    _guard(size, mode)
    out: list[PrelMonoid] = []
    pos = 0
    orders = [P for n in range(1, size + 1) for P in enumerate_preorders(n, limit=max(size, 4))]
    base, extra = divmod(count, len(orders))
    for P in orders:
        if mode == "sampled":
            per = base + (pos < extra)
            out.extend(sampled_monoids(P, seed * 1_000_003 + pos, per))
        else:
            out.extend(enumerate_monoids(P, mode))
        pos += 1
    return out


# fixtures ------------------------------------------------------------------

FIXTURES = ("Z2", "Z3", "G21", "MIN2", "D2-idempotent", "two-Z2-disjoint", "trivial")


def _named(rel: np.ndarray, names) -> Preorder:
    return Preorder(rel, tuple(names))


def fixtures(name: str) -> PrelMonoid:
    if name == "Z2":
        P = _named(np.eye(2, dtype=bool), ("e", "g"))
        return from_table(P, [[0, 1], [1, 0]], 0)
    if name == "Z3":
        P = _named(np.eye(3, dtype=bool), ("e", "a", "b"))
        return from_table(P, [[(x + y) % 3 for y in range(3)] for x in range(3)], 0)
    if name == "G21":
        P = _named(np.eye(3, dtype=bool), ("e", "g", "f"))
        gens = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (2, 2, 2)]
        return build_monoid(P, gens, [0, 2])
    if name == "MIN2":
        P = _named(chain(2).rel, ("0", "1"))
        return from_table(P, [[min(x, y) for y in range(2)] for x in range(2)], 1)
    if name == "D2-idempotent":
        P = _named(np.eye(2, dtype=bool), ("e", "g"))
        return from_table(P, [[0, 1], [1, 1]], 0)
    if name == "two-Z2-disjoint":
        P = _named(np.eye(4, dtype=bool), ("e1", "g1", "e2", "g2"))
        gens = []
        for base in (0, 2):
            for x in range(2):
                for y in range(2):
                    gens.append((base + x, base + y, base + (x ^ y)))
        return build_monoid(P, gens, [0, 2])
    if name == "trivial":
        P = _named(np.eye(1, dtype=bool), ("e",))
        return from_table(P, [[0]], 0)
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")


def fixture_pieces(name: str) -> tuple[list[Piece], Preorder]:
    """The pregroup families whose unions are the two spider fixtures."""
    z2 = fixtures("Z2")
    one = fixtures("trivial")
    if name == "G21":
        ambient = discrete(3)
        return [piece_from_monoid(z2, (0, 1), 0), piece_from_monoid(one, (2,), 2)], ambient
    if name == "two-Z2-disjoint":
        ambient = discrete(4)
        return [piece_from_monoid(z2, (0, 1), 0), piece_from_monoid(z2, (2, 3), 2)], ambient
    raise KeyError(f"no piece family for {name!r}")


# catalog -------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogConfig:
    size: int = 2
    mode: str = "general"
    seed: int = 0
    count: int = 100


@dataclass
class CatalogReport:
    mode: str
    seed: int
    size: int
    counts: dict = field(default_factory=dict)      # preorder key -> class -> count
    violations: list = field(default_factory=list)  # replayable theorem failures
    discrepancies: list = field(default_factory=list)
    non_special: dict = field(default_factory=dict)  # count and first example
    scope: str = ""
    total: int = 0
    complete: bool = True

    @property
    def passed(self) -> bool:
        return self.complete and not self.violations

    def as_dict(self) -> dict:
        return {
            "mode": self.mode, "seed": self.seed, "size": self.size,
            "counts": self.counts, "violations": self.violations,
            "discrepancies": self.discrepancies, "non_special": self.non_special,
            "scope": self.scope,
            "total": self.total, "complete": self.complete, "passed": self.passed,
        }


SCOPE = {
    "general": "every law-passing monoid on every preorder of size <= {n}",
    "representable": "every representable monoid on every preorder of size <= {n}; "
                     "non-representable monoids at size 3 are not enumerated",
    "sampled": "{k} seeded samples (seed {s}) spread over preorders of size <= {n}; "
               "a sample, not an exhaustive sweep",
}


def preorder_key(P: Preorder) -> str:
    strict = ",".join(f"{x}<{y}" for x, y in P.pairs() if x != y)
    return f"n{P.size}:{strict or 'discrete'}"


def class_key(pv) -> str:
    on = [f for f in FLAGS if getattr(pv, f)]
    return "+".join(on) if on else "none"


def examine(M: PrelMonoid) -> dict:
    """Classification plus the three theorem reports for one subject."""
    pv = classify(M)
    reports = [verify_theorem(k, M) for k in (1, 2, 3)]
    return {
        "preorder": preorder_key(M.carrier),
        "class": class_key(pv),
        "reports": [r.as_dict() for r in reports],
        "holds": all(r.holds for r in reports),
    }


def describe(M: PrelMonoid) -> dict:
    """Enough to rebuild a subject: relation, nabla triples and unit."""
    return {
        "derr": [list(p) for p in M.carrier.pairs()],
        "size": M.size,
        "nabla": [list(t) for t in M.triples()],
        "unit": sorted(M.unit.members),
    }


def min2_discrepancy() -> dict:
    M = fixtures("MIN2")
    pv = classify(M)
    search = search_adjoints(M)
    return {
        "fixture": "MIN2",
        "expectation": "a monoid whose carrier is a complete lattice is a pregroup",
        "observed": {
            "representable": pv.representable, "pointed": pv.pointed,
            "frobenius": pv.frobenius, "pregroup": pv.pregroup,
            "frobenius_counterexample": list(check_frobenius(M).witness or ()),
            "missing_adjoint": list(search.missing) if search.missing else None,
        },
        "status": "documented discrepancy, not a suite failure",
    }


def catalog(config: CatalogConfig, mapper: Callable = map) -> CatalogReport:
    """Classify and verify every subject; ``mapper`` may be a parallel map."""
    rep = CatalogReport(config.mode, config.seed, config.size,
                        scope=SCOPE[config.mode].format(n=config.size, k=config.count,
                                                        s=config.seed))
    try:
        subs = subjects(config.size, config.mode, config.seed, config.count)
    except SizeLimitError as err:
        rep.complete = False
        rep.scope += f"; incomplete: {err}"
        subs = []
    results = list(mapper(examine, subs))
    counts: dict = {}
    odd = []
    for i, (M, res) in enumerate(zip(subs, results)):
        per = counts.setdefault(res["preorder"], Counter())
        per[res["class"]] += 1
        if "special" not in res["class"].split("+"):
            odd.append(i)
        if not res["holds"]:
            bad = [r for r in res["reports"] if not r["holds"]]
            rep.violations.append({"index": i, "subject": describe(M), "reports": bad})
    rep.counts = {k: dict(sorted(v.items())) for k, v in sorted(counts.items())}
    rep.total = len(subs)
    rep.non_special = {"count": len(odd),
                       "first": {"index": odd[0], "subject": describe(subs[odd[0]])} if odd else None}
    if config.mode == "sampled" and rep.total < config.count:
        rep.scope += f"; only {rep.total} of {config.count} samples found within budget"
    rep.discrepancies.append(min2_discrepancy())
    return rep
