"""Free-pregroup recognition by contraction links.

A simple type is a basic type with an integer exponent: ``-1`` is a left
adjoint ``p^l``, ``+1`` a right adjoint ``p^r``. A sentence is accepted when
its concatenated types contract, by non-crossing links, to one basic type
below the target. The grammar side uses the conventional order ``p <= q``,
stored in the lexicon's base preorder as ``derr(q, p)``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Sequence


from .order import Preorder, close_preorder

DEFAULT_WINDOW = 3
ORACLE_MAX_LEN = 8


class GrammarError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SimpleType:
    base: str
    exp: int = 0

    def __str__(self):
        if self.exp == 0:
            return self.base
        return f"{self.base}^{('r' if self.exp > 0 else 'l') * abs(self.exp)}"


TypeString = tuple  # tuple[SimpleType, ...]


def format_types(ts: Iterable[SimpleType]) -> str:
    return " ".join(str(t) for t in ts)


_TOKEN = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)(?:\^(.*))?$")


def parse_type(text: str, basics: Iterable[str] | None = None,
               window: int = DEFAULT_WINDOW) -> TypeString:
    """``"n^r s n^l"`` -> ``(n,+1) (s,0) (n,-1)``; ``n^(-2)`` is accepted too."""
    known = set(basics) if basics is not None else None
    out = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise GrammarError(f"malformed type {tok!r}")
        base, suffix = m.group(1), m.group(2)
        if suffix is None:
            exp = 0
        elif re.fullmatch(r"[lr]+", suffix):
            exp = suffix.count("r") - suffix.count("l")
        else:
            num = re.fullmatch(r"\(\s*([+\-−]?\d+)\s*\)", suffix)
            if not num:
                raise GrammarError(f"malformed suffix in {tok!r}")
            exp = int(num.group(1).replace("−", "-"))
        if known is not None and base not in known:
            raise GrammarError(f"undeclared basic type {base!r}")
        if abs(exp) > window:
            raise GrammarError(f"exponent {exp} in {tok!r} exceeds window {window}")
        out.append(SimpleType(base, exp))
    if not out:
        raise GrammarError("empty type string")
    return tuple(out)


@dataclass(frozen=True)
class Lexicon:
    basics: tuple[str, ...]
    base_order: Preorder
    entries: Mapping[str, tuple[TypeString, ...]]
    target: str
    window: int = DEFAULT_WINDOW

    def __post_init__(self):
        if self.base_order.size != len(self.basics):
            raise GrammarError("base order size does not match the basic types")
        if self.target not in self.basics:
            raise GrammarError(f"target {self.target!r} is not a declared basic type")
        frozen = {}
        for word, types in self.entries.items():
            if not types:
                raise GrammarError(f"word {word!r} has no types")
            for ts in types:
                for t in ts:
                    if t.base not in self.basics:
                        raise GrammarError(f"undeclared basic type {t.base!r} for {word!r}")
            frozen[word] = tuple(tuple(ts) for ts in types)
        object.__setattr__(self, "entries", MappingProxyType(frozen))

    def base_leq(self, p: str, q: str) -> bool:
        i, j = self.basics.index(p), self.basics.index(q)
        return bool(self.base_order.rel[j, i])


def make_lexicon(basics: Sequence[str], order: Iterable[tuple[str, str]],
                 entries: Mapping[str, Iterable[str | TypeString]], target: str,
                 window: int = DEFAULT_WINDOW) -> Lexicon:
    """Build a lexicon from ``p <= q`` pairs and textual or parsed entries."""
    basics = tuple(basics)
    idx = {b: i for i, b in enumerate(basics)}
    try:
        gens = [(idx[q], idx[p]) for p, q in order]
    except KeyError as err:
        raise GrammarError(f"undeclared basic type {err.args[0]!r} in order") from None
    P = close_preorder(len(basics), gens, names=basics)
    parsed = {}
    for word, types in entries.items():
        parsed[word] = tuple(parse_type(t, basics, window) if isinstance(t, str) else tuple(t)
                             for t in types)
    return Lexicon(basics, P, parsed, target, window)


Leq = Callable[[str, str], bool]


def _leq_of(order) -> Leq:
    return order.base_leq if isinstance(order, Lexicon) else order


def contracts(a: SimpleType, b: SimpleType, order) -> bool:
    """Generalized contraction ``a b -> 1``: exponents ``n, n+1`` with parity-oriented bases."""
    leq = _leq_of(order)
    if b.exp != a.exp + 1:
        return False
    if a.exp % 2 == 0:
        return leq(a.base, b.base)
    return leq(b.base, a.base)


@dataclass(frozen=True)
class ReductionTrace:
    links: tuple[tuple[int, int], ...]
    residual: int
    entries: tuple[TypeString, ...]

    @property
    def types(self) -> TypeString:
        return tuple(itertools.chain.from_iterable(self.entries))


def _nullable_table(ts: Sequence[SimpleType], leq: Leq) -> list[list[bool]]:
    """``null[i][j]``: the slice ``ts[i:j]`` contracts away completely."""
    n = len(ts)
    null = [[False] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        null[i][i] = True
    for length in range(2, n + 1, 2):
        for i in range(0, n - length + 1):
            j = i + length
            null[i][j] = any(contracts(ts[i], ts[k], leq) and null[i + 1][k] and null[k + 1][j]
                             for k in range(i + 1, j, 2))
    return null


def _links(ts, leq, null, i: int, j: int) -> list[tuple[int, int]]:
    if i == j:
        return []
    for k in range(i + 1, j, 2):
        if contracts(ts[i], ts[k], leq) and null[i + 1][k] and null[k + 1][j]:
            return [(i, k)] + _links(ts, leq, null, i + 1, k) + _links(ts, leq, null, k + 1, j)
    raise AssertionError("nullable slice without a witness")


def _residual_ok(t: SimpleType, leq: Leq, target: str) -> bool:
    return t.exp == 0 and leq(t.base, target)


def reduce_types(ts: Sequence[SimpleType], order, target: str):
    """First ``(links, residual)`` reducing ``ts`` to a type below ``target``, or None."""
    leq = _leq_of(order)
    ts = tuple(ts)
    n = len(ts)
    if n % 2 == 0:
        return None
    null = _nullable_table(ts, leq)
    for r in range(0, n, 2):
        if null[0][r] and null[r + 1][n] and _residual_ok(ts[r], leq, target):
            links = _links(ts, leq, null, 0, r) + _links(ts, leq, null, r + 1, n)
            return tuple(sorted(links)), r
    return None


def _all_links(ts, leq, null, i: int, j: int) -> Iterator[list[tuple[int, int]]]:
    if i == j:
        yield []
        return
    for k in range(i + 1, j, 2):
        if contracts(ts[i], ts[k], leq) and null[i + 1][k] and null[k + 1][j]:
            for inner in _all_links(ts, leq, null, i + 1, k):
                for rest in _all_links(ts, leq, null, k + 1, j):
                    yield [(i, k)] + inner + rest


def all_reductions(ts: Sequence[SimpleType], order, target: str):
    leq = _leq_of(order)
    ts = tuple(ts)
    n = len(ts)
    if n % 2 == 0:
        return
    null = _nullable_table(ts, leq)
    for r in range(0, n, 2):
        if null[0][r] and null[r + 1][n] and _residual_ok(ts[r], leq, target):
            for left in _all_links(ts, leq, null, 0, r):
                for right in _all_links(ts, leq, null, r + 1, n):
                    yield tuple(sorted(left + right)), r


def _words(sentence) -> list[str]:
    words = sentence.split() if isinstance(sentence, str) else list(sentence)
    if not words:
        raise GrammarError("empty sentence")
    return words


def _choices(lex: Lexicon, words: list[str]):
    for w in words:
        if w not in lex.entries:
            raise GrammarError(f"unknown word {w!r}")
    return itertools.product(*(lex.entries[w] for w in words))


def recognize(lex: Lexicon, sentence) -> ReductionTrace | None:
    """First accepting trace, trying lexical entries in file order."""
    for entries in _choices(lex, _words(sentence)):
        ts = tuple(itertools.chain.from_iterable(entries))
        found = reduce_types(ts, lex, lex.target)
        if found is not None:
            links, r = found
            return ReductionTrace(links, r, tuple(entries))
    return None


def all_traces(lex: Lexicon, sentence) -> Iterator[ReductionTrace]:
    for entries in _choices(lex, _words(sentence)):
        ts = tuple(itertools.chain.from_iterable(entries))
        for links, r in all_reductions(ts, lex, lex.target):
            yield ReductionTrace(links, r, tuple(entries))


def trace_problems(trace: ReductionTrace, order, target: str) -> list[str]:
    """Re-check a trace against every invariant of a reduction witness."""
    leq = _leq_of(order)
    ts = trace.types
    out = []
    used = [p for link in trace.links for p in link]
    if sorted(used + [trace.residual]) != list(range(len(ts))):
        out.append("links and residual do not partition the positions")
    for i, j in trace.links:
        if not i < j:
            out.append(f"link {(i, j)} is not ordered")
        elif not contracts(ts[i], ts[j], leq):
            out.append(f"link {(i, j)} does not contract")
    for (i, j), (k, l) in itertools.combinations(trace.links, 2):
        if i < k < j < l or k < i < l < j:
            out.append(f"links {(i, j)} and {(k, l)} cross")
    for i, j in trace.links:
        if i < trace.residual < j:
            out.append(f"residual sits under link {(i, j)}")
    if not (0 <= trace.residual < len(ts)) or not _residual_ok(ts[trace.residual], leq, target):
        out.append("residual is not a plain type below the target")
    return out


# brute-force oracle --------------------------------------------------------

def simple_order(order, bases: Iterable[str], window: int) -> frozenset:
    """Pairs ``(a, b)`` of same-exponent simple types with ``a <= b``.

    Seeded by the basic order at exponent 0 and saturated under the rule
    that taking an adjoint, in either direction, reverses the order.
    """
    leq = _leq_of(order)
    bases = list(bases)
    rel = {(SimpleType(p, 0), SimpleType(q, 0)) for p in bases for q in bases if leq(p, q)}
    frontier = set(rel)
    while frontier:
        new = set()
        for a, b in frontier:
            for step in (1, -1):
                e = a.exp + step
                if abs(e) <= window:
                    pair = (SimpleType(b.base, e), SimpleType(a.base, e))
                    if pair not in rel:
                        new.add(pair)
        rel |= new
        frontier = new
    return frozenset(rel)


def oracle_reduces(ts: Sequence[SimpleType], order, goal: SimpleType | None,
                   window: int = DEFAULT_WINDOW + 1, max_len: int = ORACLE_MAX_LEN) -> bool:
    """Search every rewrite sequence; ``goal=None`` asks for the empty string.

    The rules are the two primitive ones: replace a simple type by a larger
    one, or delete an adjacent pair ``x x^r``.
    """
    ts = tuple(ts)
    if len(ts) > max_len:
        raise GrammarError(f"oracle limit exceeded: length {len(ts)} > {max_len}")
    bases = sorted({t.base for t in ts} | ({goal.base} if goal else set()))
    leq = _leq_of(order)
    all_bases = sorted(set(bases) | _all_bases(order))
    le = simple_order(leq, all_bases, window)
    up: dict[SimpleType, list[SimpleType]] = {}
    for a, b in le:
        if a != b:
            up.setdefault(a, []).append(b)
    target = (goal,) if goal is not None else ()
    seen = set()
    stack = [ts]
    while stack:
        s = stack.pop()
        if s == target:
            return True
        if s in seen:
            continue
        seen.add(s)
        for i, t in enumerate(s):
            for b in up.get(t, ()):
                stack.append(s[:i] + (b,) + s[i + 1:])
        for i in range(len(s) - 1):
            a, b = s[i], s[i + 1]
            if b.base == a.base and b.exp == a.exp + 1:
                stack.append(s[:i] + s[i + 2:])
    return False


def _all_bases(order) -> set[str]:
    return set(order.basics) if isinstance(order, Lexicon) else set()


def oracle_recognize(lex: Lexicon, sentence, max_len: int = ORACLE_MAX_LEN) -> bool:
    if not lex.entries:
        raise GrammarError("empty lexicon")
    for entries in _choices(lex, _words(sentence)):
        ts = tuple(itertools.chain.from_iterable(entries))
        if oracle_reduces(ts, lex, SimpleType(lex.target, 0), lex.window + 1, max_len):
            return True
    return False


# rendering -----------------------------------------------------------------

def render_trace(trace: ReductionTrace, types: Sequence[SimpleType] | None = None) -> str:
    """Types on one line, links drawn under them as nested ``[--]`` brackets."""
    ts = tuple(types) if types is not None else trace.types
    if ts != trace.types:
        raise GrammarError("trace does not belong to this type string")
    words = [str(t) for t in ts]
    starts, col = [], 0
    for w in words:
        starts.append(col)
        col += len(w) + 1
    head = " ".join(words)
    if not trace.links:
        return head
    arcs = [" "] * len(head)
    for i, j in trace.links:
        if not 0 <= i < j < len(ts):
            raise GrammarError(f"link {(i, j)} out of range")
        for c in range(starts[i] + 1, starts[j]):
            arcs[c] = "-"
    for i, j in trace.links:
        arcs[starts[i]] = "["
        arcs[starts[j]] = "]"
    return head + "\n" + "".join(arcs).rstrip()


def parse_arcs(rendering: str) -> tuple[tuple[int, int], ...]:
    """Recover links from :func:`render_trace` output by bracket matching."""
    lines = rendering.split("\n")
    if len(lines) == 1:
        return ()
    head, arcs = lines
    starts = [m.start() for m in re.finditer(r"\S+", head)]
    pos = {c: k for k, c in enumerate(starts)}
    stack, links = [], []
    for c, ch in enumerate(arcs):
        if ch == "[":
            stack.append(pos[c])
        elif ch == "]":
            links.append((stack.pop(), pos[c]))
    if stack:
        raise GrammarError("unbalanced arcs")
    return tuple(sorted(links))
