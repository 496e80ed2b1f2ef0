"""Line-oriented structure and lexicon files.

Structure files::

    # Z2 as a discrete group
    @preorder A
    elements: e g
    @monoid
    mul e e e
    mul e g g
    mul g e g
    mul g g e
    unit e

``le a b`` means ``derr(a, b)``. ``@prelation A B`` followed by ``rel x y``
lines declares a prelation between two named preorders.

Lexicon files::

    @types n s
    @order
    n <= s
    @lex
    John : n
    likes : n^r s n^l
    @target s
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .grammar import GrammarError, Lexicon, make_lexicon
from .monoid import MonoidLawError, PrelMonoid, build_monoid
from .order import ClosedSet, Preorder, Side, close_preorder
from .prelation import Prelation, close_prelation, minimal


class FormatError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass
class Structure:
    preorders: dict = field(default_factory=dict)     # name -> Preorder
    prelations: list = field(default_factory=list)    # (dom name, cod name, Prelation)
    monoids: list = field(default_factory=list)       # (preorder name, PrelMonoid)


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def load_structure(text: str) -> Structure:
    blocks = []
    for no, line in _lines(text):
        if line.startswith("@"):
            head, *args = line.split()
            if head not in ("@preorder", "@prelation", "@monoid"):
                raise FormatError(no, f"unknown directive {head}")
            blocks.append((no, head, args, []))
        else:
            if not blocks:
                raise FormatError(no, "content before any directive")
            blocks[-1][3].append((no, line))
    out = Structure()
    current = None
    for no, head, args, body in blocks:
        if head == "@preorder":
            if len(args) > 1:
                raise FormatError(no, "@preorder takes at most one name")
            name = args[0] if args else f"P{len(out.preorders) + 1}"
            if name in out.preorders:
                raise FormatError(no, f"preorder {name!r} declared twice")
            out.preorders[name] = _preorder_block(no, body)
            current = name
        elif head == "@prelation":
            if len(args) != 2:
                raise FormatError(no, "@prelation needs a domain and a codomain name")
            for a in args:
                if a not in out.preorders:
                    raise FormatError(no, f"unknown preorder {a!r}")
            P, Q = (out.preorders[a] for a in args)
            out.prelations.append((args[0], args[1], _prelation_block(P, Q, body)))
        else:
            if args:
                if args[0] not in out.preorders:
                    raise FormatError(no, f"unknown preorder {args[0]!r}")
                target = args[0]
            elif current is None:
                raise FormatError(no, "@monoid before any @preorder")
            else:
                target = current
            out.monoids.append((target, _monoid_block(no, out.preorders[target], body)))
    return out


def _index(P: Preorder, name: str, no: int) -> int:
    try:
        return P.index(name)
    except (KeyError, ValueError):
        raise FormatError(no, f"unknown element {name!r}") from None


def _preorder_block(start: int, body) -> Preorder:
    names = None
    pairs = []
    for no, line in body:
        if line.startswith("elements:"):
            if names is not None:
                raise FormatError(no, "elements declared twice")
            names = line[len("elements:"):].split()
            if len(set(names)) != len(names):
                raise FormatError(no, "duplicate element names")
            continue
        words = line.split()
        if words[0] != "le" or len(words) != 3:
            raise FormatError(no, f"expected 'le a b', got {line!r}")
        if names is None:
            raise FormatError(no, "'le' before 'elements:'")
        pairs.append((no, words[1], words[2]))
    if names is None:
        raise FormatError(start, "preorder without 'elements:'")
    idx = {n: i for i, n in enumerate(names)}
    gens = []
    for no, a, b in pairs:
        if a not in idx or b not in idx:
            raise FormatError(no, f"unknown element in 'le {a} {b}'")
        gens.append((idx[a], idx[b]))
    return close_preorder(len(names), gens, names=names)


def _prelation_block(P: Preorder, Q: Preorder, body) -> Prelation:
    gens = []
    for no, line in body:
        words = line.split()
        if words[0] != "rel" or len(words) != 3:
            raise FormatError(no, f"expected 'rel x y', got {line!r}")
        gens.append((_index(P, words[1], no), _index(Q, words[2], no)))
    return close_prelation(P, Q, gens)


def _monoid_block(start: int, P: Preorder, body) -> PrelMonoid:
    triples, units = [], []
    for no, line in body:
        words = line.split()
        if words[0] == "mul" and len(words) == 4:
            triples.append(tuple(_index(P, w, no) for w in words[1:]))
        elif words[0] == "unit" and len(words) == 2:
            units.append(_index(P, words[1], no))
        else:
            raise FormatError(no, f"expected 'mul x y z' or 'unit x', got {line!r}")
    try:
        return build_monoid(P, triples, units)
    except MonoidLawError as err:
        inst = " ".join(P.label(i) for i in err.instance)
        raise FormatError(start, f"monoid {err.law} fails at ({inst})") from None


def dump_preorder(P: Preorder, name: str = "A") -> str:
    labels = [P.label(x) for x in range(P.size)]
    lines = [f"@preorder {name}", "elements: " + " ".join(labels)]
    lines += [f"le {labels[x]} {labels[y]}" for x, y in P.pairs() if x != y]
    return "\n".join(lines) + "\n"


def dump_monoid(M: PrelMonoid, name: str = "A") -> str:
    """Preorder plus monoid block; ``mul`` lines list the minimal outputs only."""
    P = M.carrier
    lab = P.label
    lines = [dump_preorder(P, name).rstrip("\n"), "@monoid"]
    for x in range(P.size):
        for y in range(P.size):
            img = [int(z) for z in range(P.size) if M.nabla[x, y, z]]
            for z in minimal(P, img):
                lines.append(f"mul {lab(x)} {lab(y)} {lab(z)}")
    for u in minimal(P, M.unit.members):
        lines.append(f"unit {lab(u)}")
    return "\n".join(lines) + "\n"


def dump_prelation(phi: Prelation, dom: str, cod: str) -> str:
    lines = [f"@prelation {dom} {cod}"]
    for x, y in phi.pairs():
        lines.append(f"rel {phi.dom.label(x)} {phi.cod.label(y)}")
    return "\n".join(lines) + "\n"


def load_lexicon(text: str) -> Lexicon:
    basics = None
    target = None
    order = []
    entries: dict = {}
    section = None
    for no, line in _lines(text):
        if line.startswith("@"):
            head, *args = line.split()
            if head == "@types":
                if not args:
                    raise FormatError(no, "@types needs at least one basic type")
                basics = args
                section = None
            elif head == "@target":
                if len(args) != 1:
                    raise FormatError(no, "@target takes one basic type")
                target = args[0]
                section = None
            elif head in ("@order", "@lex"):
                if args:
                    raise FormatError(no, f"{head} takes no arguments")
                section = head
            else:
                raise FormatError(no, f"unknown directive {head}")
            continue
        if section == "@order":
            parts = line.split()
            if len(parts) != 3 or parts[1] != "<=":
                raise FormatError(no, f"expected 'p <= q', got {line!r}")
            order.append((no, parts[0], parts[2]))
        elif section == "@lex":
            if ":" not in line:
                raise FormatError(no, f"expected 'word : types', got {line!r}")
            word, types = (s.strip() for s in line.split(":", 1))
            if not word or not types:
                raise FormatError(no, f"expected 'word : types', got {line!r}")
            if basics is None:
                raise FormatError(no, "@lex entry before @types")
            try:
                make_lexicon(basics, [], {word: [types]}, basics[0])
            except GrammarError as err:
                raise FormatError(no, str(err)) from None
            entries.setdefault(word, []).append(types)
        else:
            raise FormatError(no, f"line outside any section: {line!r}")
    if basics is None:
        raise FormatError(0, "missing @types")
    if target is None:
        raise FormatError(0, "missing @target")
    for no, p, q in order:
        if p not in basics or q not in basics:
            raise FormatError(no, f"undeclared basic type in '{p} <= {q}'")
    try:
        return make_lexicon(basics, [(p, q) for _, p, q in order], entries, target)
    except GrammarError as err:
        raise FormatError(0, str(err)) from None


def dump_piece(piece, ambient: Preorder, name: str | None = None) -> str:
    """A covering component as a standalone structure file, ambient labels kept."""
    M = piece.pregroup.base
    labels = tuple(ambient.label(x) for x in piece.elements)
    named = PrelMonoid(Preorder(M.carrier.rel, labels), M.nabla,
                       ClosedSet(Preorder(M.carrier.rel, labels), Side.LOWER, M.unit.members))
    return dump_monoid(named, name or f"A_{ambient.label(piece.basepoint)}")
