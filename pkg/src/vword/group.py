"""Elements of Thompson's group V as reduced prefix-code tables.

An element is a bijection between two finite maximal prefix codes of
{0,1}*.  It acts on the left on bitstrings by prefix replacement:
if ``p -> q`` is an entry and ``x = p u`` then ``e(x) = q u``.  Bitstrings
are plain ``str`` objects over ``"0"`` and ``"1"``; the empty word is ``""``.

Words over a generating set are sequences of generator names written
``a_n ... a_1``: the rightmost letter acts first.
"""

from __future__ import annotations

import bisect
import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from itertools import product
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    InvalidGeneratingSet,
    NotBijection,
    NotMaximal,
    NotPrefixCode,
    UnknownGenerator,
)

#: reserved input endmarker; never a generator name
ENDMARKER = "#END#"


def check_bits(x: str) -> str:
    if not isinstance(x, str) or x.strip("01"):
        raise ValueError(f"not a bitstring: {x!r}")
    return x


def shortlex(x: str):
    return (len(x), x)


def strip_zeros(x: str) -> str:
    """Canonical representative of the stream ``x 0^omega``."""
    return x.rstrip("0")


@dataclass(frozen=True)
class TableElement:
    """Reduced table ``dom -> im``, sorted shortlex by dom.

    Build instances with :func:`parse_table` or :func:`reduce`; the
    constructor trusts its input.
    """

    entries: tuple[tuple[str, str], ...]

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(self.entries)

    @property
    def dom_code(self) -> tuple[str, ...]:
        return tuple(p for p, _ in self.entries)

    @property
    def im_code(self) -> tuple[str, ...]:
        return tuple(q for _, q in self.entries)

    @cached_property
    def maxlen(self) -> int:
        return max(max(len(p), len(q)) for p, q in self.entries)

    @cached_property
    def _sorted_dom(self) -> list[str]:
        return sorted(self.mapping)

    def __call__(self, x: str) -> Optional[str]:
        return apply_prefix_action(self, x)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        return "{" + ", ".join(f"{p or 'ε'}→{q or 'ε'}" for p, q in self.entries) + "}"


IDENTITY = TableElement((("", ""),))


# -- validation -------------------------------------------------------------

def _check_prefix_code(words: list[str], side: str) -> None:
    ordered = sorted(words)
    for a, b in zip(ordered, ordered[1:]):
        if a == b:
            raise NotBijection(f"{side} codeword {a!r} occurs twice", a)
        if b.startswith(a):
            raise NotPrefixCode(f"{side} codeword {a!r} is a prefix of {b!r}", a)


def _missing_word(words: list[str]) -> Optional[str]:
    """A bitstring incomparable with every codeword, or None if maximal."""
    code = set(words)
    prefixes = {w[:i] for w in words for i in range(len(w))}
    # a hole is a sibling of a codeword/prefix that is neither itself
    for w in sorted(code | prefixes, key=shortlex):
        if not w:
            continue
        sib = w[:-1] + ("1" if w[-1] == "0" else "0")
        if sib not in code and sib not in prefixes:
            return sib
    if not words:
        return ""
    return None


def _check_maximal(words: list[str], side: str) -> None:
    # Kraft equality characterises maximality for finite binary prefix codes
    depth = max(len(w) for w in words)
    if sum(1 << (depth - len(w)) for w in words) != 1 << depth:
        hole = _missing_word(words)
        raise NotMaximal(f"{side} code is not maximal: nothing covers {hole!r}", hole)


def parse_table(pairs: Iterable[Sequence[str]]) -> TableElement:
    """Validate ``(dom, im)`` pairs and return the reduced table."""
    pairs = [(check_bits(p), check_bits(q)) for p, q in pairs]
    if not pairs:
        raise NotMaximal("empty table", None)
    doms = [p for p, _ in pairs]
    ims = [q for _, q in pairs]
    _check_prefix_code(doms, "domain")
    _check_prefix_code(ims, "image")
    _check_maximal(doms, "domain")
    _check_maximal(ims, "image")
    return reduce(pairs)


def reduce(entries: Iterable[Sequence[str]]) -> TableElement:
    """Merge sibling pairs ``p0->q0, p1->q1`` into ``p->q`` until none remain."""
    table = dict(entries)
    work = list(table)
    while work:
        p = work.pop()
        if not p or p not in table:
            continue
        parent = p[:-1]
        p0, p1 = parent + "0", parent + "1"
        q0, q1 = table.get(p0), table.get(p1)
        if q0 is None or q1 is None or not q0 or not q1:
            continue
        if q0[:-1] != q1[:-1] or q0[-1] != "0" or q1[-1] != "1":
            continue
        del table[p0], table[p1]
        table[parent] = q0[:-1]
        work.append(parent)
    return TableElement(tuple(sorted(table.items(), key=lambda e: shortlex(e[0]))))


# -- action and algebra ------------------------------------------------------

def match_prefix(e: TableElement, x: str) -> Optional[str]:
    """The dom codeword of ``e`` that is a prefix of ``x``, if any."""
    table = e.mapping
    for i in range(min(len(x), e.maxlen) + 1):
        if x[:i] in table:
            return x[:i]
    return None


def apply_prefix_action(e: TableElement, x: str) -> Optional[str]:
    """``e(x)``, or None when ``x`` is a strict prefix of some dom codeword."""
    p = match_prefix(e, x)
    if p is None:
        return None
    return e.mapping[p] + x[len(p):]


def apply_with_depth(e: TableElement, x: str) -> Optional[tuple[str, int]]:
    """Like :func:`apply_prefix_action` but also reports the matched depth."""
    p = match_prefix(e, x)
    if p is None:
        return None
    return e.mapping[p] + x[len(p):], len(p)


def _codewords_below(e: TableElement, q: str) -> list[str]:
    doms = e._sorted_dom
    lo = bisect.bisect_left(doms, q)
    hi = lo
    while hi < len(doms) and doms[hi].startswith(q):
        hi += 1
    return doms[lo:hi]


def compose(f: TableElement, g: TableElement) -> TableElement:
    """The table of ``f ∘ g`` (``g`` acts first)."""
    fmap = f.mapping
    out = []
    for p, q in g.entries:
        r = match_prefix(f, q)
        if r is not None:
            out.append((p, fmap[r] + q[len(r):]))
            continue
        # q is a strict prefix of dom codewords of f: refine g's entry
        for r in _codewords_below(f, q):
            out.append((p + r[len(q):], fmap[r]))
    return reduce(out)


def invert(e: TableElement) -> TableElement:
    return reduce((q, p) for p, q in e.entries)


def is_identity(e: TableElement) -> bool:
    return all(p == q for p, q in e.entries)


def maxlen_elem(e: TableElement) -> int:
    return e.maxlen


# -- generating sets ---------------------------------------------------------

@dataclass(frozen=True)
class GeneratingSet:
    """Named generators, kept in insertion order."""

    items: tuple[tuple[str, TableElement], ...]
    maxlen: int = field(init=False)

    def __post_init__(self):
        names = [n for n, _ in self.items]
        if not names:
            raise InvalidGeneratingSet("generating set is empty")
        for n in names:
            if not isinstance(n, str) or not n or n.split() != [n]:
                raise InvalidGeneratingSet(f"bad generator name {n!r}")
            if n == ENDMARKER:
                raise InvalidGeneratingSet(f"{ENDMARKER!r} is reserved for the endmarker")
        if len(set(names)) != len(names):
            raise InvalidGeneratingSet("duplicate generator names")
        object.__setattr__(self, "maxlen", max(e.maxlen for _, e in self.items))

    @classmethod
    def from_mapping(cls, gens: Mapping[str, TableElement]) -> "GeneratingSet":
        return cls(tuple(gens.items()))

    @cached_property
    def generators(self) -> dict[str, TableElement]:
        return dict(self.items)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.items)

    @cached_property
    def index(self) -> dict[str, int]:
        return {n: i for i, (n, _) in enumerate(self.items)}

    def __getitem__(self, name: str) -> TableElement:
        try:
            return self.generators[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def __contains__(self, name):
        return name in self.generators

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.items)

    def check_word(self, w: Sequence[str]) -> None:
        for a in w:
            if a not in self.generators:
                raise UnknownGenerator(a)

    def to_json(self) -> dict:
        return {"generators": {n: [list(pq) for pq in e.entries] for n, e in self.items}}


def maxlen_set(gamma: GeneratingSet) -> int:
    return gamma.maxlen


def load_generating_set(data: Mapping) -> GeneratingSet:
    """Build a generating set from the ``{"generators": {...}}`` JSON shape."""
    try:
        gens = data["generators"]
    except (KeyError, TypeError):
        raise InvalidGeneratingSet('expected an object with a "generators" key') from None
    if not isinstance(gens, Mapping) or not gens:
        raise InvalidGeneratingSet('"generators" must be a non-empty object')
    items = []
    for name, pairs in gens.items():
        try:
            items.append((name, parse_table([tuple(pq) for pq in pairs])))
        except (TypeError, ValueError) as exc:
            raise InvalidGeneratingSet(f"generator {name!r}: {exc}") from exc
    return GeneratingSet(tuple(items))


def read_generating_set(path) -> GeneratingSet:
    with open(path) as fh:
        return load_generating_set(json.load(fh))


HIGMAN_TABLES = {
    "g1": [("0", "1"), ("1", "0")],
    "g2": [("00", "00"), ("01", "1"), ("1", "01")],
    "g3": [("0", "10"), ("10", "0"), ("11", "11")],
    "g4": [("00", "00"), ("01", "10"), ("10", "01"), ("11", "11")],
}


def higman_generators() -> GeneratingSet:
    """The four involutive Higman generators of V."""
    return GeneratingSet(tuple((n, parse_table(t)) for n, t in HIGMAN_TABLES.items()))


def bundled_higman() -> GeneratingSet:
    text = resources.files("vword").joinpath("data/higman.json").read_text()
    return load_generating_set(json.loads(text))


# -- words ---------------------------------------------------------------------

def word_to_element(gamma: GeneratingSet, w: Sequence[str]) -> TableElement:
    acc = IDENTITY
    for a in w:
        acc = compose(acc, gamma[a])
    return acc


def wp_oracle(gamma: GeneratingSet, w: Sequence[str]) -> bool:
    """Ground truth: does ``w`` represent the identity?"""
    return is_identity(word_to_element(gamma, w))


def apply_word(gamma: GeneratingSet, w: Sequence[str], x: str) -> Optional[str]:
    """Apply the letters of ``w`` one at a time, rightmost first."""
    gamma.check_word(w)
    for a in reversed(w):
        x = apply_prefix_action(gamma[a], x)
        if x is None:
            return None
    return x


def apply_omega(e_or_word, z: str, gamma: Optional[GeneratingSet] = None) -> str:
    """Image of the stream ``z 0^omega``, with trailing zeros stripped.

    ``e_or_word`` is a :class:`TableElement` or a word over ``gamma``.
    """
    check_bits(z)
    if isinstance(e_or_word, TableElement):
        y = apply_prefix_action(e_or_word, z + "0" * e_or_word.maxlen)
        return strip_zeros(y)
    if gamma is None:
        raise TypeError("a generating set is needed to apply a word")
    w = list(e_or_word)
    gamma.check_word(w)
    x = z + "0" * (len(w) * gamma.maxlen)
    for a in reversed(w):
        g = gamma[a]
        y = apply_prefix_action(g, x)
        if y is None:
            # unreachable under the padding bound; the tail is all zeros anyway
            y = apply_prefix_action(g, x + "0" * g.maxlen)
        x = y
    return strip_zeros(x)


def neq_z0omega(s: str, z: str) -> bool:
    """Decide ``s 0^omega != z 0^omega`` by the three-case prefix test."""
    if not z:
        raise ValueError("z must be non-empty")
    if len(s) <= len(z) and z != s + "0" * (len(z) - len(s)):
        return True
    if len(s) >= len(z):
        if not s.startswith(z):
            return True
        if "1" in s[len(z):]:
            return True
    return False


def neq_z0omega_canonical(s: str, z: str) -> bool:
    return strip_zeros(s) != strip_zeros(z)


def all_bitstrings(n: int) -> list[str]:
    return ["".join(b) for b in product("01", repeat=n)]
