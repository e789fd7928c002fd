"""Desk-scale checks of the language-theoretic facts behind the decider.

Word problems are free submonoids with a bifix basis, cyclic closure
commutes with reversal and union, and every computation of a word on a long
enough point passes through a narrow point of length at most maxlen(Γ).
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, NamedTuple, Sequence

from .errors import NotInWp, UndefinedStep
from .group import (
    IDENTITY,
    GeneratingSet,
    apply_with_depth,
    compose,
    is_identity,
    wp_oracle,
)

Word = tuple


@dataclass(frozen=True)
class ComputationTrace:
    """``x_0 -> x_1 -> ... -> x_n``; ``steps[i]`` is (letter, matched depth)."""

    steps: tuple[tuple[str, int], ...]
    x0: str
    points: tuple[str, ...]


class NarrowPoint(NamedTuple):
    s: str
    zs: list[str]
    k: int


def computation_trace(gamma: GeneratingSet, w: Sequence[str], x0: str) -> ComputationTrace:
    gamma.check_word(w)
    points = [x0]
    steps = []
    x = x0
    for a in reversed(w):
        res = apply_with_depth(gamma[a], x)
        if res is None:
            raise UndefinedStep(f"{a} is undefined on {x!r}")
        x, depth = res
        steps.append((a, depth))
        points.append(x)
    return ComputationTrace(tuple(steps), x0, tuple(points))


def narrow_trace(gamma: GeneratingSet, w: Sequence[str], x0: str) -> NarrowPoint:
    """Longest untouched suffix ``s``, the prefixes ``z_i`` and a shortest one ``k``."""
    if len(x0) < len(w) * gamma.maxlen:
        raise UndefinedStep(f"|x0| = {len(x0)} < |w|·maxlen = {len(w) * gamma.maxlen}")
    tr = computation_trace(gamma, w, x0)
    keep = len(x0)
    for (_, depth), x in zip(tr.steps, tr.points):
        keep = min(keep, len(x) - depth)
    s = x0[len(x0) - keep:]
    zs = [x[: len(x) - keep] for x in tr.points]
    k = min(range(len(zs)), key=lambda i: len(zs[i]))
    if tr.steps:
        assert len(zs[k]) <= gamma.maxlen, (w, x0, zs)
    return NarrowPoint(s, zs, k)


# -- word enumeration --------------------------------------------------------

def words_upto(alphabet: Sequence[str], n: int) -> Iterable[Word]:
    """All words of length <= n in shortlex order."""
    for k in range(n + 1):
        yield from product(alphabet, repeat=k)


def enumerate_wp(gamma: GeneratingSet, n: int) -> list[Word]:
    """Words of length <= n that represent the identity, shortlex."""
    found: list[Word] = []
    level = [((), IDENTITY)]
    for k in range(n + 1):
        found.extend(w for w, e in level if is_identity(e))
        if k == n:
            break
        level = [(w + (a,), compose(e, gamma[a])) for w, e in level for a in gamma.names]
    return found


def _in_wp(gamma):
    @lru_cache(maxsize=None)
    def check(w: Word) -> bool:
        return wp_oracle(gamma, w)

    return check


def factor_wp(gamma: GeneratingSet, w: Sequence[str]) -> list[Word]:
    """Split a trivial word into its free generators by cutting shortest trivial prefixes."""
    w = tuple(w)
    if not wp_oracle(gamma, w):
        raise NotInWp(f"{' '.join(w)} is not the identity")
    factors = []
    start = 0
    acc = IDENTITY
    for i, a in enumerate(w):
        acc = compose(acc, gamma[a])
        if is_identity(acc):
            factors.append(w[start:i + 1])
            start = i + 1
            acc = IDENTITY
    return factors


def all_factorizations(gamma: GeneratingSet, w: Sequence[str]) -> list[list[Word]]:
    """Every way of writing ``w`` as a product of free generators (DP over cut points)."""
    w = tuple(w)
    n = len(w)
    in_wp = _in_wp(gamma)

    def irreducible(u: Word) -> bool:
        return in_wp(u) and not any(in_wp(u[:i]) for i in range(1, len(u)))

    table: list[list[list[Word]]] = [[] for _ in range(n + 1)]
    table[n] = [[]]
    for i in range(n - 1, -1, -1):
        for j in range(i + 1, n + 1):
            if table[j] and irreducible(w[i:j]):
                table[i].extend([[w[i:j]] + rest for rest in table[j]])
    return table[0]


def free_generators(gamma: GeneratingSet, n: int) -> list[Word]:
    wp = enumerate_wp(gamma, n)
    members = set(wp)
    return [w for w in wp if w and not any(w[:i] in members for i in range(1, len(w)))]


def check_bifix(gamma: GeneratingSet, n: int) -> bool:
    """No free generator of length <= n is a prefix or suffix of another."""
    gens = free_generators(gamma, n)
    for u in gens:
        for v in gens:
            if u != v and len(u) < len(v) and (v[: len(u)] == u or v[-len(u):] == u):
                return False
    return True


# -- cyclic closure and reversal --------------------------------------------------

def cyc_set(w: Sequence) -> set[Word]:
    w = tuple(w)
    return {w[i:] + w[:i] for i in range(len(w))} or {()}


def cyc(lang: Iterable[Sequence]) -> set[Word]:
    out: set[Word] = set()
    for w in lang:
        out |= cyc_set(w)
    return out


def rev(lang: Iterable[Sequence]) -> set[Word]:
    return {tuple(reversed(w)) for w in lang}


def rev_cyc_commute_check(sample: Iterable[Sequence]) -> bool:
    """cyc(rev(w)) equals rev(cyc(w)) for every word of the sample."""
    for w in sample:
        w = tuple(w)
        if cyc_set(w[::-1]) != rev(cyc_set(w)):
            return False
    return True


def cyc_union_check(l1: Iterable[Sequence], l2: Iterable[Sequence]) -> bool:
    l1, l2 = {tuple(w) for w in l1}, {tuple(w) for w in l2}
    return cyc(l1 | l2) == cyc(l1) | cyc(l2)


def complement_cyc_check(universe: Iterable[Sequence], lang: Callable[[Word], bool]) -> bool:
    """If ``lang`` is rotation-closed inside a finite length-closed universe, so is its complement."""
    universe = {tuple(w) for w in universe}
    inside = {w for w in universe if lang(w)}
    outside = universe - inside
    if cyc(inside) != inside:
        return True
    return cyc(outside) == outside


# -- report ------------------------------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    cases: int = 0


@dataclass
class Report:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def add(self, name, passed, detail="", cases=0):
        self.results.append(CheckResult(name, bool(passed), detail, cases))

    def text(self) -> str:
        width = max((len(r.name) for r in self.results), default=4)
        lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.cases:>6}  {r.detail}"
                 for r in self.results]
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({"passed": self.passed, "results": [asdict(r) for r in self.results]},
                          indent=2, sort_keys=True)


def lemma_suite(gamma: GeneratingSet, *, seed: int = 0, samples: int = 200) -> Report:
    rng = random.Random(seed)
    rep = Report()
    names = gamma.names

    bad = 0
    for _ in range(samples):
        w = [rng.choice(names) for _ in range(rng.randint(0, 8))]
        try:
            narrow_trace(gamma, w, "0" * (len(w) * max(gamma.maxlen, 1)))
        except AssertionError:
            bad += 1
    rep.add("narrow point |z_k| <= maxlen", bad == 0, f"{bad} violations", samples)

    wp = enumerate_wp(gamma, 4)
    bad = sum(factor_wp(gamma, u + v) != factor_wp(gamma, u) + factor_wp(gamma, v)
              for u in wp for v in wp)
    rep.add("unique factorization of products", bad == 0, f"{bad} violations", len(wp) ** 2)
    bad = sum(all_factorizations(gamma, w) != [factor_wp(gamma, w)] for w in wp if w)
    rep.add("greedy factorization is the only one", bad == 0, f"{bad} violations", len(wp))
    rep.add("submonoid closure", all(wp_oracle(gamma, u + v) for u in wp[:40] for v in wp[:40]), "",
            min(len(wp), 40) ** 2)
    rep.add("free generators form a bifix code", check_bifix(gamma, 4), "length <= 4")

    sample = list(words_upto("ab", 5))
    rep.add("cyc and rev commute", rev_cyc_commute_check(sample), "words over {a,b}, length <= 5",
            len(sample))
    l1 = [w for w in sample if w.count("a") % 2]
    l2 = [w for w in sample if w[:1] == ("b",)]
    rep.add("cyc distributes over union", cyc_union_check(l1, l2), "", len(sample))
    universe = list(words_upto(names, 4))
    rep.add("complement of a cyclically closed language", complement_cyc_check(
        universe, lambda w: wp_oracle(gamma, w)), "wp inside Γ^<=4", len(universe))
    return rep


def random_word(rng: random.Random, names: Sequence[str], length: int) -> list[str]:
    return [rng.choice(names) for _ in range(length)]

