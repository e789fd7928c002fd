"""Recognizers for the languages L_z = {w : w(z0^ω) != z0^ω}.

The machine built here reads ``reverse(w)`` followed by the endmarker.
It keeps the current point ``w'(z 0^k)`` on the stack, applying each
generator as a prefix replacement on the stack top, and on the endmarker
decides ``s 0^ω != z 0^ω`` for the stack content ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .errors import InvalidGeneratingSet, InvalidZ
from .group import ENDMARKER, GeneratingSet, apply_omega, neq_z0omega
from .kernels import single_bank
from .pda import Dpda, Transition, validate_determinism

BOTTOM = "⊥"
Q0, Q1, QA = "q0", "q1", "qa"


@dataclass(frozen=True)
class LzMachine:
    z: str
    gamma: GeneratingSet
    dpda: Dpda


def _t(q, read, label, p, write) -> Transition:
    return Transition(q, tuple(read), label, p, tuple(write))


def _padding_transitions(name, g):
    """(q0, x⊥) -g-> (q0, g(x0^m)⊥) for every strict prefix x of a dom codeword."""
    table = g.mapping
    prefixes = {p[:i] for p in table for i in range(len(p))}
    for x in sorted(prefixes, key=lambda s: (len(s), s)):
        m = 1
        while x + "0" * m not in table:
            m += 1
        yield _t(Q0, x + BOTTOM, name, Q0, table[x + "0" * m] + BOTTOM)


def lz_transitions(z: str, gamma: GeneratingSet) -> list[Transition]:
    ts = []
    for name, g in gamma.items:
        for r, image in g.entries:
            if r:
                ts.append(_t(Q0, r, name, Q0, image))
            else:
                # identity generator: read prefixes must be non-empty
                ts.extend(_t(Q0, c, name, Q0, c) for c in ("0", "1", BOTTOM))
        ts.extend(_padding_transitions(name, g))
    n = len(z)
    for k in range(n + 1):
        for s in map("".join, product("01", repeat=k)):
            if z != s + "0" * (n - k):
                ts.append(_t(Q0, s + BOTTOM, ENDMARKER, QA, s + BOTTOM))
    for s in map("".join, product("01", repeat=n)):
        for a in "01":
            if s != z:
                ts.append(_t(Q0, s + a, ENDMARKER, QA, a))
            else:
                ts.append(_t(Q0, z + a, ENDMARKER, Q1, a))
    ts.append(_t(Q1, "0", None, Q1, ""))
    ts.append(_t(Q1, "1", None, QA, ""))
    return ts


def _check_z(z) -> str:
    if not isinstance(z, str) or not z or z.strip("01"):
        raise InvalidZ(f"z must be a non-empty bitstring, got {z!r}")
    return z


def build_lz(z: str, gamma: GeneratingSet) -> LzMachine:
    _check_z(z)
    if not isinstance(gamma, GeneratingSet):
        raise InvalidGeneratingSet("expected a GeneratingSet")
    return _build(z, gamma)


@lru_cache(maxsize=256)
def _build(z: str, gamma: GeneratingSet) -> LzMachine:
    dpda = Dpda(
        states=frozenset({Q0, Q1, QA}),
        input_alphabet=frozenset(gamma.names) | {ENDMARKER},
        stack_alphabet=frozenset({"0", "1", BOTTOM}),
        bottom=BOTTOM,
        transitions=tuple(lz_transitions(z, gamma)),
        start_state=Q0,
        start_stack=tuple(z + BOTTOM),
        accept=frozenset({QA}),
    )
    return LzMachine(z, gamma, dpda)


def lz_input(w: Sequence[str]) -> list[str]:
    return list(reversed(w)) + [ENDMARKER]


def in_lz(z: str, gamma: GeneratingSet, w: Sequence[str], backend=None) -> bool:
    """Membership of ``w`` in L_z, decided by the recognizer on ``reverse(w)□``."""
    _check_z(z)
    gamma.check_word(w)
    if not w:
        return False
    return single_bank(build_lz(z, gamma).dpda).accepts(0, lz_input(w), backend)


def lz_direct(z: str, gamma: GeneratingSet, w: Sequence[str]) -> bool:
    """Membership of ``w`` in L_z, computed on the point ``z 0^k`` directly."""
    _check_z(z)
    gamma.check_word(w)
    if not w:
        return False
    return neq_z0omega(apply_omega(w, z, gamma), z)


def determinism_conflicts(z: str, gamma: GeneratingSet):
    return validate_determinism(build_lz(z, gamma).dpda)
