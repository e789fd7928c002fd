"""Deterministic push-down automata with generalized transitions.

A transition ``(q, s) -a-> (p, s')`` is applicable when the machine is in
state ``q`` and ``s`` is a prefix of the stack (stack words are written top
first), and either ``a`` is the next input letter or ``a`` is ε (``None``).
Applying it replaces the prefix ``s`` by ``s'``.  Acceptance is by final
state once the whole input has been read.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import EpsilonDivergence, InvalidDpda, NondeterminismDetected

EPS_BUDGET_ENV = "VWORD_EPS_BUDGET"


@dataclass(frozen=True)
class Transition:
    from_state: str
    read: tuple[str, ...]
    label: Optional[str]  # None is ε
    to_state: str
    write: tuple[str, ...]

    def __str__(self):
        lab = "ε" if self.label is None else self.label
        return f"({self.from_state}, {''.join(self.read)}) -{lab}-> ({self.to_state}, {''.join(self.write) or 'ε'})"


@dataclass(frozen=True)
class Configuration:
    state: str
    stack: tuple[str, ...]
    consumed: int = 0


@dataclass(frozen=True)
class Conflict:
    first: Transition
    second: Transition


@dataclass(frozen=True)
class RunResult:
    accepted: bool
    trace: list[Configuration] = field(default_factory=list)


@dataclass(frozen=True)
class Dpda:
    states: frozenset
    input_alphabet: frozenset
    stack_alphabet: frozenset
    bottom: str
    transitions: tuple[Transition, ...]
    start_state: str
    start_stack: tuple[str, ...]
    accept: frozenset

    def __post_init__(self):
        for name in ("states", "input_alphabet", "stack_alphabet", "accept"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        object.__setattr__(self, "start_stack", tuple(self.start_stack))
        self._validate()

    def _validate(self):
        bot = self.bottom
        if bot not in self.stack_alphabet:
            raise InvalidDpda(f"bottom marker {bot!r} not in the stack alphabet")
        if self.start_state not in self.states:
            raise InvalidDpda(f"start state {self.start_state!r} unknown")
        if not self.accept <= self.states:
            raise InvalidDpda("accept states must be states")
        s0 = self.start_stack
        if not s0 or s0[-1] != bot or s0.count(bot) != 1:
            raise InvalidDpda("start stack must contain exactly one bottom marker, at the bottom")
        for sym in s0:
            if sym not in self.stack_alphabet:
                raise InvalidDpda(f"stack symbol {sym!r} unknown")
        for t in self.transitions:
            if t.from_state not in self.states or t.to_state not in self.states:
                raise InvalidDpda(f"{t}: unknown state")
            if not t.read:
                raise InvalidDpda(f"{t}: read prefix must be non-empty")
            if t.label is not None and t.label not in self.input_alphabet:
                raise InvalidDpda(f"{t}: label not in the input alphabet")
            for sym in t.read + t.write:
                if sym not in self.stack_alphabet:
                    raise InvalidDpda(f"{t}: stack symbol {sym!r} unknown")
            if bot in t.read[:-1] or bot in t.write[:-1]:
                raise InvalidDpda(f"{t}: bottom marker must be last")
            if (t.read[-1] == bot) != (bool(t.write) and t.write[-1] == bot):
                raise InvalidDpda(f"{t}: violates the bottom-marker discipline")

    @cached_property
    def depth(self) -> int:
        return max((len(t.read) for t in self.transitions), default=0)

    @cached_property
    def _index(self) -> dict:
        idx: dict = {}
        for t in self.transitions:
            idx.setdefault((t.from_state, t.label), {}).setdefault(t.read, []).append(t)
        return idx

    def applicable(self, state: str, stack: Sequence[str], letter: Optional[str]) -> list[Transition]:
        found = []
        labels = (None,) if letter is None else (None, letter)
        for lab in labels:
            by_read = self._index.get((state, lab))
            if not by_read:
                continue
            for d in range(1, min(len(stack), self.depth) + 1):
                found.extend(by_read.get(tuple(stack[:d]), ()))
        return found

    @property
    def start(self) -> Configuration:
        return Configuration(self.start_state, self.start_stack, 0)


def validate_determinism(m: Dpda) -> list[Conflict]:
    """All pairs of transitions that could fire in the same configuration."""
    out = []
    ts = sorted(m.transitions, key=lambda t: (t.from_state, t.read, t.label or ""))
    by_state: dict = {}
    for t in ts:
        by_state.setdefault(t.from_state, []).append(t)
    for group in by_state.values():
        for i, t1 in enumerate(group):
            for t2 in group[i + 1:]:
                short, long_ = sorted((t1.read, t2.read), key=len)
                if long_[: len(short)] != short:
                    continue
                if t1.label is None or t2.label is None or t1.label == t2.label:
                    out.append(Conflict(t1, t2))
    return out


def step(m: Dpda, c: Configuration, next_letter: Optional[str]) -> Optional[Configuration]:
    """One move; None when no transition applies (the machine is stuck)."""
    found = m.applicable(c.state, c.stack, next_letter)
    if not found:
        return None
    if len(found) > 1:
        raise NondeterminismDetected(f"{len(found)} transitions apply in {c}: {', '.join(map(str, found))}")
    t = found[0]
    return Configuration(
        t.to_state,
        t.write + c.stack[len(t.read):],
        c.consumed + (t.label is not None),
    )


def eps_budget(m: Dpda, stack_len: int) -> int:
    override = os.environ.get(EPS_BUDGET_ENV)
    if override:
        return int(override)
    return stack_len + len(m.states) + 1


def run(m: Dpda, word: Sequence[str]) -> RunResult:
    """Simulate ``m`` on ``word`` keeping every configuration."""
    c = m.start
    trace = [c]
    for letter in word:
        budget = eps_budget(m, len(c.stack))
        used = 0
        while True:
            nxt = step(m, c, letter)
            if nxt is None:
                return RunResult(False, trace)
            trace.append(nxt)
            c = nxt
            if nxt.consumed > trace[-2].consumed:
                break
            used += 1
            if used > budget:
                raise EpsilonDivergence(f"ε-chain longer than {budget} before letter {letter!r}")
    accepted = c.state in m.accept
    budget = eps_budget(m, len(c.stack))
    used = 0
    while True:
        nxt = step(m, c, None)
        if nxt is None:
            break
        used += 1
        if used > budget:
            raise EpsilonDivergence(f"ε-chain longer than {budget} after the input")
        trace.append(nxt)
        c = nxt
        accepted = accepted or c.state in m.accept
    return RunResult(accepted, trace)


def accepts(m: Dpda, word: Sequence[str]) -> bool:
    """Membership via the compiled kernel; same contract as ``run(...).accepted``."""
    from .kernels import single_bank

    return single_bank(m).accepts(0, word)


# -- serialization -------------------------------------------------------------

def to_json(m: Dpda) -> dict:
    return {
        "states": sorted(m.states),
        "input_alphabet": sorted(m.input_alphabet),
        "stack_alphabet": sorted(m.stack_alphabet),
        "bottom": m.bottom,
        "transitions": [
            {"from": t.from_state, "read": list(t.read), "label": t.label,
             "to": t.to_state, "write": list(t.write)}
            for t in m.transitions
        ],
        "start_state": m.start_state,
        "start_stack": list(m.start_stack),
        "accept": sorted(m.accept),
    }


def from_json(data: dict) -> Dpda:
    try:
        return Dpda(
            states=data["states"],
            input_alphabet=data["input_alphabet"],
            stack_alphabet=data["stack_alphabet"],
            bottom=data["bottom"],
            transitions=[
                Transition(t["from"], tuple(t["read"]), t["label"], t["to"], tuple(t["write"]))
                for t in data["transitions"]
            ],
            start_state=data["start_state"],
            start_stack=data["start_stack"],
            accept=data["accept"],
        )
    except (KeyError, TypeError) as exc:
        raise InvalidDpda(f"malformed machine description: {exc}") from exc


def dumps(m: Dpda, **kw) -> str:
    return json.dumps(to_json(m), **kw)


def loads(text: str) -> Dpda:
    return from_json(json.loads(text))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(m: Dpda, name: str = "dpda") -> str:
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=LR;"]
    for q in sorted(m.states):
        shape = "doublecircle" if q in m.accept else "circle"
        lines.append(f"  {_dot_quote(q)} [shape={shape}];")
    lines.append('  "__start" [shape=point];')
    lines.append(f'  "__start" -> {_dot_quote(m.start_state)} [label={_dot_quote("".join(m.start_stack))}];')
    for t in m.transitions:
        lab = "ε" if t.label is None else t.label
        text = f"{lab}: {''.join(t.read)} / {''.join(t.write) or 'ε'}"
        lines.append(f"  {_dot_quote(t.from_state)} -> {_dot_quote(t.to_state)} [label={_dot_quote(text)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def make_dpda(states: Iterable[str], input_alphabet: Iterable[str], stack_alphabet: Iterable[str],
              bottom: str, transitions: Iterable[Transition], start_state: str,
              start_stack: Sequence[str], accept: Iterable[str]) -> Dpda:
    return Dpda(frozenset(states), frozenset(input_alphabet), frozenset(stack_alphabet), bottom,
                tuple(transitions), start_state, tuple(start_stack), frozenset(accept))
