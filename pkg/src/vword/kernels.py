"""Array kernels for running banks of dpda.

Machines are compiled into flat integer tables: one trie of read prefixes
per (state, label), walked from the top of the stack.  The kernels are
plain Python over numpy arrays and are compiled with numba ``@njit`` unless
``VWORD_DISABLE_JIT`` is set (or numba is missing), in which case the same
source runs interpreted.
"""

from __future__ import annotations

import os
import types
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import EpsilonDivergence, NondeterminismDetected

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

DISABLE_JIT_ENV = "VWORD_DISABLE_JIT"

ACCEPT, REJECT, DIVERGE, NONDET = 1, 0, -1, -2
MULTI = -2


def _small_int(size: int):
    # narrow scratch arrays keep the sweep's working set in L1 for long words
    for dt in (np.int8, np.int16, np.int32):
        if size <= np.iinfo(dt).max:
            return dt
    return np.int64


def default_backend() -> str:
    flag = os.environ.get(DISABLE_JIT_ENV, "").strip().lower()
    if njit is None or flag in ("1", "true", "yes", "on"):
        return "numpy"
    return "jit"


def _jit(fn):
    if njit is None:
        return fn
    return njit(cache=True, nogil=True)(fn)


@_jit
def find(state, label, stack, sp, root, child, term, n_lab, n_sym):
    node = root[state * n_lab + label]
    if node < 0:
        return -1
    found = -1
    d = 0
    while d < sp:
        node = child[node * n_sym + stack[sp - 1 - d]]
        if node < 0:
            break
        t = term[node]
        if t == MULTI:
            return NONDET
        if t >= 0:
            if found >= 0:
                return NONDET
            found = t
        d += 1
    return found

@_jit
def run_one(root, child, term, t_to, t_rlen, t_woff, t_wlen, wsyms, accept,
            n_lab, n_sym, eps, start_state, start_syms, n_states, budget_override,
            inp, n, stack):
    # ``stack`` is scratch space; it is replaced by a larger copy if it fills up
    cap = stack.shape[0]
    sp = start_syms.shape[0]
    for i in range(sp):
        stack[i] = start_syms[sp - 1 - i]
    state = start_state
    for i in range(n):
        a = inp[i]
        budget = budget_override if budget_override >= 0 else sp + n_states + 1
        used = 0
        while True:
            te = find(state, eps, stack, sp, root, child, term, n_lab, n_sym)
            tl = find(state, a, stack, sp, root, child, term, n_lab, n_sym)
            if te == NONDET or tl == NONDET or (te >= 0 and tl >= 0):
                return NONDET
            if te < 0 and tl < 0:
                return REJECT
            t = te if te >= 0 else tl
            sp -= t_rlen[t]
            wl = t_wlen[t]
            if sp + wl > cap:
                cap = 2 * cap + wl
                grown = np.empty(cap, dtype=stack.dtype)
                grown[:sp] = stack[:sp]
                stack = grown
            off = t_woff[t]
            for k in range(wl):
                stack[sp + wl - 1 - k] = wsyms[off + k]
            sp += wl
            state = t_to[t]
            if t == tl:
                break
            used += 1
            if used > budget:
                return DIVERGE
    acc = accept[state] != 0
    budget = budget_override if budget_override >= 0 else sp + n_states + 1
    used = 0
    while True:
        te = find(state, eps, stack, sp, root, child, term, n_lab, n_sym)
        if te == NONDET:
            return NONDET
        if te < 0:
            break
        sp -= t_rlen[te]
        wl = t_wlen[te]
        if sp + wl > cap:
            cap = 2 * cap + wl
            grown = np.empty(cap, dtype=stack.dtype)
            grown[:sp] = stack[:sp]
            stack = grown
        off = t_woff[te]
        for k in range(wl):
            stack[sp + wl - 1 - k] = wsyms[off + k]
        sp += wl
        state = t_to[te]
        used += 1
        if used > budget:
            return DIVERGE
        if accept[state] != 0:
            acc = True
    return ACCEPT if acc else REJECT

@_jit
def sweep(root, child, term, t_to, t_rlen, t_woff, t_wlen, wsyms, accept,
          n_lab, n_sym, eps, m_start, m_off, m_len, start_syms, m_nstates,
          budget_override, word, end_code, lo, hi, stack):
    # rotations outer, machines inner; input is reverse(rotate(word, j)) + end
    n = word.shape[0]
    buf = np.empty(n + 1, dtype=word.dtype)
    n_machines = m_start.shape[0]
    for j in range(lo, hi):
        for i in range(n):
            buf[i] = word[(j + n - 1 - i) % n]
        buf[n] = end_code
        for m in range(n_machines):
            s0 = start_syms[m_off[m]:m_off[m] + m_len[m]]
            r = run_one(root, child, term, t_to, t_rlen, t_woff, t_wlen, wsyms, accept,
                        n_lab, n_sym, eps, m_start[m], s0, m_nstates[m], budget_override,
                        buf, n + 1, stack)
            if r != REJECT:
                return j, m, r
    return -1, -1, REJECT


_KERNEL_NAMES = ("find", "run_one", "sweep")


def _interpreted():
    """Copies of the kernels whose globals resolve to the uncompiled versions."""
    env = dict(globals())
    out = {}
    for name in _KERNEL_NAMES:
        fn = globals()[name]
        fn = getattr(fn, "py_func", fn)
        out[name] = types.FunctionType(fn.__code__, env, name)
    env.update(out)
    return out


@lru_cache(maxsize=None)
def kernels(backend: str):
    """``(run_one, sweep)`` for the ``"jit"`` or ``"numpy"`` backend."""
    if backend == "jit":
        if njit is None:
            raise RuntimeError("numba is not available")
        return run_one, sweep
    if backend == "numpy":
        fns = _interpreted()
        return fns["run_one"], fns["sweep"]
    raise ValueError(f"unknown backend {backend!r}")


def _budget_override() -> int:
    v = os.environ.get("VWORD_EPS_BUDGET")
    return int(v) if v else -1


def _raise_for(code: int, where: str):
    if code == NONDET:
        raise NondeterminismDetected(f"more than one transition applies ({where})")
    if code == DIVERGE:
        raise EpsilonDivergence(f"ε-chain exceeded its budget ({where})")


class MachineBank:
    """Several dpda compiled into shared tables over a common alphabet."""

    def __init__(self, machines: Sequence):
        self.machines = tuple(machines)
        stack_syms = sorted({s for m in self.machines for s in m.stack_alphabet})
        labels = sorted({a for m in self.machines for a in m.input_alphabet})
        self.sym_id = {s: i for i, s in enumerate(stack_syms)}
        self.label_id = {a: i for i, a in enumerate(labels)}
        self.unknown = len(labels)
        self.eps = len(labels) + 1
        self.n_lab = len(labels) + 2
        self.n_sym = len(stack_syms)
        self.stack_dtype = _small_int(self.n_sym)
        self.code_dtype = _small_int(self.n_lab)

        state_id = {}
        for k, m in enumerate(self.machines):
            for q in sorted(m.states):
                state_id[k, q] = len(state_id)
        self.state_id = state_id

        root = np.full(len(state_id) * self.n_lab, -1, dtype=np.int64)
        child: list[int] = []
        term: list[int] = []
        t_to, t_rlen, t_woff, t_wlen, wsyms = [], [], [], [], []

        def new_node():
            child.extend([-1] * self.n_sym)
            term.append(-1)
            return len(term) - 1

        for k, m in enumerate(self.machines):
            for t in m.transitions:
                lab = self.eps if t.label is None else self.label_id[t.label]
                slot = state_id[k, t.from_state] * self.n_lab + lab
                if root[slot] < 0:
                    root[slot] = new_node()
                node = int(root[slot])
                for sym in t.read:
                    c = node * self.n_sym + self.sym_id[sym]
                    if child[c] < 0:
                        child[c] = new_node()
                    node = child[c]
                tid = len(t_to)
                # two transitions with the same read prefix and label: mark the
                # node so any run reaching it reports nondeterminism
                term[node] = tid if term[node] == -1 else MULTI
                t_to.append(state_id[k, t.to_state])
                t_rlen.append(len(t.read))
                t_woff.append(len(wsyms))
                t_wlen.append(len(t.write))
                wsyms.extend(self.sym_id[s] for s in t.write)

        self.root = root
        self.child = np.asarray(child, dtype=np.int64)
        self.term = np.asarray(term, dtype=np.int64)
        self.t_to = np.asarray(t_to, dtype=np.int64)
        self.t_rlen = np.asarray(t_rlen, dtype=np.int64)
        self.t_woff = np.asarray(t_woff, dtype=np.int64)
        self.t_wlen = np.asarray(t_wlen, dtype=np.int64)
        self.wsyms = np.asarray(wsyms, dtype=np.int64)
        accept = np.zeros(len(state_id), dtype=np.int64)
        for (k, q), i in state_id.items():
            if q in self.machines[k].accept:
                accept[i] = 1
        self.accept = accept
        self.m_start = np.asarray([state_id[k, m.start_state] for k, m in enumerate(self.machines)], dtype=np.int64)
        starts = [[self.sym_id[s] for s in m.start_stack] for m in self.machines]
        self.m_len = np.asarray([len(s) for s in starts], dtype=np.int64)
        self.m_off = np.concatenate([[0], np.cumsum(self.m_len)[:-1]]).astype(np.int64)
        self.start_syms = np.asarray([s for st in starts for s in st], dtype=np.int64)
        self.m_nstates = np.asarray([len(m.states) for m in self.machines], dtype=np.int64)

    def __len__(self):
        return len(self.machines)

    def encode(self, word: Sequence[str]) -> np.ndarray:
        return np.asarray([self.label_id.get(a, self.unknown) for a in word], dtype=self.code_dtype)

    def _stack(self, n: int) -> np.ndarray:
        return np.empty(int(self.m_len.max()) + 2 * n + 16, dtype=self.stack_dtype)

    def _tables(self):
        return (self.root, self.child, self.term, self.t_to, self.t_rlen, self.t_woff,
                self.t_wlen, self.wsyms, self.accept, self.n_lab, self.n_sym, self.eps)

    def run_code(self, k: int, codes: np.ndarray, backend: Optional[str] = None) -> int:
        run_one, _ = kernels(backend or default_backend())
        s0 = self.start_syms[self.m_off[k]:self.m_off[k] + self.m_len[k]]
        stack = self._stack(codes.shape[0])
        return int(run_one(*self._tables(), self.m_start[k], s0, self.m_nstates[k],
                           _budget_override(), codes, codes.shape[0], stack))

    def accepts(self, k: int, word: Sequence[str], backend: Optional[str] = None) -> bool:
        code = self.run_code(k, self.encode(word), backend)
        _raise_for(code, f"machine {k}")
        return code == ACCEPT

    def sweep(self, codes: np.ndarray, end_code: int, lo: int, hi: int,
              backend: Optional[str] = None) -> Optional[tuple[int, int]]:
        """First (rotation, machine) in [lo, hi) whose reversed rotation is accepted."""
        _, sweep = kernels(backend or default_backend())
        j, k, code = sweep(*self._tables(), self.m_start, self.m_off, self.m_len,
                           self.start_syms, self.m_nstates, _budget_override(),
                           codes, end_code, lo, hi, self._stack(codes.shape[0]))
        _raise_for(int(code), f"rotation {j}, machine {k}")
        if j < 0:
            return None
        return int(j), int(k)


def compile_bank(machines: Sequence) -> MachineBank:
    return MachineBank(machines)


@lru_cache(maxsize=64)
def single_bank(m) -> MachineBank:
    return MachineBank([m])
