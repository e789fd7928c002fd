import itertools
import random

import pytest

from vword.errors import InvalidGeneratingSet, InvalidZ, UnknownGenerator
from vword.group import (
    ENDMARKER,
    IDENTITY,
    GeneratingSet,
    all_bitstrings,
    apply_omega,
    neq_z0omega,
    parse_table,
    wp_oracle,
)
from vword.lz import BOTTOM, build_lz, in_lz, lz_direct, lz_input, lz_transitions
from vword.pda import accepts, run, validate_determinism

B = BOTTOM


def reads(ts, label, state="q0"):
    return {("".join(t.read), "".join(t.write), t.to_state) for t in ts
            if t.label == label and t.from_state == state}


def test_build_shape(gh):
    m = build_lz("00", gh).dpda
    assert m.states == {"q0", "q1", "qa"}
    assert m.accept == {"qa"}
    assert m.start_stack == ("0", "0", B)
    assert m.stack_alphabet == {"0", "1", B}
    assert m.input_alphabet == set(gh.names) | {ENDMARKER}
    assert not [t for t in m.transitions if t.from_state == "qa"]


def test_endmarker_family_c_for_00(gh):
    # brute force: s with |s| <= 2 and 00 != s 0^(2-|s|)
    expected = {s for k in range(3) for s in all_bitstrings(k) if s + "0" * (2 - k) != "00"}
    assert expected == {"1", "01", "10", "11"}
    ts = lz_transitions("00", gh)
    fam_c = {r[:-1] for r, w, q in reads(ts, ENDMARKER) if r.endswith(B)}
    assert fam_c == expected


def test_endmarker_families_d_e(gh):
    ts = lz_transitions("01", gh)
    d = {(r, w) for r, w, q in reads(ts, ENDMARKER) if q == "qa" and not r.endswith(B)}
    assert d == {(s + a, a) for s in ("00", "10", "11") for a in "01"}
    e = {(r, w) for r, w, q in reads(ts, ENDMARKER) if q == "q1"}
    assert e == {("010", "0"), ("011", "1")}
    assert reads(ts, None, "q1") == {("0", "", "q1"), ("1", "", "qa")}


def test_padding_family_for_g2(gh):
    ts = reads(lz_transitions("00", gh), "g2")
    # strict prefixes of {00, 01, 1} are "" and "0"; each pads with 0s into 00
    assert ("0" + B, "00" + B, "q0") in ts
    assert (B, "00" + B, "q0") in ts
    padded = {r for r, w, q in ts if r.endswith(B)}
    assert padded == {B, "0" + B}


def test_simulation_family(gh):
    ts = reads(lz_transitions("00", gh), "g3")
    assert {("0", "10", "q0"), ("10", "0", "q0"), ("11", "11", "q0")} <= ts


def test_build_errors(gh):
    with pytest.raises(InvalidZ):
        build_lz("", gh)
    with pytest.raises(InvalidZ):
        build_lz("012", gh)
    with pytest.raises(InvalidGeneratingSet):
        build_lz("0", {"g1": gh["g1"]})


@pytest.mark.parametrize("z", ["0", "1"] + all_bitstrings(2) + all_bitstrings(3))
def test_determinism_certified(gh, z):
    assert validate_determinism(build_lz(z, gh).dpda) == []


def test_in_lz_examples(gh):
    assert apply_omega(["g1"], "00", gh) == "1"
    assert in_lz("00", gh, ["g1"])
    assert not in_lz("00", gh, ["g1", "g1"])
    assert apply_omega(["g3"], "10", gh) == ""
    assert in_lz("10", gh, ["g3"])
    assert not in_lz("00", gh, [])
    with pytest.raises(UnknownGenerator):
        in_lz("00", gh, ["g7"])


def test_lz_direct_examples(gh):
    assert lz_direct("00", gh, ["g1"])
    for g in gh.names:
        for z in all_bitstrings(2):
            assert not lz_direct(z, gh, [g, g])
    # prefix 1 -> 01, so 110^ω goes to 0110^ω
    assert apply_omega(["g2"], "11", gh) == "011"
    assert lz_direct("11", gh, ["g2"])


@pytest.mark.parametrize("z", ["0", "1", "00", "01", "10", "11", "010"])
def test_recognizer_matches_direct(gh, z):
    for n in range(1, 5):
        for w in itertools.product(gh.names, repeat=n):
            assert in_lz(z, gh, w) == lz_direct(z, gh, w), w


def test_lz_inside_cowp(gh):
    for n in range(1, 5):
        for w in itertools.product(gh.names, repeat=n):
            if any(in_lz(z, gh, w) for z in all_bitstrings(2)):
                assert not wp_oracle(gh, w)


def test_nothing_accepted_past_endmarker(gh):
    m = build_lz("01", gh).dpda
    rng = random.Random(11)
    hits = 0
    for _ in range(300):
        w = [rng.choice(gh.names) for _ in range(rng.randint(1, 8))]
        u = lz_input(w)
        if accepts(m, u):
            hits += 1
            tail = [rng.choice(gh.names) for _ in range(rng.randint(1, 3))]
            assert not accepts(m, u + tail)
            assert not run(m, u + tail).accepted
    assert hits > 50


def test_lz_reversal_symmetry_empirical(gh):
    """Over involutive generators L_z and its reverse coincide at small lengths."""
    for z in all_bitstrings(2):
        for n in range(1, 5):
            for w in itertools.product(gh.names, repeat=n):
                assert lz_direct(z, gh, w) == lz_direct(z, gh, w[::-1])


def test_identity_generator_is_simulated():
    g = GeneratingSet((("e", IDENTITY), ("s", parse_table([("0", "1"), ("1", "0")]))))
    m = build_lz("0", g).dpda
    assert validate_determinism(m) == []
    for n in range(1, 6):
        for w in itertools.product(g.names, repeat=n):
            assert in_lz("0", g, w) == lz_direct("0", g, w) == neq_z0omega(apply_omega(w, "0", g), "0")
