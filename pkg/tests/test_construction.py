from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bettiwitness.construction import (
    KeyAssumptionViolated,
    NotDifferentiable,
    NotOSequence,
    PlateauTooSmall,
    RegularSequenceRetryExhausted,
    TailNotAdmissible,
    WitnessConfig,
    analyze,
    build_witness_pair,
    build_z,
    ci_first_difference,
    line_union_hilbert,
    target_hilbert,
)
from bettiwitness.lifting import distract_lines, grid_lines, lift_factors
from bettiwitness.monomial_ideal import ek_betti, lex_ideal
from bettiwitness.oseq import OSequence, is_o_sequence
from bettiwitness.scheme_engine import point_betti

from gen import random_admissible_curve, random_truncated

SMALL = OSequence((1, 3, 6, 9, 11, 11, 11))
WIDE = OSequence((1, 3, 6, 10, 15, 19, 23, 26, 27, 28, 29), 29)


@pytest.fixture(scope="module")
def pair52():
    return build_witness_pair(SMALL)


def test_invariants_medium_example():
    inv, table = analyze(OSequence((1, 3, 6, 10, 14, 16, 17), 17))
    assert (inv.d, inv.t, inv.s) == (17, 6, 8)
    assert table.claim1


def test_difference_table_wide():
    inv, table = analyze(WIDE)
    assert (inv.t, inv.s) == (10, 14)
    assert table.e_row.head(16) == [1, 3, 6, 8, 10, 11, 10, 9, 8, 6, 4, 2, 1, 1, 1, 1]
    assert table.delta_ci.head(16) == [1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 28, 28]


def test_ci_override_47_rejected():
    with pytest.raises(NotOSequence) as exc:
        analyze(WIDE, (4, 7))
    # entrywise difference of the printed rows: 1 1 1 1 0 0 1 1 1 from degree 4 on
    assert exc.value.row[:9] == [1, 1, 1, 1, 0, 0, 1, 1, 1]
    assert exc.value.degree == 6
    assert not is_o_sequence(exc.value.row)


def test_ci_override_39_accepted():
    inv, table = analyze(WIDE, (3, 9))
    assert table.e_prime == OSequence((1, 3, 4, 5, 5, 3, 2, 2, 2))
    assert inv.ci_type == (3, 9)


def test_ci_first_difference():
    assert ci_first_difference(2, 5).head(8) == [1, 3, 5, 7, 9, 10, 10, 10]
    assert ci_first_difference(4, 7).head(11) == [1, 3, 6, 10, 14, 18, 22, 25, 27, 28, 28]


@pytest.mark.parametrize(
    "h, err",
    [
        (OSequence((1, 3, 5), 5), KeyAssumptionViolated),
        (OSequence((1, 2, 3), 3), NotDifferentiable),
        (OSequence((1, 3, 3), 3), PlateauTooSmall),
        (OSequence((1, 4, 4), 4), NotDifferentiable),
        (OSequence((1, 3, 6, 9, 11, 11)), TailNotAdmissible),
        (OSequence((1, 3, 6, 9, 11, 11, 11, 11)), TailNotAdmissible),
        (OSequence((1, 3, 6, 9, 11, 11, 11, 10, 11)), TailNotAdmissible),
        (OSequence((1, 3, 6, 9, 12, 12, 12, 11)), TailNotAdmissible),
        (OSequence((1, 3, 6, 12, 12, 12), 12), NotDifferentiable),
    ],
)
def test_admissibility_errors(h, err):
    with pytest.raises(err):
        analyze(h)


def test_tail_cap_parity():
    # odd d allows b_{s+2} = d - 1, even d only d - 2
    analyze(OSequence((1, 3, 6, 9, 11, 11, 11, 10)))
    analyze(OSequence((1, 3, 6, 9, 12, 12, 12, 10)))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=200, deadline=None)
def test_claims_hold_for_admissible_curves(seed):
    curve = random_admissible_curve(np.random.default_rng(seed))
    inv, table = analyze(curve)
    assert table.claim1 and curve[2] == 6
    assert is_o_sequence(table.e_row)
    assert table.e_row.eventual == inv.d - 2 * inv.s
    assert inv.t <= inv.s - 1


def test_small_example_pair(pair52):
    inv = pair52.invariants
    assert (inv.d, inv.t, inv.s) == (11, 4, 5)
    assert len(pair52.z) == len(pair52.zprime) == 52
    assert pair52.hilbert_z == pair52.hilbert_zprime == OSequence((1, 4, 10, 19, 30, 41, 52), 52)
    assert not pair52.failed_checks()
    bz, bzp = pair52.betti_z, pair52.betti_zprime
    assert (bz[(1, 7)], bzp[(1, 7)], bz[(3, 7)], bzp[(3, 7)], bzp[(2, 7)]) == (11, 10, 0, 1, 0)


def test_small_example_components(pair52):
    tags = pair52.zprime.tags
    assert tags.count("lifted") == 7
    assert sum(t.startswith("line:") for t in tags) == 45
    assert {t for t in tags if t.startswith("line:")} <= {f"line:{k}" for k in range(10)}
    assert len(pair52.zprime_lines) == 10 and len(pair52.z_lines) == 11
    y = {tuple(r) for r in pair52.liaison.y_points.coords.tolist()}
    assert y <= {tuple(r) for r in pair52.zprime.coords.tolist()}
    assert pair52.liaison.j_prime == lex_ideal(OSequence((1, 2, 2, 1, 1)), 3)


def test_small_example_wlp(pair52):
    assert pair52.wlp_z.holds
    assert pair52.wlp_zprime.failures == [4]
    assert pair52.wlp_zprime.degrees[4] == (11, 11, 10)


def test_small_example_liaison_presentation(pair52):
    checks = pair52.checks
    assert checks["liaison_hilbert_table"]["observed"] == [1, 3, 6, 9, 11, 11, 11, 10]
    assert checks["liaison_generators_in_degree_s_plus_2"]["observed"] == 0
    assert checks["regular_sequence_certificate"]["ok"]


def test_even_plateau():
    pair = build_witness_pair(OSequence((1, 3, 6, 9, 12, 12, 12)))
    assert not pair.failed_checks()
    assert pair.checks["socle_in_degree_s_minus_3"]["ok"]
    assert pair.checks["liaison_generators_in_degree_s_plus_2"]["observed"] == 1
    assert pair.checks["j_prime_generators_in_degree_s"]["observed"] == 2


def test_degenerate_q_is_retried():
    # x1 vanishes on every lifted point of Y', so the first two draws must be rejected
    rng = np.random.default_rng(99)
    draws = itertools.chain([(0, 1, 0, 0), (0, 1, 0, 0)], (tuple(int(x) for x in rng.integers(0, 32003, 4)) for _ in itertools.count()))
    pair = build_witness_pair(SMALL, form_source=lambda: next(draws))
    assert pair.liaison.attempts == 2
    assert pair.hilbert_zprime == target_hilbert(SMALL)
    assert not pair.failed_checks()


def test_regular_sequence_exhaustion():
    with pytest.raises(RegularSequenceRetryExhausted):
        build_witness_pair(SMALL, form_source=lambda: (0, 1, 0, 0))


def test_build_z_requires_stable_target():
    inv, table = analyze(SMALL)
    with pytest.raises(ValueError):
        build_z(inv, table, OSequence((1, 4, 10)))


def test_line_unions_are_acm_prefixwise():
    c = distract_lines(lex_ideal(OSequence((1, 2, 3, 3, 2)), 2))
    h = line_union_hilbert(c, 7, np.random.default_rng(0), 32003)
    assert [h[j] - h[j - 1] for j in range(8)] == [1, 3, 6, 9, 11, 11, 11, 11]
    f = lift_factors((0, 2, 0))
    v = grid_lines(f, [(1, 2, 3, 4), (5, 6, 7, 8)])
    hv = line_union_hilbert(v, 4, np.random.default_rng(0), 32003)
    assert [hv[j] - hv[j - 1] for j in range(5)] == [1, 3, 4, 4, 4]


def test_determinism():
    a = build_witness_pair(SMALL, WitnessConfig(seed=3)).to_json()
    b = build_witness_pair(SMALL, WitnessConfig(seed=3)).to_json()
    assert a == b


def test_seed_changes_points_not_diagrams(pair52):
    other = build_witness_pair(SMALL, WitnessConfig(seed=1))
    assert other.z.to_json() != pair52.z.to_json()
    assert other.betti_z == pair52.betti_z and other.betti_zprime == pair52.betti_zprime


def test_random_truncated_inputs():
    rng = np.random.default_rng(2024)
    for _ in range(6):
        delta = random_truncated(rng, max_d=16)
        pair = build_witness_pair(delta)
        assert not pair.failed_checks(), delta
        assert pair.incomparability.strongly_incomparable


def test_lifted_betti_cross_oracle(pair52):
    assert point_betti(pair52.liaison.y_points) == ek_betti(pair52.liaison.j_prime)
