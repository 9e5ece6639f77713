"""Acceptance criteria, one test (or a small group) per criterion.

Every criterion records a PASS/FAIL line in ``RESULTS``; ``conftest.py``
prints them at the end of the run, and running this file directly prints
them too.  All comparisons are exact.
"""

from __future__ import annotations

import io
import json
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

from bettiwitness.betti import BettiDiagram, strongly_incomparable
from bettiwitness.cli import main
from bettiwitness.construction import NotOSequence, analyze
from bettiwitness.lifting import lift_points
from bettiwitness.monomial_ideal import ek_betti, lex_ideal
from bettiwitness.oseq import OSequence, binomial_expansion, is_o_sequence, macaulay_bound
from bettiwitness.scheme_engine import point_betti, point_hilbert_function

sys.path.insert(0, str(Path(__file__).parent))
from gen import random_admissible_curve  # noqa: E402

RESULTS: dict[str, tuple[bool, str]] = {}

SMALL = "1,3,6,9,11,11,11,0"
MEDIUM = "1,3,6,10,14,16,17,17,17,17,0"
TAIL_A = "1,3,6,9,11,11,11,9,6,3,1,0"
TAIL_B = "1,3,6,9,11,11,11,10,8,8,5,5,5,4,3,3,1,0"
SECOND_PRIME = 31991


def record(key: str, ok: bool, detail: str) -> bool:
    RESULTS[key] = (bool(ok), detail)
    return bool(ok)


class Runs:
    """Certificates produced through the CLI, cached per (h-vector, prime, seed)."""

    def __init__(self):
        self.dir = Path(tempfile.mkdtemp(prefix="acceptance-"))
        self.cache: dict[tuple[str, int, int], tuple[int, dict, bytes, float]] = {}

    def verify(self, hvector: str, prime: int = 32003, seed: int = 0, fresh: bool = False):
        key = (hvector, prime, seed)
        if key in self.cache and not fresh:
            return self.cache[key]
        path = self.dir / f"{len(self.cache)}-{time.monotonic_ns()}.json"
        start = time.perf_counter()
        code = main(["verify", "--hvector", hvector, "--prime", str(prime), "--seed", str(seed), "--json", str(path)], io.StringIO())
        elapsed = time.perf_counter() - start
        raw = path.read_bytes()
        result = (code, json.loads(raw), raw, elapsed)
        if not fresh:
            self.cache[key] = result
        return result


@pytest.fixture(scope="module")
def runs():
    return Runs()


def diagrams(cert: dict) -> tuple[BettiDiagram, BettiDiagram]:
    return BettiDiagram.from_json(cert["z"]["betti"]), BettiDiagram.from_json(cert["zprime"]["betti"])


def row_zeros(b: BettiDiagram, rows) -> bool:
    return all(b[(i, i + r)] == 0 for r in rows for i in range(1, 4))


# 1 ---------------------------------------------------------------------------


def test_criterion_1_macaulay_fixtures():
    expansion = str(binomial_expansion(76, 5))
    bound = macaulay_bound(76, 5)
    best = min(_timed(lambda: (binomial_expansion(76, 5), macaulay_bound(76, 5))) for _ in range(50))
    ok = expansion == "C(8,5)+C(6,4)+C(4,3)+C(2,2)" and bound == 111 and best < 1e-3
    record("1 Macaulay fixtures", ok, f"{expansion} ; bound {bound} ; {best * 1e6:.0f} us")
    assert ok


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


# 2 ---------------------------------------------------------------------------


def test_criterion_2_small_example(runs):
    code, cert, _, elapsed = runs.verify(SMALL)
    bz, bzp = diagrams(cert)
    hz = OSequence.from_json(cert["z"]["hilbert_function"])
    hzp = OSequence.from_json(cert["zprime"]["hilbert_function"])
    wlp_zp, wlp_z = cert["zprime"]["wlp"], cert["z"]["wlp"]
    deg4 = wlp_zp["degrees"][4]
    facts = {
        "exit 0": code == 0,
        "|Z|=|Z'|=52": len(cert["z"]["points"]) == len(cert["zprime"]["points"]) == 52,
        "HF": hz == hzp == OSequence((1, 4, 10, 19, 30, 41, 52), 52),
        "beta_1,7 11/10": (bz[(1, 7)], bzp[(1, 7)]) == (11, 10),
        "beta_3,7 0/1": (bz[(3, 7)], bzp[(3, 7)]) == (0, 1),
        "Z' row s zero": row_zeros(bzp, [5]),
        "Z rows t+1..s zero": row_zeros(bz, [5]),
        "verdict": cert["incomparability"]["verdict"] == "StronglyIncomparable",
        "Z' WLP fails exactly at 4": wlp_zp["failing_degrees"] == [4] and (deg4["dim_i"], deg4["dim_next"], deg4["rank"]) == (11, 11, 10),
        "Z WLP holds": wlp_z["verdict"] == "holds" and not wlp_z["failing_degrees"],
        "< 30 s": elapsed < 30,
    }
    bad = [k for k, v in facts.items() if not v]
    ok = record("2 52-point example end-to-end", not bad, f"{elapsed:.2f}s" + (f" ; failed: {bad}" if bad else ""))
    assert ok, bad


# 3 ---------------------------------------------------------------------------


def test_criterion_3_medium_example(runs):
    code, cert, _, elapsed = runs.verify(MEDIUM)
    bz, bzp = diagrams(cert)
    inv = cert["invariants"]
    facts = {
        "118 points": len(cert["z"]["points"]) == len(cert["zprime"]["points"]) == 118,
        "d,t,s = 17,6,8": (inv["d"], inv["t"], inv["s"]) == (17, 6, 8),
        "beta_1,10 17/16": (bz[(1, 10)], bzp[(1, 10)]) == (17, 16),
        "beta_3,10 0/1": (bz[(3, 10)], bzp[(3, 10)]) == (0, 1),
        "verdict": cert["incomparability"]["verdict"] == "StronglyIncomparable",
        "all checks pass (exit 0)": code == 0,
        "< 60 s": elapsed < 60,
    }
    bad = [k for k, v in facts.items() if not v]
    ok = record("3 118-point example end-to-end", not bad, f"{elapsed:.2f}s ; Z' WLP fails at {cert['zprime']['wlp']['failing_degrees']}" + (f" ; failed: {bad}" if bad else ""))
    assert ok, bad


# 4 ---------------------------------------------------------------------------


@pytest.mark.parametrize("label, hvector, first_tail", [("a", TAIL_A, 9), ("b", TAIL_B, 10)])
def test_criterion_4_tails(runs, label, hvector, first_tail):
    code, cert, _, elapsed = runs.verify(hvector)
    bz, bzp = diagrams(cert)
    d, s = 11, 5
    facts = {
        "exit 0": code == 0,
        "generator counts": (bz[(1, s + 2)], bzp[(1, s + 2)]) == (d - first_tail, d - 1 - first_tail),
        "verdict": cert["incomparability"]["verdict"] == "StronglyIncomparable",
        "< 60 s": elapsed < 60,
    }
    bad = [k for k, v in facts.items() if not v]
    ok = record(f"4{label} tail {hvector}", not bad, f"{elapsed:.2f}s ; beta_1,7 {bz[(1, 7)]} vs {bzp[(1, 7)]}" + (f" ; failed: {bad}" if bad else ""))
    assert ok, bad


# 5 ---------------------------------------------------------------------------


def random_e_primes(n: int = 20, seed: int = 5) -> list[OSequence]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        _, table = analyze(random_admissible_curve(rng, max_d=30))
        out.append(table.e_prime)
    return out


def test_criterion_5_lifting_cross_oracle():
    worst = 0.0
    bad = []
    for e in random_e_primes():
        start = time.perf_counter()
        ideal = lex_ideal(e, 3)
        same = point_betti(lift_points(ideal)) == ek_betti(ideal)
        elapsed = time.perf_counter() - start
        worst = max(worst, elapsed)
        if not same or elapsed >= 5:
            bad.append(str(e))
    ok = record("5 lifting cross-oracle (20 cases)", not bad, f"slowest {worst:.2f}s" + (f" ; failed: {bad}" if bad else ""))
    assert ok


# 6 ---------------------------------------------------------------------------


def test_criterion_6_alternating_sums(runs):
    checked = 0
    bad = []
    for hv in (SMALL, MEDIUM, TAIL_A, TAIL_B):
        _, cert, _, _ = runs.verify(hv)
        for side in ("z", "zprime"):
            b = BettiDiagram.from_json(cert[side]["betti"])
            h = OSequence.from_json(cert[side]["hilbert_function"])
            checked += 1
            if not b.satisfies_hilbert_identity(h, 4):
                bad.append(f"{hv}/{side}")
    for e in random_e_primes():
        pts = lift_points(lex_ideal(e, 3))
        checked += 1
        if not point_betti(pts).satisfies_hilbert_identity(point_hilbert_function(pts), 4):
            bad.append(str(e))
    ok = record("6 alternating-sum identity", not bad, f"{checked} diagrams" + (f" ; failed: {bad}" if bad else ""))
    assert ok


# 7 ---------------------------------------------------------------------------

WIDE = OSequence((1, 3, 6, 10, 15, 19, 23, 26, 27, 28, 29), 29)
PRINTED_WITNESS_ROW = [1, 1, 1, 1, 0, 1, 1, 1]


def test_criterion_7_claims_on_generated_inputs():
    rng = np.random.default_rng(77)
    failures = []
    n = 0
    while n < 250:
        curve = random_admissible_curve(rng)
        n += 1
        _, table = analyze(curve)
        if not (table.claim1 and curve[2] == 6 and is_o_sequence(table.e_row)):
            failures.append(str(curve))
    ok = record("7a claims 1-2 on 250 generated inputs", not failures, f"{n} inputs" + (f" ; failed: {failures[:3]}" if failures else ""))
    assert ok


def test_criterion_7_override_47_rejected():
    with pytest.raises(NotOSequence) as exc:
        analyze(WIDE, (4, 7))
    row = exc.value.row
    # independent oracle: subtract the two printed rows entrywise from degree 4
    dh = [1, 3, 6, 10, 15, 19, 23, 26, 27, 28, 29, 29, 29]
    dci = [1, 3, 6, 10, 14, 18, 22, 25, 27, 28, 28, 28, 28]
    expected = [a - b for a, b in zip(dh[4:], dci[4:])]
    ok = record("7b (4,7) override rejected with e-row witness", row[: len(expected)] == expected and not is_o_sequence(row), f"row {row[:len(expected)]}, violation index {exc.value.degree}")
    assert ok


@pytest.mark.xfail(strict=True, reason="the printed witness row has 1 in degree 9 where its own rows give 28 - 28 = 0")
def test_criterion_7_override_47_printed_row():
    with pytest.raises(NotOSequence) as exc:
        analyze(WIDE, (4, 7))
    row = exc.value.row[: len(PRINTED_WITNESS_ROW)]
    record("7c witness row equals printed (1,1,1,1,0,1,1,1)", row == PRINTED_WITNESS_ROW, f"computed {row}")
    assert row == PRINTED_WITNESS_ROW


# 8 ---------------------------------------------------------------------------


def _column_descendants(col: list[int]) -> set[tuple[int, ...]]:
    out = set()
    bound = max(col)
    for c0 in range(bound + 1):
        for c1 in range(bound + 1):
            for c2 in range(bound + 1):
                v = (col[0] - c0, col[1] - c0 - c1, col[2] - c1 - c2, col[3] - c2)
                if min(v) >= 0:
                    out.add(v)
    return out


def _exhaustive_common(a: BettiDiagram, b: BettiDiagram) -> bool:
    # degrees cancel independently, so the descendant set is a product over degrees
    return all(_column_descendants(a.column(j)) & _column_descendants(b.column(j)) for j in set(a.degrees()) | set(b.degrees()))


def _random_pair(rng) -> tuple[BettiDiagram, BettiDiagram]:
    window = int(rng.integers(1, 6))
    entries = {(i, j): int(rng.integers(0, 4)) for j in range(1, window + 1) for i in range(4)}
    other = dict(entries)
    for _ in range(int(rng.integers(1, 6))):
        i, j = int(rng.integers(0, 3)), int(rng.integers(1, window + 1))
        step = 1 if rng.random() < 0.5 else -1
        if step < 0 and min(other[(i, j)], other[(i + 1, j)]) == 0:
            continue
        if step > 0 and max(other[(i, j)], other[(i + 1, j)]) == 3:
            continue
        other[(i, j)] += step
        other[(i + 1, j)] += step
    return BettiDiagram(entries), BettiDiagram(other)


def test_criterion_8_cancellation_oracle():
    rng = np.random.default_rng(8)
    start = time.perf_counter()
    disagreements = 0
    counts = {"StronglyIncomparable": 0, "CommonDescendantExists": 0}
    for _ in range(500):
        a, b = _random_pair(rng)
        v = strongly_incomparable(a, b)
        counts[v.verdict] += 1
        if v.strongly_incomparable == _exhaustive_common(a, b):
            disagreements += 1
    elapsed = time.perf_counter() - start
    ok = record("8 cancellation oracle (500 pairs)", disagreements == 0 and elapsed < 10, f"{elapsed:.2f}s ; verdicts {counts}")
    assert ok


# 9 ---------------------------------------------------------------------------


@pytest.mark.parametrize("hvector", [SMALL, MEDIUM, TAIL_A, TAIL_B])
def test_criterion_9_second_prime(runs, hvector):
    _, first, _, _ = runs.verify(hvector)
    code, second, _, _ = runs.verify(hvector, prime=SECOND_PRIME)
    same = diagrams(first) == diagrams(second)
    ok = record(f"9 second prime {SECOND_PRIME}: {hvector}", same and code == 0, "identical diagrams" if same else "characteristic flag: diagrams differ")
    assert ok


# 10 --------------------------------------------------------------------------


@pytest.mark.parametrize("hvector", [SMALL, MEDIUM, TAIL_A, TAIL_B])
def test_criterion_10_determinism(runs, hvector):
    _, _, raw, _ = runs.verify(hvector)
    _, _, again, _ = runs.verify(hvector, fresh=True)
    ok = record(f"10 byte-identical certificate: {hvector}", raw == again, f"{len(raw)} bytes")
    assert ok


def format_results() -> list[str]:
    return [f"{'PASS' if ok else 'FAIL'}  {key}  ({detail})" for key, (ok, detail) in RESULTS.items()]


if __name__ == "__main__":
    code = pytest.main([__file__, "-q"])
    print("\n".join(format_results()))
    sys.exit(code)
