"""Golden counterexample for the snapback strength on state, cross-checked by a plain oracle."""

import itertools
from pathlib import Path

import orjson

from lawbench.lawcheck import check_gamma_B
from lawbench.monads import StateMonad
from lawbench.report import to_record
from lawbench.schemas import Bounds
from lawbench.strength import builtin_strength
from lawbench.values import Universe

GOLDEN = Path(__file__).parent / "golden" / "state_snapback_gamma_b.json"
BIT = Universe.of("Bit", [0, 1])
STATES = (0, 1)
bounds = Bounds(maxCases=1 << 20)


# Oracle: a state value is a dict s -> (result, next state), pairs are tuples.
def states_over(results):
    outcomes = [(x, s) for x in results for s in STATES]
    return [dict(zip(STATES, choice)) for choice in itertools.product(outcomes, repeat=2)]


def join(mm):
    return {s: mm[s][0][mm[s][1]] for s in STATES}


def fmap(fn, m):
    return {s: (fn(x), s2) for s, (x, s2) in m.items()}


def snapback(m1, m2):
    return {s: ((m1[s][0], m2[s][0]), s) for s in STATES}


def fmt(v):
    if isinstance(v, dict):
        return "fn{" + ", ".join(f"{s} -> {fmt(v[s])}" for s in STATES) + "}"
    if isinstance(v, tuple):
        return f"({fmt(v[0])}, {fmt(v[1])})"
    return str(v)


def oracle_first_failure():
    nested = states_over(states_over([0, 1]))
    for index, (u1, u2) in enumerate(itertools.product(nested, repeat=2)):
        lhs = join(fmap(lambda p: snapback(*p), snapback(u1, u2)))
        rhs = snapback(join(u1), join(u2))
        if lhs != rhs:
            return index + 1, u1, u2, lhs, rhs
    return None


def golden():
    return orjson.loads(GOLDEN.read_bytes())


def engine_record():
    gamma = builtin_strength("state_snapback", StateMonad("state", BIT), 2)
    report = check_gamma_B(gamma, [BIT, BIT], bounds)
    return to_record(report).model_dump(
        include={"lawId", "subject", "status", "casesChecked", "mode", "witness"}
    )


def test_engine_matches_golden():
    """The engine's minimal ΓB witness is byte-for-byte the recorded one."""
    assert engine_record() == golden()


def test_oracle_matches_golden():
    """An independent dict-based scan finds the same first failure."""
    cases, u1, u2, lhs, rhs = oracle_first_failure()
    expected = golden()
    assert cases == expected["casesChecked"]
    assert [fmt(u1), fmt(u2)] == [item["value"] for item in expected["witness"]["inputs"]]
    assert fmt(lhs) == expected["witness"]["lhs"]
    assert fmt(rhs) == expected["witness"]["rhs"]
