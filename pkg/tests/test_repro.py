"""Named reproductions of the known positive and negative results."""

import pytest

from lawbench.commands.repro import REQUIRED_EXAMPLES, examples
from lawbench.errors import UsageError
from lawbench.lawcheck import LawId, Status
from lawbench.schemas import Bounds

bounds = Bounds()


def test_registry_has_every_example():
    """Every required example is registered, and nothing else."""
    assert set(examples.examples) == set(REQUIRED_EXAMPLES)


@pytest.mark.parametrize("name", REQUIRED_EXAMPLES)
def test_example_matches(name):
    """Every verdict and value check of the example comes out as recorded."""
    repro = examples.run(name, bounds)
    assert repro.matched, [r for r in repro.reports if not r.matched]


def test_negative_results_report_fail():
    """Negative examples carry a witness for every failing law."""
    repro = examples.run("comprehension-gammaB", bounds)
    assert any(r.status == Status.FAIL and r.matched for r in repro.reports)
    assert all(r.witness is not None for r in repro.reports if r.status == Status.FAIL)


def test_unknown_example():
    """An unregistered name is a usage error."""
    with pytest.raises(UsageError, match="unknown example"):
        examples.run("no-such-example", bounds)


def test_composite_reproductions_check_both_bind_paths():
    """Each composite example runs the monad laws and the bind agreement over Bit."""
    for name in ["maybe-list-bind", "powerset-tree-distlaw", "writer-tree-bind"]:
        repro = examples.run(name, bounds)
        bind_reports = [r for r in repro.reports if r.law == LawId.COMPOSITE_BIND]
        assert [r.status for r in bind_reports] == [Status.PASS]
        assert bind_reports[0].bounds == bounds.nested()
