"""Command-line surface: dispatch, exit codes and report output."""

from pathlib import Path

import orjson
import pytest

from lawbench.lawcheck import LawId, Status
from lawbench.main import main, run
from lawbench.syntax import parse_value

CATALOG = str(Path(__file__).parent.parent / "data" / "catalog.json")
SPEC = ["--spec", CATALOG]


def test_laws_pass():
    """The list monad passes its five laws from the command line."""
    result = run(["laws", *SPEC, "--monad", "list", "--bounds", "maxCases=5000"])
    assert [r.status for r in result.reports] == [Status.PASS] * 5
    assert result.exit_code == 0


def test_failing_law_exits_one(capsys):
    """A FAIL where PASS is expected exits 1 after printing the report."""
    code = main(["strength", *SPEC, "--monad", "list+", "--strength", "comprehension"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL    GAMMA_B" in out
    assert out.startswith("bounds: ")


def test_machine_format(capsys):
    """Machine output is one JSON record per law."""
    code = main(["commutative", *SPEC, "--monad", "powerset", "--format", "machine"])
    records = [orjson.loads(line) for line in capsys.readouterr().out.splitlines()]
    assert code == 0
    assert records[0]["lawId"] == "COMMUTATIVE"
    assert records[0]["status"] == "PASS"


def test_nothing_to_check(capsys):
    """repro without an example is a usage error."""
    assert main(["repro"]) == 2
    assert "error: nothing to check" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        ["laws", *SPEC, "--monad", "nope"],
        ["laws", "--spec", "does/not/exist.json", "--monad", "list"],
        ["laws", *SPEC, "--monad", "list", "--bounds", "maxListLen=-1"],
        ["laws", *SPEC, "--monad", "list", "--bounds", "maxListLen"],
        ["laws", *SPEC, "--monad", "list", "--workers", "0"],
        ["laws", *SPEC, "--monad", "list", "--over", "Nope"],
        [
            "strength", *SPEC, "--monad", "powerset",
            "--strength", "powerset_product3", "--over", "Bit,Bit",
        ],
        ["repro", "--example", "no-such-example"],
        ["catalog", "--log-level", "loud"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    """Bad names, bounds, universes and log levels exit 2 with an error line."""
    assert main(argv) == 2
    assert capsys.readouterr().err.startswith("error: ")


def test_unknown_subcommand():
    """argparse rejects an unknown subcommand."""
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_over_picks_the_universe():
    """--over replaces the spec's default universes."""
    result = run(["commutative", *SPEC, "--monad", "list", "--over", "One"])
    assert result.reports[0].status == Status.PASS


def test_strength_order_three():
    """An order-3 strength is checked over three universes."""
    result = run(["strength", *SPEC, "--monad", "powerset", "--strength", "powerset_product3"])
    assert [r.status for r in result.reports] == [Status.PASS] * 3


def test_strength_assoc_and_reconstruct():
    """--assoc and --reconstruct add their laws to the strength checks."""
    argv = ["strength", *SPEC, "--monad", "list+", "--strength", "comprehension"]
    result = run([*argv, "--assoc", "--reconstruct", "--bounds", "maxCases=20000"])
    laws = [r.law for r in result.reports]
    assert laws[3:] == [LawId.GAMMA_ASSOC, LawId.RECONSTRUCT, LawId.RECONSTRUCT]
    assert result.reports[3].status == Status.PASS


def test_audit():
    """The audit ends with its verdict report."""
    result = run(["audit", *SPEC, "--monad", "powerset"])
    assert result.reports[-1].law == LawId.EQUIVALENCE
    assert result.reports[-1].status == Status.PASS
    assert len(result.reports) == 8


def test_distlaw_over_trees():
    """The derived law for V over powerset passes at the default bounds."""
    result = run(["distlaw", *SPEC, "--outer", "V", "--inner", "powerset"])
    assert [r.status for r in result.reports] == [Status.PASS] * 5


def test_compose_laws():
    """compose --laws adds the monad laws of KH and the bind agreement."""
    result = run(["compose", *SPEC, "--outer", "V", "--inner", "reader", "--laws"])
    assert [r.law for r in result.reports][-1] == LawId.COMPOSITE_BIND
    assert [r.status for r in result.reports] == [Status.PASS] * 11
    assert result.exit_code == 0


def test_compose_eval(tmp_path):
    """Steps from a term file evaluate in the composite monad."""
    steps = {
        "steps": [
            {"op": "unit", "value": "1"},
            {
                "op": "bind",
                "value": "Just [2,4,6]",
                "f": "fn{2 -> Just [2,4], 4 -> Just [4,8], 6 -> Just [6,12]}",
                "label": "bound",
            },
        ]
    }
    termfile = tmp_path / "terms.json"
    termfile.write_bytes(orjson.dumps(steps))
    result = run(["compose", *SPEC, "--outer", "list", "--inner", "maybe", "--eval", str(termfile)])
    assert result.values == [
        ("unit 1", parse_value("Just [1]")),
        ("bound", parse_value("Just [2,4,4,8,6,12]")),
    ]
    assert result.exit_code == 0


def test_compose_refuses_unverified_law(capsys):
    """compose stops when the distributive law fails a check."""
    assert main(["compose", *SPEC, "--outer", "list", "--inner", "list"]) == 2
    assert "--unchecked" in capsys.readouterr().err
    result = run(["compose", *SPEC, "--outer", "list", "--inner", "list", "--unchecked"])
    assert result.exit_code == 1


def test_bad_term_file(tmp_path):
    """A bind step without a table is rejected."""
    termfile = tmp_path / "terms.json"
    termfile.write_bytes(orjson.dumps({"steps": [{"op": "bind", "value": "Just [1]"}]}))
    argv = ["compose", *SPEC, "--outer", "list", "--inner", "maybe", "--eval", str(termfile)]
    assert main(argv) == 2


def test_catalog():
    """The catalog lists monads, strengths and signatures."""
    result = run(["catalog", *SPEC])
    sections = {(section, name) for section, name, _ in result.entries}
    assert ("monad", "list") in sections
    assert ("strength", "state_snapback") in sections
    assert ("signature", "Sig") in sections
    assert result.exit_code == 0


def test_repro_runs_an_example():
    """repro runs a single named example."""
    result = run(["repro", "--example", "maybe-list-bind"])
    assert result.reproductions[0].matched
    assert result.exit_code == 0
