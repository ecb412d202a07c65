"""The term language and the `ngd` command line: positions in errors,
round-trip printing, frozen evaluation values, and process exit codes."""

import json

import numpy as np
import pytest

from ngd import cli, dsl
from ngd.fixtures import parse_error_samples
from ngd.models import euclidean_model, heisenberg_model
from ngd.scales import dyadic_grid


# ---------------------------------------------------------------------------
# parsing


def test_tokens_carry_positions():
    toks = dsl.tokenize("delta(1/2,\n  (3, 0))")
    opens = [t for t in toks if t.kind == "lp"]
    assert opens[0].line == 1
    assert opens[1].line == 2 and opens[1].col == 3


def test_print_parse_print_is_idempotent():
    for src in [
        "Delta(0.1, (3, 0), (1, 0))",
        "lim(eps -> 0, Sigma(eps, (1, 0, 0), (0, 1, 0)))",
        "let(a, (3, 0), d(inv(1/2, a)))",
        "circ(1/4, (0, 0, 0), (1, 1, 0))",
    ]:
        once = dsl.to_text(dsl.parse(src))
        assert dsl.to_text(dsl.parse(once)) == once


def test_every_parse_error_fixture_points_at_the_right_spot():
    for src, line, col in parse_error_samples():
        with pytest.raises(dsl.TermError) as exc:
            dsl.parse(src)
        assert (exc.value.line, exc.value.col) == (line, col), src


def test_arity_errors_name_the_operation():
    with pytest.raises(dsl.TermError) as exc:
        dsl.parse("delta(1/2)")
    assert "delta" in str(exc.value)


def test_unknown_name_errors_at_the_name():
    with pytest.raises(dsl.TermError) as exc:
        dsl.parse("  frobnicate(1)")
    assert exc.value.col == 3


# ---------------------------------------------------------------------------
# evaluation


def euclid_ctx(**kw):
    return dsl.EvalContext(euclidean_model(dim=1), **kw)


def test_frozen_euclid_values():
    for src, want in [
        ("Delta(0.1, (3, 0), (1, 0))", "(2.1, 0)"),
        ("Sigma(0.1, (3, 0), (1, 0))", "(3.9, 0)"),
        ("inv(0.1, (2, 0))", "(-1.8, 0)"),
    ]:
        _, rendered, _ = dsl.run(src, euclid_ctx())
        assert rendered == want, src


def test_frozen_heisenberg_based_difference():
    ctx = dsl.EvalContext(heisenberg_model())
    _, rendered, _ = dsl.run("Delta(1/2, (1, 0, 0), (0, 1, 0))", ctx)
    assert rendered == "(-0.5, 1, -0.25)"


def test_lim_sweeps_and_extrapolates():
    value, rendered, ests = dsl.run(
        "lim(eps -> 0, Delta(eps, (3, 0), (1, 0)))", euclid_ctx()
    )
    assert rendered == "(2, 0)"
    assert len(ests) == 1 and ests[0].passed
    assert np.isclose(ests[0].order, 1.0, atol=0.05)


def test_let_binds_and_shadows():
    _, rendered, _ = dsl.run(
        "let(a, (2, 0), let(a, (3, 0), d(a)))", euclid_ctx()
    )
    assert rendered == "3"


def test_type_error_carries_the_node_position():
    # dim-3 model: a 2-tuple is neither a point nor an arrow
    ctx = dsl.EvalContext(heisenberg_model())
    with pytest.raises(dsl.TermError) as exc:
        dsl.run("d((1, 0))", ctx)
    assert exc.value.line == 1


def test_eps_grid_override():
    ctx = euclid_ctx(eps_grid=dyadic_grid(kmax=20))
    _, _, ests = dsl.run("lim(eps -> 0, Sigma(eps, (3, 0), (1, 0)))", ctx)
    # candidate-free residuals are successive differences: one per gap
    assert len(ests[0].eps) == 19


# ---------------------------------------------------------------------------
# the command line, driven in-process through main()


def run_cli(*argv):
    return cli.main(list(argv))


def test_cli_eval_ok(capsys):
    assert run_cli("eval", "Delta(0.1, (3, 0), (1, 0))") == 0
    assert capsys.readouterr().out.strip() == "(2.1, 0)"


def test_cli_eval_json(capsys):
    assert run_cli("eval", "d((3, 1))", "--json") == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["value"] == "2"


def test_cli_parse_error_is_exit_two(capsys):
    for src, line, col in parse_error_samples():
        assert run_cli("eval", src) == 2
        err = capsys.readouterr().err
        assert f"line {line}, col {col}" in err, src


def test_cli_validate_metric_space(tmp_path, capsys):
    f = tmp_path / "space.json"
    f.write_text(json.dumps({
        "points": ["a", "b"],
        "dist": [["0", "3/2"], ["3/2", "0"]],
    }))
    assert run_cli("validate", str(f)) == 0
    assert "PASS" in capsys.readouterr().out


def test_cli_validate_rejects_bad_metric(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({
        "points": [0, 1],
        "dist": [["0", "1"], ["2", "0"]],
    }))
    assert run_cli("validate", str(f)) == 1


def test_cli_validate_unknown_shape_is_exit_two(tmp_path):
    f = tmp_path / "what.json"
    f.write_text('{"surprise": true}')
    assert run_cli("validate", str(f)) == 2


def test_cli_transport_compose_mismatch_is_exit_one(tmp_path, capsys):
    f = tmp_path / "mismatch.json"
    f.write_text(json.dumps({
        "space": {"points": [0, 1], "dist": [["0", "1"], ["1", "0"]]},
        "gamma": [["1/2", "0"], ["0", "1/2"]],
        "gamma_prime": [["49/100", "0"], ["0", "51/100"]],
    }))
    assert run_cli("transport", str(f), "--action", "compose") == 1
    assert "index 0" in capsys.readouterr().err


def test_cli_transport_kantorovich(tmp_path, capsys):
    f = tmp_path / "measures.json"
    f.write_text(json.dumps({
        "space": {"points": [0, 1], "dist": [["0", "1"], ["1", "0"]]},
        "mu": ["1/2", "1/2"],
        "nu": ["1/4", "3/4"],
    }))
    assert run_cli("transport", str(f), "--action", "kantorovich",
                   "--json") == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["primal"] == "1/4" and blob["dual"] == "1/4"


def test_cli_report_planted_is_exit_one(capsys):
    assert run_cli("report", "--suite", "planted") == 1
    out = capsys.readouterr().out
    assert "FAIL" in out


def test_cli_report_transport_green(capsys):
    assert run_cli("report", "--suite", "transport") == 0
