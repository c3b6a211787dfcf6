import json
from fractions import Fraction

import pytest
import yaml

import cli.repro as cli_repro
from cli.io import load_cone, load_tensor
from cli.main import EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK, build_parser, run
from cli.repro import CRITERIA, list_criteria, random_max_member, random_min_member, run_repro
from cones.library import SQUARE, cone_over_polytope
from cones.models import LorentzCone, PsdCone
from dim3lab import H_INV
from gptnorms import SymmetricGpt, diamond_space, hexagon_space, square_space
from tensorcone import TensorElement, max_membership, min_membership
from utils.config import get_toolkit_config_defaults, load_toolkit_config
from utils.exceptions import ConfigurationError, SchemaError

F = Fraction


@pytest.fixture
def small_config(tmp_path):
    """Config file with reduced sample and instance counts."""
    config = get_toolkit_config_defaults()
    config['sampling']['psd_samples'] = 50
    config['sampling']['retract_samples'] = 40
    config['repro'].update({'omega_instances': 25, 'polygon_pairs': 2, 'easy_direction_cones': 3,
                            'norm_instances': 6, 'monotonicity_instances': 4})
    path = tmp_path / "toolkit_config.yaml"
    path.write_text(yaml.safe_dump(config), encoding="utf-8")
    return str(path)


@pytest.fixture
def report(tmp_path):
    """Path for the JSON report and a reader for it."""
    path = tmp_path / "report.json"

    class Report:
        out = str(path)

        @staticmethod
        def load():
            return json.loads(path.read_text(encoding="utf-8"))
    return Report


@pytest.fixture
def cone_docs(write_doc, square, cube):
    return {
        "square": write_doc("square.json", square.to_dict()),
        "cube": write_doc("cube.json", cube.to_dict()),
        "classical": write_doc("classical.json", {"kind": "classical", "n": 3}),
        "disk": write_doc("disk.json", LorentzCone(n=2).to_dict()),
        "qubit": write_doc("qubit.json", PsdCone(n=2).to_dict()),
    }


@pytest.mark.cli
class TestParser:
    def test_certify_out_does_not_clash_with_report_out(self):
        args = build_parser().parse_args(["--out", "r.json", "certify", "--a", "x", "--b", "y", "--out", "c.json"])
        assert args.out == "r.json"
        assert args.cert_out == "c.json"

    def test_repro_only_is_repeatable(self):
        args = build_parser().parse_args(["repro", "--only", "clifford", "--only", "asphericity"])
        assert args.only == ["clifford", "asphericity"]

    def test_command_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


@pytest.mark.cli
class TestCertifyAndVerify:
    """certify / verify exit codes and documents."""

    def test_square_pair(self, cone_docs, report, tmp_path):
        cert_path = str(tmp_path / "cert.json")
        code = run(["--out", report.out, "certify", "--a", cone_docs["square"], "--b", cone_docs["square"],
                    "--out", cert_path])
        assert code == EXIT_OK
        doc = report.load()
        assert doc["exit_code"] == EXIT_OK
        assert doc["result"]["certificate"]["separation_value"] == "-1/1"
        assert (tmp_path / "report.txt").exists()

        code = run(["verify", "--cert", cert_path, "--a", cone_docs["square"], "--b", cone_docs["square"]])
        assert code == EXIT_OK

    def test_tampered_certificate(self, cone_docs, tmp_path, write_doc):
        cert_path = str(tmp_path / "cert.json")
        run(["certify", "--a", cone_docs["square"], "--b", cone_docs["square"], "--out", cert_path])
        cert = json.loads((tmp_path / "cert.json").read_text(encoding="utf-8"))
        cert["separation_value"] = "-7/1"
        forged = write_doc("forged.json", cert)
        assert run(["verify", "--cert", forged, "--a", cone_docs["square"], "--b", cone_docs["square"]]) \
            == EXIT_NEGATIVE

    def test_classical_input(self, cone_docs, report):
        code = run(["--out", report.out, "certify", "--a", cone_docs["square"], "--b", cone_docs["classical"]])
        assert code == EXIT_NEGATIVE
        result = report.load()["result"]
        assert result["reason"] == "second cone is classical"
        assert len(result["basis"]) == 3

    def test_higher_dimensional_pair(self, cone_docs, report):
        code = run(["--out", report.out, "certify", "--a", cone_docs["cube"], "--b", cone_docs["square"]])
        assert code == EXIT_OK
        chain = report.load()["result"]["certificate"]["proof_chain"]
        assert any(step["step"] == "descent" for step in chain)

    def test_semiquantum_pair(self, cone_docs, report, small_config):
        code = run(["--config", small_config, "--out", report.out, "certify", "--a", cone_docs["square"],
                    "--b", cone_docs["qubit"]])
        assert code == EXIT_OK
        chain = report.load()["result"]["certificate"]["proof_chain"]
        assert chain[-1]["step"] == "rank_one_spot_check"

    def test_lorentz_needs_a_frame(self, cone_docs, write_doc, report):
        assert run(["certify", "--a", cone_docs["square"], "--b", cone_docs["disk"]]) == EXIT_ERROR
        frame = write_doc("frame.json", [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        code = run(["--out", report.out, "certify", "--a", cone_docs["square"], "--b", cone_docs["disk"],
                    "--frame", frame, "--r", "3/2"])
        assert code == EXIT_OK
        assert report.load()["result"]["certificate"]["separation_value"] == "-1/2"

    def test_schema_error(self, write_doc, cone_docs, report):
        bad = write_doc("bad.json", {"kind": "polygon", "vertices": [[1, 2]]})
        code = run(["--out", report.out, "certify", "--a", bad, "--b", cone_docs["square"]])
        assert code == EXIT_ERROR
        assert report.load()["result"]["error"] == "SchemaError"

    def test_missing_file(self, cone_docs, tmp_path):
        missing = str(tmp_path / "nope.json")
        assert run(["certify", "--a", missing, "--b", cone_docs["square"]]) == EXIT_ERROR

    def test_unexpected_failure_is_reported(self, cone_docs, report, mocker):
        mocker.patch("cli.main.entangle_3d", side_effect=RuntimeError("boom"))
        code = run(["--out", report.out, "certify", "--a", cone_docs["square"], "--b", cone_docs["square"]])
        assert code == EXIT_ERROR
        assert report.load()["result"] == {"error": "RuntimeError", "message": "boom"}


@pytest.mark.cli
class TestAnalysisCommands:
    """cone-info, dual, tensor-analyze, norms and robustness."""

    def test_cone_info(self, cone_docs, report):
        assert run(["--out", report.out, "cone-info", cone_docs["cube"]]) == EXIT_OK
        summary = report.load()["summary"]
        assert summary["extreme rays"] == 8
        assert summary["facets"] == 6
        assert summary["classical"] is False

    def test_dual_round_trip(self, cone_docs, tmp_path):
        dual_path = str(tmp_path / "dual.json")
        assert run(["dual", cone_docs["square"], "--write", dual_path]) == EXIT_OK
        assert load_cone(dual_path).dim == 3

    def test_tensor_analyze_diamond_witness(self, write_doc, report, diamond):
        d = write_doc("diamond.json", diamond.to_dict())
        t = write_doc("witness.json", TensorElement(H_INV).to_dict())
        assert run(["--out", report.out, "tensor-analyze", "--a", d, "--b", d, "--tensor", t]) == EXIT_OK
        result = report.load()["result"]
        assert result["max"]["member"] is True
        assert result["min"]["inside"] is False
        assert F(result["min"]["value"]) == -1

    def test_norms(self, write_doc, report):
        space = write_doc("square_ball.json", {"kind": "polytope", "vertices": [[1, 1], [-1, 1], [-1, -1], [1, -1]]})
        t = write_doc("chsh.json", [[1, 1], [1, -1]])
        assert run(["--out", report.out, "norms", "--space-x", space, "--space-y", space, "--tensor", t]) == EXIT_OK
        result = report.load()["result"]
        assert result["injective"] == "1/1"
        assert result["projective"]["value"] == "2/1"
        assert "ratio_lower_bound" in result["reference_constants"]

    def test_robustness(self, write_doc, report):
        gpt = {"cone": cone_over_polytope(SQUARE).to_dict(), "unit": ["0/1", "0/1", "1/1"]}
        state = write_doc("state.json", {"a": gpt, "b": gpt, "state": [[1, 1, 0], [1, -1, 0], [0, 0, 1]]})
        assert run(["--out", report.out, "robustness", "--state", state]) == EXIT_OK
        assert F(report.load()["result"]["value"]) >= F(1, 2)


@pytest.mark.cli
class TestRepro:
    """The reproduction suite through run() and run_repro()."""

    def test_list(self, report):
        assert run(["--out", report.out, "repro", "--list"]) == EXIT_OK
        names = [c["name"] for c in report.load()["result"]["criteria"]]
        assert names == list(CRITERIA)
        assert len(list_criteria()) == 12

    def test_single_criterion(self, small_config, report):
        code = run(["--config", small_config, "--out", report.out, "repro", "--only", "omega-identity"])
        assert code == EXIT_OK
        assert report.load()["result"]["passed"] == 1

    def test_unknown_criterion(self, small_config, capsys):
        assert run(["--config", small_config, "repro", "--only", "no-such-check"]) == EXIT_ERROR
        assert "no-such-check" in capsys.readouterr().out

    def test_broken_constant_fails_only_its_criterion(self):
        config = get_toolkit_config_defaults()
        config['repro']['omega_instances'] = 25
        results = run_repro(config, only=["omega-identity", "asphericity"], overrides={"omega_factor": 3})
        assert not results.ok
        assert [r["passed"] for r in results] == [False, True]
        frame = results.to_frame()
        assert list(frame.columns) == ["name", "passed", "measured", "seconds", "error"]
        assert "[FAIL] omega-identity" in results.summary_text()

    def test_criterion_exception_is_recorded(self, mocker):
        mocker.patch.dict(CRITERIA, {"asphericity": ("raises", mocker.Mock(side_effect=ValueError("bad")))})
        results = run_repro(only=["asphericity"])
        assert results.failed == 1
        assert results.results[0]["error"] == "bad"

    def test_descent_without_a_dual_step_fails(self, mocker):
        primal_only = mocker.Mock(proof_chain=[{"step": "descent", "first": [{"kind": "facet_retract"}], "second": []}])
        mocker.patch("cli.repro.certify_entangleable_polyhedral", return_value=primal_only)
        mocker.patch("cli.repro.verify_certificate", return_value=True)
        results = run_repro(only=["polyhedral-descent"])
        assert not results.ok
        assert "0 dual step" in results.results[0]["measured"]

    @pytest.mark.parametrize("space", [square_space(), diamond_space(), hexagon_space()])
    def test_sampled_product_members(self, space, rng):
        s = SymmetricGpt.from_space(space)
        cone = s.gpt.cone
        for _ in range(5):
            assert min_membership(cone, cone, random_min_member(rng, cone)).inside
            assert max_membership(cone, cone, random_max_member(rng, cone, s.centre)).member

    def test_norm_duality_runs_every_ball_shape(self, mocker):
        config = get_toolkit_config_defaults()
        config['repro']['norm_instances'] = 4
        spy = mocker.spy(cli_repro, "random_max_member")
        results = run_repro(config, only=["norm-duality"])
        assert results.ok, results.results
        assert spy.call_count == 12

    def test_norm_implications_catch_a_wrong_unit_value(self, mocker):
        config = get_toolkit_config_defaults()
        config['repro']['norm_instances'] = 3
        mocker.patch("cli.repro.unit_value", return_value=Fraction(-1))
        results = run_repro(config, only=["norm-duality"])
        assert not results.ok
        assert "(a)" in results.results[0]["measured"] or "(b)" in results.results[0]["measured"]


@pytest.mark.cli
class TestConfigAndDocuments:
    def test_missing_config_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_toolkit_config(str(tmp_path / "absent.yaml"))
        assert run(["--config", str(tmp_path / "absent.yaml"), "repro", "--list"]) == EXIT_ERROR

    def test_invalid_tolerance(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text(yaml.safe_dump({"numerics": {"float_tol": 2}}), encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_toolkit_config(str(path))

    def test_env_seed(self, monkeypatch):
        monkeypatch.setenv("CONETOOLKIT_SEED", "7")
        assert load_toolkit_config()['sampling']['seed'] == 7
        monkeypatch.setenv("CONETOOLKIT_SEED", "seven")
        with pytest.raises(ConfigurationError):
            load_toolkit_config()

    def test_tensor_as_bare_list(self, write_doc):
        assert load_tensor(write_doc("t.json", [["1/2", 0], [0, 1]])).matrix[0][0] == F(1, 2)

    def test_ragged_tensor(self, write_doc):
        with pytest.raises(SchemaError):
            load_tensor(write_doc("t.json", [[1, 2], [3]]))

    def test_dimension_cap(self, tmp_path, cone_docs, report):
        config = get_toolkit_config_defaults()
        config['caps']['max_dim'] = 3
        path = tmp_path / "capped.yaml"
        path.write_text(yaml.safe_dump(config), encoding="utf-8")
        code = run(["--config", str(path), "--out", report.out, "cone-info", cone_docs["cube"]])
        assert code == EXIT_ERROR
        assert report.load()["result"]["error"] == "CapExceededError"
        assert run(["--config", str(path), "cone-info", cone_docs["square"]]) == EXIT_OK

    def test_relative_report_goes_to_report_dir(self, tmp_path, cone_docs):
        config = get_toolkit_config_defaults()
        config['output']['report_dir'] = str(tmp_path / "reports")
        path = tmp_path / "toolkit.yaml"
        path.write_text(yaml.safe_dump(config), encoding="utf-8")
        assert run(["--config", str(path), "--out", "info.json", "cone-info", cone_docs["square"]]) == EXIT_OK
        assert (tmp_path / "reports" / "info.json").exists()
        assert (tmp_path / "reports" / "info.txt").exists()
