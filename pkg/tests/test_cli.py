import json
import shutil
import subprocess
import sys
import tempfile

import pytest

from torsion_tori import cli
from torsion_tori.verify import FixtureNotFound, fixture_dir, run_verify_suite


def run(capsys, *argv):
    status = cli.main(list(argv))
    return status, json.loads(capsys.readouterr().out)


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_rho_of_zero_phases(tmp_path, capsys):
    p = write(tmp_path, "p.json", {"version": 1, "kind": "phase-data", "dim_g": 3, "phases_moduli": ["0"], "phases_h10": []})
    status, out = run(capsys, "invariants", "rho", "--phases", p)
    assert status == 0 and out["rho"] == 0


def test_lie_check(capsys):
    status, out = run(capsys, "lie", "check", "--n", "2")
    assert status == 0 and out["identity_deviation"] < 1e-10


def test_torsion_compute(tmp_path, capsys):
    p = write(tmp_path, "c.json", {"version": 1, "kind": "complex", "dims": [1, 1],
                                   "differentials": [{"rows": 1, "cols": 1, "entries": ["2"]}]})
    status, out = run(capsys, "torsion", "compute", "--complex", p)
    assert status == 0 and out["torsion"] == "1/2"


@pytest.mark.parametrize("method", ["definition", "wang", "general", "finite", "all"])
def test_mapping_torus_methods(capsys, method):
    d = fixture_dir()
    doc = json.loads((d / "circle_rotation_order3.json").read_text())["payload"]
    status = cli.main(["torsion", "mapping-torus", "--complex", str(_dump(doc["complex"])), "--map", str(_dump(doc["map"])),
                       "--method", method])
    out = json.loads(capsys.readouterr().out)
    assert status == 0
    values = out["torsion"].values() if method == "all" else [out["torsion"]]
    assert set(values) == {"1/3"}


def _dump(doc):
    f = tempfile.NamedTemporaryFile("w", suffix=".json", delete=False)
    json.dump(doc, f)
    f.close()
    return f.name


def test_sf_command(capsys):
    status, out = run(capsys, "invariants", "sf", "--cs", "1/4", "--rho", "2/3", "--group", "su2",
                      "--b1", "1", "--h0", "0", "--h1", "0")
    assert status == 0 and out["spectral_flow"] == "-14/3" and not out["integral"]


def test_framing_command(tmp_path, capsys):
    p = write(tmp_path, "p.json", {"version": 1, "kind": "phase-data", "dim_g": 3, "phases_h10": ["1/4"]})
    status, out = run(capsys, "invariants", "framing", "--phases", p, "--alpha", "2", "--k", "10", "--group", "su2")
    assert status == 0
    assert abs(out["framing_correction"][0] + 1) < 1e-12


def test_surface_commands(capsys):
    rep = json.loads((fixture_dir() / "surface_quaternion_genus2.json").read_text())["payload"]["rep"]
    p = _dump(rep)
    status, out = run(capsys, "surface", "cohomology", "--rep", p)
    assert status == 0 and out["cohomology_dims"] == [0, 6, 0]
    status, out = run(capsys, "surface", "omega", "--rep", p)
    assert status == 0 and out["omega_property"]["deviation"] < 1e-8


def test_asymptotics_commands(capsys):
    comps = json.loads((fixture_dir() / "identification_decay.json").read_text())["payload"]["components"]
    p = _dump(comps)
    status, out = run(capsys, "asymptotics", "leading", "--components", p, "--k", "100", "--form", "both")
    assert status == 0
    assert abs(complex(*out["rho"]["value_at_k"]) - complex(*out["sf"]["value_at_k"])) < 1e-9
    status, out = run(capsys, "asymptotics", "identify", "--components", p, "--k", "100")
    assert status == 0 and len(out["reports"]) == 3


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as e:
        cli.main(["torsion"])
    assert e.value.code == 2


def test_framing_k_without_group_is_usage_error(tmp_path, capsys):
    p = write(tmp_path, "p.json", {"version": 1, "kind": "phase-data", "dim_g": 3, "phases_h10": ["1/4"]})
    assert cli.main(["invariants", "framing", "--phases", p, "--k", "3"]) == 2


def test_computation_error_exits_1(tmp_path, capsys):
    p = write(tmp_path, "p.json", {"version": 1, "kind": "phase-data", "dim_g": 3, "phases_moduli": ["3/2"]})
    status, out = run(capsys, "invariants", "rho", "--phases", p)
    assert status == 1 and out["error"] == "PhaseOutOfRange"


def test_missing_file_exits_1(capsys):
    status, out = run(capsys, "invariants", "rho", "--phases", "/nonexistent.json")
    assert status == 1


def test_verify_filter_runs_one_family():
    status, report = run_verify_suite("multiplicativity")
    assert status == 0
    assert [f["family"] for f in report["families"]] == ["multiplicativity"]


def test_verify_unknown_filter():
    with pytest.raises(FixtureNotFound):
        run_verify_suite("no-such-family")


def test_verify_reports_corrupted_fixture(tmp_path):
    src = json.loads((fixture_dir() / "complex_times_two.json").read_text())
    shutil.copy(fixture_dir() / "complex_times_two.json", tmp_path)
    bad = dict(src, name="broken_complex")
    bad["payload"] = {"complex": {"version": 1, "kind": "complex", "dims": [1, 1, 1], "differentials": [
        {"rows": 1, "cols": 1, "entries": ["1"]}, {"rows": 1, "cols": 1, "entries": ["1"]}]}}
    (tmp_path / "broken_complex.json").write_text(json.dumps(bad))
    status, report = run_verify_suite("torsion", fixtures=tmp_path)
    assert status == 1
    errors = [r for f in report["families"] for r in f["results"] if r["status"] == "error"]
    assert errors[0]["details"]["error"] == "NotAComplex"
    assert "broken_complex" in errors[0]["details"]["message"]


def test_fixture_without_provenance_is_rejected(tmp_path):
    src = json.loads((fixture_dir() / "complex_times_two.json").read_text())
    src["expected"]["torsion"] = {"value": "1/2"}
    (tmp_path / "x.json").write_text(json.dumps(src))
    with pytest.raises(ValueError):
        run_verify_suite("torsion", fixtures=tmp_path)


def test_console_entry_point_module():
    out = subprocess.run([sys.executable, "-m", "torsion_tori.cli", "lie", "check", "--n", "3", "--trials", "5"],
                         capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["dual_coxeter"] == 3
