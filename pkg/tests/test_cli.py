from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from gammahom.chains import ChainComplex
from gammahom.cli import run
from gammahom.gamma import cyclic_group
from gammahom.simplicial import minimal_torus, sphere, standard_simplex
from gammahom.twosets import quiver_to_twoset


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def results(argv):
    code, out, err = call(argv)
    assert code == 0, err
    return json.loads(out)["results"]


@pytest.fixture
def sphere2(tmp_path):
    path = tmp_path / "sphere2.json"
    path.write_text(json.dumps(sphere(2).to_json()))
    return str(path)


def test_surface_genus_two():
    r = results(["surface", "--genus", "2"])
    assert r["boundaries_zero"] is True
    assert r["norm_l1"] == "64"
    assert r["class_multiplicity"] == 8


def test_surface_decision():
    r = results(["surface", "--genus", "2", "--lambda", "401/100", "--nmax", "1000"])
    assert r["decision"]["value"] is True
    r = results(["surface", "--genus", "2", "--lambda", "4"])
    assert r["decision"]["value"] is False
    assert r["decision"]["lower_source"] == "cited bound, not computed"


def test_surface_check_class():
    r = results(["surface", "--genus", "2", "--check-class"])
    tri = r["witnesses"]["triangles"]
    assert len(tri) == 8
    assert all(t["corrected_certificate"] and not t["literal_certificate"] for t in tri)
    assert r["witnesses"]["fundamental_minus_8t_is_boundary"] is True


def test_homology_sphere_file(sphere2):
    r = results(["homology", "--space", sphere2, "--coeff", "s", "--degree", "2", "--kmax", "1"])
    assert r["sizes"] == [1, 2]


def test_homology_monoid_file(tmp_path):
    mon = tmp_path / "z3.json"
    mon.write_text(json.dumps(cyclic_group(3).to_json()))
    r = results(["homology", "--space", "torus", "--coeff", f"ha:{mon}", "--degree", "1", "--kmax", "2"])
    assert r["sizes"] == [1, 9, 81]
    r = results(["homology", "--space", "sphere:1", "--coeff", "ha:Z/2", "--degree", "1", "--kmax", "2"])
    assert r["sizes"] == [1, 2, 4]


def test_validate_broken_identity(tmp_path):
    data = standard_simplex(2).to_json()
    key = json.dumps([0, 1, 2])
    data["faces"][key][0], data["faces"][key][2] = data["faces"][key][2], data["faces"][key][0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, _, err = call(["validate", "--space", str(bad)])
    assert code == 1
    assert "d0d1" in err or "identity" in err


def test_malformed_json_has_location(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim_cap": 2,\n  "generators": }')
    code, _, err = call(["validate", "--space", str(bad)])
    assert code == 2
    assert "line 2" in err


def test_usage_errors():
    assert call([])[0] == 2
    assert call(["homology", "--space", "sphere:1"])[0] == 2
    assert call(["norm", "--space", "torus", "--cycle", "/nonexistent.json"])[0] == 2
    assert call(["surface", "--genus", "2", "--lambda", "abc"])[0] == 2


def test_domain_errors(monkeypatch):
    assert call(["surface", "--genus", "1"])[0] == 1
    monkeypatch.setenv("GAMMAHOM_ENUM_LIMIT", "5")
    code, _, err = call(["homology", "--space", "torus", "--coeff", "ha:Z/3", "--degree", "1",
                         "--method", "direct"])
    assert code == 1 and "limit=5" in err


def test_norm_command(tmp_path):
    X = minimal_torus()
    space = tmp_path / "torus.json"
    space.write_text(json.dumps(X.to_json()))
    C = ChainComplex(X.to_levelwise())
    z = C.homology_Q(2)[1][0]
    cyc = tmp_path / "z.json"
    cyc.write_text(json.dumps(z.to_json()))
    r = results(["norm", "--space", str(space), "--cycle", str(cyc), "--mode", "l1"])
    assert r["value"] == "2"
    r = results(["norm", "--space", str(space), "--cycle", str(cyc), "--mode", "nor", "--lambda", "6"])
    assert r["below_lambda"] is False
    assert "coeffs" in r["witness"]


def test_pi_commands():
    r = results(["pi-comb", "--space", "sphere:2", "--degree", "2"])
    assert r["size"] == 2
    r = results(["pi-two", "--space", "sphere:2", "--degree", "2"])
    assert len(r["F0"]) == 2 and len(r["F1"]) == 2


def test_classify_command(tmp_path):
    G = quiver_to_twoset(["b", "x"], ["e"], {"e": "b"}, {"e": "x"})
    path = tmp_path / "g.json"
    path.write_text(json.dumps(G.to_json()))
    r = results(["classify", "--twoset", str(path), "--sub", '["b"]'])
    assert r["edges"]["(E,e)"] == "Doubt"
    assert r["vertices"] == {"b": "True", "x": "False"}
    assert call(["classify", "--twoset", str(path), "--sub", "[b"])[0] == 2


def test_out_file_and_determinism(tmp_path):
    out = tmp_path / "r.json"
    assert call(["surface", "--genus", "2", "--out", str(out)])[0] == 0
    first = out.read_bytes()
    assert call(["surface", "--genus", "2", "--out", str(out)])[0] == 0
    assert out.read_bytes() == first
    assert "timing_seconds" not in json.loads(first)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gammahom", "surface", "--genus", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["norm_l1"] == "64"
