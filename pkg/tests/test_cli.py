"""Command-line interface: exit codes, JSON payloads, and wiring."""

import json
import subprocess
import sys

import pytest

import mfkit as mk
from mfkit.cli import dispatch
from mfkit.io import morphism_to_dict

from fixtures import cone_generator


def run_cli(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out.strip() else None
    return code, payload, captured.err


def write_mf(tmp_path, name, M):
    path = tmp_path / name
    path.write_text(json.dumps(mk.mf_to_dict(M)))
    return str(path)


@pytest.fixture(scope="module")
def qcurve():
    return mk.default_curve()


@pytest.fixture(scope="module")
def qpoints(qcurve):
    return mk.default_points(qcurve, 5)


# ---------------------------------------------------------------------------
# verify


def test_verify_accepts_catalog_object(tmp_path, capsys, qcurve, qpoints):
    path = write_mf(tmp_path, "kp.json", mk.catalog_mf(qcurve, "point", qpoints[0]))
    code, payload, err = run_cli(capsys, "verify", path)
    assert code == 0
    assert payload["valid"] is True
    assert payload["violations"] == []


def test_verify_rejects_tampered_object(tmp_path, capsys, qcurve, qpoints):
    d = mk.mf_to_dict(mk.catalog_mf(qcurve, "point", qpoints[0]))
    d["alpha"][0][0] = "X^2"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(d))
    code, payload, err = run_cli(capsys, "verify", str(path))
    assert code == 1
    assert payload["valid"] is False
    assert any("(0,0)" in v for v in payload["violations"])


def test_verify_missing_file_is_input_error(capsys, tmp_path):
    code, payload, err = run_cli(capsys, "verify", str(tmp_path / "nope.json"))
    assert code == 2


def test_verify_malformed_json_is_input_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, payload, err = run_cli(capsys, "verify", str(path))
    assert code == 2


# ---------------------------------------------------------------------------
# resolve / extract


def test_resolve_residue_field(capsys):
    code, payload, err = run_cli(
        capsys, "resolve", "--module", "K", "--length", "4"
    )
    assert code == 0
    assert payload["twists"] == [
        [0],
        [1, 1, 1],
        [2, 2, 2, 3],
        [3, 4, 4, 4],
        [5, 5, 5, 6],
    ]
    assert payload["periodicity"] == 3


def test_resolve_point_module(capsys):
    code, payload, err = run_cli(
        capsys, "resolve", "--module", "point", "0", "1", "--length", "4"
    )
    assert code == 0
    assert payload["twists"][:2] == [[0], [1, 1]]
    assert payload["periodicity"] == 2


def test_extract_point_matches_catalog(capsys, tmp_path, qcurve, qpoints):
    code, payload, err = run_cli(
        capsys, "extract", "--module", "point", "2", "3", "--mode", "point"
    )
    assert code == 0
    M = mk.mf_from_dict(payload)
    C = mk.catalog_mf(qcurve, "point", mk.point_on(qcurve, 2, 3))
    assert mk.is_stably_isomorphic(M, C).status == "yes"


def test_extract_wrong_mode_is_input_error(capsys):
    code, payload, err = run_cli(
        capsys, "extract", "--module", "K", "--mode", "point"
    )
    assert code == 2


# ---------------------------------------------------------------------------
# catalog


def test_catalog_single_entry(capsys):
    code, payload, err = run_cli(
        capsys, "catalog", "--kind", "point", "--lambda", "2", "--mu", "3"
    )
    assert code == 0
    entries = payload
    assert len(entries) == 1
    assert entries[0]["kind"] == "point"
    assert entries[0]["verified"] is True


def test_catalog_all_points_prime_field(capsys):
    code, payload, err = run_cli(
        capsys,
        "catalog",
        "--kind",
        "point",
        "--field",
        "F101",
        "--all-points",
        "--jobs",
        "2",
    )
    assert code == 0
    assert len(payload) == 101
    assert all(e["verified"] for e in payload)


def test_catalog_kind_all(capsys):
    code, payload, err = run_cli(
        capsys, "catalog", "--kind", "all", "--lambda", "0", "--mu", "1"
    )
    assert code == 0
    kinds = {e["kind"] for e in payload}
    assert kinds == set(mk.CATALOG_KINDS)


def test_catalog_bad_point_is_input_error(capsys):
    code, payload, err = run_cli(
        capsys, "catalog", "--kind", "point", "--lambda", "0", "--mu", "2"
    )
    assert code == 2


# ---------------------------------------------------------------------------
# cone / hom / iso


def test_cone_command(capsys, tmp_path, qcurve, qpoints):
    phi, _ = cone_generator(qcurve, "e-plus-p", qpoints[0])
    path = tmp_path / "phi.json"
    path.write_text(json.dumps(morphism_to_dict(phi)))
    code, payload, err = run_cli(capsys, "cone", str(path), "--reduce")
    assert code == 0
    C = mk.mf_from_dict(payload)
    assert C.rank == 2
    T = mk.shift_mf(mk.catalog_mf(qcurve, "lb-e-plus-p", qpoints[0]), 1)
    assert mk.is_stably_isomorphic(C, T).status == "yes"


def test_hom_command(capsys, tmp_path, qcurve, qpoints):
    O = mk.catalog_mf(qcurve, "structure-sheaf")
    a = write_mf(tmp_path, "o1.json", O)
    b = write_mf(tmp_path, "o2.json", O)
    code, payload, err = run_cli(capsys, "hom", a, b, "--shift", "-1")
    assert code == 0
    assert payload["stable_dim"] == 1


def test_iso_command_yes(capsys, tmp_path, qcurve, qpoints):
    kp = mk.catalog_mf(qcurve, "point", qpoints[0])
    padded = mk.direct_sum_mf(kp, mk.trivial_mf(qcurve.ring, qcurve.f))
    a = write_mf(tmp_path, "a.json", padded)
    b = write_mf(tmp_path, "b.json", kp)
    code, payload, err = run_cli(capsys, "iso", a, b)
    assert code == 0
    assert payload["status"] == "yes"
    assert payload["forward"] is not None
    assert "seed:" in err


def test_iso_command_refuted(capsys, tmp_path, qcurve, qpoints):
    a = write_mf(tmp_path, "p.json", mk.catalog_mf(qcurve, "point", qpoints[0]))
    b = write_mf(tmp_path, "q.json", mk.catalog_mf(qcurve, "point", qpoints[1]))
    code, payload, err = run_cli(capsys, "iso", a, b)
    assert code == 1
    assert payload["status"] == "no"


def test_iso_command_inconclusive(capsys, tmp_path, qcurve, qpoints):
    kp = mk.catalog_mf(qcurve, "point", qpoints[0])
    kq = mk.catalog_mf(qcurve, "point", qpoints[1])
    a = write_mf(tmp_path, "pq.json", mk.direct_sum_mf(kp, kq))
    b = write_mf(tmp_path, "pp.json", mk.direct_sum_mf(kp, kp))
    code, payload, err = run_cli(capsys, "iso", a, b, "--samples", "20")
    assert code == 3
    assert payload["status"] == "inconclusive"


def test_iso_seed_env(capsys, tmp_path, qcurve, qpoints, monkeypatch):
    kp = mk.catalog_mf(qcurve, "point", qpoints[0])
    a = write_mf(tmp_path, "s1.json", kp)
    b = write_mf(tmp_path, "s2.json", kp)
    monkeypatch.setenv("MFKIT_SEED", "42")
    code, payload, err = run_cli(capsys, "iso", a, b)
    assert code == 0
    assert "seed: 42" in err


# ---------------------------------------------------------------------------
# object functors


def test_transpose_twist_shift_commands(capsys, tmp_path, qcurve, qpoints):
    kp = mk.catalog_mf(qcurve, "point", qpoints[0])
    path = write_mf(tmp_path, "kp.json", kp)
    code, payload, _ = run_cli(capsys, "transpose", path)
    assert code == 0 and mk.verify_mf(mk.mf_from_dict(payload)) == []
    code, payload, _ = run_cli(capsys, "twist", path, "--n", "2")
    assert code == 0
    assert mk.mf_from_dict(payload) == mk.twist_mf(kp, 2)
    code, payload, _ = run_cli(capsys, "shift", path, "--k", "-1")
    assert code == 0
    assert mk.mf_from_dict(payload) == mk.shift_mf(kp, -1)


def test_picard_and_duality_commands(capsys, tmp_path, qcurve, qpoints):
    kp = mk.catalog_mf(qcurve, "point", qpoints[0])
    path = write_mf(tmp_path, "kp.json", kp)
    code, payload, _ = run_cli(capsys, "picard", path, "--sign", "-1")
    assert code == 0
    moved = mk.mf_from_dict(payload)
    assert mk.verify_mf(moved) == []
    code, payload, _ = run_cli(capsys, "duality", path)
    assert code == 0
    D = mk.mf_from_dict(payload)
    assert mk.is_stably_isomorphic(D, mk.shift_mf(kp, -1)).status == "yes"


def test_ar_command(capsys, tmp_path, qcurve, qpoints):
    path = write_mf(tmp_path, "kp.json", mk.catalog_mf(qcurve, "point", qpoints[0]))
    code, payload, _ = run_cli(capsys, "ar", path)
    assert code == 0
    assert payload["doubling_ok"] is True


def test_size_bound_command(capsys):
    code, payload, _ = run_cli(
        capsys, "size-bound", "--curve", "0", "1", "--lambda", "2", "--mu", "3"
    )
    assert code == 0
    assert payload["cone_rank"] in (5, 6)


def test_out_flag_writes_file(capsys, tmp_path, qcurve, qpoints):
    src = write_mf(tmp_path, "kp.json", mk.catalog_mf(qcurve, "point", qpoints[0]))
    out = tmp_path / "twisted.json"
    code = dispatch(["twist", src, "--n", "1", "--out", str(out)])
    capsys.readouterr()
    assert code == 0
    data = json.loads(out.read_text())
    assert mk.mf_from_dict(data) == mk.twist_mf(
        mk.catalog_mf(qcurve, "point", qpoints[0]), 1
    )


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "mfkit", "catalog", "--kind", "trivial"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload[0]["kind"] == "trivial"
