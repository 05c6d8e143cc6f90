import json
import os
import subprocess
import sys

import numpy as np
import pytest

from zaklab.cli import parse_domain, parse_lattice, parse_spectrum, parse_window, run
from zaklab.errors import ValidationError
from zaklab.serialize import read_pgm


def _json(capsys, argv, code=0):
    assert run(argv) == code
    return json.loads(capsys.readouterr().out)


class TestParsers:
    def test_lattice_forms(self):
        assert parse_lattice("1/2").det == pytest.approx(0.5)
        assert np.allclose(parse_lattice("I2").gen, np.eye(2))
        assert np.allclose(parse_lattice("[[2,0],[1,1]]").gen, [[2, 0], [1, 1]])

    def test_lattice_singular(self):
        with pytest.raises(ValidationError):
            parse_lattice("[[1,2],[2,4]]")

    def test_domains(self):
        assert parse_domain("unit-interval").dim == 1
        assert parse_domain("octagon").dim == 2
        assert parse_domain('{"type": "intervals", "items": [[0, 1]]}').dim == 1

    def test_non_object_json(self):
        with pytest.raises(ValidationError):
            parse_spectrum("[[0.5]]")

    def test_bad_domain(self):
        with pytest.raises(ValidationError):
            parse_domain("circle")

    def test_window_and_spectrum(self):
        assert parse_window("gaussian").dim == 1
        assert len(parse_spectrum("Z", 3).expand()) == 7


class TestCommands:
    def test_lattice(self, capsys):
        out = _json(capsys, ["lattice", "--M", "1/2", "--N", "2"])
        assert out["pair"]["product_is_unimodular"] and out["pair"]["ntm_is_integer"]
        assert out["density_product"] == pytest.approx(1.0)

    def test_classify_orthonormal(self, capsys):
        out = _json(capsys, ["classify", "--window", "unit-interval", "--M", "1", "--N", "1"])
        assert out["verdict"] == "OrthonormalUnitModulus"

    def test_classify_tol_zero(self, capsys):
        out = _json(capsys, ["classify", "--window", "gaussian", "--M", "1", "--N", "1", "--tol-zero", "1e-3"])
        assert out["tol_zero"] == 1e-3

    def test_tiling_level_alias(self, capsys):
        out = _json(capsys, ["tiling", "level", "--domain", "lshape", "--lattice", "I2", "--samples", "2000"])
        assert out["level"] == 3

    def test_tiling_cover(self, capsys):
        out = _json(capsys, ["tiling", "cover", "--domain", "parallelogram", "--M", "I2", "--point", "0.7,0.3"])
        assert out["count"] == 2

    def test_zak_eval(self, capsys):
        out = _json(capsys, ["zak", "eval", "--window", "unit-interval", "--M", "1/2", "--N", "2",
                             "--x", "0.25", "--xi", "1"])
        assert out["magnitude"] < 1e-12

    def test_zak_zero(self, capsys):
        out = _json(capsys, ["zak", "zero", "--window", "gaussian", "--M", "1", "--N", "1"])
        assert out["found"]

    def test_zak_csv(self, capsys):
        assert run(["zak", "grid", "--window", "unit-interval", "--M", "1", "--N", "1", "--res", "4",
                    "--format", "csv"]) == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "x,xi,re,im" and len(lines) == 17

    def test_zak_pgm_2d(self, capsys, tmp_path):
        out = tmp_path / "s.pgm"
        assert run(["zak", "grid", "--window", "octagon", "--M", "I2", "--N", "I2", "--res", "16",
                    "--x", "0.5,0.25", "--format", "pgm", "--out", str(out)]) == 0
        pixels, peak = read_pgm(out)
        assert pixels.shape == (16, 16) and peak > 0

    def test_spectral(self, capsys):
        out = _json(capsys, ["spectral", "ortho", "--domain", "unit-interval", "--spectrum", "Z", "--radius", "5"])
        assert out["max_off_diagonal"] < 1e-12

    def test_gabor_check(self, capsys):
        out = _json(capsys, ["gabor", "check", "--domain", "unit-interval", "--M", "1", "--N", "1",
                             "--radius", "40"])
        assert out["harness"]["passed"] is True
        assert all(abs(b["ratio"] - 1) < 0.05 for b in out["frame_sums"])


class TestExitCodes:
    def test_singular_lattice(self, capsys):
        assert run(["lattice", "--M", "[[1,1],[1,1]]"]) == 2
        assert "invalid input" in capsys.readouterr().err

    @pytest.mark.filterwarnings("ignore::UserWarning")
    def test_incompatible_pair(self, capsys):
        assert run(["classify", "--window", "unit-interval", "--M", "1", "--N", "0.7"]) == 2

    def test_bad_point(self):
        assert run(["zak", "eval", "--window", "unit-interval", "--M", "1", "--N", "1",
                    "--x", "a", "--xi", "0"]) == 2

    def test_unknown_subcommand(self, capsys):
        assert run(["frobnicate"]) == 2

    def test_numerical_failure(self, capsys):
        assert run(["spectral", "dual", "--domain", "unit-interval", "--spectrum",
                    '{"type": "cosets", "lattice": {"gen": [[0.5]]}}',
                    "--radius", "30"]) == 3
        assert "numerical failure" in capsys.readouterr().err


class TestRepro:
    def test_gaussian_files(self, capsys, tmp_path):
        report = _json(capsys, ["repro", "gaussian", "--out-dir", str(tmp_path)])
        pixels, peak = read_pgm(tmp_path / "gaussian.pgm")
        assert pixels.shape == (65, 65)
        assert np.unravel_index(np.argmin(pixels), pixels.shape) == (32, 32)
        assert peak == report["heatmap"]["max_magnitude"]
        header = (tmp_path / "gaussian.csv").read_text().split("\n")[0]
        assert header == "x,xi,re,im"

    def test_octagon_probes(self, capsys, tmp_path):
        report = _json(capsys, ["repro", "octagon", "--out-dir", str(tmp_path)])
        assert max(p["magnitude"] for p in report["probes"]) < 1e-10

    def test_byte_identical(self, capsys, tmp_path):
        run(["repro", "lshape", "--out-dir", str(tmp_path / "a")])
        run(["repro", "lshape", "--out-dir", str(tmp_path / "a")])
        capsys.readouterr()
        first = (tmp_path / "a" / "lshape.json").read_bytes()
        run(["repro", "lshape", "--out-dir", str(tmp_path / "a")])
        capsys.readouterr()
        assert (tmp_path / "a" / "lshape.json").read_bytes() == first
        assert first.decode().endswith("\n")


def test_console_script_subprocess(tmp_path):
    env = dict(os.environ, ZAKLAB_THREADS="1")
    proc = subprocess.run([sys.executable, "-m", "zaklab.cli", "lattice", "--M", "2"], capture_output=True,
                          text=True, env=env, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["det"] == 2
