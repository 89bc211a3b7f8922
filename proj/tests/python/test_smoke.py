import math
import os
from pathlib import Path

import pytest

import algodecon as ad

REFERENCE_STRING = (
    "0101010101010101010101010101010101010101010101010101"
    "110100101010100000001001100111100110000011100110"
)


@pytest.fixture(scope="module")
def table_1d():
    return ad.build_table(3, dim=1, workers=1)


@pytest.fixture(scope="module")
def table_2d():
    path = Path(os.environ.get("ALGODECON_TABLE_DIR", "build/tables")) / "ctm-3-2-2d.tbl"
    if not path.exists():
        pytest.skip("2D table not built")
    return ad.load_table(str(path))


def test_class_sizes():
    assert ad.class_size(2) == 10000
    assert ad.class_size(3) == 7529536
    assert ad.class_size(2, dim=2) == 104976


def test_table_symmetry(table_1d):
    assert table_1d.checksum == "3bdc7688"
    assert table_1d.count("0110") == table_1d.count("1001")
    assert table_1d.ctm_bits("01") < table_1d.ctm_bits("0110")
    assert table_1d.ctm_bits("not-a-key") is None


def test_repeated_blocks(table_1d):
    ev = ad.Evaluator(table_1d, 5)
    one = ev.string("11010")["bits"]
    assert ev.string("11010" * 8)["bits"] - one == pytest.approx(3.0, abs=1e-12)


def test_string_boundary(table_1d):
    ev = ad.Evaluator(table_1d, 5)
    r = ad.deconvolve_string(ev, REFERENCE_STRING)
    assert abs(r["boundaries"][0] - 52) <= 6
    fp = ad.string_footprint(ev, REFERENCE_STRING)
    assert len(fp) == 100


def test_graph_round(table_2d):
    ev = ad.Evaluator(table_2d, 4)
    g = ad.compose(["star:10", "complete:10"], connectors=1, seed=2)
    sig = ad.signature(ev, g["nodes"], g["edges"])
    assert len(sig) == len(g["edges"])
    assert all(a[2] >= b[2] for a, b in zip(sig, sig[1:]))
    r = ad.deconvolve_n(ev, g["nodes"], g["edges"], 2)
    assert len(r["components"]) >= 2
    a = ad.deconvolve_auto(ev, g["nodes"], g["edges"])
    assert a["evaluations"] == len(g["edges"])


def test_ca_and_baselines():
    rows = ad.eca_evolve(90, 9, 2)
    assert rows[1] == "000101000"
    assert ad.shannon_entropy("0011") == pytest.approx(1.0)
    assert 0.0 <= ad.ncd("01" * 40, "110" * 30) <= 1.2


def test_errors(table_1d):
    with pytest.raises(ValueError):
        ad.Evaluator(table_1d, 0)
    with pytest.raises(ValueError):
        ad.eca_evolve(300, 9, 2)
    with pytest.raises(RuntimeError):
        ad.load_table("/nonexistent.tbl")
    assert "fig1-string" in ad.experiment_ids()


def test_experiment(tmp_path, table_1d):
    table_1d.save(str(tmp_path / "t1.tbl"))
    summary = ad.run_experiment(
        {
            "experiment": "fig1-string",
            "seeds": "0-2",
            "table_1d": str(tmp_path / "t1.tbl"),
            "out_dir": str(tmp_path / "out"),
            "plots": "false",
        }
    )
    assert summary["periodic_below_random_count"] == 3
    assert (tmp_path / "out" / "manifest.txt").exists()
    assert not math.isnan(summary["reference_boundary"])
