import json
import shutil
from pathlib import Path

import pytest

from orbitkit import tables


def test_row_counts():
    assert [len(tables.load_table(k)) for k in (1, 2, 3)] == [28, 4, 10]


@pytest.mark.parametrize("report", [
    lambda: tables.verify_fusion_rows((1, 2)),
    lambda: tables.verify_center_orders((1, 2)),
    lambda: tables.verify_duality_pairs((1, 2, 3)),
    tables.verify_labels,
    tables.verify_distinguished,
    tables.verify_affine,
], ids=["fusion", "centres", "duality", "labels", "distinguished", "affine"])
def test_reports_pass(report):
    rep = report()
    assert rep.ok, [r.detail for r in rep.results if not r.ok]
    assert json.loads(json.dumps(rep.to_json())) == rep.to_json()


def test_table2_centres_have_order_4():
    rep = tables.verify_center_orders((2,))
    assert [r.data["order"] for r in rep.results] == [4, 4, 4, 4]


def test_f4_levi_type_mismatch_is_flagged():
    rep = tables.verify_fusion_rows((1,))
    row = next(r for r in rep.results if r.row.group == "F4" and r.row.J == "{0,2}")
    assert row.ok
    assert row.data["L_J type matches column"] is False


@pytest.mark.parametrize("scenario", tables.SCENARIOS, ids=lambda f: f.__name__)
def test_scenarios(scenario):
    s = scenario()
    assert s.ok, [c for c in s.checks if not c[1]]


def test_data_dir_override_detects_corruption(tmp_path, monkeypatch):
    src = Path(tables.data_dir())
    dst = tmp_path / "data"
    shutil.copytree(src, dst)
    path = dst / "tables" / "table2.json"
    raw = json.loads(path.read_text())
    raw["rows"][0][raw["columns"].index("class_OF")] = "E8"
    path.write_text(json.dumps(raw))
    monkeypatch.setenv("ORBITKIT_DATA", str(dst))
    tables._aliases.cache_clear()
    rep = tables.verify_fusion_rows((2,))
    assert not rep.ok and rep.passed == 3


def test_missing_data_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("ORBITKIT_DATA", str(tmp_path))
    with pytest.raises(tables.TableError):
        tables.load_table(1)
