import json

import app
from app.domain.models import AssertionRecord, FunctionalReport, GridConfig, RunConfig, SuiteSummary
from app.infrastructure.report_writer import ReportWriter


def _report(wall_time=1.5):
    return FunctionalReport("essnorm", 0.125, witness=0.75 + 0j, levels=[0.5, 0.25, 0.125],
                            normalized_levels=[1.0, 0.5, 0.25], normalized_value=0.25, wall_time=wall_time)


def _writer(out_dir):
    return ReportWriter(str(out_dir), RunConfig("functional", target="essnorm", grid=GridConfig.desk()))


def test_functional_artifacts(tmp_path):
    path = _writer(tmp_path).write_functional("essnorm", _report())
    data = json.loads(path.read_text())
    assert data["version"] == app.__version__
    assert data["config"]["target"] == "essnorm"
    assert data["report"]["witness"] == [0.75, 0.0]
    levels = (tmp_path / "essnorm.levels.csv").read_text().splitlines()
    assert levels[0] == "level,value,normalized"
    assert levels[1] == "0,0.5,1.0"
    assert (tmp_path / "essnorm.plot.csv").read_text().splitlines()[0] == "x,y"
    assert json.loads((tmp_path / "essnorm.timing.json").read_text()) == {"wall_time": 1.5}


def test_reports_are_byte_identical(tmp_path):
    first = _writer(tmp_path / "a").write_functional("run", _report(wall_time=1.0)).read_bytes()
    second = _writer(tmp_path / "b").write_functional("run", _report(wall_time=9.0)).read_bytes()
    assert first == second


def test_plot_rows_use_records(tmp_path):
    report = FunctionalReport("thm6_lower", 2.0, levels=[1.0, 2.0],
                              diagnostics={"records": [{"w": 0.0, "ratio": 1.0}, {"w": 0.5, "ratio": 2.0}]})
    _writer(tmp_path).write_functional("lower", report)
    assert (tmp_path / "lower.plot.csv").read_text().splitlines()[1:] == ["0.0,1.0", "0.5,2.0"]


def test_weight_table(tmp_path):
    table = [{"r": 0.5, "omega": 0.5}, {"r": 0.75, "omega": 0.25}]
    _writer(tmp_path).write_weight("weight", {"spec": "std:alpha=1"}, table)
    assert (tmp_path / "weight.csv").read_text() == "r,omega\n0.5,0.5\n0.75,0.25\n"
    assert json.loads((tmp_path / "weight.json").read_text())["weight"]["spec"] == "std:alpha=1"


def test_summary(tmp_path):
    summaries = [SuiteSummary("cor7", [AssertionRecord("C1", True, 0.5, lower=0.1)])]
    path = _writer(tmp_path).write_summary("summary", summaries, {"cor7": {"step": 0.1}})
    data = json.loads(path.read_text())
    assert data["passed"]
    assert data["suites"][0]["assertions"][0]["name"] == "C1"
    assert not list(tmp_path.glob(".*"))
