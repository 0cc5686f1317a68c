"""CLI: output formats, exit codes, the result cache and the audit trail."""
import json
from pathlib import Path

import pytest

from src.audit import read_events
from src.dispatch import MobiusDispatcher
from src.errors import MobiusOverflowError
from src.run import main, parse_operand
from src.schemas import OscillationDescriptor


@pytest.fixture(autouse=True)
def cache_in_tmp(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Path:
    path = tmp_path / "cache" / "mobius_cache.json"
    monkeypatch.setenv("PERMMOB_CACHE_PATH", str(path))
    return path


def run(tmp_path: Path, *argv: str) -> int:
    return main(["--audit-dir", str(tmp_path / "audit"), *argv])


def events(tmp_path: Path) -> list[dict]:
    out = []
    for path in sorted((tmp_path / "audit").glob("*/audit.jsonl")):
        out.extend(read_events(path))
    return out


def test_parse_operand() -> None:
    assert parse_operand("W_9") == OscillationDescriptor(shape="W", n=9)
    assert parse_operand("M12") == OscillationDescriptor(shape="M", n=12)
    assert parse_operand("2413") == (2, 4, 1, 3)


def test_mobius_text(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(tmp_path, "mobius", "--lower", "3142", "--upper", "315274968", "--no-cache") == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "mu[3142, 315274968] = -6 (inc_osc)"
    assert lines[1].startswith("work: dispatch_calls=")


def test_mobius_descriptor(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(tmp_path, "mobius", "--lower", "3142", "--upper", "W_9", "--no-cache") == 0
    assert capsys.readouterr().out.splitlines()[0] == "mu[3142, W_9] = -6 (inc_osc)"


def test_mobius_json(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(tmp_path, "mobius", "--lower", "1", "--upper", "2413", "--format", "json", "--no-cache") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["lower"] == "1"
    assert payload["upper"] == "2413"
    assert payload["value"] == -3
    assert payload["method"] == "inc_osc"


def test_mobius_engine_method(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(tmp_path, "mobius", "--lower", "1", "--upper", "25314", "--method", "hall", "--no-cache") == 0
    assert capsys.readouterr().out.splitlines()[0] == "mu[1, 25314] = 4 (hall)"


def test_parse_error_exit_code(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(tmp_path, "mobius", "--lower", "1", "--upper", "2213", "--no-cache") == 2
    assert capsys.readouterr().err.startswith("ERROR:")
    failed = [e for e in events(tmp_path) if e["event_type"] == "command_failed"]
    assert failed[0]["payload"]["exit_code"] == 2


def test_size_guard_exit_code(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PERMMOB_RECURSIVE_CAP", "3")
    assert run(tmp_path, "mobius", "--lower", "1", "--upper", "2413", "--method", "recursive", "--no-cache") == 3


def test_overflow_exit_code(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> None:
    def boom(self, sigma, pi, method="auto"):
        raise MobiusOverflowError("value does not fit in 63 bits")

    monkeypatch.setattr(MobiusDispatcher, "compute", boom)
    assert run(tmp_path, "mobius", "--lower", "1", "--upper", "2413", "--no-cache") == 4


def test_result_cache(tmp_path: Path, cache_in_tmp: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(tmp_path, "mobius", "--lower", "1", "--upper", "25314") == 0
    assert cache_in_tmp.exists()
    first = capsys.readouterr().out.splitlines()
    assert run(tmp_path, "mobius", "--lower", "1", "--upper", "25314") == 0
    second = capsys.readouterr().out.splitlines()
    assert second == [first[0]]
    computed = [e["payload"]["cached"] for e in events(tmp_path) if e["event_type"] == "mobius_computed"]
    assert sorted(computed) == [False, True]

    cache_in_tmp.write_text("{broken", encoding="utf-8")
    assert run(tmp_path, "mobius", "--lower", "1", "--upper", "25314") == 0
    captured = capsys.readouterr()
    assert "warning" in captured.err
    assert captured.out.splitlines()[0] == "mu[1, 25314] = 4 (balloon_2413)"
    assert any(e["event_type"] == "cache_corrupt" for e in events(tmp_path))


def test_zero(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(tmp_path, "zero", "367249815") == 0
    assert capsys.readouterr().out.strip() == 'opposing_adjacencies {"down": 6, "up": 2}'
    assert run(tmp_path, "zero", "2413") == 0
    assert capsys.readouterr().out.strip() == "no certificate"
    assert run(tmp_path, "zero", "2413", "--format", "json") == 0
    assert json.loads(capsys.readouterr().out)["certificate"] is None


def test_family(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(tmp_path, "family", "pi", "5", "--emit", "perm") == 0
    assert capsys.readouterr().out.strip() == "25314"
    assert run(tmp_path, "family", "wosc", "5") == 0
    assert capsys.readouterr().out.strip() == "6"
    assert run(tmp_path, "family", "wosc", "5", "--emit", "perm") == 0
    assert capsys.readouterr().out.strip() == "31524"
    assert run(tmp_path, "family", "e2", "6") == 0
    assert capsys.readouterr().out.strip() == "-5"
    assert run(tmp_path, "family", "wedge", "21", "21") == 2


def test_census_density_to_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    out = tmp_path / "density.csv"
    assert run(tmp_path, "census", "density", "--max-n", "4", "--out", str(out)) == 0
    rows = out.read_text(encoding="utf-8").splitlines()
    assert rows[0].startswith("n,total,zero_count,d_n_exact,d_n,mode")
    assert len(rows) == 5
    assert ",0.4167," in rows[4]
    printed = capsys.readouterr().out.splitlines()
    assert printed[0] == "name,params,expected,observed,match"
    assert len(printed) == 5
    written = [e for e in events(tmp_path) if e["event_type"] == "outputs_written"]
    assert written[0]["payload"]["rows"] == 4


def test_census_family_needs_kind(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(tmp_path, "census", "family", "--max-n", "6") == 2
    assert "--kind" in capsys.readouterr().err


def test_census_growth_plot(tmp_path: Path) -> None:
    out = tmp_path / "growth.plot.csv"
    assert run(tmp_path, "census", "growth", "--max-n", "12", "--out", str(out)) == 0
    assert out.read_text(encoding="utf-8").splitlines()[-1] == "12,-12"


def test_census_json_and_table(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert run(tmp_path, "census", "growth", "--max-n", "5", "--format", "json") == 0
    data = json.loads(capsys.readouterr().out)
    assert [row["value"] for row in data] == [1, -1, 1, -3, 4]
    assert run(tmp_path, "census", "adjacency", "--max-n", "4", "--format", "table") == 0
    assert "identity_holds" in capsys.readouterr().out


def test_audit_trail(tmp_path: Path) -> None:
    assert run(tmp_path, "mobius", "--lower", "1", "--upper", "2413", "--no-cache") == 0
    kinds = [e["event_type"] for e in events(tmp_path)]
    assert kinds == ["command_received", "mobius_computed"]
    received = events(tmp_path)[0]
    assert received["payload"]["command"] == "mobius"
    assert "--upper" in received["payload"]["argv"]
