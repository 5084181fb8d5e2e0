"""
Tests for the worked-example registry
"""

import pytest

from xinner.core.errors import InvalidArgument
from xinner.examples.fixtures import DERIVED, FIXTURES, PRINTED, TRIVIAL, qp, run_fixtures
from xinner.examples.weyl_demo import main as weyl_demo


class TestFixtures:
    """Test cases for run_fixtures"""

    def test_registry(self):
        """Every fixture names a bundled file and tagged checks"""
        assert set(FIXTURES) == {"Ex2.4", "Ex2.6", "Ex4.1", "Ex4.2", "Ex4.3", "Ex4.4", "Ex4.5"}
        for fixture in FIXTURES.values():
            assert fixture.checks
            assert all(c.provenance in (PRINTED, DERIVED, TRIVIAL) for c in fixture.checks)

    @pytest.mark.parametrize("fixture_id", sorted(FIXTURES))
    def test_fixture_passes(self, fixture_id):
        """Expected and computed values agree"""
        summary = run_fixtures([fixture_id])
        failed = [o.to_dict() for o in summary.outcomes if not o.passed]
        assert summary.passed, failed
        assert len(summary.outcomes) == len(FIXTURES[fixture_id].checks)

    def test_summary_dict(self):
        """The summary counts checks"""
        payload = run_fixtures(["Ex2.4"]).to_dict()
        assert payload["total"] == 2
        assert payload["failed"] == 0
        assert {c["status"] for c in payload["checks"]} == {"PASS"}

    def test_unknown_id(self):
        """Unknown ids are refused before anything runs"""
        with pytest.raises(InvalidArgument):
            run_fixtures(["Ex4.1", "Ex0.0"])

    def test_qp(self):
        """Scalar powers print as q^k, with 1 for k = 0"""
        assert qp(0) == "1"
        assert qp(-2) == "q^-2"


class TestWeylDemo:
    """Test cases for the walkthrough script"""

    def test_runs(self, capsys, monkeypatch):
        """The demo certifies the first two powers"""
        monkeypatch.setattr("sys.argv", ["weyl_demo", "2"])
        assert weyl_demo() == 0
        out = capsys.readouterr().out
        assert "induced by (xy - yx)^2: True" in out
        assert "Infinite" in out

    def test_usage(self, capsys, monkeypatch):
        """Too many arguments prints usage"""
        monkeypatch.setattr("sys.argv", ["weyl_demo", "1", "2"])
        assert weyl_demo() == 1
        assert "Usage" in capsys.readouterr().out
