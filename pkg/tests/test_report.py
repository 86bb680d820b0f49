import math

import pytest

from uoce.report import SweepCell, SweepReport, mean_std


class TestMeanStd:
    def test_single_value(self):
        assert mean_std([4.0]) == (4.0, 0.0)

    def test_empty(self):
        assert mean_std([]) == (0.0, 0.0)

    def test_two_values(self):
        mu, sigma = mean_std([1.0, 3.0])
        assert mu == 2.0
        assert sigma == pytest.approx(math.sqrt(2.0))

    def test_reference_row(self):
        # Six-variant row whose published aggregation is 55.99 +/- 1.44.
        mu, sigma = mean_std([57.7, 55.92, 56.77, 56.77, 55.15, 53.64])
        assert f"{mu:.2f}" == "55.99"
        assert f"{sigma:.2f}" == "1.44"

    def test_reference_row_six_values(self):
        mu, sigma = mean_std([48.0, 48.52, 49.09, 48.46, 49.61, 50.3])
        assert f"{mu:.2f}" == "49.00"
        assert f"{sigma:.2f}" == "0.85"

    def test_reference_row_seven_values(self):
        mu, sigma = mean_std([57.71, 56.41, 57.47, 57.65, 56.0, 57.45, 58.13])
        assert f"{mu:.2f}" == "57.26"
        assert f"{sigma:.2f}" == "0.76"


def grid() -> SweepReport:
    cells = {
        ("m1", "DEF"): SweepCell(f1=0.50),
        ("m1", "EDF"): SweepCell(f1=0.70),
        ("m2", "DEF"): SweepCell(f1=0.60),
        ("m2", "EDF"): SweepCell(error="endpoint unreachable"),
    }
    return SweepReport(models=("m1", "m2"), variants=("DEF", "EDF"), cells=cells)


class TestSweepReport:
    def test_row_stats_over_scored_cells(self):
        report = grid()
        mu, sigma = report.row_stats("m1")
        assert mu == pytest.approx(60.0)
        assert report.row_stats("m2") == (60.0, 0.0)

    def test_column_stats(self):
        report = grid()
        mu, _ = report.column_stats("DEF")
        assert mu == pytest.approx(55.0)
        assert report.column_stats("EDF")[0] == pytest.approx(70.0)

    def test_text_contains_failures_and_values(self):
        text = grid().render_text()
        assert "50.00" in text and "FAIL" in text
        assert "FAIL m2/EDF: endpoint unreachable" in text
        assert text.splitlines()[1].startswith("Model")

    def test_text_is_deterministic(self):
        assert grid().render_text() == grid().render_text()

    def test_csv_shape(self):
        lines = grid().render_csv().strip().splitlines()
        assert lines[0] == "model,DEF,EDF,mu,sigma"
        assert lines[1].startswith("m1,50.00,70.00,60.00,")
        assert lines[2].startswith("m2,60.00,,")
        assert lines[3].startswith("mu,")
        assert lines[4].startswith("sigma,")
