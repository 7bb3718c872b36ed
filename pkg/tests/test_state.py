import pytest
from src.state import SweepState

COLUMNS = ("scan_value", "eta_star")


class TestSweepState:
    def test_defaults(self):
        state = SweepState(columns=COLUMNS)
        assert state.rows == []
        assert state.points == 0
        assert state.engine_points == 0
        assert state.null_points == 0
        assert state.notes == []
        assert state.empty_engine_window is False
        assert state.engine_fraction == 0.0

    def test_untracked_rows_do_not_count(self):
        state = SweepState(columns=COLUMNS)
        state.add_row({"scan_value": 0.1, "eta_star": 0.3})
        assert len(state.rows) == 1
        assert state.points == 0

    def test_tracks_engine_points(self):
        state = SweepState(columns=COLUMNS)
        state.add_row({"scan_value": 0.1, "eta_star": 0.3}, engine=True)
        state.add_row({"scan_value": 0.2, "eta_star": None}, engine=False)
        assert state.points == 2
        assert state.engine_points == 1
        assert state.null_points == 1
        assert state.engine_fraction == 0.5
        assert state.empty_engine_window is False

    def test_empty_engine_window(self):
        state = SweepState(columns=COLUMNS)
        for value in (1.1, 1.2):
            state.add_row({"scan_value": value, "eta_star": None}, engine=False)
        assert state.empty_engine_window is True

    def test_missing_column_raises(self):
        state = SweepState(columns=COLUMNS)
        with pytest.raises(ValueError, match="missing columns: eta_star"):
            state.add_row({"scan_value": 0.1})

    def test_unknown_column_raises(self):
        state = SweepState(columns=COLUMNS)
        with pytest.raises(ValueError, match="unknown columns: mode"):
            state.add_row({"scan_value": 0.1, "eta_star": 0.2, "mode": "engine"})

    def test_notes_keep_order(self):
        state = SweepState(columns=COLUMNS)
        state.note("regime=high_t")
        state.note("temperature_mode=rest")
        assert state.notes == ["regime=high_t", "temperature_mode=rest"]
