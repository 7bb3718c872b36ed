import logging
from dataclasses import dataclass, field
from typing import Any

logger = logging.getLogger(__name__)


@dataclass
class SweepState:
    """Rows of one subcommand run plus the counters the exit status depends on."""
    columns: tuple[str, ...]
    rows: list[dict[str, Any]] = field(default_factory=list)
    points: int = 0
    engine_points: int = 0
    null_points: int = 0
    notes: list[str] = field(default_factory=list)

    @property
    def empty_engine_window(self) -> bool:
        return self.points > 0 and self.engine_points == 0

    @property
    def engine_fraction(self) -> float:
        return self.engine_points / self.points if self.points else 0.0

    def add_row(self, row: dict[str, Any], *, engine: bool | None = None) -> None:
        missing = [c for c in self.columns if c not in row]
        if missing:
            raise ValueError(f"row is missing columns: {', '.join(missing)}")
        extra = [k for k in row if k not in self.columns]
        if extra:
            raise ValueError(f"row has unknown columns: {', '.join(extra)}")
        self.rows.append(row)
        if engine is None:
            return
        self.points += 1
        if engine:
            self.engine_points += 1
        else:
            self.null_points += 1

    def note(self, text: str) -> None:
        self.notes.append(text)
        logger.debug("Dataset note: %s", text)
