"""Progress display for long scans, Rich when the terminal allows it, plain text otherwise."""
import os
import sys
import time

from abc import ABC, abstractmethod
from typing import Any, Iterator, Literal, Optional

from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn

from superres.utils.format_utils import format_duration


ProgressMode = Literal["auto", "rich", "simple", "off"]


class ProgressBarBase(ABC):
    """Counts completed units against a known total."""

    def __init__(self, iterable=None, *, total: Optional[int] = None, desc: str = "", unit: str = "pt"):
        if iterable is None and total is None:
            raise ValueError("total must be provided when iterable is None")
        if total is not None and total < 0:
            raise ValueError("total must be greater than or equal to 0")
        self.iterable = iterable
        self.total = total if total is not None else len(iterable)
        self.desc = desc
        self.unit = unit
        self.n = 0
        self.closed = False
        self.start_time: Optional[float] = None

    def __iter__(self) -> Iterator[Any]:
        if self.iterable is None:
            raise TypeError("Must provide iterable to iterate over")
        self.start()
        try:
            for obj in self.iterable:
                yield obj
                self.update(1)
        finally:
            self.close()

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()

    def __call__(self, n: int = 1) -> None:
        # lets the bar be passed straight in as a scan progress callback
        self.update(n)

    def start(self) -> None:
        if self.start_time is None:
            self.start_time = time.time()

    def update(self, n: int = 1) -> None:
        if not self.closed:
            self.n += n
            self.display()

    def close(self) -> None:
        self.closed = True

    def elapsed(self) -> float:
        return time.time() - self.start_time if self.start_time else 0.0

    def eta(self) -> float:
        elapsed = self.elapsed()
        if self.n <= 0 or elapsed <= 0:
            return 0.0
        return (self.total - self.n) * elapsed / self.n

    @abstractmethod
    def display(self) -> None:
        """Display current progress"""


class RichProgressBar(ProgressBarBase):
    def __init__(self, iterable=None, *, total=None, desc="", unit="pt"):
        super().__init__(iterable, total=total, desc=desc, unit=unit)
        self._progress = Progress(
            SpinnerColumn(),
            TextColumn("[bold #fde047]{task.description}"),
            BarColumn(bar_width=40, complete_style="#4ade80", finished_style="#4ade80", style="#9ca3af"),
            TextColumn("[bold #f472b6]{task.percentage:>3.0f}%"),
            TextColumn("•"),
            TextColumn("[bold #06b6d4]{task.completed}/{task.total}[/bold #06b6d4] [#eab308]{task.fields[unit]}"),
            TextColumn("•"),
            TextColumn("[[#4ade80]{task.fields[elapsed]}[/#4ade80]<[#c084fc]{task.fields[remaining]}[/#c084fc]]"),
        )
        self._task = self._progress.add_task(self.desc, total=self.total, unit=self.unit, elapsed="0.0s", remaining="0.0s")

    def start(self) -> None:
        if self.start_time is None:
            self._progress.start()
        super().start()

    def update(self, n: int = 1) -> None:
        if self.closed:
            return
        self.n += n
        self._progress.update(
            self._task,
            advance=n,
            elapsed=format_duration(self.elapsed()),
            remaining=format_duration(self.eta()),
        )

    def display(self) -> None:
        self._progress.refresh()

    def close(self) -> None:
        if not self.closed:
            self._progress.stop()
            self.closed = True


class SimpleProgressBar(ProgressBarBase):
    bar_length = 30

    def display(self) -> None:
        if self.closed or self.total <= 0:
            return
        filled = int(self.bar_length * self.n // self.total)
        bar = '█' * filled + '░' * (self.bar_length - filled)
        percent = 100.0 * self.n / self.total
        line = (
            f"\r{self.desc}: |{bar}| {percent:5.1f}% • ({self.n}/{self.total} {self.unit}) "
            f"• [{format_duration(self.elapsed())}<{format_duration(self.eta())}]"
        )
        print(line, end='', flush=True, file=sys.stderr)

    def close(self) -> None:
        if not self.closed:
            print(file=sys.stderr)
            self.closed = True


class NullProgressBar(ProgressBarBase):
    def display(self) -> None:
        pass


def _terminal_supports_rich() -> bool:
    if not sys.stdout.isatty():
        return False
    return os.getenv('TERM', '') not in ('dumb', 'unknown')


def _get_progress_bar_class(mode: ProgressMode = "auto"):
    if mode == "rich":
        return RichProgressBar
    if mode == "simple":
        return SimpleProgressBar
    if mode == "off":
        return NullProgressBar
    return RichProgressBar if _terminal_supports_rich() else SimpleProgressBar


def progress_bar(iterable=None, desc: str = "", unit: str = "pt", *, total: Optional[int] = None, mode: ProgressMode = "auto"):
    """
    Progress bar with automatic fallback.

    Examples:
        for x in progress_bar(xs, desc="scan1d"):
            ...

        with progress_bar(total=401, desc="scan1d") as bar:
            scan_1d(..., progress=bar)
    """
    return _get_progress_bar_class(mode)(iterable, total=total, desc=desc, unit=unit)
