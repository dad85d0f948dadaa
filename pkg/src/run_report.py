"""Run report generation.

Collects the verdicts and details of one CLI command into a RunReport and
renders it as rich text or as a single JSON record.
"""

from __future__ import annotations

import json
import os
import time
from contextlib import contextmanager
from typing import Any, Iterator

from pydantic import BaseModel
from rich.console import Console
from rich.markdown import Markdown
from rich.table import Table

from src.fixtures import fixture_checksums
from src.types import RunReport


class ReportBuilder:
    def __init__(
        self,
        command: str,
        parameters: dict[str, Any],
        data_dir: str | os.PathLike[str] | None = None,
    ) -> None:
        self.command = command
        self.parameters = parameters
        self.data_dir = data_dir
        self.verdicts: dict[str, bool] = {}
        self.details: dict[str, Any] = {}
        self.timings: dict[str, float] = {}

    @contextmanager
    def timed(self, label: str) -> Iterator[None]:
        started = time.perf_counter()
        try:
            yield
        finally:
            self.timings[label] = round(time.perf_counter() - started, 4)

    def verdict(self, name: str, passed: bool) -> None:
        self.verdicts[name] = bool(passed)

    def detail(self, name: str, value: Any) -> None:
        if isinstance(value, BaseModel):
            value = value.model_dump(mode="json")
        self.details[name] = value

    def build(self, exit_code: int | None = None) -> RunReport:
        if exit_code is None:
            exit_code = 0 if all(self.verdicts.values()) else 1
        return RunReport(
            command=self.command,
            parameters=self.parameters,
            verdicts=self.verdicts,
            details=self.details,
            timings=self.timings,
            fixture_checksums=fixture_checksums(self.data_dir),
            exit_code=exit_code,
        )


def comparable(report: RunReport) -> dict[str, Any]:
    """Everything but the timings; identical invocations agree on this."""
    return report.model_dump(mode="json", exclude={"timings"})


def to_json(report: RunReport) -> str:
    return json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True)


def _format_value(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return f"```\n{json.dumps(value, indent=2, sort_keys=True)}\n```"
    return f"`{value}`"


def to_markdown(report: RunReport) -> str:
    lines = [f"# {report.command}", ""]
    if report.parameters:
        params = ", ".join(f"{key}={value}" for key, value in sorted(report.parameters.items()))
        lines += [f"**Parameters**: {params}", ""]
    if report.details:
        lines += ["## Details", ""]
        for key, value in report.details.items():
            lines += [f"**{key}**: {_format_value(value)}", ""]
    if report.fixture_checksums:
        lines += ["## Fixtures", ""]
        lines += [f"- {name}: `{digest}`" for name, digest in sorted(report.fixture_checksums.items())]
        lines.append("")
    return "\n".join(lines)


def render(report: RunReport, console: Console, fmt: str = "text") -> None:
    if fmt == "json":
        console.print_json(to_json(report))
        return

    console.print(Markdown(to_markdown(report)))
    table = Table(title="Verdicts", show_lines=False)
    table.add_column("check")
    table.add_column("result")
    for name, passed in report.verdicts.items():
        table.add_row(name, "[green]pass[/]" if passed else "[red]FAIL[/]")
    console.print(table)
    if report.timings:
        spent = ", ".join(f"{label} {seconds:.2f}s" for label, seconds in report.timings.items())
        console.print(f"[dim]{spent}[/]")
    style = "bold green" if report.exit_code == 0 else "bold red"
    console.print(f"[{style}]exit {report.exit_code}[/]")
