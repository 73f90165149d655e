"""
Utility functions for the tubal toolkit.

Includes:
- Console helpers (stderr, so metrics can stream to stdout)
- JSON save/load helpers
- Metrics writers (CSV / JSON)
"""

import csv
import json
import sys
from pathlib import Path
from typing import Any, Iterable

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

# Global console instance
console = Console(stderr=True)


def print_header(title: str, subtitle: str = ""):
    """Print a styled header."""
    console.print(Panel(f"[bold blue]{title}[/bold blue]\n[italic]{subtitle}[/italic]", expand=False))


def print_info(msg: str):
    console.print(f"[cyan]INFO:[/cyan] {msg}")


def print_error(msg: str):
    console.print(f"[bold red]ERROR:[/bold red] {msg}")


def print_warning(msg: str):
    console.print(f"[bold yellow]WARNING:[/bold yellow] {msg}")


def print_success(msg: str):
    console.print(f"[bold green]SUCCESS:[/bold green] {msg}")


def print_metrics_table(rows: list[dict], title: str = "Summary", columns: Iterable[str] | None = None):
    """
    Print mean rows (rep == -1), or all rows when there are none, as a table.

    Args:
        rows: Flat metric dicts as written to the output file.
        title: Table title.
        columns: Metric columns to show (default: every numeric column).
    """
    shown = [r for r in rows if r.get("rep") == -1] or rows
    if not shown:
        return
    if columns is None:
        skip = {"experiment", "rep", "seed"}
        columns = [k for k, v in shown[0].items() if k not in skip and isinstance(v, (int, float, str))]
    table = Table(title=title)
    for col in columns:
        table.add_column(col, style="cyan" if col == "method" else "magenta")
    for row in shown:
        table.add_row(*(_fmt(row.get(col)) for col in columns))
    console.print(table)


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.4g}"
    return "" if value is None else str(value)


def save_json(data: Any, path: Path, quiet: bool = False) -> None:
    """
    Save data to a JSON file with pretty formatting.

    Args:
        data: The data to serialize.
        path: The output file path, or "-" for stdout.
        quiet: Skip the console notice.
    """
    if str(path) == "-":
        json.dump(data, sys.stdout, indent=2, ensure_ascii=False)
        sys.stdout.write("\n")
        return
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, ensure_ascii=False)
        f.write("\n")
    if not quiet:
        print_info(f"Saved: {path}")


def fieldnames_of(rows: list[dict]) -> list[str]:
    """Union of row keys in first-seen order."""
    names: dict[str, None] = {}
    for row in rows:
        for key in row:
            names.setdefault(key, None)
    return list(names)


def save_rows_csv(rows: list[dict], path: Path, quiet: bool = False) -> None:
    """
    Write flat dict rows as RFC-4180 CSV with a header line.

    Args:
        rows: Rows to write; missing keys become empty cells.
        path: Output path, or "-" for stdout.
        quiet: Skip the console notice.
    """
    names = fieldnames_of(rows)

    def _write(f):
        writer = csv.DictWriter(f, fieldnames=names, restval="")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})

    if str(path) == "-":
        _write(sys.stdout)
        return
    with open(path, 'w', encoding='utf-8', newline='') as f:
        _write(f)
    if not quiet:
        print_info(f"Saved: {path}")


def write_metrics(rows: list[dict], path: Path, fmt: str = "csv", quiet: bool = False) -> None:
    """Write metric rows as CSV or as a JSON list with the same keys."""
    if fmt == "csv":
        save_rows_csv(rows, path, quiet)
    elif fmt == "json":
        names = fieldnames_of(rows)
        save_json([{k: row.get(k) for k in names} for row in rows], path, quiet)
    else:
        raise ValueError(f"unknown metrics format {fmt!r}")
