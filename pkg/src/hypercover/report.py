"""HTML report of computed tables."""

from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from jinja2 import Template

from hypercover import __version__
from hypercover.tables import TableResult

HTML_TEMPLATE = """
<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <title>hypercover tables</title>
    <style>
        body { font-family: -apple-system, "Segoe UI", Roboto, Arial, sans-serif; margin: 2rem; }
        h1 { color: #343a40; }
        table { border-collapse: collapse; margin-bottom: 2rem; }
        th, td { border: 1px solid #dee2e6; padding: 0.3rem 0.8rem; text-align: right; }
        th { background-color: #f1f3f5; }
        td.unknown { background-color: #fff3cd; }
        .meta { color: #6c757d; font-size: 0.9rem; }
    </style>
</head>
<body>
    <h1>hypercover tables</h1>
    <p class="meta">hypercover {{ version }} &middot; seed {{ seed }}{% if stamp %} &middot; {{ stamp }}{% endif %}</p>
    {% for table in tables %}
    <h2>{{ table.title }} <small class="meta">({{ table.table_id }})</small></h2>
    <table>
        <tr>{% for column in table.columns %}<th>{{ column }}</th>{% endfor %}</tr>
        {% for row in table.rows %}
        <tr>{% for cell in row %}<td{% if cell == "unknown" %} class="unknown"{% endif %}>{{ cell }}</td>{% endfor %}</tr>
        {% endfor %}
    </table>
    {% endfor %}
</body>
</html>
"""


def render_report(tables: Sequence[TableResult], seed: int, timestamp: bool = True) -> str:
    """Render tables to a standalone HTML page."""
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M UTC") if timestamp else ""
    template = Template(HTML_TEMPLATE)
    return template.render(tables=tables, seed=seed, version=__version__, stamp=stamp)


def write_report(tables: Sequence[TableResult], path: Path, seed: int) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(render_report(tables, seed))
    return path
