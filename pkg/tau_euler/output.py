"""Payload documents and CSV / JSON / SVG emission."""

import csv
import io
import json
import logging
import math
from pathlib import Path
from string import Template
from typing import Dict, Iterable, List, Literal, Optional, Sequence, TextIO

from pydantic import BaseModel

from .boundary_scan import ZeroCloudPoint
from .satotate import SatoTateReport
from .tau_series import TauTable

LOGGER = logging.getLogger(__name__)


class Payload(BaseModel):
    @classmethod
    def from_json(cls, value: str):
        return cls(**json.loads(value))

    def to_json(self) -> str:
        return self.json()


class TauRow(Payload):
    n: int
    # decimal string; tau(n) outgrows 64-bit integers
    tau: str


class ClassifyPayload(Payload):
    poly: str
    verdict: Literal["unitary", "non-unitary"]
    m: Optional[int] = None
    witness_x0: Optional[str] = None
    witness_value: Optional[str] = None
    product: Optional[str] = None
    consequence: str


class CharacterPayload(Payload):
    poly: str
    decomposition: str
    coefficients: Dict[str, int]
    sign: Optional[int] = None
    verdict: Optional[str] = None
    theta0: Optional[float] = None
    value: Optional[float] = None
    max_abs: Optional[float] = None
    certified_by: Optional[str] = None


class VerifyRow(Payload):
    identity: str
    form: Literal["local", "truncated"]
    m: Optional[int] = None
    s: Optional[str] = None
    cutoff: int
    max_error: float
    max_relative_error: Optional[float] = None
    passed: bool


def tau_rows(table: TauTable) -> List[TauRow]:
    return [TauRow(n=n, tau=str(value)) for n, value in enumerate(table.values, 1)]


def json_array(rows: Iterable[BaseModel]) -> str:
    return "[" + ",".join(row.json() for row in rows) + "]"


def write_csv(rows: Sequence[BaseModel], columns: Sequence[str], stream: TextIO):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        fields = row.dict()
        writer.writerow([_cell(fields[column]) for column in columns])


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def csv_text(rows: Sequence[BaseModel], columns: Sequence[str]) -> str:
    buffer = io.StringIO()
    write_csv(rows, columns, buffer)
    return buffer.getvalue()


def emit(text: str, path: Optional[Path], stream: TextIO):
    """Write text to path, or to stream when no path is given."""
    if path is None:
        stream.write(text if text.endswith("\n") else text + "\n")
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    LOGGER.info("Wrote %s", path)


SVG_DOCUMENT = Template(
    """<svg xmlns="http://www.w3.org/2000/svg" width="$width" height="$height" \
viewBox="0 0 $width $height">
<title>$title</title>
<rect x="0" y="0" width="$width" height="$height" fill="white"/>
<line x1="$left" y1="$bottom" x2="$right" y2="$bottom" stroke="black"/>
<line x1="$left" y1="$top" x2="$left" y2="$bottom" stroke="black"/>
$body
<text x="$left" y="$caption_y" font-size="12">$caption</text>
</svg>
"""
)
SVG_BAR = Template(
    '<rect x="$x" y="$y" width="$w" height="$h" fill="steelblue" fill-opacity="0.6"/>'
)
SVG_CURVE = Template('<polyline points="$points" fill="none" stroke="crimson"/>')
SVG_POINT = Template('<circle cx="$x" cy="$y" r="1.5" fill="$color"/>')
SVG_AXIS = Template(
    '<line x1="$x" y1="$top" x2="$x" y2="$bottom" stroke="gray" '
    'stroke-dasharray="4 2"/>'
)

WIDTH, HEIGHT, MARGIN = 640, 400, 40


def _frame(title: str, caption: str, body: List[str]) -> str:
    return SVG_DOCUMENT.substitute(
        width=WIDTH,
        height=HEIGHT,
        title=title,
        left=MARGIN,
        right=WIDTH - MARGIN,
        top=MARGIN,
        bottom=HEIGHT - MARGIN,
        caption_y=HEIGHT - MARGIN / 4,
        caption=caption,
        body="\n".join(body),
    )


def histogram_svg(report: SatoTateReport) -> str:
    """Empirical angle density as bars, (2/pi) sin^2 overlaid as a curve."""
    plot_w, plot_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN
    densities = [
        b.count / (report.count * (b.upper - b.lower)) if report.count else 0.0
        for b in report.histogram
    ]
    curve_x = [math.pi * k / 200 for k in range(201)]
    curve_y = [2 / math.pi * math.sin(x) ** 2 for x in curve_x]
    top = max(max(densities, default=0.0), max(curve_y)) * 1.1

    def sx(theta):
        return MARGIN + plot_w * theta / math.pi

    def sy(density):
        return HEIGHT - MARGIN - plot_h * density / top

    body = [
        SVG_BAR.substitute(
            x=f"{sx(b.lower):.2f}",
            y=f"{sy(d):.2f}",
            w=f"{sx(b.upper) - sx(b.lower):.2f}",
            h=f"{HEIGHT - MARGIN - sy(d):.2f}",
        )
        for b, d in zip(report.histogram, densities)
    ]
    points = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(curve_x, curve_y))
    body.append(SVG_CURVE.substitute(points=points))
    caption = f"{report.count} primes, sup distance {report.sup_distance:.4f}"
    return _frame("Sato-Tate angle histogram", caption, body)


def scatter_svg(points: Sequence[ZeroCloudPoint], title: str) -> str:
    """Zero cloud in the (sigma, t) plane with the line sigma = 0 dashed."""
    plot_w, plot_h = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN
    span_sigma = max((abs(p.sigma) for p in points), default=0.0) or 1.0
    span_t = max((abs(p.t) for p in points), default=0.0) or 1.0

    def sx(sigma):
        return MARGIN + plot_w * (sigma + span_sigma) / (2 * span_sigma)

    def sy(t):
        return HEIGHT - MARGIN - plot_h * (t + span_t) / (2 * span_t)

    body = [SVG_AXIS.substitute(x=f"{sx(0):.2f}", top=MARGIN, bottom=HEIGHT - MARGIN)]
    body.extend(
        SVG_POINT.substitute(
            x=f"{sx(p.sigma):.2f}",
            y=f"{sy(p.t):.2f}",
            color="crimson" if abs(p.sigma) > 1e-9 else "steelblue",
        )
        for p in points
    )
    caption = f"{len(points)} roots, |sigma| <= {span_sigma:.4g}, |t| <= {span_t:.4g}"
    return _frame(title, caption, body)
