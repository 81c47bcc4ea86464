"""SVG and CSV renderings of the bound curves, Clifford bounds and first walls.

Exact values live in the JSON and CSV outputs; SVG coordinates are floats
rounded to 1e-9.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .bounds import PiecewiseCurve, make_upsilon, make_upsilon_tilde, make_xi
from .chern import get_geometry
from .clifford import clifford_bound, clifford_breaks, printed_bound
from .exactnum import Scalar, as_scalar
from .walls import PlanarLine, first_wall

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5")


@dataclass(frozen=True)
class Series:
    """A sampled polyline; ``points`` are exact, rendering uses floats."""

    points: tuple[tuple[Scalar, Scalar], ...]
    style: str = "black"
    label: str = ""
    dashed: bool = False


@dataclass
class PlotSpec:
    window: tuple[Scalar, Scalar, Scalar, Scalar]  # x0, x1, y0, y1
    samples_per_unit: int = 64
    title: str = ""
    series: list[Series] = field(default_factory=list)

    def __post_init__(self):
        x0, x1, y0, y1 = (as_scalar(v) for v in self.window)
        if not (x0 < x1 and y0 < y1):
            raise ValueError("empty plot window")
        if self.samples_per_unit < 8:
            raise ValueError("samples_per_unit must be at least 8")
        self.window = (x0, x1, y0, y1)

    def add_function(self, fn: Callable, lo, hi, style="black", label="", dashed=False):
        lo, hi = as_scalar(lo), as_scalar(hi)
        n = max(2, int(float(hi - lo) * self.samples_per_unit) + 1)
        xs = [lo + (hi - lo) * Fraction(k, n) for k in range(n + 1)]
        self.series.append(Series(tuple((x, fn(x)) for x in xs), style, label, dashed))

    def add_curve(self, curve: PiecewiseCurve, style="red", label="", dashed=False):
        # one polyline per piece so that jumps are not joined
        for p in curve.pieces:
            self.add_function(p.poly, p.lo, p.hi, style, label, dashed)
            label = ""

    def add_line(self, ln: PlanarLine, lo=None, hi=None, style="green", label=""):
        x0, x1, _, _ = self.window
        lo = x0 if lo is None else as_scalar(lo)
        hi = x1 if hi is None else as_scalar(hi)
        self.series.append(Series(((lo, ln(lo)), (hi, ln(hi))), style, label))

    def add_segment(self, p, q, style="red", label="", dashed=False):
        self.series.append(Series(tuple((as_scalar(a), as_scalar(b)) for a, b in (p, q)), style, label, dashed))


def _f(v) -> str:
    return f"{round(float(v), 9):.9g}"


def render_svg(panels: Sequence[PlotSpec], width: int = 480, height: int = 360) -> str:
    """Side-by-side panels in one SVG document."""
    total = width * len(panels)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{height}" '
        f'viewBox="0 0 {total} {height}">'
    ]
    for k, spec in enumerate(panels):
        x0, x1, y0, y1 = (float(v) for v in spec.window)
        sx, sy = (width - 40) / (x1 - x0), (height - 40) / (y1 - y0)
        ox = k * width + 20

        def px(x, y):
            return _f(ox + (float(x) - x0) * sx), _f(20 + (y1 - float(y)) * sy)

        out.append(f'<g id="panel{k}">')
        if spec.title:
            out.append(f'<text x="{_f(ox)}" y="14" font-size="12">{spec.title}</text>')
        if x0 <= 0 <= x1:
            a, b = px(0, y0), px(0, y1)
            out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="gray"/>')
        if y0 <= 0 <= y1:
            a, b = px(x0, 0), px(x1, 0)
            out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="gray"/>')
        for s in spec.series:
            pts = " ".join(",".join(px(x, y)) for x, y in s.points)
            dash = ' stroke-dasharray="4 3"' if s.dashed else ""
            label = f' data-label="{s.label}"' if s.label else ""
            out.append(f'<polyline fill="none" stroke="{s.style}"{dash}{label} points="{pts}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_csv(panels: Sequence[PlotSpec]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["panel", "series", "label", "x", "y"])
    for k, spec in enumerate(panels):
        for j, s in enumerate(spec.series):
            for x, y in s.points:
                w.writerow([k, j, s.label, str(x), str(y)])
    return buf.getvalue()


# -- the five figures ---------------------------------------------------------

def _parabola(x):
    return x * x / 2


def fig1(geom=None, samples: int = 64, **_) -> list[PlotSpec]:
    """Xi on [-1, 1] (extended evenly) below the parabola y = x^2/2."""
    spec = PlotSpec((-1, 1, Fraction(-1, 2), 1), samples, "Xi")
    xi_c = make_xi()
    spec.add_curve(xi_c, "red", "xi")
    spec.add_curve(xi_c.mirrored(), "red")
    spec.add_function(_parabola, -1, 1, "black", "parabola")
    return [spec]


def fig2(geom="triple", samples: int = 64, **_) -> list[PlotSpec]:
    """Clifford-type bound on [0, 1/2] and [3/2, 2] with the stated formulas dashed."""
    geom = get_geometry(geom)
    panels = []
    for lo, hi, y0, y1 in ((0, Fraction(1, 2), Fraction(1, 2), Fraction(5, 2)),
                           (Fraction(3, 2), 2, Fraction(11, 2), Fraction(19, 2))):
        spec = PlotSpec((lo, Fraction(hi) + Fraction(1, 20), y0, y1), samples, f"Clifford bound ({geom.name})")
        cuts = sorted({as_scalar(lo), as_scalar(hi)} | {b for b in clifford_breaks(geom) if lo <= b <= hi})
        for a, b in zip(cuts, cuts[1:]):
            spec.add_function(lambda t: clifford_bound(t, geom).bound, a, b, "black", "bound")
            spec.add_function(lambda t: printed_bound(t, geom), a, b, "blue", "stated", dashed=True)
        panels.append(spec)
    return panels


def _wall_panel(t, geom, samples) -> PlotSpec:
    geom = get_geometry(geom)
    t = as_scalar(t)
    w = geom.curve.wall_width
    spec = PlotSpec((-w, 3, -1, 13), samples, f"first wall, t = {t}")
    spec.add_curve(make_upsilon(-w, 3), "red", "upsilon")
    spec.add_function(_parabola, -w, 3, "black", "parabola")
    wall = first_wall(t, geom)
    spec.add_line(wall.line, -w, 3, "green", "L")
    return spec


def fig3(geom="triple", samples: int = 64, t=Fraction(3, 2), **_) -> list[PlotSpec]:
    """First possible wall at t = 3/2 over Upsilon."""
    return [_wall_panel(t, geom, samples)]


def fig4(geom=None, samples: int = 64, **_) -> list[PlotSpec]:
    """Upsilon (red) and the modified curve Upsilon-tilde (blue) on [-3, 3]."""
    spec = PlotSpec((-3, 3, -1, Fraction(9, 2)), samples, "Upsilon")
    spec.add_curve(make_upsilon(-3, 3), "red", "upsilon")
    spec.add_curve(make_upsilon_tilde(-3, 3), "blue", "upsilon_tilde", dashed=True)
    spec.add_function(_parabola, -3, 3, "black", "parabola")
    return [spec]


def fig5(geom="triple", samples: int = 64, t=Fraction(23, 12), **_) -> list[PlotSpec]:
    """First possible wall at an arbitrary t (default 23/12)."""
    return [_wall_panel(t, geom, samples)]


def build_figure(name: str, geom="triple", samples: int = 64, **kw) -> list[PlotSpec]:
    try:
        fn = {"fig1": fig1, "fig2": fig2, "fig3": fig3, "fig4": fig4, "fig5": fig5}[name]
    except KeyError:
        raise ValueError(f"unknown figure {name!r}; expected one of {FIGURES}") from None
    return fn(geom=geom, samples=samples, **kw)


def emit_figure(name: str, geom="triple", path=None, fmt: str = "svg", samples: int = 64, **kw) -> str:
    panels = build_figure(name, geom, samples, **kw)
    text = render_svg(panels) if fmt == "svg" else render_csv(panels)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
