"""Tiny dependency-free SVG line charts for the demo scripts."""

from pathlib import Path

PALETTE = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def line_chart(path, series, title="", x_label="", y_label="",
               width=640, height=420, log_log=False):
    """Write a multi-series line chart.

    ``series`` is a list of (label, xs, ys) triples.  With ``log_log`` the
    data are plotted on decimal log scales (positive values only).
    """
    import math

    margin = 56

    def tx(values):
        return [math.log10(v) for v in values] if log_log else list(values)

    xs_all = [v for _, xs, _ in series for v in tx(xs)]
    ys_all = [v for _, _, ys in series for v in tx(ys)]
    x_lo, x_hi = min(xs_all), max(xs_all)
    y_lo, y_hi = min(ys_all), max(ys_all)
    x_span = (x_hi - x_lo) or 1.0
    y_span = (y_hi - y_lo) or 1.0

    def to_px(x, y):
        px = margin + (x - x_lo) / x_span * (width - 2 * margin)
        py = height - margin - (y - y_lo) / y_span * (height - 2 * margin)
        return px, py

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.0f}" y="20" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="#333"/>',
        f'<line x1="{margin}" y1="{margin}" x2="{margin}" y2="{height - margin}" '
        f'stroke="#333"/>',
        f'<text x="{width / 2:.0f}" y="{height - 12}" text-anchor="middle" '
        f'font-size="12">{x_label}</text>',
        f'<text x="16" y="{height / 2:.0f}" font-size="12" '
        f'transform="rotate(-90 16 {height / 2:.0f})" text-anchor="middle">{y_label}</text>',
        f'<text x="{margin}" y="{height - margin + 16}" font-size="10">{x_lo:.3g}</text>',
        f'<text x="{width - margin}" y="{height - margin + 16}" font-size="10" '
        f'text-anchor="end">{x_hi:.3g}</text>',
        f'<text x="{margin - 4}" y="{height - margin}" font-size="10" '
        f'text-anchor="end">{y_lo:.3g}</text>',
        f'<text x="{margin - 4}" y="{margin + 4}" font-size="10" '
        f'text-anchor="end">{y_hi:.3g}</text>',
    ]
    for i, (label, xs, ys) in enumerate(series):
        color = PALETTE[i % len(PALETTE)]
        points = " ".join("%.1f,%.1f" % to_px(x, y)
                          for x, y in zip(tx(xs), tx(ys)))
        parts.append(f'<polyline points="{points}" fill="none" '
                     f'stroke="{color}" stroke-width="1.5"/>')
        if label:
            y_leg = margin + 16 * i
            parts.append(f'<line x1="{width - margin - 110}" y1="{y_leg}" '
                         f'x2="{width - margin - 90}" y2="{y_leg}" '
                         f'stroke="{color}" stroke-width="2"/>')
            parts.append(f'<text x="{width - margin - 84}" y="{y_leg + 4}" '
                         f'font-size="11">{label}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")
