from __future__ import annotations

from typing import Sequence

import plotly.graph_objects as go

from core.enumerate import CensusRow

SURFACE_COLORS = ("#6e8b76", "#8ea89a", "#6B5B9A", "#ff9800", "#f44336", "#90CAF9")


def census_figure(rows: Sequence[CensusRow], log_scale: bool = False) -> go.Figure:
    """Grouped bars: tilings per polygon size, one trace per surface."""
    fig = go.Figure()
    for idx, row in enumerate(rows):
        sizes = sorted(row.counts)
        fig.add_trace(go.Bar(
            x=sizes,
            y=[row.counts[n] for n in sizes],
            name=row.surface_name,
            marker_color=SURFACE_COLORS[idx % len(SURFACE_COLORS)],
            text=[row.counts[n] for n in sizes],
            textposition="outside",
        ))
    fig.update_layout(
        barmode="group",
        height=420,
        xaxis=dict(title="Polygon size n", dtick=2),
        yaxis=dict(title="Tilings up to relabelling", type="log" if log_scale else "linear"),
        legend=dict(orientation="h"),
        margin=dict(t=20),
    )
    return fig


def write_chart(path: str, rows: Sequence[CensusRow], log_scale: bool = False) -> None:
    census_figure(rows, log_scale).write_html(path, include_plotlyjs="cdn", full_html=True)
