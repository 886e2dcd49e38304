"""Render a tracked curve to a figure file.

The report path of the CLI can write a bifurcation-style diagram next to
the CSV trace: eigenvalue estimate against the homotopy parameter, with
turning points marked.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)


def plot_trace(trace, path, title: str | None = None) -> None:
    """Save the (t, lambda) curve of one trace; marks turning points."""
    ts = [pt.t for pt in trace.points]
    lams = [pt.lam for pt in trace.points]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(ts, lams, "-", lw=1.4, color="tab:blue")
    ax.plot(ts, lams, ".", ms=4, color="tab:blue", alpha=0.6)
    for idx, t_star in trace.turning_points:
        ax.plot(trace.points[idx].t, trace.points[idx].lam, "o",
                ms=8, mfc="none", mec="tab:red", mew=1.5)
        ax.annotate(f"t = {t_star:.3f}",
                    (trace.points[idx].t, trace.points[idx].lam),
                    textcoords="offset points", xytext=(6, 6),
                    fontsize=8, color="tab:red")
    ax.plot(ts[-1], lams[-1], "s", ms=7, color="tab:green")
    ax.set_xlabel("homotopy parameter t")
    ax.set_ylabel("eigenvalue estimate")
    ax.grid(True, alpha=0.3)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
