"""Matplotlib figures written to files next to CSV output."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .geometry import UnitBall2D, boundary_point  # noqa: E402
from .minmax import f_min_exact, f_value  # noqa: E402
from .rational import Q  # noqa: E402
from .report import CampaignReport  # noqa: E402

__all__ = ["f_profile_figure", "campaign_figure"]


def f_profile_figure(ball: UnitBall2D, path: str | Path, samples_per_edge: int = 24) -> None:
    """f along the boundary parameter t in [0, 1), with the exact minimizers marked."""
    ts, vals = [], []
    for k in range(ball.n):
        for j in range(samples_per_edge):
            t = (Q(k) + Q(j, samples_per_edge)) / ball.n
            ts.append(float(t))
            vals.append(float(f_value(ball, boundary_point(ball, t))))
    cert = f_min_exact(ball)
    fig, ax = plt.subplots(figsize=(6, 3.2))
    ax.plot(ts, vals, color="black", lw=1)
    for m in cert.minimizers:
        lo, hi = m.t_interval(ball.n)
        if m.is_point:
            ax.plot([float(lo)], [float(cert.min_value)], "o", color="tab:red", ms=4)
        else:
            ax.plot([float(lo), float(hi)], [float(cert.min_value)] * 2, color="tab:red", lw=3)
    ax.axhline(3, color="gray", ls="--", lw=0.8)
    ax.set_xlabel("boundary parameter t")
    ax.set_ylabel("f(y(t))")
    ax.set_xlim(0, 1)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)


def campaign_figure(reports: list[CampaignReport], path: str | Path) -> None:
    """One histogram per campaign of its first numeric per-instance column."""
    fig, axes = plt.subplots(len(reports), 1, figsize=(6, 2.4 * len(reports)), squeeze=False)
    for ax, rep in zip(axes[:, 0], reports):
        key = next(
            (
                k
                for k, v in (rep.rows[0].items() if rep.rows else [])
                if k != "index" and not isinstance(v, (str, bool))
            ),
            None,
        )
        if key is None:
            ax.set_axis_off()
            continue
        data = [float(r[key]) for r in rep.rows]
        ax.hist(data, bins=40, color="tab:blue")
        ax.set_title(f"{rep.claim}: {key} ({rep.passed_count}/{rep.trials} pass)", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
