"""Matplotlib renderings of reports, written next to the delimited output.

Everything draws from the already-serialised JSON payload, so a figure can
never disagree with the text report.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

__all__ = ["render_figure"]


def _save(fig, directory: str, name: str) -> str:
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, name)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def _chain_figure(payload: dict):
    steps = payload["chain"]["steps"]
    labels = [s["group"] for s in steps]
    fig, ax = plt.subplots(figsize=(max(4, 1.6 * len(labels)), 2.8))
    xs = range(len(labels))
    ax.step(xs, [len(labels) - i for i in xs], where="post", color="tab:blue")
    for i, lab in enumerate(labels):
        ax.annotate(lab, (i, len(labels) - i), textcoords="offset points",
                    xytext=(4, 6), fontsize=9)
    ax.set_xlabel("collapse stage")
    ax.set_yticks([])
    ax.set_title(f"{payload['gamma']}: {payload['chain']['class']} collapse "
                 f"({payload['chain']['terminal']})")
    return fig


def _space_figure(payload: dict):
    chain = payload["derivative_chain"]
    fig, ax = plt.subplots(figsize=(max(4, 1.4 * len(chain)), 2.4))
    ax.step(range(len(chain)), [len(chain) - i for i in range(len(chain))],
            where="post", color="tab:green")
    for i, lab in enumerate(chain):
        ax.annotate(lab, (i, len(chain) - i), textcoords="offset points",
                    xytext=(4, 6), fontsize=9)
    ax.set_xlabel("derivative")
    ax.set_yticks([])
    ax.set_title(f"[0,{payload['top']}]  rank {payload['cb_rank']}")
    return fig


def _zg_figure(payload: dict):
    layers = payload["stratification"]["layers"]
    sizes = [len(layer) for layer in layers]
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * len(sizes) + 2), 3))
    ax.bar(range(len(sizes)), sizes, color="tab:purple")
    ax.set_xlabel("layer")
    ax.set_ylabel("classes isolated")
    ax.set_xticks(range(len(sizes)))
    ax.set_title(f"{payload['gamma']}: spectrum rank {payload['cb_rank_direct']} "
                 f"(bound {payload['bound']})")
    return fig


def _classify_figure(payload: dict):
    keys = ["mdim_gamma", "breadth_gamma", "breadth_pp1", "superdecomposable_exists",
            "zg_cb_bounds", "zg_cb_exact", "krull_dim_one", "s_infty_stage"]
    lines = [f"{k} = {payload.get(k)}" for k in keys]
    fig, ax = plt.subplots(figsize=(5, 0.4 * len(lines) + 1))
    ax.axis("off")
    ax.set_title(payload["gamma"], loc="left", fontweight="bold")
    for i, line in enumerate(lines):
        ax.text(0.02, 1 - (i + 1) / (len(lines) + 1), line, fontsize=10,
                family="monospace", transform=ax.transAxes)
    return fig


_RENDERERS = {
    "chain": _chain_figure,
    "mdim": _chain_figure,
    "breadth": _chain_figure,
    "cbrank-space": _space_figure,
    "zg": _zg_figure,
    "classify": _classify_figure,
}


def render_figure(command: str, payload: dict, directory: str) -> str | None:
    fn = _RENDERERS.get(command)
    if fn is None:
        return None
    if command == "zg" and "stratification" not in payload:
        return None
    fig = fn(payload)
    stem = payload.get("gamma", payload.get("top", "report"))
    safe = "".join(ch if ch.isalnum() else "_" for ch in str(stem))
    return _save(fig, directory, f"{command}_{safe}.png")
