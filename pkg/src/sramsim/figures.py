"""Render simulation results as figures.

Two plots cover what a bench engineer wants to see after a run: the
signal trace as a logic-analyzer style strip chart, and the measured
access latencies over time. Both are written as PNG files next to the
run's other outputs.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

NAN = float("nan")


def _steps(changes, name, until):
    """(times_ns, values) step data for one signal; Unknown becomes a gap."""
    xs, ys = [], []
    for time, signal, value in changes:
        if signal != name:
            continue
        idx = value.to_index()
        xs.append(time / 1000.0)
        ys.append(NAN if idx is None else idx)
    if xs:
        xs.append(until / 1000.0)
        ys.append(ys[-1])
    return xs, ys


def save_waveform_figure(changes, signals, until, path):
    """Strip chart of every signal's applied changes, one row per signal."""
    fig, axes = plt.subplots(len(signals), 1, sharex=True,
                             figsize=(10, 1.2 * len(signals)))
    if len(signals) == 1:
        axes = [axes]
    for ax, (name, width) in zip(axes, signals):
        xs, ys = _steps(changes, name, until)
        if xs:
            ax.step(xs, ys, where="post", linewidth=1.5)
        ax.set_ylabel(name, rotation=0, ha="right", va="center")
        if width == 1:
            ax.set_yticks([0, 1])
        ax.set_ylim(-0.5, (1 << width) - 0.5)
        ax.grid(True, axis="x", alpha=0.3)
    axes[-1].set_xlabel("time [ns]")
    fig.suptitle("simulation trace")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_access_figure(measurements, path):
    """Measured access latency per trigger, in ns."""
    fig, ax = plt.subplots(figsize=(8, 4))
    if measurements:
        xs = [m.trigger_time / 1000.0 for m in measurements]
        ys = [m.latency / 1000.0 for m in measurements]
        colors = ["tab:blue" if m.cause == "AddressChange" else "tab:red"
                  for m in measurements]
        ax.scatter(xs, ys, c=colors, zorder=3)
        ax.vlines(xs, 0, ys, colors="lightgray", zorder=2)
        mean = sum(ys) / len(ys)
        ax.axhline(mean, color="gray", linestyle="--", linewidth=1,
                   label=f"mean {mean:.3f} ns")
        ax.legend(loc="best")
    else:
        ax.text(0.5, 0.5, "no access measurements", ha="center", va="center",
                transform=ax.transAxes)
    ax.set_xlabel("trigger time [ns]")
    ax.set_ylabel("access latency [ns]")
    ax.set_title("memory access time")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
