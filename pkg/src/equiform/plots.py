"""Figure rendering for the report path (written next to the CSV tables)."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def plot_cohomology(dims_total, dims_fiber, path):
    """Bar chart of graded dimensions of the total space and the fiber."""
    degrees = sorted(set(dims_total) | set(dims_fiber))
    if not degrees:
        degrees = [0]
    width = 0.4
    fig, ax = plt.subplots(figsize=(max(4, 0.5 * len(degrees) + 2), 3.2))
    xs = list(range(len(degrees)))
    ax.bar([x - width / 2 for x in xs],
           [dims_total.get(d, 0) for d in degrees], width, label="total space")
    ax.bar([x + width / 2 for x in xs],
           [dims_fiber.get(d, 0) for d in degrees], width, label="fiber")
    ax.set_xticks(xs)
    ax.set_xticklabels([str(d) for d in degrees])
    ax.set_xlabel("degree")
    ax.set_ylabel("dimension")
    ax.set_title("cohomology dimensions")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_betti_table(betti, path):
    """Annotated grid of the resolution Betti numbers (i = column)."""
    if not betti:
        betti = {(0, 0): 0}
    imax = max(i for i, _ in betti)
    jmax = max(j for _, j in betti)
    fig, ax = plt.subplots(figsize=(2 + 0.7 * (imax + 1), 1.5 + 0.35 * (jmax + 1)))
    for (i, j), v in betti.items():
        ax.text(i, j, str(v), ha="center", va="center", fontsize=10)
    ax.set_xlim(-0.7, imax + 0.7)
    ax.set_ylim(jmax + 0.9, -0.9)
    ax.set_xticks(range(imax + 1))
    ax.set_yticks(range(0, jmax + 1, 2 if jmax > 12 else 1))
    ax.set_xlabel("homological degree")
    ax.set_ylabel("internal degree")
    ax.set_title("Betti table of the minimal free resolution")
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_page(page, path):
    """Dimension grid of one spectral sequence page; differentials drawn."""
    dims = page.dims
    if not dims:
        dims = {(0, 0): 0}
    pmax = max(p for p, _ in dims)
    qmax = max(q for _, q in dims)
    fig, ax = plt.subplots(figsize=(2 + 0.55 * (pmax + 1), 1.8 + 0.5 * (qmax + 1)))
    for (p, q), v in dims.items():
        ax.text(p, q, str(v), ha="center", va="center", fontsize=10)
    for (p, q), mat in page.nonzero_differentials().items():
        ax.annotate("", xy=(p + page.r - 0.15, q - page.r + 1 + 0.1),
                    xytext=(p + 0.15, q - 0.1),
                    arrowprops=dict(arrowstyle="->", color="tab:red", lw=1.2))
    ax.set_xlim(-0.8, pmax + 1.0)
    ax.set_ylim(-0.85, qmax + 0.9)
    ax.set_xticks(range(pmax + 1))
    ax.set_yticks(range(qmax + 1))
    ax.set_xlabel("filtration degree p")
    ax.set_ylabel("complementary degree q")
    ax.set_title(f"page E_{page.r}")
    ax.grid(True, alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
