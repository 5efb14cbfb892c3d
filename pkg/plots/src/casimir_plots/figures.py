"""Figure builders, one per table kind.

Each builder takes a loaded Table and returns a matplotlib Figure; the
caller owns backend choice and saving.  Column requirements follow the
fuzzy-casimir CLI formats.
"""

import matplotlib.pyplot as plt

from .io import require_columns

__all__ = ["dispersion", "energy", "force", "fit_residuals", "FIGURE_KINDS"]


def _cutoff_frequency(table):
    lam = table.meta.get("lambda")
    if isinstance(lam, (int, float)) and lam > 0:
        return 1.0 / lam
    # CSV tables carry no metadata; the cap is the largest frequency reached
    return max(table.column("omega_nc"))


def dispersion(table, source="input"):
    require_columns(table, ("q", "omega_nc", "omega_comm"), source)
    cap = _cutoff_frequency(table)
    q = table.column("q")
    omega = table.column("omega_nc")

    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(q, omega, "-", color="C0", label="omega(q) = sin(lam q)/lam")
    # the commutative line leaves the physical band at the cap; clip it there
    comm = [(qi, wi) for qi, wi in zip(q, table.column("omega_comm")) if wi <= cap]
    if comm:
        ax.plot(*zip(*comm), "--", color="C1", label="omega = q (commutative)")
    ax.axhline(cap, color="0.4", linestyle=":", label="frequency cap 1/lam")
    ax.set_xlabel("q")
    ax.set_ylabel("omega")
    ax.set_title("bounded dispersion relation")
    ax.legend(loc="lower center")
    fig.tight_layout()
    return fig


def energy(table, source="input"):
    require_columns(
        table,
        ("L", "E_direct", "E_closed", "E_taylor3", "E_subtracted", "E_commutative"),
        source,
    )
    L = table.column("L")
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(6.0, 6.4), sharex=True)

    top.plot(L, table.column("E_closed"), "-", color="C0", label="closed form")
    top.plot(L, table.column("E_direct"), "o", color="C1", markersize=4,
             fillstyle="none", label="direct mode sum")
    top.plot(L, table.column("E_taylor3"), "--", color="C2", label="4-term expansion")
    top.set_ylabel("E(L)")
    top.set_title("segment vacuum energy")
    top.legend()

    bottom.plot(L, table.column("E_subtracted"), "o-", color="C0", markersize=4,
                label="subtracted energy")
    bottom.plot(L, table.column("E_commutative"), "--", color="C3",
                label="-pi/(12 L)")
    bottom.set_xlabel("L")
    bottom.set_ylabel("E - linear - constant")
    bottom.legend()
    fig.tight_layout()
    return fig


def force(table, source="input"):
    require_columns(table, ("L", "force_full", "force_casimir"), source)
    L = table.column("L")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    # both forces are attractive (negative); compare magnitudes on log axes
    ax.loglog(L, [-f for f in table.column("force_full")], "-", color="C0",
              label="|force|, full energy")
    ax.loglog(L, [-f for f in table.column("force_casimir")], "--", color="C1",
              label="|force|, subtracted energy")
    ax.set_xlabel("L")
    ax.set_ylabel("attractive force magnitude")
    ax.set_title("force between segment ends")
    ax.legend()
    fig.tight_layout()
    return fig


def fit_residuals(table, source="input"):
    require_columns(table, ("L", "residual"), source)
    L = table.column("L")
    resid = table.column("residual")
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.axhline(0.0, color="0.6", linewidth=0.8)
    ax.plot(L, resid, "o", color="C0", markersize=4, label="E - fit")
    fit_block = table.meta.get("fit")
    if isinstance(fit_block, dict) and isinstance(
        fit_block.get("residual_rms"), (int, float)
    ):
        rms = fit_block["residual_rms"]
        ax.axhline(rms, color="C1", linestyle=":", label="residual rms")
        ax.axhline(-rms, color="C1", linestyle=":")
    ax.set_xlabel("L")
    ax.set_ylabel("residual")
    ax.set_title("string-ansatz fit residuals")
    ax.legend()
    fig.tight_layout()
    return fig


FIGURE_KINDS = {
    "dispersion": dispersion,
    "energy": energy,
    "force": force,
    "fit_residuals": fit_residuals,
}
