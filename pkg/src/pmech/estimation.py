"""Statistical estimation on empirical (x, y, u) contingency tables.

Sampled mechanisms are summarized by integer count tables of shape
(x_size, y_size, u_size).  Plug-in information measures computed on such
tables carry an upward O(cells/n) bias, so every reported quantity comes
with a nonparametric-bootstrap tolerance ``delta``:

    delta = 3 * sd_bootstrap + max(0, bootstrap bias estimate)

which is the "3 sigma" band widened by the estimated plug-in bias.  The
Miller-Madow corrected value is reported alongside the raw plug-in value.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .info import entropy_bits

QUANTITIES = ("i_ux", "i_yu", "i_xu_given_y", "h_y_given_ux", "key_residual")

_LN2 = float(np.log(2.0))


def _entropies_bits(p: np.ndarray) -> dict[str, float]:
    return {
        "x": entropy_bits(p.sum(axis=(1, 2))),
        "y": entropy_bits(p.sum(axis=(0, 2))),
        "u": entropy_bits(p.sum(axis=(0, 1))),
        "xy": entropy_bits(p.sum(axis=2)),
        "xu": entropy_bits(p.sum(axis=1)),
        "yu": entropy_bits(p.sum(axis=0)),
        "xyu": entropy_bits(p),
    }


def _stats_from_entropies(h: dict[str, float]) -> dict[str, float]:
    i_ux = h["x"] + h["u"] - h["xu"]
    i_yu = h["y"] + h["u"] - h["yu"]
    i_xu_given_y = h["xy"] + h["yu"] - h["y"] - h["xyu"]
    h_y_given_ux = h["xyu"] - h["xu"]
    h_y_given_x = h["xy"] - h["x"]
    residual = abs(i_yu - (i_ux + h_y_given_x - h_y_given_ux - i_xu_given_y))
    return {
        "i_ux": i_ux,
        "i_yu": i_yu,
        "i_xu_given_y": i_xu_given_y,
        "h_y_given_ux": h_y_given_ux,
        "key_residual": residual,
    }


def triplet_statistics_bits(p: np.ndarray) -> dict[str, float]:
    """Plug-in I(U;X), I(Y;U), I(X;U|Y), H(Y|U,X) and key-identity residual."""
    return _stats_from_entropies(_entropies_bits(p))


def _miller_madow_bits(counts: np.ndarray, n: int) -> dict[str, float]:
    """Miller-Madow corrected statistics (support-size bias correction)."""
    p = counts / n

    def m(axis):
        return int(np.count_nonzero(counts.sum(axis=axis) if axis else counts))

    h = _entropies_bits(p)
    corr = {
        "x": m((1, 2)), "y": m((0, 2)), "u": m((0, 1)),
        "xy": m((2,)), "xu": m((1,)), "yu": m((0,)), "xyu": m(()),
    }
    hc = {k: h[k] + (corr[k] - 1) / (2.0 * n * _LN2) for k in h}
    return _stats_from_entropies(hc)


@dataclass
class EmpiricalEstimate:
    """Point estimates with bootstrap tolerances for one sampled triplet."""

    n: int
    point: dict[str, float]
    miller_madow: dict[str, float]
    sd: dict[str, float]
    bias: dict[str, float]
    delta: dict[str, float] = field(default_factory=dict)
    resamples: int = 0

    def in_base(self, base: float) -> "EmpiricalEstimate":
        if base == 2.0:
            return self
        s = 1.0 / float(np.log2(base))
        scale = lambda d: {k: v * s for k, v in d.items()}
        return EmpiricalEstimate(
            self.n, scale(self.point), scale(self.miller_madow),
            scale(self.sd), scale(self.bias), scale(self.delta), self.resamples,
        )


def estimate_triplet(
    counts: np.ndarray,
    resamples: int = 200,
    seed: int | None = 0,
    base: float = 2.0,
) -> EmpiricalEstimate:
    """Estimate the audit quantities of an empirical triplet with tolerances.

    Parameters
    ----------
    counts : int array, shape (x_size, y_size, u_size)
        Raw sample counts.
    resamples : int
        Bootstrap resamples for the tolerance band (0 disables bootstrap,
        leaving sd/bias/delta at zero).
    seed : int or None
        Seed for the bootstrap resampling stream.
    """
    counts = np.asarray(counts)
    n = int(counts.sum())
    if n <= 0:
        raise ValueError("empty count table")
    p = counts / n
    point = _stats_from_entropies(_entropies_bits(p))
    mm = _miller_madow_bits(counts, n)

    sd = {k: 0.0 for k in QUANTITIES}
    bias = {k: 0.0 for k in QUANTITIES}
    if resamples > 0:
        rng = np.random.default_rng(seed)
        flat = p.ravel()
        boot = np.empty((resamples, len(QUANTITIES)))
        for b in range(resamples):
            re_counts = rng.multinomial(n, flat).reshape(counts.shape)
            stats = _stats_from_entropies(_entropies_bits(re_counts / n))
            boot[b] = [stats[k] for k in QUANTITIES]
        means = boot.mean(axis=0)
        sds = boot.std(axis=0, ddof=1)
        for i, k in enumerate(QUANTITIES):
            sd[k] = float(sds[i])
            bias[k] = float(means[i] - point[k])

    delta = {k: 3.0 * sd[k] + max(0.0, bias[k]) for k in QUANTITIES}
    est = EmpiricalEstimate(n, point, mm, sd, bias, delta, resamples)
    return est.in_base(base)
