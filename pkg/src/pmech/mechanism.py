"""Mechanism container: a channel P_{U|X,Y} with its induced (X,Y,U) law.

A mechanism is either *exact* (closed-form kernel and induced table) or
*empirical* (built from seeded samples; carries the raw count table, and
every statement about it is statistical).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .info import JointPmf, PmfError, TripletPmf, triplet_from_kernel


class MechanismError(ValueError):
    """Raised for invalid mechanism construction or serialization input."""


@dataclass(eq=False)
class Mechanism:
    """A disclosure channel together with the joint law it induces.

    Attributes
    ----------
    kernel : ndarray, shape (x_size, y_size, u_size)
        Rows P_{U|X=x,Y=y}.  For empirical mechanisms these are the
        observed conditional frequencies; rows of zero-mass (x, y) pairs
        are all-zero.
    induced : TripletPmf
        Joint law of (X, Y, U); empirical mechanisms use counts / n.
    flavor : str
        "exact" or "empirical".
    provenance : dict
        Which construction produced the mechanism (plus seed/budget and
        any claimed cardinality bound under ``"u_bound"``).
    counts : ndarray or None
        Raw sample counts (empirical flavor only).
    """

    kernel: np.ndarray = field(repr=False)
    induced: TripletPmf = field(repr=False)
    flavor: str = "exact"
    provenance: dict = field(default_factory=dict)
    counts: np.ndarray | None = field(default=None, repr=False)

    @property
    def u_size(self) -> int:
        return self.induced.u_size

    @property
    def sample_size(self) -> int | None:
        return int(self.counts.sum()) if self.counts is not None else None

    def to_json(self) -> str:
        obj = {
            "u_size": self.u_size,
            "flavor": self.flavor,
            "provenance": self.provenance,
            "kernel": self.kernel.tolist(),
        }
        if self.counts is not None:
            obj["counts"] = self.counts.astype(int).tolist()
        return json.dumps(obj)

    @classmethod
    def from_json(cls, text: str, j: JointPmf) -> "Mechanism":
        obj = json.loads(text)
        kernel = np.asarray(obj["kernel"], dtype=float)
        counts = obj.get("counts")
        if counts is not None:
            counts = np.asarray(counts)
            n = counts.sum()
            if n <= 0:
                raise MechanismError("empirical mechanism with empty counts")
            induced = TripletPmf(counts / n)
            return cls(kernel, induced, "empirical", obj.get("provenance", {}), counts)
        try:
            induced = triplet_from_kernel(j, kernel)
        except PmfError as e:
            raise MechanismError(str(e)) from e
        return cls(kernel, induced, obj.get("flavor", "exact"), obj.get("provenance", {}))


def mechanism_from_kernel(j: JointPmf, kernel: np.ndarray, provenance: dict | None = None) -> Mechanism:
    """Exact mechanism from an arbitrary channel P_{U|X,Y}."""
    induced = triplet_from_kernel(j, kernel)
    return Mechanism(np.asarray(kernel, float), induced, "exact", provenance or {})


def mechanism_from_y_channel(j: JointPmf, p_u_given_y: np.ndarray, provenance: dict | None = None) -> Mechanism:
    """Exact mechanism from a channel P_{U|Y} (so the chain X - Y - U holds)."""
    p_u_given_y = np.asarray(p_u_given_y, dtype=float)
    if p_u_given_y.shape[0] != j.y_size:
        raise MechanismError("P_{U|Y} must have one row per y symbol")
    kernel = np.broadcast_to(
        p_u_given_y[None, :, :], (j.x_size, j.y_size, p_u_given_y.shape[1])
    ).copy()
    prov = {"construction": "y-channel"}
    prov.update(provenance or {})
    return mechanism_from_kernel(j, kernel, prov)


def empirical_mechanism(counts: np.ndarray, provenance: dict) -> Mechanism:
    """Empirical mechanism from a raw (x, y, u) count table."""
    counts = np.asarray(counts)
    n = counts.sum()
    if n <= 0:
        raise MechanismError("empty count table")
    xy = counts.sum(axis=2)
    kernel = np.zeros(counts.shape, dtype=float)
    pos = xy > 0
    kernel[pos] = counts[pos] / xy[pos][:, None]
    return Mechanism(kernel, TripletPmf(counts / n), "empirical", provenance, counts)
