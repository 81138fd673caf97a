"""Exact probability objects and information measures on finite alphabets.

Everything here is deterministic double-precision arithmetic on explicit
probability tables.  Conventions used throughout the package:

- ``0 * log 0 = 0`` by continuity,
- conditional quantities skip conditioning events of probability zero,
- information is measured in the configured log base (default 2, i.e. bits).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

TAU_NORM = 1e-9


class PmfError(ValueError):
    """Raised when a probability table fails validation."""


def _as_clean_pmf(p, tau: float, what: str) -> np.ndarray:
    arr = np.asarray(p, dtype=float)
    if arr.size == 0:
        raise PmfError(f"{what}: empty table")
    if np.any(np.isnan(arr)) or np.any(np.isinf(arr)):
        raise PmfError(f"{what}: non-finite entry")
    if arr.min() < -tau:
        raise PmfError(f"{what}: negative entry {arr.min():.3e}")
    total = arr.sum()
    if abs(total - 1.0) > tau:
        raise PmfError(f"{what}: sums to {total!r}, expected 1 within {tau:.1e}")
    arr = np.clip(arr, 0.0, None)
    arr.setflags(write=False)
    return arr


def _plogp_bits(p: np.ndarray) -> np.ndarray:
    # p * log2 p with the 0 log 0 = 0 convention
    out = np.zeros_like(p)
    mask = p > 0
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def entropy_bits(p) -> float:
    p = np.asarray(p, dtype=float)
    return float(-_plogp_bits(p).sum())


def entropy(p, base: float = 2.0, tau: float = TAU_NORM) -> float:
    """Shannon entropy of a pmf in the given log base.

    Validates the pmf (nonnegative, normalized within ``tau``).  By
    construction ``entropy(p, b) == entropy(p, 2) / log2(b)``.
    """
    arr = _as_clean_pmf(p, tau, "pmf")
    h = entropy_bits(arr)
    if base == 2.0:
        return h
    return h / np.log2(base)


def _to_base(value_bits: float, base: float) -> float:
    return value_bits if base == 2.0 else value_bits / np.log2(base)


@dataclass(frozen=True, eq=False)
class JointPmf:
    """Joint distribution of a private variable X and a useful variable Y.

    The table ``p`` has shape ``(x_size, y_size)``: rows index x, columns
    index y.  Marginals and conditionals are derived on access.
    """

    p: np.ndarray = field(repr=False)
    tau: float = TAU_NORM

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=float)
        if arr.ndim != 2:
            raise PmfError("joint table must be 2-D (x rows, y columns)")
        object.__setattr__(self, "p", _as_clean_pmf(arr, self.tau, "joint pmf"))

    @property
    def x_size(self) -> int:
        return self.p.shape[0]

    @property
    def y_size(self) -> int:
        return self.p.shape[1]

    @property
    def p_x(self) -> np.ndarray:
        return self.p.sum(axis=1)

    @property
    def p_y(self) -> np.ndarray:
        return self.p.sum(axis=0)

    def cond_y_given_x(self) -> np.ndarray:
        """Rows P_{Y|X=x}; rows with P_X(x)=0 are left all-zero."""
        px = self.p_x
        out = np.zeros_like(self.p)
        pos = px > 0
        out[pos] = self.p[pos] / px[pos, None]
        return out

    def cond_x_given_y(self) -> np.ndarray:
        """Columns P_{X|Y=y}; columns with P_Y(y)=0 are left all-zero."""
        py = self.p_y
        out = np.zeros_like(self.p)
        pos = py > 0
        out[:, pos] = self.p[:, pos] / py[pos]
        return out

    # -- information measures (bits unless a base is passed) -----------------

    def h_x(self, base: float = 2.0) -> float:
        return _to_base(entropy_bits(self.p_x), base)

    def h_y(self, base: float = 2.0) -> float:
        return _to_base(entropy_bits(self.p_y), base)

    def h_xy(self, base: float = 2.0) -> float:
        return _to_base(entropy_bits(self.p), base)

    def h_y_given_x(self, base: float = 2.0) -> float:
        return _to_base(entropy_bits(self.p) - entropy_bits(self.p_x), base)

    def h_x_given_y(self, base: float = 2.0) -> float:
        return _to_base(entropy_bits(self.p) - entropy_bits(self.p_y), base)

    def mutual_information(self, base: float = 2.0) -> float:
        bits = entropy_bits(self.p_x) + entropy_bits(self.p_y) - entropy_bits(self.p)
        return _to_base(max(bits, 0.0), base)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {"x_size": self.x_size, "y_size": self.y_size, "pmf": self.p.tolist()}
        )

    @classmethod
    def from_json(cls, text: str) -> "JointPmf":
        obj = json.loads(text)
        arr = np.asarray(obj["pmf"], dtype=float)
        if arr.shape != (obj["x_size"], obj["y_size"]):
            raise PmfError(
                f"pmf shape {arr.shape} does not match declared sizes "
                f"({obj['x_size']}, {obj['y_size']})"
            )
        return cls(arr)


def mutual_information(j: JointPmf, base: float = 2.0) -> float:
    """I(X;Y) of a joint table, clamped to be nonnegative."""
    return j.mutual_information(base)


@dataclass(frozen=True, eq=False)
class TripletPmf:
    """Joint law of (X, Y, U); table ``p`` has shape (x_size, y_size, u_size)."""

    p: np.ndarray = field(repr=False)
    tau: float = TAU_NORM

    def __post_init__(self):
        arr = np.asarray(self.p, dtype=float)
        if arr.ndim != 3:
            raise PmfError("triplet table must be 3-D (x, y, u)")
        object.__setattr__(self, "p", _as_clean_pmf(arr, self.tau, "triplet pmf"))

    @property
    def x_size(self) -> int:
        return self.p.shape[0]

    @property
    def y_size(self) -> int:
        return self.p.shape[1]

    @property
    def u_size(self) -> int:
        return self.p.shape[2]

    def xy_marginal(self) -> JointPmf:
        return JointPmf(self.p.sum(axis=2), tau=max(self.tau, 1e-7))

    def check_source(self, j: JointPmf, tol: float = TAU_NORM) -> float:
        """Max deviation of the (x, y) marginal from the source joint."""
        dev = float(np.abs(self.p.sum(axis=2) - j.p).max())
        if dev > tol:
            raise PmfError(f"triplet (x,y)-marginal deviates from source by {dev:.3e}")
        return dev

    # -- marginal entropies in bits -------------------------------------------

    def _h(self, axes: tuple[int, ...]) -> float:
        marg = self.p.sum(axis=axes) if axes else self.p
        return entropy_bits(marg)

    def mi_xu(self, base: float = 2.0) -> float:
        bits = self._h((1, 2)) + self._h((0, 1)) - self._h((1,))
        return _to_base(max(bits, 0.0), base)

    def mi_yu(self, base: float = 2.0) -> float:
        bits = self._h((0, 2)) + self._h((0, 1)) - self._h((0,))
        return _to_base(max(bits, 0.0), base)

    def mi_xy(self, base: float = 2.0) -> float:
        bits = self._h((1, 2)) + self._h((0, 2)) - self._h((2,))
        return _to_base(max(bits, 0.0), base)

    def mi_xu_given_y(self, base: float = 2.0) -> float:
        bits = self._h((2,)) + self._h((0,)) - self._h((0, 2)) - self._h(())
        return _to_base(max(bits, 0.0), base)

    def mi_yu_given_x(self, base: float = 2.0) -> float:
        bits = self._h((2,)) + self._h((1,)) - self._h((1, 2)) - self._h(())
        return _to_base(max(bits, 0.0), base)

    def h_y_given_xu(self, base: float = 2.0) -> float:
        return _to_base(self._h(()) - self._h((1,)), base)

    def h_y_given_x(self, base: float = 2.0) -> float:
        return _to_base(self._h((2,)) - self._h((1, 2)), base)

    def key_identity_residual(self, base: float = 2.0) -> float:
        """|I(Y;U) - [I(X;U) + H(Y|X) - H(Y|U,X) - I(X;U|Y)]|.

        Zero for every true joint law; numerically tiny for tables.
        """
        lhs = self.mi_yu(base)
        rhs = (
            self.mi_xu(base)
            + self.h_y_given_x(base)
            - self.h_y_given_xu(base)
            - self.mi_xu_given_y(base)
        )
        return abs(lhs - rhs)


_VARS = {"x": 0, "y": 1, "u": 2}


def conditional_mutual_information(
    t: TripletPmf, target: tuple[str, str] = ("x", "u"), given: str = "y",
    base: float = 2.0,
) -> float:
    """I(A;B|C) for any naming of the triplet axes as (a, b) and c.

    Computed as H(A,C) + H(B,C) - H(C) - H(A,B,C), which realizes the
    averaged form sum_c P(c) I(A;B|C=c); conditioning events of zero
    probability contribute nothing.
    """
    a, b = (_VARS[v] for v in target)
    c = _VARS[given]
    if len({a, b, c}) != 3:
        raise ValueError("target pair and conditioning variable must be distinct")
    drop_ac = tuple(i for i in range(3) if i not in (a, c))
    drop_bc = tuple(i for i in range(3) if i not in (b, c))
    drop_c = tuple(i for i in range(3) if i != c)
    bits = (
        entropy_bits(t.p.sum(axis=drop_ac))
        + entropy_bits(t.p.sum(axis=drop_bc))
        - entropy_bits(t.p.sum(axis=drop_c))
        - entropy_bits(t.p)
    )
    return _to_base(max(bits, 0.0), base)


def triplet_from_kernel(j: JointPmf, kernel: np.ndarray, tau: float = TAU_NORM) -> TripletPmf:
    """Induce the (X,Y,U) law from a source joint and a channel P_{U|X,Y}.

    ``kernel`` has shape (x_size, y_size, u_size); rows for (x, y) pairs of
    zero mass are ignored.
    """
    kernel = np.asarray(kernel, dtype=float)
    if kernel.shape[:2] != j.p.shape:
        raise PmfError("kernel leading shape must match the joint table")
    mass = j.p > 0
    rows = kernel[mass]
    if rows.size and (rows.min() < -tau or np.abs(rows.sum(axis=1) - 1.0).max() > tau):
        raise PmfError("kernel rows on the support must be pmfs")
    return TripletPmf(np.clip(j.p[:, :, None] * kernel, 0.0, None), tau=tau)
