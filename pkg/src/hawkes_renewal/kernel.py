"""Piecewise-constant signed reproduction kernels and their scalar functionals."""

from __future__ import annotations

import hashlib
import json
import math
from bisect import bisect_right


class KernelError(ValueError):
    """Invalid kernel specification."""


class Kernel:
    """Signed reproduction function made of half-open constant segments.

    A segment ``(start, end, value)`` means the kernel equals ``value`` on
    ``[start, end)``.  Segments must be pairwise disjoint with finite
    endpoints, and the positive mass must satisfy ``pos_l1 < 1`` (the
    subcriticality condition for the dominating self-exciting process).
    The empty segment list is the zero kernel (Poisson case) with
    ``support_end == 0``.

    Instances are immutable and safe to share across threads.
    """

    __slots__ = ("segments", "support_end", "pos_l1", "abs_l1", "pos_sup", "_starts")

    def __init__(self, segments=()):
        cleaned = []
        for seg in segments:
            try:
                start, end, value = seg
            except (TypeError, ValueError):
                raise KernelError(f"segment {seg!r} is not a (start, end, value) triple")
            start, end, value = float(start), float(end), float(value)
            if not (math.isfinite(start) and math.isfinite(end) and math.isfinite(value)):
                raise KernelError(f"segment {seg!r} has non-finite endpoints or value")
            if start < 0.0:
                raise KernelError(f"segment {seg!r} starts before 0")
            if end <= start:
                raise KernelError(f"segment {seg!r} has end <= start")
            if value != 0.0:  # zero-valued pieces do not extend the support
                cleaned.append((start, end, value))
        cleaned.sort()
        for (s0, e0, _), (s1, _, _) in zip(cleaned, cleaned[1:]):
            if s1 < e0:
                raise KernelError(f"segments overlap at t={s1:g}")
        # merge touching segments of equal value so equality tests are canonical
        merged: list[tuple[float, float, float]] = []
        for seg in cleaned:
            if merged and merged[-1][1] == seg[0] and merged[-1][2] == seg[2]:
                merged[-1] = (merged[-1][0], seg[1], seg[2])
            else:
                merged.append(seg)
        segs = tuple(merged)

        pos_l1 = sum(v * (e - s) for s, e, v in segs if v > 0.0)
        if pos_l1 >= 1.0:
            raise KernelError(f"positive mass {pos_l1:g} >= 1; process would be supercritical")

        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "support_end", segs[-1][1] if segs else 0.0)
        object.__setattr__(self, "pos_l1", pos_l1)
        object.__setattr__(self, "abs_l1", sum(abs(v) * (e - s) for s, e, v in segs))
        object.__setattr__(self, "pos_sup", max((v for _, _, v in segs if v > 0.0), default=0.0))
        object.__setattr__(self, "_starts", [s for s, _, _ in segs])

    def __setattr__(self, name, value):
        raise AttributeError("Kernel is immutable")

    def __reduce__(self):
        return (Kernel, (list(self.segments),))

    def __repr__(self):
        return f"Kernel({list(self.segments)!r})"

    def __eq__(self, other):
        return isinstance(other, Kernel) and self.segments == other.segments

    def __hash__(self):
        return hash(self.segments)

    def value(self, t: float) -> float:
        """Kernel value at lag ``t`` (0 outside every segment)."""
        i = bisect_right(self._starts, t) - 1
        if i >= 0:
            s, e, v = self.segments[i]
            if s <= t < e:
                return v
        return 0.0

    def positive_part(self) -> "Kernel":
        """Kernel with the negative segments removed."""
        return Kernel(seg for seg in self.segments if seg[2] > 0.0)

    def is_nonnegative(self) -> bool:
        return all(v > 0.0 for _, _, v in self.segments)

    def is_nonpositive(self) -> bool:
        return all(v < 0.0 for _, _, v in self.segments)

    def cancels_baseline(self, lam: float) -> bool:
        """True when one past event alone zeroes the intensity on the whole support.

        Requires contiguous coverage of ``[0, support_end)`` with every value
        <= ``-lam``; then each jump is followed by exactly ``support_end`` of
        silence and every renewal window holds a single jump.
        """
        if not self.segments or self.segments[0][0] != 0.0:
            return False
        cursor = 0.0
        for s, e, v in self.segments:
            if s != cursor or v > -lam:
                return False
            cursor = e
        return cursor == self.support_end

    def digest(self) -> str:
        """Short stable hash of the segment list, used in file headers."""
        payload = json.dumps(self.segments, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()[:12]


def make_kernel(segments) -> Kernel:
    """Validating constructor; see :class:`Kernel`."""
    return Kernel(segments)


def positive_part(kernel: Kernel) -> Kernel:
    return kernel.positive_part()


def canceling_kernel(lam: float, width: float) -> Kernel:
    """Inhibition ``-lam`` on ``[0, width)``: zero intensity after every jump."""
    if lam <= 0 or width <= 0:
        raise KernelError("canceling kernel needs lam > 0 and width > 0")
    return Kernel([(0.0, width, -lam)])


def delayed_kernel(lam: float, lag: float, width: float) -> Kernel:
    """Inhibition ``-lam`` on ``[lag, lag + width)``: silence starts after a lag."""
    if lam <= 0 or lag <= 0 or width <= 0:
        raise KernelError("delayed kernel needs lam, lag, width > 0")
    return Kernel([(lag, lag + width, -lam)])


def positive_envelope(kernels) -> tuple:
    """Pointwise maximum of the positive parts of several kernels.

    Returns normalized ``(start, end, value)`` segments rather than a
    :class:`Kernel`: the upper envelope of several subcritical kernels may
    itself carry positive mass >= 1, and it is only ever used to decide
    which member of a coupled set dominates the others.
    """
    points = sorted({p for k in kernels for s, e, _ in k.segments for p in (s, e)})
    segs: list[tuple[float, float, float]] = []
    for lo, hi in zip(points, points[1:]):
        mid = 0.5 * (lo + hi)
        v = max((max(k.value(mid), 0.0) for k in kernels), default=0.0)
        if v > 0.0:
            if segs and segs[-1][1] == lo and segs[-1][2] == v:
                segs[-1] = (segs[-1][0], hi, v)
            else:
                segs.append((lo, hi, v))
    return tuple(segs)
