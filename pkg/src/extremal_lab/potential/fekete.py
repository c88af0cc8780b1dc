"""Weighted Fekete points by greedy insertion and exchange sweeps."""

import logging
from typing import List, Tuple

import numpy as np

from ..exceptions import PreconditionError
from ..models import Contour, DiscreteMeasure, FeketeResult
from .kernels import field_potential

logger = logging.getLogger(__name__)


def _candidates(contour: Contour) -> Tuple[np.ndarray, np.ndarray, np.ndarray, List[Tuple[float, bool]]]:
    """Panel endpoints and midpoints with arc id, arclength and per-arc (length, closed)."""
    points, arcs, lengths = [], [], []
    arc_info: List[Tuple[float, bool]] = []
    for arc in np.unique(contour.arc_index):
        sel = contour.arc_index == arc
        starts, ends = contour.starts[sel], contour.ends[sel]
        closed = abs(starts[0] - ends[-1]) < 1e-12
        pts = [starts[0]]
        for s, e in zip(starts, ends):
            pts.extend([0.5 * (s + e), e])
        if closed:
            pts = pts[:-1]
        pts_arr = np.asarray(pts)
        s_arr = np.concatenate([[0.0], np.cumsum(np.abs(np.diff(pts_arr)))])
        total = float(np.sum(np.abs(ends - starts)))
        points.append(pts_arr)
        arcs.append(np.full(pts_arr.size, len(arc_info)))
        lengths.append(s_arr)
        arc_info.append((total, closed))
    return np.concatenate(points), np.concatenate(arcs), np.concatenate(lengths), arc_info


def _log_distances(candidates: np.ndarray, chosen: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.log(np.abs(candidates[:, None] - chosen[None, :]))


def _spacings(
    index: np.ndarray, arcs: np.ndarray, s: np.ndarray, arc_info: List[Tuple[float, bool]]
) -> np.ndarray:
    """Local arclength spacing around every chosen point."""
    h = np.empty(index.size)
    for arc, (total, closed) in enumerate(arc_info):
        mine = np.flatnonzero(arcs[index] == arc)
        if mine.size == 0:
            continue
        order = mine[np.argsort(s[index[mine]])]
        pos = s[index[order]]
        if order.size == 1:
            h[order] = total
            continue
        if closed:
            prev = np.roll(pos, 1) - np.where(np.arange(pos.size) == 0, total, 0.0)
            nxt = np.roll(pos, -1) + np.where(np.arange(pos.size) == pos.size - 1, total, 0.0)
            h[order] = 0.5 * (nxt - prev)
        else:
            spacing = np.empty(pos.size)
            spacing[1:-1] = 0.5 * (pos[2:] - pos[:-2])
            spacing[0] = pos[1] - pos[0]
            spacing[-1] = pos[-1] - pos[-2]
            h[order] = spacing
    return h


def fekete_points(
    contour: Contour, nu: DiscreteMeasure, m: int, max_sweeps: int = 20
) -> FeketeResult:
    """
    Approximate weighted Fekete points on a contour.

    The weight is w = exp(U^nu). Points are chosen among panel endpoints and
    midpoints, first by greedy Leja insertion, then improved by exchange
    sweeps until no single replacement raises the weighted Vandermonde product.

    Args:
        contour: Discretized compact set
        nu: Measure defining the external field (mass 0 for w = 1)
        m: Number of points, at least 2
        max_sweeps: Upper bound on exchange sweeps

    Returns:
        FeketeResult: points, the diameter delta_m and a spacing-corrected capacity

    Raises:
        PreconditionError: If m < 2 or m exceeds the number of candidates
    """
    if m < 2:
        raise PreconditionError(f"Need at least 2 Fekete points, got {m}")
    candidates, arcs, s, arc_info = _candidates(contour)
    if m > candidates.size:
        raise PreconditionError(f"m={m} exceeds the {candidates.size} candidate nodes")

    log_w = np.asarray(field_potential(nu, candidates), dtype=float)
    if not np.all(np.isfinite(log_w)):
        raise PreconditionError("The weight must be finite on the contour")

    centroid = np.mean(candidates)
    far = np.abs(candidates - centroid)
    top = np.flatnonzero(log_w >= np.max(log_w) - 1e-14)
    chosen = [int(top[np.argmax(far[top])])]
    logs = _log_distances(candidates, candidates[chosen])

    for k in range(1, m):
        score = np.sum(logs, axis=1) + k * log_w
        score[chosen] = -np.inf
        best = int(np.argmax(score))
        chosen.append(best)
        logs = np.hstack([logs, _log_distances(candidates, candidates[[best]])])

    index = np.asarray(chosen)
    sweeps = 0
    for sweeps in range(1, max_sweeps + 1):
        moved = 0
        for i in range(m):
            others = np.delete(np.arange(m), i)
            score = np.sum(logs[:, others], axis=1) + (m - 1) * log_w
            score[index[others]] = -np.inf
            best = int(np.argmax(score))
            if score[best] > score[index[i]] + 1e-13 * max(1.0, abs(score[index[i]])):
                index[i] = best
                logs[:, i] = _log_distances(candidates, candidates[[best]])[:, 0]
                moved += 1
        logger.debug("Fekete exchange sweep %d moved %d points", sweeps, moved)
        if moved == 0:
            break

    points = candidates[index]
    pair_logs = logs[index, :]
    off_diagonal = ~np.eye(m, dtype=bool)
    pair_sum = float(np.sum(pair_logs[off_diagonal]))
    weight_sum = float(np.sum(log_w[index]))

    delta = float(np.exp((2.0 / (m * (m - 1))) * (0.5 * pair_sum + (m - 1) * weight_sum)))
    h = _spacings(index, arcs, s, arc_info)
    corrected = float(
        np.exp((pair_sum + np.sum(np.log(h / (2 * np.pi)))) / m**2 + 2.0 * weight_sum / m)
    )
    return FeketeResult(points=points, delta=delta, corrected_capacity=corrected, sweeps=sweeps)
