"""Full Steiner tree topologies over branch points.

Nodes ``0..m-1`` are the branch points, nodes ``m..2m-3`` are degree-3
junctions. A topology is a list of edges.
"""

import logging
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.sparse.csgraph import breadth_first_order, minimum_spanning_tree

from ..exceptions import PreconditionError

logger = logging.getLogger(__name__)

Topology = List[Tuple[int, int]]


def full_steiner_topologies(m: int) -> List[Topology]:
    """All (2m-5)!! full topologies, built by inserting one terminal per edge."""
    if m < 2:
        raise PreconditionError(f"Need at least 2 branch points, got {m}")
    if m == 2:
        return [[(0, 1)]]
    topologies: List[Topology] = [[(0, m), (1, m), (2, m)]]
    for k in range(3, m):
        junction = m + k - 2
        grown = []
        for topology in topologies:
            for i, (u, v) in enumerate(topology):
                rest = topology[:i] + topology[i + 1 :]
                grown.append(rest + [(u, junction), (junction, v), (k, junction)])
        topologies = grown
    return topologies


def neighbours(topology: Topology) -> Dict[int, List[int]]:
    adjacency: Dict[int, List[int]] = {}
    for u, v in topology:
        adjacency.setdefault(u, []).append(v)
        adjacency.setdefault(v, []).append(u)
    return adjacency


def relax_junctions(topology: Topology, points: Sequence[complex], iterations: int = 200) -> np.ndarray:
    """Node positions with every junction at the mean of its neighbours."""
    m = len(points)
    size = max(max(e) for e in topology) + 1
    positions = np.empty(size, dtype=complex)
    positions[:m] = points
    positions[m:] = np.mean(points)
    adjacency = neighbours(topology)
    for _ in range(iterations):
        for node in range(m, size):
            positions[node] = np.mean(positions[adjacency[node]])
    return positions


def tree_length(topology: Topology, positions: np.ndarray) -> float:
    return float(sum(abs(positions[u] - positions[v]) for u, v in topology))


def spanning_topology(points: Sequence[complex]) -> Topology:
    """Full topology grown along the minimum spanning tree of the branch points."""
    p = np.asarray(points, dtype=complex)
    m = p.size
    if m < 3:
        return full_steiner_topologies(m)[0]
    distances = np.abs(p[:, None] - p[None, :])
    tree = minimum_spanning_tree(distances)
    order, _ = breadth_first_order(tree, 0, directed=False)
    order = [int(k) for k in order]

    relabel = {old: new for new, old in enumerate(order)}
    topology: Topology = [(0, m), (1, m), (2, m)]
    positions = relax_junctions(topology, [p[order[0]], p[order[1]], p[order[2]]] + [0j] * (m - 3))
    for k in range(3, m):
        junction = m + k - 2
        midpoints = [0.5 * (positions[u] + positions[v]) for u, v in topology]
        target = p[order[k]]
        i = int(np.argmin(np.abs(np.asarray(midpoints) - target)))
        u, v = topology.pop(i)
        topology += [(u, junction), (junction, v), (k, junction)]
        positions = np.concatenate([positions, [0.5 * (positions[u] + positions[v])]])
        positions[k] = target

    # map terminals back to their original indices
    inverse = {new: old for old, new in relabel.items()}
    return [(inverse.get(u, u) if u < m else u, inverse.get(v, v) if v < m else v) for u, v in topology]


def interchange_neighbours(topology: Topology, m: int) -> List[Topology]:
    """Nearest-neighbour interchanges across every junction-junction edge."""
    adjacency = neighbours(topology)
    out: List[Topology] = []
    for u, v in topology:
        if u < m or v < m:
            continue
        left = [x for x in adjacency[u] if x != v]
        right = [y for y in adjacency[v] if y != u]
        for y in right:
            x = left[1]
            swapped = []
            for e in topology:
                if set(e) == {u, x}:
                    swapped.append((u, y))
                elif set(e) == {v, y}:
                    swapped.append((v, x))
                else:
                    swapped.append(e)
            out.append(swapped)
    return out


def candidate_topologies(points: Sequence[complex], max_full: int) -> List[Topology]:
    """Every full topology for few points, else the spanning one and its interchanges."""
    m = len(points)
    if m <= max_full:
        topologies = full_steiner_topologies(m)
    else:
        base = spanning_topology(points)
        topologies = [base] + interchange_neighbours(base, m)
    logger.info("Considering %d topologies for %d branch points", len(topologies), m)
    return topologies
