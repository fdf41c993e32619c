"""Array-backed state for the sensor nodes of one simulation instance."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["NO_CLUSTER", "Node", "Network"]

NO_CLUSTER = -1


@dataclass(frozen=True)
class Node:
    """Read-only snapshot of a single node. ``role`` is ``"CHN"`` or
    ``"NCHN"`` while alive and ``None`` once dead."""

    id: int
    pos: tuple[float, float]
    residual: float
    role: str | None
    alive: bool
    awake: bool
    cluster: int | None


class Network:
    """Positions, residual energy, roles and cluster membership of all nodes.

    State is held in parallel numpy arrays indexed 0..S-1; ``ids`` maps
    array index to the externally visible node id (the identity mapping
    unless custom ids are supplied).  A node is alive exactly while its
    residual energy is positive, and all charging goes through
    :meth:`debit` so that ``initial == residual + consumed`` holds for
    every node at all times.
    """

    def __init__(self, positions, initial_energy=3.5, ids=None):
        positions = np.array(positions, dtype=float)
        if positions.ndim != 2 or positions.shape[1] != 2:
            raise ValueError("positions must have shape (S, 2)")
        n = len(positions)
        self.positions = positions
        self.residual = np.broadcast_to(np.asarray(initial_energy, float), (n,)).copy()
        if np.any(self.residual <= 0):
            raise ValueError("initial energy must be positive")
        self.initial = self.residual.copy()
        self.consumed = np.zeros(n)
        self.cluster = np.full(n, NO_CLUSTER, dtype=int)
        self.head = np.zeros(n, dtype=bool)
        self.awake = np.ones(n, dtype=bool)
        if ids is None:
            self.ids = np.arange(n)
        else:
            self.ids = np.asarray(ids, dtype=int)
            if self.ids.shape != (n,) or len(np.unique(self.ids)) != n:
                raise ValueError("ids must be unique, one per node")

    def __len__(self) -> int:
        return len(self.positions)

    @property
    def alive(self) -> np.ndarray:
        return self.residual > 0.0

    def alive_count(self) -> int:
        return int(self.alive.sum())

    def debit(self, selector, amount) -> np.ndarray:
        """Charge energy to the selected nodes, capping each charge at the
        node's remaining residual (a dying node gives up exactly what is
        left, keeping the energy books balanced).  Returns the amounts
        actually taken."""
        take = np.minimum(np.asarray(amount, float), self.residual[selector])
        self.residual[selector] -= take
        self.consumed[selector] += take
        return take

    def index_of(self, node_id: int) -> int:
        hits = np.nonzero(self.ids == node_id)[0]
        if len(hits) == 0:
            raise KeyError(f"no node with id {node_id}")
        return int(hits[0])

    def node(self, index: int) -> Node:
        alive = bool(self.residual[index] > 0)
        role = ("CHN" if self.head[index] else "NCHN") if alive else None
        cluster = int(self.cluster[index])
        return Node(
            id=int(self.ids[index]),
            pos=(float(self.positions[index, 0]), float(self.positions[index, 1])),
            residual=float(self.residual[index]),
            role=role,
            alive=alive,
            awake=bool(self.awake[index]),
            cluster=None if cluster == NO_CLUSTER else cluster,
        )

    def nodes(self) -> list[Node]:
        return [self.node(i) for i in range(len(self))]
