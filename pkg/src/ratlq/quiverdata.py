"""The QuiverData record shared by the quiver, geometry and evaluator modules."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

TANGLE, KNOT, LINK = "Tangle", "Knot", "Link"


def _as_matrix(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class QuiverData:
    """Linear forms S, A (and optional 0/1 vector K) with a symmetric matrix Q.

    ``active`` marks the active indices of a tangle; it is None for closed
    knots and links.  ``mu`` holds the correction terms and ``corrected``
    says whether they have been added in.
    """

    kind: str
    labels: tuple
    S: tuple
    A: tuple
    Q: tuple
    K: tuple | None = None
    orientation: str | None = None
    active: tuple | None = None
    mu: tuple = (0, 0, 0)
    corrected: bool = False
    framing: tuple = (0, 0, 0)
    fraction: tuple | None = None
    notes: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "S", tuple(int(x) for x in self.S))
        object.__setattr__(self, "A", tuple(int(x) for x in self.A))
        object.__setattr__(self, "Q", _as_matrix(self.Q))
        object.__setattr__(self, "labels", tuple(self.labels))
        if self.K is not None:
            object.__setattr__(self, "K", tuple(int(x) for x in self.K))
        if self.active is not None:
            object.__setattr__(self, "active", tuple(bool(x) for x in self.active))
        n = len(self.S)
        if len(self.A) != n or len(self.Q) != n or len(self.labels) != n:
            raise ValueError("S, A, Q and labels must share one dimension")
        if any(len(row) != n for row in self.Q):
            raise ValueError("Q must be square")
        if self.K is not None and len(self.K) != n:
            raise ValueError("K has the wrong length")
        if self.active is not None and len(self.active) != n:
            raise ValueError("active mask has the wrong length")
        for i in range(n):
            for j in range(i):
                if self.Q[i][j] != self.Q[j][i]:
                    raise ValueError(f"Q is not symmetric at ({i}, {j})")

    @property
    def size(self):
        return len(self.S)

    def diagonal(self):
        return tuple(self.Q[i][i] for i in range(self.size))

    def permuted(self, order):
        """Reindex so that new index t is old index order[t]."""
        order = list(order)
        pick = lambda seq: None if seq is None else tuple(seq[i] for i in order)
        return replace(
            self,
            labels=pick(self.labels),
            S=pick(self.S),
            A=pick(self.A),
            K=pick(self.K),
            active=pick(self.active),
            Q=tuple(tuple(self.Q[i][k] for k in order) for i in order),
        )

    def with_forms(self, **changes):
        return replace(self, **changes)

    def to_json(self):
        return {
            "kind": self.kind,
            "labels": list(self.labels),
            "K": None if self.K is None else list(self.K),
            "S": list(self.S),
            "A": list(self.A),
            "Q": [list(row) for row in self.Q],
            "mu": list(self.mu),
            "framing": list(self.framing),
        }
