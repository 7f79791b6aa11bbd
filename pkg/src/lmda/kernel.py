"""Alliance predicates and per-vertex protection status.

Everything else in the package is validated against these functions, so they
stay close to the definitions: a vertex v of S is protected when
``d_S(v) + 1 >= d_{S^c}(v)`` (ordinary) or ``d_S(v) >= d_{S^c}(v)`` (strong).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations

from .graph import connected_components, degrees_within, is_connected

GLOBAL_MINIMALITY_LIMIT = 20


class Kind(str, enum.Enum):
    ORDINARY = "ordinary"
    STRONG = "strong"

    @property
    def strong(self) -> bool:
        return self is Kind.STRONG


class Status(str, enum.Enum):
    UNPROTECTED = "unprotected"
    MARGINAL = "marginal"
    OVERPROTECTED = "overprotected"


@dataclass(frozen=True)
class ProtectionRecord:
    vertex: int
    slack: int
    status: Status
    inside: int
    outside: int


def _slack(inside: int, outside: int, kind: Kind) -> int:
    return inside - outside + (0 if kind is Kind.STRONG else 1)


def slack(g, s, kind: Kind, v: int) -> int:
    inside, outside = degrees_within(g, s, v)
    return _slack(inside, outside, Kind(kind))


def _status(sl: int, inside: int) -> Status:
    if sl < 0:
        return Status.UNPROTECTED
    # A vertex with no neighbour in S cannot lose one, so it is never marginal.
    if sl <= 1 and inside >= 1:
        return Status.MARGINAL
    return Status.OVERPROTECTED


def classify(g, s, kind: Kind, v: int) -> ProtectionRecord:
    if v not in s:
        raise ValueError(f"vertex {v} is not in the set")
    inside, outside = degrees_within(g, s, v)
    sl = _slack(inside, outside, Kind(kind))
    return ProtectionRecord(v, sl, _status(sl, inside), inside, outside)


def is_alliance(g, s, kind: Kind = Kind.ORDINARY) -> bool:
    kind = Kind(kind)
    return len(s) > 0 and all(slack(g, s, kind, v) >= 0 for v in s)


def is_connected_alliance(g, s, kind: Kind = Kind.ORDINARY) -> bool:
    return is_alliance(g, s, kind) and is_connected(g, s)


def is_locally_minimal(g, s, kind: Kind = Kind.ORDINARY, connected_variant: bool = False) -> bool:
    """Check that s is an alliance and no s - {v} is one.

    With ``connected_variant`` both "alliance"s read "connected alliance".
    Removing v only moves v's neighbours in s, each losing 2 slack, so
    whether s - {v} is an alliance is decided from the slacks of s.
    """
    kind = Kind(kind)
    s = s if isinstance(s, (set, frozenset)) else set(s)
    if not s:
        return False
    slacks = {v: slack(g, s, kind, v) for v in s}
    if min(slacks.values()) < 0:
        return False
    if connected_variant and not is_connected(g, s):
        return False
    if len(s) == 1:
        return True
    for v in s:
        still_alliance = all(slacks[u] - 2 >= 0 for u in g.neighbors(v) if u in s)
        if not still_alliance:
            continue
        if not connected_variant:
            return False
        rest = set(s)
        rest.discard(v)
        if is_connected(g, rest):
            return False
    return True


def is_locally_minimal_via_marginals(g, s, kind: Kind = Kind.ORDINARY) -> bool:
    """Local minimality through the marginal-neighbour characterisation.

    Requires s to be an alliance.  True when |s| = 1 or every member has a
    marginally protected neighbour in s.
    """
    kind = Kind(kind)
    s = s if isinstance(s, (set, frozenset)) else set(s)
    if not is_alliance(g, s, kind):
        raise ValueError("set is not an alliance")
    if len(s) == 1:
        return True
    marginal = {v for v in s if classify(g, s, kind, v).status is Status.MARGINAL}
    return all(any(u in marginal for u in g.neighbors(v)) for v in s)


def is_globally_minimal(g, s, kind: Kind = Kind.ORDINARY) -> bool:
    s = frozenset(s)
    if len(s) > GLOBAL_MINIMALITY_LIMIT:
        raise ValueError(f"global minimality check limited to |S| <= {GLOBAL_MINIMALITY_LIMIT}")
    if not is_alliance(g, s, kind):
        return False
    members = sorted(s)
    for size in range(1, len(members)):
        for sub in combinations(members, size):
            if is_alliance(g, frozenset(sub), kind):
                return False
    return True


def protection_table(g, s, kind: Kind = Kind.ORDINARY) -> list[ProtectionRecord]:
    return [classify(g, s, kind, v) for v in sorted(s)]


def check_summary(g, s, kind: Kind = Kind.ORDINARY, connected: bool = False) -> dict:
    """Verdicts used by the CLI to re-validate a witness before printing it."""
    s = frozenset(s)
    out = {
        "alliance": is_alliance(g, s, kind),
        "connected": len(s) > 0 and len(connected_components(g, s)) == 1,
    }
    out["locally_minimal"] = is_locally_minimal(g, s, kind, connected_variant=connected)
    return out
