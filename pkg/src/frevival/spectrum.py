"""Connection sets, Cayley graphs and their character-side spectra."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .characters import CharacterTable
from .cyclotomic import CyclotomicValue
from .groups import ClassPartition, GroupTable, conjugacy_classes
from .jacobi import EigenSystem, JacobiConvergenceError, jacobi_eigh

NUMERIC_ORACLE_MAX_ORDER = 512
SPECTRUM_TOL = 1e-7


class ConnectionSetError(ValueError):
    """Base class; ``element`` names the offending element index when known."""

    reason = "invalid connection set"

    def __init__(self, message: str, element: int | None = None):
        super().__init__(message)
        self.element = element


class EmptyConnectionSet(ConnectionSetError):
    reason = "empty"


class IdentityInConnectionSet(ConnectionSetError):
    reason = "contains identity"


class NotInverseClosed(ConnectionSetError):
    reason = "not inverse closed"


class NotClassUnion(ConnectionSetError):
    reason = "not a union of conjugacy classes"


@dataclass(frozen=True)
class ConnectionSet:
    elements: tuple[int, ...]
    class_ids: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.elements)


def validate_connection_set(
    G: GroupTable,
    classes: ClassPartition | None,
    raw: Iterable,
    representatives: bool = False,
) -> ConnectionSet:
    """Check (and with ``representatives=True`` expand) a connection set.

    ``raw`` holds element references understood by :meth:`GroupTable.element`.
    """
    if classes is None:
        classes = conjugacy_classes(G)
    picked = [G.element(r) for r in raw]
    if not picked:
        raise EmptyConnectionSet("connection set is empty")
    if representatives:
        chosen = sorted({int(classes.class_of[x]) for x in picked})
        elems = sorted(x for c in chosen for x in classes.classes[c])
    else:
        elems = sorted(set(picked))
    members = set(elems)
    if G.identity in members:
        raise IdentityInConnectionSet(f"identity {G.labels[G.identity]} is in the connection set", G.identity)
    for x in elems:
        if int(G.inv[x]) not in members:
            raise NotInverseClosed(
                f"inverse of {G.labels[x]} ({G.labels[int(G.inv[x])]}) is missing", x
            )
    class_ids = sorted({int(classes.class_of[x]) for x in elems})
    for c in class_ids:
        missing = [y for y in classes.classes[c] if y not in members]
        if missing:
            x = next(y for y in classes.classes[c] if y in members)
            raise NotClassUnion(
                f"{G.labels[x]} is in the set but its conjugate {G.labels[missing[0]]} is not", x
            )
    return ConnectionSet(tuple(elems), tuple(class_ids))


def is_connected(G: GroupTable, S: ConnectionSet) -> bool:
    """True iff S generates G."""
    seen = np.zeros(G.order, dtype=bool)
    seen[G.identity] = True
    frontier = np.array([G.identity])
    gens = np.array(S.elements, dtype=np.int64)
    while frontier.size:
        nxt = np.unique(G.mult[np.ix_(gens, frontier)])
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return bool(seen.all())


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    group: GroupTable
    conn: ConnectionSet
    adjacency: np.ndarray

    @classmethod
    def build(cls, G: GroupTable, S: ConnectionSet) -> "CayleyGraph":
        A = np.zeros((G.order, G.order), dtype=np.int8)
        for s in S.elements:
            A[np.arange(G.order), G.mult[s]] = 1  # edge g -- s g
        A.setflags(write=False)
        return cls(G, S, A)

    @property
    def degree(self) -> int:
        return len(self.conn)

    @cached_property
    def eigensystem(self) -> EigenSystem:
        if self.group.order > NUMERIC_ORACLE_MAX_ORDER:
            raise ValueError(f"numeric oracle is limited to order {NUMERIC_ORACLE_MAX_ORDER}")
        return jacobi_eigh(self.adjacency.astype(float))


@dataclass(frozen=True)
class CharacterEigenvalue:
    degree: int
    character_sum: CyclotomicValue  # d * lambda = sum over S of chi(s)
    exact: int | None
    numeric: float

    @property
    def multiplicity(self) -> int:
        return self.degree ** 2


@dataclass(frozen=True, eq=False)
class CharacterSpectrum:
    entries: tuple[CharacterEigenvalue, ...]
    connection_size: int

    @property
    def integral(self) -> bool:
        return all(e.exact is not None for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def lambdas(self) -> np.ndarray:
        return np.array([e.numeric for e in self.entries])

    def expanded(self) -> np.ndarray:
        """All |G| eigenvalues with multiplicity, ascending."""
        vals = [e.numeric for e in self.entries for _ in range(e.multiplicity)]
        return np.sort(np.array(vals))

    def trace(self) -> int | float:
        if self.integral:
            return sum(e.multiplicity * e.exact for e in self.entries)
        return float(sum(e.multiplicity * e.numeric for e in self.entries))


def spectrum_by_character(S: ConnectionSet, table: CharacterTable) -> CharacterSpectrum:
    sizes = table.classes.sizes
    entries = []
    for row in table.rows:
        total = CyclotomicValue.zero(table.m)
        for c in S.class_ids:
            total = total + row.values[c] * sizes[c]
        r = total.rational_integer()
        exact = r // row.degree if r is not None and r % row.degree == 0 else None
        numeric = total.numeric().real / row.degree
        entries.append(CharacterEigenvalue(row.degree, total, exact, float(numeric)))
    return CharacterSpectrum(tuple(entries), len(S))


@dataclass
class SpectrumCheck:
    passed: bool
    max_deviation: float
    sweeps: int
    message: str = ""


def numeric_spectrum_crosscheck(graph: CayleyGraph, spec: CharacterSpectrum, tol: float = SPECTRUM_TOL) -> SpectrumCheck:
    try:
        eig = graph.eigensystem
    except JacobiConvergenceError as exc:
        return SpectrumCheck(False, float("inf"), -1, str(exc))
    expected = spec.expanded()
    if expected.shape != eig.values.shape:
        return SpectrumCheck(False, float("inf"), eig.sweeps, "multiplicities do not add up to |G|")
    dev = float(np.abs(expected - eig.values).max()) if expected.size else 0.0
    return SpectrumCheck(dev < tol, dev, eig.sweeps)
