"""Catalog of small groups and exhaustive/randomised scans over their
quasi-abelian connection sets, with every oracle check run on every graph."""

from __future__ import annotations

import itertools
import math
import random
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .characters import (
    CharacterTable,
    character_table,
    generic_character_table,
    tables_equal_up_to_rows,
    verify_table,
)
from .groups import ClassPartition, GroupTable, build_group, central_involutions, conjugacy_classes
from .modp import prime_factors
from .oracle import check_revival_shape, transition_matrix_character, transition_matrix_numeric, verify_witness
from .revival import abelian_fast_path, decide, divisor_certificate
from .spectrum import CayleyGraph, ConnectionSet, is_connected, numeric_spectrum_crosscheck, spectrum_by_character

FAMILIES = ("abelian", "dihedral", "quaternion", "symmetric")
EXHAUSTIVE_BLOCKS = 12
RANDOM_SAMPLES = 200
RANDOM_TIMES = 5  # per graph, for the cross-construction check

QUATERNION_LABELS = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]


def _quaternion_table() -> list[list[int]]:
    # index = 2 * unit + sign bit, units ordered 1, i, j, k
    basic = {
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    names = ["1", "i", "j", "k"]

    def unit_mul(x, y):
        if x == "1":
            return 1, y
        if y == "1":
            return 1, x
        if x == y:
            return -1, "1"
        return basic[(x, y)]

    table = []
    for a in range(8):
        row = []
        ua, sa = names[a // 2], -1 if a % 2 else 1
        for b in range(8):
            ub, sb = names[b // 2], -1 if b % 2 else 1
            s, u = unit_mul(ua, ub)
            sign = s * sa * sb
            row.append(2 * names.index(u) + (0 if sign == 1 else 1))
        table.append(row)
    return table


QUATERNION_SPEC = {"kind": "explicit-table", "table": _quaternion_table(), "labels": QUATERNION_LABELS}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    family: str
    spec: dict


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def abelian_moduli(order: int) -> list[list[int]]:
    """Every abelian group of the given order as a list of prime-power moduli."""
    if order == 1:
        return [[1]]
    per_prime = []
    for p in prime_factors(order):
        e, n = 0, order
        while n % p == 0:
            n //= p
            e += 1
        per_prime.append([[p ** k for k in sorted(part)] for part in _partitions(e)])
    return [sum(combo, []) for combo in itertools.product(*per_prime)]


def build_catalog(
    max_order: int = 16,
    families=FAMILIES,
    dihedral_max: int = 6,
    symmetric_max: int = 4,
    extra: list[CatalogEntry] = (),
) -> list[CatalogEntry]:
    """Abelian groups up to ``max_order``, D3..D``dihedral_max``, Q8, S3..S``symmetric_max``."""
    out = []
    if "abelian" in families:
        for n in range(2, max_order + 1):
            for moduli in abelian_moduli(n):
                name = "+".join(f"Z{q}" for q in moduli)
                out.append(CatalogEntry(name, "abelian", {"kind": "abelian-sum", "moduli": moduli}))
    if "dihedral" in families:
        for n in range(3, dihedral_max + 1):
            out.append(CatalogEntry(f"D{n}", "dihedral", {"kind": "dihedral", "n": n}))
    if "quaternion" in families:
        out.append(CatalogEntry("Q8", "quaternion", QUATERNION_SPEC))
    if "symmetric" in families:
        for n in range(3, symmetric_max + 1):
            out.append(CatalogEntry(f"S{n}", "symmetric", {"kind": "symmetric", "n": n}))
    out.extend(extra)
    return out


def inverse_closed_blocks(G: GroupTable, classes: ClassPartition) -> list[tuple[int, ...]]:
    """Non-identity classes merged with their inverse classes."""
    ident = int(classes.class_of[G.identity])
    blocks, seen = [], set()
    for c, rep in enumerate(classes.representatives):
        if c == ident or c in seen:
            continue
        ic = int(classes.class_of[G.inv[rep]])
        block = tuple(sorted({c, ic}))
        seen.update(block)
        blocks.append(block)
    return blocks


def connection_set_from_blocks(classes: ClassPartition, blocks, mask: int) -> ConnectionSet:
    ids = sorted(c for i, b in enumerate(blocks) if mask >> i & 1 for c in b)
    elems = sorted(x for c in ids for x in classes.classes[c])
    return ConnectionSet(tuple(elems), tuple(ids))


def enumerate_connection_sets(
    G: GroupTable,
    classes: ClassPartition,
    rng: random.Random,
    exhaustive_blocks: int = EXHAUSTIVE_BLOCKS,
    samples: int = RANDOM_SAMPLES,
) -> tuple[list[tuple[int, ConnectionSet]], int, bool]:
    """Connected quasi-abelian connection sets as (mask, S).

    Returns the sets, the number of nonempty class unions considered, and
    whether the enumeration was exhaustive.
    """
    blocks = inverse_closed_blocks(G, classes)
    total = 2 ** len(blocks) - 1
    if len(blocks) <= exhaustive_blocks:
        masks = range(1, total + 1)
        out = []
        for mask in masks:
            S = connection_set_from_blocks(classes, blocks, mask)
            if is_connected(G, S):
                out.append((mask, S))
        return out, total, True
    found: dict[int, ConnectionSet] = {}
    attempts = 0
    while len(found) < samples and attempts < 200 * samples:
        attempts += 1
        mask = rng.randrange(1, total + 1)
        if mask in found:
            continue
        S = connection_set_from_blocks(classes, blocks, mask)
        if is_connected(G, S):
            found[mask] = S
    return sorted(found.items()), attempts, False


@dataclass
class GraphRecord:
    mask: int
    size: int
    integral: bool
    witnesses: list[tuple[str, int, int, str]]  # (involution label, M, k, kind)
    reason: str
    spectrum_deviation: float
    violations: list[str] = field(default_factory=list)


@dataclass
class GroupScan:
    name: str
    family: str
    order: int
    classes: int
    central_involutions: list[str]
    exhaustive: bool
    considered: int
    graphs: list[GraphRecord]
    violations: list[str] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        fr = sum(1 for g in self.graphs if any(w[3] == "FR" for w in g.witnesses))
        pst = sum(1 for g in self.graphs if any(w[3] == "PST" for w in g.witnesses))
        none = sum(1 for g in self.graphs if not g.witnesses)
        return {"graphs": len(self.graphs), "fr": fr, "pst": pst, "none": none}

    def all_violations(self) -> list[str]:
        out = list(self.violations)
        for g in self.graphs:
            out.extend(f"S#{g.mask}: {v}" for v in g.violations)
        return out


def involution_character_violations(G: GroupTable, table: CharacterTable) -> list[str]:
    """x != 1 has chi(x) = +-d for every chi exactly when x is a central involution."""
    out = []
    invols = set(central_involutions(G))
    for c, rep in enumerate(table.classes.representatives):
        if rep == G.identity:
            continue
        plus_minus = all(r.values[c] == r.degree or r.values[c] == -r.degree for r in table.rows)
        for x in table.classes.classes[c]:
            if plus_minus != (x in invols):
                out.append(f"character test and central-involution test disagree at {G.labels[x]}")
    for a in invols:
        c = int(table.classes.class_of[a])
        d0 = sum(r.degree ** 2 for r in table.rows if r.values[c] == r.degree)
        d1 = sum(r.degree ** 2 for r in table.rows if r.values[c] == -r.degree)
        if not (2 * d0 == 2 * d1 == G.order):
            out.append(f"degree split at {G.labels[a]} is {d0}/{d1}")
    return out


def transition_violations(G, table, spec, graph, times, tol: float = 1e-8) -> tuple[float, list[str]]:
    """Compare both H(t) constructions and their structural identities at the given times."""
    out = []
    worst = 0.0
    for t in times:
        Hc = transition_matrix_character(t, table, spec, G)
        Hn = transition_matrix_numeric(t, graph)
        dev = float(np.abs(Hc.entries - Hn.entries).max())
        worst = max(worst, dev)
        if dev >= tol:
            out.append(f"H({t:.6g}) constructions differ by {dev:.3g}")
        for H in (Hc, Hn):
            if H.unitarity_error() >= tol:
                out.append(f"H({t:.6g}) from {H.source} is not unitary")
            if H.symmetry_error() >= 1e-10:
                out.append(f"H({t:.6g}) from {H.source} is not symmetric")
            diag = np.diag(H.entries)
            if float(np.abs(diag - diag[0]).max()) >= tol:
                out.append(f"H({t:.6g}) from {H.source} has a non-constant diagonal")
        if Hc.translation_error(G) >= tol:
            out.append(f"H({t:.6g}) is not invariant under right translation")
    return worst, out


def check_graph(G, table, S: ConnectionSet, tol: float = 1e-8, lattice: bool = True, times=()):
    """Run decide plus every oracle check on one graph."""
    spec = spectrum_by_character(S, table)
    graph = CayleyGraph.build(G, S)
    violations = []
    cross = numeric_spectrum_crosscheck(graph, spec)
    if not cross.passed:
        violations.append(f"spectrum cross-check failed ({cross.max_deviation:.3g})")
    _, tviol = transition_violations(G, table, spec, graph, times, tol)
    violations.extend(tviol)
    trivial = next(i for i, r in enumerate(table.rows) if all(v == 1 for v in r.values))
    if spec.entries[trivial].exact != len(S):
        violations.append("lambda at the trivial character differs from |S|")
    if spec.integral and spec.trace() != 0:
        violations.append(f"trace identity fails: {spec.trace()}")
    decision = decide(G, S, table, spec)
    ws = decision.witnesses
    if ws and not spec.integral:
        violations.append("witness emitted for a non-integral graph")
    for w in ws:
        verdict = verify_witness(w, graph, table, spec, tol)
        if not verdict.passed:
            violations.append(f"witness (a={G.labels[w.involution]}, k={w.k}) fails oracle: {verdict.failures}")
        if G.order >= 3:
            cert = divisor_certificate(w, G)
            if not cert.passed:
                violations.append(f"witness (a={G.labels[w.involution]}, k={w.k}) fails divisor certificate")
    # candidate times that were not emitted must not show the revival shape
    emitted = {w.key for w in ws}
    for a, M in decision.Ms.items():
        if M is None:
            continue
        for k in range(1, M):
            if (a, k) in emitted:
                continue
            shape = check_revival_shape(transition_matrix_character(2 * math.pi * k / M, table, spec, G), tol)
            if shape is not None and abs(shape.beta) > tol:
                violations.append(f"missed revival at a={G.labels[a]}, t=2pi*{k}/{M}")
    # every revival time is a multiple of 2pi/|G|; the lattice must agree with the witnesses
    if lattice and spec.integral and G.order > 2:
        claimed = {}
        for w in ws:
            claimed.setdefault(round(w.t * G.order / (2 * math.pi)) % G.order, set()).add(w.involution)
        for j in range(1, G.order):
            shape = check_revival_shape(transition_matrix_character(2 * math.pi * j / G.order, table, spec, G), tol)
            found = set() if shape is None else {shape.pairing[G.identity]}
            if found != claimed.get(j, set()):
                violations.append(f"lattice time 2pi*{j}/{G.order}: oracle pairs {found}, engine claims {claimed.get(j, set())}")
    return spec, decision, cross, violations


def scan_group(entry: CatalogEntry, seed: int = 7, exhaustive_blocks: int = EXHAUSTIVE_BLOCKS, samples: int = RANDOM_SAMPLES, tol: float = 1e-8) -> GroupScan:
    G = build_group(entry.spec)
    classes = conjugacy_classes(G)
    table = character_table(G)
    violations = []
    report = verify_table(table)
    if not report.passed:
        violations.append(f"character table fails verification: {report.failures}")
    if table.method != "generic":
        generic = generic_character_table(G)
        if not tables_equal_up_to_rows(table, generic):
            violations.append("closed-form and generic character tables differ")
    violations.extend(involution_character_violations(G, table))

    rng = random.Random(seed ^ zlib.crc32(entry.name.encode()))
    sets, considered, exhaustive = enumerate_connection_sets(G, classes, rng, exhaustive_blocks, samples)
    records = []
    for mask, S in sets:
        times = [rng.uniform(0, 2 * math.pi) for _ in range(RANDOM_TIMES)]
        spec, decision, cross, gviol = check_graph(G, table, S, tol, times=times)
        ws = decision.witnesses
        if G.is_abelian and G.spec.kind in ("abelian-sum", "cyclic"):
            fast = abelian_fast_path(G, S)
            if [(w.involution, w.M, w.k) for w in fast] != [(w.involution, w.M, w.k) for w in ws]:
                gviol.append("abelian fast path disagrees with the generic engine")
        records.append(
            GraphRecord(
                mask, len(S), spec.integral,
                [(G.labels[w.involution], w.M, w.k, w.kind) for w in ws],
                decision.reason, cross.max_deviation, gviol,
            )
        )
    return GroupScan(
        entry.name, entry.family, G.order, len(classes),
        [G.labels[a] for a in central_involutions(G)],
        exhaustive, considered, records, violations,
    )


def scan(entries: list[CatalogEntry], seed: int = 7, exhaustive_blocks: int = EXHAUSTIVE_BLOCKS, samples: int = RANDOM_SAMPLES, jobs: int = 1, tol: float = 1e-8) -> list[GroupScan]:
    args = [(e, seed, exhaustive_blocks, samples, tol) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_star, args))
    else:
        results = [_scan_star(a) for a in args]
    return sorted(results, key=lambda r: (r.order, r.family, r.name))


def _scan_star(args) -> GroupScan:
    return scan_group(*args)
