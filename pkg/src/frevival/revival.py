"""Deciding fractional revival on connected quasi-abelian Cayley graphs.

For a central involution ``a`` the irreducible characters split by the sign
of ``chi(a) = +-d_chi``.  With ``M`` the gcd of the eigenvalue gaps inside
each half, revival between ``u`` and ``a u`` can only happen at
``t = 2 pi k / M``; at such a time every character in the ``+`` half picks up
the same phase ``z0`` and every one in the ``-`` half the phase ``z1``, and
revival happens exactly when ``z0 != z1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .characters import CharacterTable, InternalError
from .cyclotomic import CyclotomicValue
from .groups import GroupTable, central_involutions, center_elements
from .spectrum import CharacterSpectrum, ConnectionSet, is_connected


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class CharacterSplit:
    involution: int
    ghat0: tuple[int, ...]
    ghat1: tuple[int, ...]


@dataclass(frozen=True)
class RevivalWitness:
    involution: int
    u: int
    v: int
    M: int
    k: int
    t: float
    z0: CyclotomicValue
    z1: CyclotomicValue
    kind: str  # "FR" or "PST"
    minimal: bool = False
    special_case: str | None = None

    @property
    def two_alpha(self) -> CyclotomicValue:
        return self.z0 + self.z1

    @property
    def two_beta(self) -> CyclotomicValue:
        return self.z0 - self.z1

    @property
    def alpha(self) -> complex:
        return self.two_alpha.numeric() / 2

    @property
    def beta(self) -> complex:
        return self.two_beta.numeric() / 2

    @property
    def key(self) -> tuple[int, int]:
        return (self.involution, self.k)


def split_characters(table: CharacterTable, a: int) -> CharacterSplit:
    G = table.group
    if a not in central_involutions(G):
        raise PreconditionError(f"{G.labels[a]} is not a central involution")
    cls = int(table.classes.class_of[a])
    ghat0, ghat1 = [], []
    for i, row in enumerate(table.rows):
        val = row.values[cls]
        if val == row.degree:
            ghat0.append(i)
        elif val == -row.degree:
            ghat1.append(i)
        else:
            raise InternalError(f"character {i} takes value {val!r} at a central involution")
    n0 = sum(table.rows[i].degree ** 2 for i in ghat0)
    n1 = sum(table.rows[i].degree ** 2 for i in ghat1)
    if n0 != n1 or n0 + n1 != G.order:
        raise InternalError(f"degree split {n0}/{n1} is not |G|/2 each")
    return CharacterSplit(a, tuple(ghat0), tuple(ghat1))


def gap_set(spec: CharacterSpectrum, split: CharacterSplit, reference: int | None = None) -> list[int]:
    """|S| - lambda over the + half and lambda_ref - lambda over the - half."""
    if not spec.integral:
        raise PreconditionError("spectrum is not integral")
    if reference is None:
        reference = split.ghat1[0]
    lam = [e.exact for e in spec.entries]
    ref = lam[reference]
    return [spec.connection_size - lam[i] for i in split.ghat0] + [ref - lam[i] for i in split.ghat1]


def compute_M(spec: CharacterSpectrum, split: CharacterSplit, reference: int | None = None) -> int | None:
    g = 0
    for x in gap_set(spec, split, reference):
        g = math.gcd(g, x)
    return g or None


def _witnesses_for(a: int, M: int, size: int, ref_lambda: int, order: int, identity: int, v: int) -> list[RevivalWitness]:
    out = []
    # phases written over |G|-th roots of unity (M divides |G| for genuine revival)
    base = math.lcm(order, M)
    step = base // M
    for k in range(1, M):
        e0 = (k * size) % M
        e1 = (k * ref_lambda) % M
        if e0 == e1:
            continue
        z0 = CyclotomicValue.root(base, e0 * step)
        z1 = CyclotomicValue.root(base, e1 * step)
        kind = "PST" if (2 * (e0 - e1)) % (2 * M) == M else "FR"  # z0 = -z1
        out.append(RevivalWitness(a, identity, v, M, k, 2 * math.pi * k / M, z0, z1, kind))
    return out


def _mark_minimal(ws: list[RevivalWitness]) -> list[RevivalWitness]:
    if not ws:
        return ws
    best = min(range(len(ws)), key=lambda i: (ws[i].t, ws[i].key))
    return [replace(w, minimal=(i == best)) for i, w in enumerate(ws)]


def k2_witness(G: GroupTable, S: ConnectionSet) -> RevivalWitness:
    """Representative of the (cos t, i sin t) family on K2, taken at t = pi/2."""
    a = next(x for x in range(2) if x != G.identity)
    return RevivalWitness(
        a, G.identity, a, 4, 1, math.pi / 2,
        CyclotomicValue.root(4, 1), CyclotomicValue.root(4, 3), "PST",
        minimal=True, special_case="K2: (cos t, i sin t)-revival at every t not in pi*Z",
    )


@dataclass
class Decision:
    witnesses: list[RevivalWitness]
    reason: str
    Ms: dict[int, int | None] = field(default_factory=dict)


def decide(G: GroupTable, S: ConnectionSet, table: CharacterTable, spec: CharacterSpectrum) -> Decision:
    """Full decision with the reason when nothing is found."""
    if not is_connected(G, S):
        raise PreconditionError("Cayley graph is not connected")
    if G.order == 2:
        return Decision([k2_witness(G, S)], "K2 special case")
    invols = central_involutions(G)
    if not invols:
        return Decision([], "no central involution")
    if not spec.integral:
        return Decision([], "spectrum not integral")
    ws: list[RevivalWitness] = []
    Ms: dict[int, int | None] = {}
    for a in invols:
        split = split_characters(table, a)
        M = compute_M(spec, split)
        Ms[a] = M
        if M is None:
            continue
        ref = spec.entries[split.ghat1[0]].exact
        ws.extend(_witnesses_for(a, M, len(S), ref, G.order, G.identity, a))
    ws.sort(key=lambda w: w.key)
    reason = "revival" if ws else "no candidate time with nonzero beta"
    return Decision(_mark_minimal(ws), reason, Ms)


def decide_fractional_revival(G: GroupTable, S: ConnectionSet, table: CharacterTable, spec: CharacterSpectrum) -> list[RevivalWitness]:
    return decide(G, S, table, spec).witnesses


def abelian_fast_path(G: GroupTable, S: ConnectionSet, moduli=None) -> list[RevivalWitness]:
    """Same witnesses as the generic engine, computed from the closed form chi_g."""
    if not G.is_abelian:
        raise PreconditionError("abelian_fast_path needs an abelian group")
    if moduli is None:
        moduli = G.spec.params["moduli"]
    if not is_connected(G, S):
        raise PreconditionError("Cayley graph is not connected")
    if G.order == 2:
        return [k2_witness(G, S)]
    m = math.lcm(*moduli)
    weights = np.array([m // n for n in moduli], dtype=np.int64)
    keys = np.array(G.keys, dtype=np.int64)
    pair = (keys * weights) @ keys.T % m  # exponent of z_m in chi_g(x)
    lam = []
    for g in range(G.order):
        counts = np.bincount(pair[g, list(S.elements)], minlength=m)
        value = CyclotomicValue(m, tuple(int(c) for c in counts)).rational_integer()
        if value is None:
            return []
        lam.append(value)
    invols = [x for x in range(G.order) if x != G.identity and G.mult[x, x] == G.identity]
    ws = []
    for a in invols:
        g0 = [g for g in range(G.order) if pair[g, a] == 0]
        g1 = [g for g in range(G.order) if pair[g, a] == m // 2]
        M = 0
        for g in g0:
            M = math.gcd(M, len(S) - lam[g])
        for g in g1:
            M = math.gcd(M, lam[g1[0]] - lam[g])
        if M:
            ws.extend(_witnesses_for(a, M, len(S), lam[g1[0]], G.order, G.identity, a))
    ws.sort(key=lambda w: w.key)
    return _mark_minimal(ws)


@dataclass
class DivisorCertificate:
    M_at_least_two: bool
    M_divides_order: bool
    root_of_unity: bool
    deviation: float

    @property
    def passed(self) -> bool:
        return self.M_at_least_two and self.M_divides_order and self.root_of_unity


def divisor_certificate(w: RevivalWitness, G: GroupTable) -> DivisorCertificate:
    dev = abs(np.exp(1j * w.t) ** G.order - 1)
    return DivisorCertificate(w.M >= 2, G.order % w.M == 0, bool(dev < 1e-9), float(dev))


def is_central_involution(G: GroupTable, x: int) -> bool:
    return x != G.identity and x in center_elements(G) and G.mult[x, x] == G.identity
