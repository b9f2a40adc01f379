"""Finite groups as dense multiplication tables.

Elements are the indices ``0..n-1``; ``labels`` and ``keys`` carry the
human-readable and structural names.  Every constructor funnels through
:func:`build_group`, which accepts either a :class:`GroupSpec` or the JSON
dictionary form used on the command line.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 5040
ASSOCIATIVITY_EXHAUSTIVE_MAX = 128
ASSOCIATIVITY_SAMPLES = 10_000

KINDS = (
    "cyclic",
    "abelian-sum",
    "dihedral",
    "symmetric",
    "direct-product",
    "explicit-table",
    "permutation-generators",
)


class GroupSpecError(ValueError):
    """Malformed group description."""


class TableError(GroupSpecError):
    """An explicit multiplication table violates a group axiom."""

    def __init__(self, message: str, witness: tuple[int, ...] | None = None):
        super().__init__(message)
        self.witness = witness


class SizeCapError(GroupSpecError):
    pass


def size_cap() -> int:
    raw = os.environ.get("FREVIVAL_SIZE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise GroupSpecError(f"FREVIVAL_SIZE_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise GroupSpecError("FREVIVAL_SIZE_CAP must be positive")
    return cap


@dataclass(frozen=True)
class GroupSpec:
    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GroupSpecError(f"unknown group kind {self.kind!r}; expected one of {KINDS}")

    @classmethod
    def from_json(cls, doc: Any) -> "GroupSpec":
        if not isinstance(doc, dict) or "kind" not in doc:
            raise GroupSpecError("group spec must be an object with a 'kind' field")
        kind = doc["kind"]
        params = {k: v for k, v in doc.items() if k != "kind"}
        if kind == "direct-product":
            factors = params.get("factors")
            if not isinstance(factors, list) or not factors:
                raise GroupSpecError("direct-product needs a nonempty 'factors' list")
            params["factors"] = [f if isinstance(f, GroupSpec) else cls.from_json(f) for f in factors]
        return cls(kind, params)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"kind": self.kind}
        for k, v in self.params.items():
            if k == "factors":
                out[k] = [f.to_json() for f in v]
            else:
                out[k] = v
        return out


@dataclass(frozen=True, eq=False)
class GroupTable:
    order: int
    mult: np.ndarray
    identity: int
    inv: np.ndarray
    labels: tuple[str, ...]
    # structural key per element (tuple for abelian sums, (s, i) for dihedral, ...)
    keys: tuple = ()
    spec: GroupSpec | None = None
    factors: tuple["GroupTable", ...] = ()

    def __repr__(self) -> str:
        kind = self.spec.kind if self.spec else "table"
        return f"GroupTable(order={self.order}, kind={kind})"

    def mul(self, x: int, y: int) -> int:
        return int(self.mult[x, y])

    def power(self, x: int, k: int) -> int:
        r = self.identity
        for _ in range(k):
            r = int(self.mult[r, x])
        return r

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        for x in range(self.order):
            y, k = x, 1
            while y != self.identity:
                y = int(self.mult[y, x])
                k += 1
            orders[x] = k
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {_norm_label(lab): i for i, lab in enumerate(self.labels)}

    def element(self, ref: Any) -> int:
        """Resolve an element reference: index, label string, or structural key."""
        if isinstance(ref, bool):
            raise GroupSpecError(f"bad element reference {ref!r}")
        if isinstance(ref, (int, np.integer)):
            if not 0 <= ref < self.order:
                raise GroupSpecError(f"element index {ref} out of range 0..{self.order - 1}")
            return int(ref)
        if isinstance(ref, str):
            idx = self.label_index.get(_norm_label(ref))
            if idx is None:
                raise GroupSpecError(f"unknown element label {ref!r}")
            return idx
        if isinstance(ref, (list, tuple)):
            if self.factors:
                if len(ref) != len(self.factors):
                    raise GroupSpecError(f"element {ref!r} needs {len(self.factors)} components")
                comps = tuple(f.element(r) for f, r in zip(self.factors, ref))
                return self._key_index[comps]
            key = tuple(int(r) for r in ref)
            if self.spec is not None and self.spec.kind == "abelian-sum":
                moduli = self.spec.params["moduli"]
                key = tuple(k % n for k, n in zip(key, moduli))
            idx = self._key_index.get(key)
            if idx is None:
                raise GroupSpecError(f"unknown element {ref!r}")
            return idx
        raise GroupSpecError(f"bad element reference {ref!r}")

    @cached_property
    def _key_index(self) -> dict:
        return {k: i for i, k in enumerate(self.keys)}


def _norm_label(s: str) -> str:
    return "".join(s.split())


@dataclass(frozen=True, eq=False)
class ClassPartition:
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray
    representatives: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.classes)


# --------------------------------------------------------------------------
# construction


def build_group(spec: GroupSpec | dict) -> GroupTable:
    if isinstance(spec, dict):
        spec = GroupSpec.from_json(spec)
    builder = _BUILDERS.get(spec.kind)
    if builder is None:
        raise GroupSpecError(f"unknown group kind {spec.kind!r}; expected one of {', '.join(sorted(_BUILDERS))}")
    return builder(spec)


def cyclic(n: int) -> GroupTable:
    return build_group(GroupSpec("cyclic", {"n": n}))


def abelian_sum(moduli: Sequence[int]) -> GroupTable:
    return build_group(GroupSpec("abelian-sum", {"moduli": list(moduli)}))


def dihedral(n: int) -> GroupTable:
    return build_group(GroupSpec("dihedral", {"n": n}))


def symmetric(n: int) -> GroupTable:
    return build_group(GroupSpec("symmetric", {"n": n}))


def direct_product(*factors: GroupSpec | dict) -> GroupTable:
    specs = [f if isinstance(f, GroupSpec) else GroupSpec.from_json(f) for f in factors]
    return build_group(GroupSpec("direct-product", {"factors": specs}))


def _positive_int(value: Any, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise GroupSpecError(f"{what} must be a positive integer, got {value!r}")
    return int(value)


def _check_cap(order: int) -> None:
    cap = size_cap()
    if order > cap:
        raise SizeCapError(f"group order {order} exceeds size cap {cap}")


def _from_keys(keys: list, mul, labels: list[str], spec: GroupSpec, factors=()) -> GroupTable:
    index = {k: i for i, k in enumerate(keys)}
    n = len(keys)
    mult = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(keys):
        for j, y in enumerate(keys):
            mult[i, j] = index[mul(x, y)]
    return _finish(mult, labels, keys, spec, factors, check_assoc=False)


def _finish(mult, labels, keys, spec, factors=(), check_assoc=True) -> GroupTable:
    mult = np.asarray(mult, dtype=np.int64)
    identity, inv = _validate_table(mult, check_assoc=check_assoc)
    mult.setflags(write=False)
    inv.setflags(write=False)
    return GroupTable(
        order=mult.shape[0],
        mult=mult,
        identity=identity,
        inv=inv,
        labels=tuple(labels),
        keys=tuple(keys),
        spec=spec,
        factors=tuple(factors),
    )


def _build_abelian(spec: GroupSpec) -> GroupTable:
    if spec.kind == "cyclic":
        moduli = [_positive_int(spec.params.get("n"), "cyclic n")]
    else:
        raw = spec.params.get("moduli")
        if not isinstance(raw, list) or not raw:
            raise GroupSpecError("abelian-sum needs a nonempty 'moduli' list")
        moduli = [_positive_int(n, "modulus") for n in raw]
    _check_cap(math.prod(moduli))
    keys = list(itertools.product(*(range(n) for n in moduli)))
    if len(moduli) == 1:
        labels = [str(k[0]) for k in keys]
    else:
        labels = ["(" + ",".join(map(str, k)) + ")" for k in keys]
    # mixed-radix indices make the table a sum of shifted index arrays
    n = len(keys)
    arr = np.array(keys, dtype=np.int64).reshape(n, len(moduli))
    mods = np.array(moduli, dtype=np.int64)
    summed = (arr[:, None, :] + arr[None, :, :]) % mods
    radix = np.ones(len(moduli), dtype=np.int64)
    for i in range(len(moduli) - 2, -1, -1):
        radix[i] = radix[i + 1] * moduli[i + 1]
    mult = summed @ radix
    norm = GroupSpec("abelian-sum", {"moduli": moduli})
    if spec.kind == "cyclic":
        norm = GroupSpec("cyclic", {"n": moduli[0], "moduli": moduli})
    return _finish(mult, labels, keys, norm, check_assoc=False)


def _dihedral_label(s: int, i: int) -> str:
    rot = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
    if s == 0:
        return rot or "e"
    return "b" + rot


def _build_dihedral(spec: GroupSpec) -> GroupTable:
    n = _positive_int(spec.params.get("n"), "dihedral n")
    _check_cap(2 * n)
    # (s, i) stands for b^s a^i, with a b = b a^-1
    keys = [(s, i) for s in range(2) for i in range(n)]

    def mul(x, y):
        s1, i1 = x
        s2, i2 = y
        sign = -1 if s2 else 1
        return ((s1 + s2) % 2, (sign * i1 + i2) % n)

    labels = [_dihedral_label(s, i) for s, i in keys]
    return _from_keys(keys, mul, labels, GroupSpec("dihedral", {"n": n}))


def cycle_notation(perm: Sequence[int]) -> str:
    seen = [False] * len(perm)
    parts = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = perm[x]
        parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts) or "()"


def _compose(p: tuple, q: tuple) -> tuple:
    # (p q)(x) = p(q(x))
    return tuple(p[x] for x in q)


def _perm_group(perms: list[tuple], spec: GroupSpec) -> GroupTable:
    perms = sorted(perms)
    labels = [cycle_notation(p) for p in perms]
    P = np.array(perms, dtype=np.int64)
    n, d = P.shape
    radix = d ** np.arange(d - 1, -1, -1, dtype=np.int64)
    codes = P @ radix  # increasing, since perms are sorted lexicographically
    mult = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        # (p_i p_j)(x) = p_i(p_j(x))
        mult[i] = np.searchsorted(codes, P[i][P] @ radix)
    return _finish(mult, labels, perms, spec, check_assoc=False)


def _build_symmetric(spec: GroupSpec) -> GroupTable:
    n = _positive_int(spec.params.get("n"), "symmetric n")
    _check_cap(math.factorial(n))
    return _perm_group(list(itertools.permutations(range(n))), GroupSpec("symmetric", {"n": n}))


def _parse_permutation(raw: Any, degree: int | None) -> tuple:
    if not isinstance(raw, list) or not raw:
        raise GroupSpecError(f"generator must be a nonempty list of images, got {raw!r}")
    perm = tuple(int(x) for x in raw)
    if sorted(perm) != list(range(len(perm))):
        raise GroupSpecError(f"generator {raw!r} is not a permutation of 0..{len(perm) - 1}")
    if degree is not None and len(perm) != degree:
        raise GroupSpecError("generators must act on a common finite set")
    return perm


def _build_perm_generators(spec: GroupSpec) -> GroupTable:
    raw = spec.params.get("generators")
    if not isinstance(raw, list) or not raw:
        raise GroupSpecError("permutation-generators needs a nonempty 'generators' list")
    gens: list[tuple] = []
    degree = None
    for g in raw:
        p = _parse_permutation(g, degree)
        degree = len(p)
        gens.append(p)
    cap = size_cap()
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _compose(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise SizeCapError(f"generators produce a group larger than the size cap {cap}")
                queue.append(y)
    norm = GroupSpec("permutation-generators", {"generators": [list(g) for g in gens]})
    return _perm_group(list(seen), norm)


def _build_direct_product(spec: GroupSpec) -> GroupTable:
    factors = [build_group(f) for f in spec.params["factors"]]
    _check_cap(math.prod(f.order for f in factors))
    keys = list(itertools.product(*(range(f.order) for f in factors)))
    labels = ["(" + ",".join(f.labels[c] for f, c in zip(factors, k)) + ")" for k in keys]
    # lexicographic keys: index = mixed-radix number, product acts componentwise
    mult = np.zeros((1, 1), dtype=np.int64)
    for f in factors:
        mult = (mult[:, None, :, None] * f.order + f.mult[None, :, None, :]).reshape(
            mult.shape[0] * f.order, mult.shape[1] * f.order
        )
    norm = GroupSpec("direct-product", {"factors": [f.spec for f in factors]})
    return _finish(mult, labels, keys, norm, factors, check_assoc=False)


def _build_explicit(spec: GroupSpec) -> GroupTable:
    raw = spec.params.get("table")
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise GroupSpecError("explicit-table needs a square 'table' list of lists")
    n = len(raw)
    if any(len(r) != n for r in raw):
        raise TableError("table is not square")
    _check_cap(n)
    try:
        mult = np.array(raw, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise TableError(f"table entries must be integers: {exc}") from exc
    labels = spec.params.get("labels") or [f"g{i}" for i in range(n)]
    if len(labels) != n or len(set(map(_norm_label, labels))) != n:
        raise GroupSpecError("labels must be n distinct strings")
    keys = list(range(n))
    params = {"table": mult.tolist()}
    if "labels" in spec.params:
        params["labels"] = list(labels)
    return _finish(mult, labels, keys, GroupSpec("explicit-table", params))


_BUILDERS = {
    "cyclic": _build_abelian,
    "abelian-sum": _build_abelian,
    "dihedral": _build_dihedral,
    "symmetric": _build_symmetric,
    "direct-product": _build_direct_product,
    "explicit-table": _build_explicit,
    "permutation-generators": _build_perm_generators,
}


def _validate_table(mult: np.ndarray, check_assoc: bool = True, seed: int = 0):
    n = mult.shape[0]
    if mult.ndim != 2 or mult.shape != (n, n) or n == 0:
        raise TableError("table must be a nonempty square array")
    if mult.min() < 0 or mult.max() >= n:
        raise TableError("table entries must lie in 0..n-1")
    full = np.arange(n)
    for x in range(n):
        if not np.array_equal(np.sort(mult[x]), full):
            raise TableError(f"row {x} is not a permutation", (x,))
        if not np.array_equal(np.sort(mult[:, x]), full):
            raise TableError(f"column {x} is not a permutation", (x,))
    ids = [e for e in range(n) if np.array_equal(mult[e], full) and np.array_equal(mult[:, e], full)]
    if not ids:
        raise TableError("table has no two-sided identity")
    identity = ids[0]
    inv = np.argmax(mult == identity, axis=1).astype(np.int64)
    if check_assoc:
        if n <= ASSOCIATIVITY_EXHAUSTIVE_MAX:
            left = mult[mult]  # left[x, y, z] = (x y) z
            right = mult[:, mult]  # right[x, y, z] = x (y z)
            bad = np.argwhere(left != right)
            if bad.size:
                x, y, z = (int(v) for v in bad[0])
                raise TableError(f"associativity fails at ({x},{y},{z})", (x, y, z))
        else:
            rng = random.Random(seed)
            for _ in range(ASSOCIATIVITY_SAMPLES):
                x, y, z = rng.randrange(n), rng.randrange(n), rng.randrange(n)
                if mult[mult[x, y], z] != mult[x, mult[y, z]]:
                    raise TableError(f"associativity fails at ({x},{y},{z})", (x, y, z))
    return identity, inv


# --------------------------------------------------------------------------
# structural queries


def conjugacy_classes(G: GroupTable) -> ClassPartition:
    cached = G.__dict__.get("_classes")
    if cached is not None:
        return cached
    n = G.order
    class_of = np.full(n, -1, dtype=np.int64)
    found: list[tuple[int, ...]] = []
    everything = np.arange(n)
    for x in range(n):
        if class_of[x] >= 0:
            continue
        # g x g^-1 over all g
        orbit = np.unique(G.mult[G.mult[everything, x], G.inv])
        class_of[orbit] = len(found)
        found.append(tuple(int(v) for v in orbit))
    # identity class first, the rest by minimal element
    order = sorted(range(len(found)), key=lambda c: (G.identity not in found[c], found[c][0]))
    classes = tuple(found[c] for c in order)
    relabel = np.empty(len(found), dtype=np.int64)
    relabel[order] = np.arange(len(found))
    class_of = relabel[class_of]
    class_of.setflags(write=False)
    part = ClassPartition(classes, class_of, tuple(c[0] for c in classes))
    G.__dict__["_classes"] = part
    return part


def center_elements(G: GroupTable) -> list[int]:
    cp = conjugacy_classes(G)
    return sorted(c[0] for c in cp.classes if len(c) == 1)


def central_involutions(G: GroupTable) -> list[int]:
    return [a for a in center_elements(G) if a != G.identity and G.mult[a, a] == G.identity]


def exponent(G: GroupTable) -> int:
    return math.lcm(*(int(o) for o in G.element_orders))


def inverse_class(G: GroupTable, classes: ClassPartition) -> np.ndarray:
    """Index of the class holding the inverses of each class."""
    return np.array([classes.class_of[G.inv[r]] for r in classes.representatives], dtype=np.int64)
