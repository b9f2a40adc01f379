"""Exact character tables.

Three routes produce a :class:`CharacterTable`:

* closed forms for abelian sums and dihedral groups,
* tensor products of factor tables for direct products,
* a modular Dixon-Schneider computation for anything given by a table.

Values are stored per conjugacy class as :class:`CyclotomicValue`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import modp
from .cyclotomic import CyclotomicValue
from .groups import ClassPartition, GroupTable, conjugacy_classes, exponent, inverse_class

PRIME_LIMIT = 2**20
ORTHOGONALITY_TOL = 1e-9


class CharacterTableError(ValueError):
    pass


class ConfigurationError(CharacterTableError):
    pass


class InternalError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class CharacterRow:
    degree: int
    values: tuple[CyclotomicValue, ...]
    label: str = ""

    def numeric(self) -> np.ndarray:
        return np.array([v.numeric() for v in self.values])


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: GroupTable
    classes: ClassPartition
    m: int
    rows: tuple[CharacterRow, ...]
    method: str = ""

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(r.degree for r in self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def value(self, row: int, element: int) -> CyclotomicValue:
        return self.rows[row].values[int(self.classes.class_of[element])]

    def numeric(self) -> np.ndarray:
        """Rows x classes complex matrix."""
        cached = self.__dict__.get("_numeric")
        if cached is None:
            cached = np.array([r.numeric() for r in self.rows])
            cached.setflags(write=False)
            self.__dict__["_numeric"] = cached
        return cached

    def with_rows(self, rows) -> "CharacterTable":
        return CharacterTable(self.group, self.classes, self.m, tuple(rows), self.method)


# --------------------------------------------------------------------------
# closed forms


def abelian_character_table(G: GroupTable, moduli=None) -> CharacterTable:
    """chi_g(x) = prod_i z_{n_i}^(g_i x_i), one row per element g in index order."""
    if not G.is_abelian:
        raise CharacterTableError("abelian_character_table needs an abelian group")
    if moduli is None:
        if G.spec is None or "moduli" not in G.spec.params:
            raise CharacterTableError("group was not built as an abelian sum; pass moduli")
        moduli = G.spec.params["moduli"]
    moduli = list(moduli)
    if math.prod(moduli) != G.order or len(G.keys) != G.order or len(G.keys[0]) != len(moduli):
        raise CharacterTableError(f"moduli {moduli} do not match the group")
    classes = conjugacy_classes(G)
    m = math.lcm(*moduli)
    weights = np.array([m // n for n in moduli], dtype=np.int64)
    keys = np.array(G.keys, dtype=np.int64)
    # exponent of z_m in chi_g(x)
    expo = (keys * weights) @ keys.T % m
    rows = []
    for g in range(G.order):
        vals = tuple(CyclotomicValue.root(m, int(expo[g, classes.representatives[c]])) for c in range(len(classes)))
        rows.append(CharacterRow(1, vals, f"chi_{G.labels[g]}"))
    return CharacterTable(G, classes, m, tuple(rows), "abelian")


def dihedral_character_table(G: GroupTable, n: int | None = None) -> CharacterTable:
    """Characters of D_n (order 2n) in the b^s a^i presentation."""
    if G.spec is None or G.spec.kind != "dihedral":
        raise CharacterTableError("dihedral_character_table needs a group built as dihedral(n)")
    if n is None:
        n = G.spec.params["n"]
    if n != G.spec.params["n"] or G.order != 2 * n:
        raise CharacterTableError(f"group is not dihedral of order {2 * n}")
    classes = conjugacy_classes(G)
    m = math.lcm(n, 2)
    step = m // n
    minus_one = CyclotomicValue.integer(-1, m)
    one = CyclotomicValue.integer(1, m)
    reps = [G.keys[r] for r in classes.representatives]

    def linear(eps_a: int, eps_b: int):
        vals = []
        for s, i in reps:
            sign = (eps_b if s else 1) * (eps_a ** i)
            vals.append(one if sign == 1 else minus_one)
        return tuple(vals)

    rows = [CharacterRow(1, linear(1, 1), "trivial"), CharacterRow(1, linear(1, -1), "sign")]
    if n % 2 == 0:
        rows.append(CharacterRow(1, linear(-1, 1), "alt_a"))
        rows.append(CharacterRow(1, linear(-1, -1), "alt_ab"))
    for j in range(1, (n - 1) // 2 + 1):
        vals = []
        for s, i in reps:
            if s:
                vals.append(CyclotomicValue.zero(m))
            else:
                vals.append(CyclotomicValue.root(m, step * j * i) + CyclotomicValue.root(m, -step * j * i))
        rows.append(CharacterRow(2, tuple(vals), f"rho_{j}"))
    return CharacterTable(G, classes, m, tuple(rows), "dihedral")


def product_character_table(G: GroupTable, factor_tables: list[CharacterTable] | None = None) -> CharacterTable:
    """Tensor-product characters of a direct product, rows in lexicographic factor order."""
    if not G.factors:
        raise CharacterTableError("product_character_table needs a direct product")
    if factor_tables is None:
        factor_tables = [character_table(f) for f in G.factors]
    classes = conjugacy_classes(G)
    m = math.lcm(*(t.m for t in factor_tables))
    reps = [G.keys[r] for r in classes.representatives]
    rows = []
    for combo in np.ndindex(*(len(t) for t in factor_tables)):
        degree = 1
        for t, i in zip(factor_tables, combo):
            degree *= t.rows[i].degree
        vals = []
        for key in reps:
            v = CyclotomicValue.integer(1, m)
            for t, i, x in zip(factor_tables, combo, key):
                v = v * t.value(i, x).rescale(m)
            vals.append(v)
        label = "*".join(t.rows[i].label for t, i in zip(factor_tables, combo))
        rows.append(CharacterRow(degree, tuple(vals), label))
    return CharacterTable(G, classes, m, tuple(rows), "product")


# --------------------------------------------------------------------------
# modular Dixon-Schneider


def class_multiplication_constants(G: GroupTable, classes: ClassPartition) -> np.ndarray:
    """a[i, j, k] = #{(x, y) in C_i x C_j : x y = z_k} for the representative z_k of C_k."""
    r = len(classes)
    a = np.zeros((r, r, r), dtype=np.int64)
    xs = np.arange(G.order)
    cls_x = classes.class_of[xs]
    for k, z in enumerate(classes.representatives):
        ys = G.mult[G.inv[xs], z]  # y = x^-1 z
        np.add.at(a, (cls_x, classes.class_of[ys], k), 1)
    return a


def choose_prime(m: int, order: int) -> int:
    """Smallest prime p = 1 (mod m) with p > 2 sqrt(order) and p not dividing order."""
    p = m + 1
    while p < PRIME_LIMIT:
        if p * p > 4 * order and order % p and modp.is_prime(p):
            return p
        p += m
    raise ConfigurationError(f"no prime p = 1 mod {m} below 2^20 suits a group of order {order}")


def _split_spaces(mats: list[list[list[int]]], r: int, p: int) -> list[list[int]]:
    """Common eigenvectors of commuting matrices over F_p (each returned as a column)."""
    spaces = [[[int(i == j) for i in range(r)] for j in range(r)]]  # list of column lists
    for N in mats:
        if all(len(s) == 1 for s in spaces):
            break
        nxt = []
        Nn = np.array(N, dtype=np.int64)
        for cols in spaces:
            if len(cols) == 1:
                nxt.append(cols)
                continue
            cols, piv = modp.column_echelon(cols, p)
            B = np.array(cols, dtype=np.int64).T  # r x k
            image = (Nn @ B) % p
            R = image[piv, :].tolist()  # N B = B R since B[piv] = I
            k = len(cols)
            found = 0
            for lam in modp.roots(modp.charpoly(R, p), p):
                shifted = [[(R[i][j] - (lam if i == j else 0)) % p for j in range(k)] for i in range(k)]
                W = modp.nullspace(shifted, p)
                found += len(W)
                sub = [((B @ np.array(w, dtype=np.int64)) % p).tolist() for w in W]
                nxt.append(sub)
            if found != k:
                raise InternalError("class matrices are not diagonalizable over the chosen prime")
        spaces = nxt
    if any(len(s) != 1 for s in spaces):
        raise InternalError("class matrices failed to separate the irreducible characters")
    return [s[0] for s in spaces]


def generic_character_table(G: GroupTable) -> CharacterTable:
    classes = conjugacy_classes(G)
    r = len(classes)
    n = G.order
    m = exponent(G)
    p = choose_prime(m, n)
    sizes = classes.sizes
    a = class_multiplication_constants(G, classes)
    # omega is a right eigenvector of N_j[i][k] = a[i, j, k] with eigenvalue omega_j
    mats = [a[:, j, :].tolist() for j in range(1, r)]
    vectors = _split_spaces(mats, r, p)
    if len(vectors) != r:
        raise InternalError(f"found {len(vectors)} central characters for {r} classes")

    inv_cls = inverse_class(G, classes)
    size_inv = [pow(s, p - 2, p) for s in sizes]
    zeta = pow(modp.primitive_root(p), (p - 1) // m, p)
    orders = G.element_orders
    rows = []
    for vec in vectors:
        if vec[0] % p == 0:
            raise InternalError("central character vanishes at the identity class")
        scale = pow(vec[0], p - 2, p)
        omega = [(v * scale) % p for v in vec]
        s = sum(omega[k] * omega[inv_cls[k]] * size_inv[k] for k in range(r)) % p
        if s == 0:
            raise InternalError("degree normalisation is singular mod p")
        d2 = (n * pow(s, p - 2, p)) % p
        degree = next((d for d in range(1, math.isqrt(n) + 1) if (d * d) % p == d2), None)
        if degree is None:
            raise InternalError("no integer degree matches the central character")
        chi_p = [(degree * omega[k] * size_inv[k]) % p for k in range(r)]
        rows.append((degree, _lift_row(G, classes, chi_p, degree, m, p, zeta, orders)))

    # ascending degree, then eigenvalue-multiplicity vectors in descending
    # lexicographic order (puts the trivial character first)
    rows.sort(key=lambda dv: (dv[0], tuple(tuple(-c for c in v.coeffs) for v in dv[1])))
    table = CharacterTable(
        G, classes, m, tuple(CharacterRow(d, v, f"X{i + 1}") for i, (d, v) in enumerate(rows)), "generic"
    )
    report = verify_table(table)
    if not report.passed:
        raise InternalError(f"generic character table failed verification: {report.failures}")
    return table


def _lift_row(G, classes, chi_p, degree, m, p, zeta, orders) -> tuple[CyclotomicValue, ...]:
    values = []
    for k, g in enumerate(classes.representatives):
        o = int(orders[g])
        step = m // o
        powers = []
        x = G.identity
        for _ in range(o):
            powers.append(chi_p[classes.class_of[x]])
            x = int(G.mult[x, g])
        o_inv = pow(o, p - 2, p)
        coeffs = [0] * m
        total = 0
        for l in range(o):
            # multiplicity of the eigenvalue z_o^l of rho(g)
            acc = 0
            for s, val in enumerate(powers):
                acc += val * pow(zeta, (-step * l * s) % m, p)
            mu = (acc * o_inv) % p
            if mu > degree:
                raise InternalError(f"eigenvalue multiplicity {mu} exceeds degree {degree} at class {k}")
            coeffs[step * l] = mu
            total += mu
        if total != degree:
            raise InternalError(f"multiplicities at class {k} sum to {total}, expected {degree}")
        values.append(CyclotomicValue(m, tuple(coeffs)))
    return tuple(values)


# --------------------------------------------------------------------------
# dispatch and verification


def character_table(G: GroupTable, method: str = "auto") -> CharacterTable:
    """Pick the closed form when the group's construction allows it."""
    if method == "generic":
        return generic_character_table(G)
    kind = G.spec.kind if G.spec is not None else None
    if kind in ("cyclic", "abelian-sum"):
        return abelian_character_table(G)
    if kind == "dihedral":
        return dihedral_character_table(G)
    if kind == "direct-product":
        return product_character_table(G, [character_table(f, method) for f in G.factors])
    if method == "closed":
        raise CharacterTableError(f"no closed form for group kind {kind!r}")
    return generic_character_table(G)


@dataclass
class TableReport:
    sum_of_squares: int
    order: int
    identity_column_ok: bool
    first_orthogonality_dev: float
    second_orthogonality_dev: float
    column_orthogonality_dev: float
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_table(t: CharacterTable, tol: float = ORTHOGONALITY_TOL) -> TableReport:
    G, classes = t.group, t.classes
    n = G.order
    sizes = np.array(classes.sizes, dtype=float)
    X = t.numeric()
    failures = []
    ident = int(classes.class_of[G.identity])
    sum_sq = sum(r.degree ** 2 for r in t.rows)
    if len(t.rows) != len(classes):
        failures.append(f"{len(t.rows)} rows for {len(classes)} classes")
    if sum_sq != n:
        failures.append(f"sum of squared degrees {sum_sq} != |G| = {n}")
    id_ok = all(r.values[ident] == CyclotomicValue.integer(r.degree, t.m) for r in t.rows)
    if not id_ok:
        failures.append("identity column differs from the degrees")

    gram = (X * sizes) @ X.conj().T / n
    first = float(np.abs(gram - np.eye(len(t.rows))).max()) if len(t.rows) == len(classes) else math.inf
    if first > tol:
        i, j = np.unravel_index(np.argmax(np.abs(gram - np.eye(len(t.rows)))), gram.shape)
        failures.append(f"first orthogonality fails for rows ({i},{j}): deviation {first:.3g}")

    degrees = np.array(t.degrees, dtype=float)
    others = [c for c in range(len(classes)) if c != ident]
    second = float(np.abs(degrees @ X[:, others].conj()).max()) if others else 0.0
    if second > tol:
        failures.append(f"second orthogonality fails against the identity column: deviation {second:.3g}")

    col = X.conj().T @ X
    expected = np.diag(n / sizes)
    column = float(np.abs(col - expected).max()) if len(t.rows) == len(classes) else math.inf
    if column > tol * n:
        failures.append(f"column orthogonality deviation {column:.3g}")
    return TableReport(sum_sq, n, id_ok, first, second, column, failures)


def tables_equal_up_to_rows(t1: CharacterTable, t2: CharacterTable) -> bool:
    """Exact comparison of two tables on the same class partition, ignoring row order."""
    if len(t1) != len(t2) or t1.classes.classes != t2.classes.classes:
        return False
    unused = list(range(len(t2)))
    for r in t1.rows:
        hit = next(
            (j for j in unused if t2.rows[j].degree == r.degree and all(a == b for a, b in zip(r.values, t2.rows[j].values))),
            None,
        )
        if hit is None:
            return False
        unused.remove(hit)
    return True
