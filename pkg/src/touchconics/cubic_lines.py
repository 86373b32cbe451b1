"""Lattice combinatorics of the 27 lines, the 56 exceptional curves and the monodromy group.

Classes are tuples (a, b1, ..., bn) standing for a H - b1 E1 - ... - bn En
with pairing a a' - sum b_i b'_i; n = 6 for the cubic surface and n = 7 for
the double plane.  Group elements are permutations of a fixed label list.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

Cls = tuple


class LatticeError(ValueError):
    pass


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    if len(u) != len(v):
        raise LatticeError("classes of different rank")
    return u[0] * v[0] - sum(x * y for x, y in zip(u[1:], v[1:]))


def canonical(n: int) -> Cls:
    return (-3,) + (-1,) * n


def exceptional(n: int, i: int) -> Cls:
    b = [0] * n
    b[i - 1] = -1
    return (0, *b)


def _line(n: int, i: int, j: int) -> Cls:
    b = [0] * n
    b[i - 1] = b[j - 1] = 1
    return (1, *b)


def _add(*cs: Sequence[int]) -> Cls:
    return tuple(sum(x) for x in zip(*cs))


def _neg(c: Sequence[int]) -> Cls:
    return tuple(-x for x in c)


def _scale(k: int, c: Sequence[int]) -> Cls:
    return tuple(k * x for x in c)


def is_exceptional_class(c: Sequence[int]) -> bool:
    n = len(c) - 1
    return pairing(c, c) == -1 and pairing(c, _neg(canonical(n))) == 1


# --- the 27 lines and the 56 curves ------------------------------------------------

@lru_cache(maxsize=None)
def lines27() -> tuple[tuple[str, Cls], ...]:
    out = [(f"E{i}", exceptional(6, i)) for i in range(1, 7)]
    out += [(f"G{i}{j}", _line(6, i, j)) for i, j in combinations(range(1, 7), 2)]
    for i in range(1, 7):
        b = [1] * 6
        b[i - 1] = 0
        out.append((f"C{i}", (2, *b)))
    return tuple(out)


LINE_LABELS = tuple(lab for lab, _ in lines27())
LINE_INDEX = {lab: k for k, lab in enumerate(LINE_LABELS)}
LINE_CLASSES = tuple(c for _, c in lines27())


def incidence27() -> list[list[int]]:
    """Adjacency lists: lines meeting each line (pairing 1)."""
    return [[j for j, d in enumerate(LINE_CLASSES) if j != i and pairing(c, d) == 1] for i, c in enumerate(LINE_CLASSES)]


@lru_cache(maxsize=None)
def curves56() -> tuple[tuple[str, Cls], ...]:
    mK = _neg(canonical(7))
    out = [(f"E{i}", exceptional(7, i)) for i in range(1, 8)]
    out += [(f"K{i}", _add(mK, _neg(exceptional(7, i)))) for i in range(1, 8)]
    out += [(f"G{i}{j}", _line(7, i, j)) for i, j in combinations(range(1, 8), 2)]
    out += [(f"C{i}{j}", _add(mK, _neg(_line(7, i, j)))) for i, j in combinations(range(1, 8), 2)]
    return tuple(out)


CURVE_LABELS = tuple(lab for lab, _ in curves56())
CURVE_INDEX = {lab: k for k, lab in enumerate(CURVE_LABELS)}
CURVE_CLASSES = tuple(c for _, c in curves56())


def partner56() -> dict[str, str]:
    """C -> C' with C + C' = -K (the two curves over one bitangent)."""
    mK = _neg(canonical(7))
    by_class = {c: lab for lab, c in curves56()}
    return {lab: by_class[_add(mK, _neg(c))] for lab, c in curves56()}


def blow_down() -> dict[str, str]:
    """Curves of the double plane disjoint from E7, mapped to the 27 lines."""
    e7 = exceptional(7, 7)
    by_class = {c: lab for lab, c in lines27()}
    out = {}
    for lab, c in curves56():
        if lab == "E7" or pairing(c, e7) != 0:
            continue
        if c[7] != 0:
            raise LatticeError("curve disjoint from E7 with nonzero b7")
        out[lab] = by_class[c[:7]]
    return out


D_ASSIGNMENT = {
    "D1+": "K7", "D1-": "E7",
    "D2+": "G12", "D2-": "C12",
    "D3+": "G34", "D3-": "C34",
    "D4+": "G56", "D4-": "C56",
}


def d_assignments() -> tuple[dict[str, str], dict[str, bool]]:
    cls = dict(curves56())
    d = {k: cls[v] for k, v in D_ASSIGNMENT.items()}
    ok_same = all(pairing(d[f"D{i}+"], d[f"D{i}-"]) == 2 for i in range(1, 5))
    ok_pp = all(pairing(d[f"D{i}{s}"], d[f"D{j}{s}"]) == 1 for i, j in combinations(range(1, 5), 2) for s in "+-")
    ok_pm = all(pairing(d[f"D{i}+"], d[f"D{j}-"]) == 0 for i in range(1, 5) for j in range(1, 5) if i != j)
    return dict(D_ASSIGNMENT), {"Di+.Di-=2": ok_same, "Di+.Dj+=Di-.Dj-=1": ok_pp, "Di+.Dj-=0": ok_pm}


# --- roots and reflections ---------------------------------------------------------

@lru_cache(maxsize=None)
def roots(n: int = 6) -> tuple[Cls, ...]:
    """All x with x.x = -2 and x.K = 0 (E6 for n = 6, E7 for n = 7)."""
    K = canonical(n)
    out = []
    for a in range(-3, 4):
        for b in product(range(-2, 3), repeat=n):
            x = (a, *b)
            if pairing(x, x) == -2 and pairing(x, K) == 0:
                out.append(x)
    return tuple(sorted(out))


def roots_e6() -> tuple[Cls, ...]:
    return roots(6)


def root_type(x: Sequence[int]) -> str:
    a = abs(x[0])
    return {0: "Ei-Ej", 1: "±(1;eijk)", 2: "±(2;1^6)"}[a]


def reflect(x: Sequence[int], v: Sequence[int]) -> Cls:
    return _add(v, _scale(pairing(v, x), x))


@dataclass(frozen=True)
class WeylElem:
    """A permutation of the 27 lines (images by index) induced by a lattice isometry."""

    perm: tuple[int, ...]

    def __call__(self, label: str) -> str:
        return LINE_LABELS[self.perm[LINE_INDEX[label]]]

    def __mul__(self, other: WeylElem) -> WeylElem:
        # (self * other)(x) = self(other(x))
        return WeylElem(tuple(self.perm[i] for i in other.perm))

    def fixed(self) -> int:
        return sum(1 for i, j in enumerate(self.perm) if i == j)

    def order(self) -> int:
        k, p = 1, self
        while p.perm != tuple(range(len(self.perm))):
            p, k = p * self, k + 1
        return k

    def lattice_map(self) -> list[Cls]:
        """Images of H, E1..E6 (recovered from the line images; H = G12 + E1 + E2)."""
        img = {lab: LINE_CLASSES[self.perm[k]] for k, lab in enumerate(LINE_LABELS)}
        H = _add(img["G12"], img["E1"], img["E2"])
        return [H] + [_neg(img[f"E{i}"]) for i in range(1, 7)]

    def apply_class(self, v: Sequence[int]) -> Cls:
        m = self.lattice_map()
        # v = a H - sum b_i E_i
        return _add(_scale(v[0], m[0]), *(_scale(v[i], m[i]) for i in range(1, 7)))


def class_permutation(fn, classes: Sequence[Cls]) -> tuple[int, ...]:
    index = {c: k for k, c in enumerate(classes)}
    try:
        return tuple(index[fn(c)] for c in classes)
    except KeyError as exc:
        raise LatticeError("map does not permute the given classes") from exc


def reflection(x: Sequence[int]) -> WeylElem:
    if pairing(x, x) != -2 or pairing(x, canonical(len(x) - 1)) != 0:
        raise LatticeError(f"{x} is not a root")
    return WeylElem(class_permutation(lambda v: reflect(x, v), LINE_CLASSES))


def is_C16(w: WeylElem) -> bool:
    return w.order() == 2 and w.fixed() >= 15


# --- double sixes -------------------------------------------------------------------

def double_sixes() -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """All 36 double sixes, each as two sextuples matched position by position (skew partners)."""
    n = len(LINE_CLASSES)
    skew = [[pairing(LINE_CLASSES[i], LINE_CLASSES[j]) == 0 and i != j for j in range(n)] for i in range(n)]
    sixers = []

    def extend(clique, cands):
        if len(clique) == 6:
            sixers.append(tuple(clique))
            return
        for k, c in enumerate(cands):
            extend(clique + [c], [d for d in cands[k + 1:] if skew[c][d]])

    extend([], list(range(n)))
    out = []
    seen = set()
    for s in sixers:
        # the partner of each line: the unique line skew to it that meets the other five
        partner = []
        for i in s:
            cand = [j for j in range(n) if j not in s and skew[i][j] and all(not skew[k][j] for k in s if k != i)]
            if len(cand) != 1:
                break
            partner.append(cand[0])
        else:
            t = tuple(partner)
            if all(skew[a][b] for a, b in combinations(t, 2)):
                key = frozenset((frozenset(s), frozenset(t)))
                if key not in seen:
                    seen.add(key)
                    first, second = sorted((s, t))
                    pm = dict(zip(s, t)) | dict(zip(t, s))
                    out.append((tuple(LINE_LABELS[i] for i in first), tuple(LINE_LABELS[pm[i]] for i in first)))
    return sorted(out)


def double_six_element(ds) -> WeylElem:
    perm = list(range(27))
    for a, b in zip(*ds):
        perm[LINE_INDEX[a]], perm[LINE_INDEX[b]] = LINE_INDEX[b], LINE_INDEX[a]
    return WeylElem(tuple(perm))


# --- the twelve distinguished roots -------------------------------------------------

FIXED_LINES = ("G12", "G34", "G56")

LISTED_ROOTS = {
    1: (2, 1, 1, 1, 1, 1, 1), 2: (1, 1, 0, 1, 0, 0, 1), 3: (0, -1, 1, 0, 0, 0, 0),
    4: (1, 1, 0, 0, 1, 1, 0), 5: (1, 1, 0, 0, 1, 0, 1), 6: (1, 0, 1, 1, 0, 1, 0),
    7: (0, 0, 0, -1, 1, 0, 0), 8: (1, 0, 1, 1, 0, 0, 1), 9: (1, 0, 1, 0, 1, 1, 0),
    10: (1, 0, 1, 0, 1, 0, 1), 11: (0, 0, 0, 0, 0, -1, 1), 12: (1, 1, 0, 1, 0, 1, 0),
}

# the double six of each listed root: top row swapped with bottom row
LISTED_ACTION = {
    1: ("E1 E2 E3 E4 E5 E6", "C1 C2 C3 C4 C5 C6"),
    2: ("E1 E3 E6 G45 G25 G24", "G36 G16 G13 C2 C4 C5"),
    3: ("E1 C1 G23 G24 G25 G26", "E2 C2 G13 G14 G15 G16"),
    4: ("E1 E4 E5 G36 G26 G23", "G45 G15 G14 C2 C3 C6"),
    5: ("E1 E4 E6 G35 G25 G23", "G46 G16 G14 C2 C3 C5"),
    6: ("E2 E3 E5 G46 G16 G14", "G35 G25 G23 C1 C4 C6"),
    7: ("E3 C3 G14 G24 G45 G46", "E4 C4 G13 G23 G35 G36"),
    8: ("E2 E3 E6 G45 G15 G14", "G36 G26 G23 C1 C4 C5"),
    9: ("E2 E4 E5 G36 G16 G13", "G45 G25 G24 C1 C3 C6"),
    10: ("E2 E4 E6 G35 G15 G13", "G46 G26 G24 C1 C3 C5"),
    11: ("E5 C5 G16 G26 G36 G46", "E6 C6 G15 G25 G35 G45"),
    12: ("E1 E3 E5 G46 G26 G24", "G35 G15 G13 C2 C4 C6"),
}

DYNKIN_BASE = (3, 7, 11, 12)


def stabilizer_roots() -> list[Cls]:
    """Roots whose reflections fix G12, G34, G56, one of each sign pair (first entry positive)."""
    fixed = [LINE_CLASSES[LINE_INDEX[l]] for l in FIXED_LINES]
    out = [x for x in roots_e6() if all(pairing(x, f) == 0 for f in fixed)]
    return sorted(x for x in out if _positive(x))


def _positive(x: Sequence[int]) -> bool:
    nz = next(c for c in x if c != 0)
    return nz > 0 if x[0] != 0 else x[next(i for i in range(1, len(x)) if x[i] != 0)] < 0


def matches_listed_roots() -> bool:
    found = {frozenset((x, _neg(x))) for x in stabilizer_roots()}
    listed = {frozenset((x, _neg(x))) for x in LISTED_ROOTS.values()}
    return found == listed and len(found) == 12


def swapped_pairs(w: WeylElem) -> set[frozenset]:
    return {frozenset((LINE_LABELS[i], LINE_LABELS[j])) for i, j in enumerate(w.perm) if i < j}


def action_table_matches() -> dict[int, bool]:
    out = {}
    for k, x in LISTED_ROOTS.items():
        top, bottom = (row.split() for row in LISTED_ACTION[k])
        expected = {frozenset(p) for p in zip(top, bottom)}
        out[k] = swapped_pairs(reflection(x)) == expected
    return out


@dataclass
class Dynkin:
    nodes: list[int]
    edges: list[tuple[int, int]]

    def is_d4_star(self) -> bool:
        deg = Counter(v for e in self.edges for v in e)
        return len(self.nodes) == 4 and len(self.edges) == 3 and sorted(deg[v] for v in self.nodes) == [1, 1, 1, 3]

    @property
    def center(self) -> int | None:
        deg = Counter(v for e in self.edges for v in e)
        c = [v for v in self.nodes if deg[v] == 3]
        return c[0] if c else None


def dynkin(labels: Sequence[int] = DYNKIN_BASE) -> Dynkin:
    rs = {k: LISTED_ROOTS[k] for k in labels}
    edges = [(a, b) for a, b in combinations(labels, 2) if pairing(rs[a], rs[b]) != 0]
    return Dynkin(list(labels), edges)


def base_coefficients(x: Sequence[int], base: Sequence[int] = DYNKIN_BASE) -> list[Fraction] | None:
    """Exact coefficients of x in the given base roots (None if not in their span)."""
    cols = [LISTED_ROOTS[k] for k in base]
    rows = [[Fraction(cols[j][i]) for j in range(len(cols))] + [Fraction(x[i])] for i in range(len(x))]
    m = len(cols)
    r = 0
    piv = []
    for c in range(m):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        rows[r] = [v / rows[r][c] for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    if any(all(v == 0 for v in row[:m]) and row[m] != 0 for row in rows):
        return None
    coeffs = [Fraction(0)] * m
    for i, c in enumerate(piv):
        coeffs[c] = rows[i][m]
    return coeffs


def base_is_valid() -> bool:
    """Every listed root is a nonnegative or nonpositive integer combination of the base."""
    for x in LISTED_ROOTS.values():
        c = base_coefficients(x)
        if c is None or any(v.denominator != 1 for v in c):
            return False
        if not (all(v >= 0 for v in c) or all(v <= 0 for v in c)):
            return False
    return True


# --- permutation groups -------------------------------------------------------------

class GroupTooLarge(RuntimeError):
    pass


@dataclass
class PermGroup:
    """A permutation group given by generators, with its closure computed by BFS."""

    degree: int
    gens: list[tuple[int, ...]]
    elements: np.ndarray = field(repr=False, default=None)

    @classmethod
    def generate(cls, gens: Iterable[Sequence[int]], degree: int = 27, cap: int = 10**6) -> PermGroup:
        gens = [tuple(g) for g in gens]
        ident = np.arange(degree, dtype=np.int8 if degree < 128 else np.int16)
        G = [np.array(g, dtype=ident.dtype) for g in gens]
        seen = {ident.tobytes()}
        elems = [ident]
        frontier = ident[None, :]
        while len(frontier):
            new = []
            for g in G:
                prod_ = g[frontier]  # g o h for every h in the frontier
                for row in prod_:
                    key = row.tobytes()
                    if key not in seen:
                        seen.add(key)
                        new.append(row)
            if len(seen) > cap:
                raise GroupTooLarge(f"closure exceeds {cap} elements")
            elems.extend(new)
            frontier = np.array(new) if new else np.empty((0, degree), dtype=ident.dtype)
        return cls(degree, gens, np.array(elems))

    @property
    def order(self) -> int:
        return len(self.elements)

    def orbits(self, points: Sequence, act) -> list[list]:
        """Orbits of the generators acting on arbitrary points via act(gen, point)."""
        index = {p: k for k, p in enumerate(points)}
        parent = list(range(len(points)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for g in self.gens:
            for k, p in enumerate(points):
                a, b = find(k), find(index[act(g, p)])
                if a != b:
                    parent[a] = b
        groups: dict[int, list] = {}
        for k, p in enumerate(points):
            groups.setdefault(find(k), []).append(p)
        return sorted((sorted(v) for v in groups.values()), key=lambda o: (len(o), o))

    def point_orbits(self) -> list[list[int]]:
        return self.orbits(list(range(self.degree)), lambda g, p: g[p])

    def pair_orbits(self) -> list[list[tuple[int, int]]]:
        pairs = list(combinations(range(self.degree), 2))
        return self.orbits(pairs, lambda g, p: tuple(sorted((g[p[0]], g[p[1]]))))


def monodromy_generators() -> list[WeylElem]:
    return [reflection(x) for x in LISTED_ROOTS.values()]


def monodromy_group() -> PermGroup:
    return PermGroup.generate([w.perm for w in monodromy_generators()])


def weyl_group() -> PermGroup:
    return PermGroup.generate([double_six_element(ds).perm for ds in double_sixes()])


def c16_count(group: PermGroup) -> int:
    """Number of elements of order 2 fixing at least 15 lines."""
    E = group.elements
    ident = np.arange(group.degree)
    sq = np.take_along_axis(E, E.astype(np.int64), axis=1)
    involution = np.all(sq == ident, axis=1) & ~np.all(E == ident, axis=1)
    fixed = np.sum(E == ident, axis=1)
    return int(np.sum(involution & (fixed >= 15)))


# --- orbit census on lines and pairs ------------------------------------------------

SPECIAL_PAIRS = {
    "p1": ("G46", "G35"), "p2": ("G36", "G45"), "p3": ("C1", "E2"), "p4": ("C2", "E1"),
}


@dataclass
class OrbitCensus:
    line_orbits: list[list[str]]
    letters: dict[str, str]  # line -> A/B/C (or the fixed line itself)
    pair_orbits: list[list[tuple[str, str]]]
    table: dict[str, list[int]]
    checks: dict[str, bool]

    def as_dict(self) -> dict:
        return {
            "line_orbit_sizes": sorted(len(o) for o in self.line_orbits),
            "line_orbits": self.line_orbits,
            "pair_orbit_table": self.table,
            "pair_orbit_count": len(self.pair_orbits),
            "checks": self.checks,
        }


def letter_of_lines() -> dict[str, str]:
    """A, B, C: the eight lines meeting G12, G34, G56 respectively (other than those three)."""
    adj = incidence27()
    out = {l: l for l in FIXED_LINES}
    for letter, fixed in zip("ABC", FIXED_LINES):
        for j in adj[LINE_INDEX[fixed]]:
            lab = LINE_LABELS[j]
            if lab not in FIXED_LINES:
                out[lab] = letter
    return out


def orbit_census(group: PermGroup | None = None) -> OrbitCensus:
    group = group or monodromy_group()
    line_orbits = [[LINE_LABELS[i] for i in o] for o in group.point_orbits()]
    letters = letter_of_lines()
    pair_orbits = [[(LINE_LABELS[i], LINE_LABELS[j]) for i, j in o] for o in group.pair_orbits()]
    table: dict[str, list[int]] = {}
    incidence_constant = True
    for o in pair_orbits:
        kinds = {tuple(sorted((letters[a] if letters[a] in "ABC" else "G", letters[b] if letters[b] in "ABC" else "G"))) for a, b in o}
        key = "".join(next(iter(kinds))) if len(kinds) == 1 else "mixed"
        table.setdefault(key, []).append(len(o))
        inc = {pairing(LINE_CLASSES[LINE_INDEX[a]], LINE_CLASSES[LINE_INDEX[b]]) for a, b in o}
        incidence_constant &= len(inc) == 1
    table = {k: sorted(v) for k, v in sorted(table.items())}
    special = [tuple(sorted(p)) for p in SPECIAL_PAIRS.values()]
    four_orbit = next((o for o in pair_orbits if len(o) == 4 and all(letters[a] == "A" for a, _ in o)), [])
    checks = {
        "group_order_192": group.order == 192,
        "line_orbits_1_1_1_8_8_8": sorted(len(o) for o in line_orbits) == [1, 1, 1, 8, 8, 8],
        "same_letter_4_24": all(table.get(k) == [4, 24] for k in ("AA", "BB", "CC")),
        "mixed_letters_32_32": all(table.get(k) == [32, 32] for k in ("AB", "AC", "BC")),
        "fixed_times_letter_9x8": all(table.get(k) == [8, 8, 8] for k in ("AG", "BG", "CG")),
        "fixed_pairs_3x1": table.get("GG") == [1, 1, 1],
        "total_351": sum(len(o) for o in pair_orbits) == 351,
        "incidence_constant_on_orbits": incidence_constant,
        "A_four_orbit_is_p1_to_p4": sorted(tuple(sorted(p)) for p in four_orbit) == sorted(special),
    }
    return OrbitCensus(line_orbits, letters, pair_orbits, table, checks)


def semidirect_structure(group: PermGroup | None = None) -> dict[str, bool]:
    """Order 192 = |S4| * 8: the action on p1..p4 is all of S4 and its kernel is (Z2)^3."""
    group = group or monodromy_group()
    pairs = [tuple(LINE_INDEX[l] for l in p) for p in SPECIAL_PAIRS.values()]
    as_sets = [frozenset(p) for p in pairs]
    images = set()
    kernel = []
    for e in group.elements:
        img = tuple(as_sets.index(frozenset((int(e[a]), int(e[b])))) for a, b in pairs)
        images.add(img)
        if img == (0, 1, 2, 3):
            kernel.append(e)
    ident = np.arange(group.degree)
    K = np.array(kernel)
    abelian = all(np.array_equal(a[b], b[a]) for a in K for b in K)
    exponent2 = all(np.array_equal(a[a], ident) for a in K)
    swaps_even = all(sum(int(e[a]) == b for a, b in pairs) % 2 == 0 for e in K)
    normal = _is_normal(group, K)
    return {
        "order_192": group.order == 192,
        "acts_as_S4_on_pairs": len(images) == 24,
        "kernel_order_8": len(K) == 8,
        "kernel_elementary_abelian": abelian and exponent2,
        "kernel_swaps_even_number_of_pairs": swaps_even,
        "kernel_normal": normal,
    }


def _is_normal(group: PermGroup, K: np.ndarray) -> bool:
    keys = {k.tobytes() for k in K}
    for g in group.gens:
        g = np.array(g, dtype=K.dtype)
        inv = np.argsort(g).astype(K.dtype)
        for k in K:
            if g[k[inv]].tobytes() not in keys:
                return False
    return True


def generator_sanity() -> dict[str, bool]:
    """The base reflections already generate the group; dropping one of them does not."""
    base = [reflection(LISTED_ROOTS[k]).perm for k in DYNKIN_BASE]
    full = PermGroup.generate(base)
    ref = orbit_census(full).table
    smaller = []
    for drop in range(4):
        sub = PermGroup.generate(base[:drop] + base[drop + 1:])
        smaller.append(sub.order < 192 and orbit_census(sub).table != ref)
    return {"base_generates_192": full.order == 192, "dropping_a_base_root_changes_orbits": all(smaller)}


# --- the bitangent picture: 28 bitangents, 378 pairs, 63 families --------------------

# bitangents as unordered pairs {C, -K - C} of the 56 curves; e1..e4 are the D_i
E_BITANGENTS = {"e1": "E7", "e2": "G12", "e3": "G34", "e4": "G56"}


def bitangents56() -> list[tuple[str, str]]:
    part = partner56()
    out = sorted({tuple(sorted((a, b))) for a, b in part.items()})
    return out


def _extend_to_56(w: Sequence[int]) -> tuple[int, ...]:
    """Lift a line permutation fixing nothing special to the 56 curves (acting with b7 = 0)."""
    img = {LINE_LABELS[i]: LINE_CLASSES[j] for i, j in enumerate(w)}
    H = _add(img["G12"], img["E1"], img["E2"])
    basis = [H] + [_neg(img[f"E{i}"]) for i in range(1, 7)]

    def act(v):
        head = _add(_scale(v[0], basis[0]), *(_scale(v[i], basis[i]) for i in range(1, 7)))
        return head + (v[7],)

    return class_permutation(act, CURVE_CLASSES)


def monodromy_group56() -> PermGroup:
    return PermGroup.generate([_extend_to_56(w.perm) for w in monodromy_generators()], degree=56)


@dataclass
class BitangentCensus:
    bitangent_letters: dict[tuple[str, str], str]
    pair_table: dict[str, list[int]]
    family_orbit_sizes: list[int]
    family_table: dict[str, list[int]]
    checks: dict[str, bool]

    def as_dict(self) -> dict:
        return {
            "pair_orbit_table": self.pair_table,
            "family_orbit_sizes": self.family_orbit_sizes,
            "family_orbit_table": self.family_table,
            "checks": self.checks,
        }


def yf2_component_census() -> BitangentCensus:
    """Pairs of bitangents and touching-conic families under the monodromy group.

    Bitangent pairs are orbits on unordered pairs of the 28 curve pairs.  A
    family corresponds to a root r of E7 up to sign; its reducible members
    are the bitangent pairs with lifts C1, C2 satisfying C1 + C2 + K = r.
    """
    G = monodromy_group56()
    bts = bitangents56()
    bt_of = {}
    for k, (a, b) in enumerate(bts):
        bt_of[CURVE_INDEX[a]] = k
        bt_of[CURVE_INDEX[b]] = k

    letters27 = letter_of_lines()
    down = blow_down()
    named = {tuple(sorted((v, partner56()[v]))): k for k, v in E_BITANGENTS.items()}
    letters = {}
    for bt in bts:
        if bt in named:
            letters[bt] = named[bt]
            continue
        line = next(down[c] for c in bt if c in down)
        letters[bt] = letters27[line]

    def act_bt(g, k):
        a = bts[k][0]
        return bt_of[g[CURVE_INDEX[a]]]

    bt_pairs = list(combinations(range(len(bts)), 2))
    orbits = G.orbits(bt_pairs, lambda g, p: tuple(sorted((act_bt(g, p[0]), act_bt(g, p[1])))))
    table: dict[str, list[int]] = {}
    for o in orbits:
        i, j = o[0]
        table.setdefault(_pair_key(letters[bts[i]], letters[bts[j]]), []).append(len(o))
    table = {k: sorted(v) for k, v in sorted(table.items())}

    # families as E7 roots up to sign
    mK = _neg(canonical(7))
    E7 = roots(7)
    reps = sorted({max(r, _neg(r)) for r in E7})
    index = {r: k for k, r in enumerate(reps)}

    def act_root(g, k):
        r = reps[k]
        img = _apply56(g, r)
        return index[max(img, _neg(img))]

    fam_orbits = G.orbits(list(range(len(reps))), act_root)
    members = {}
    for k, r in enumerate(reps):
        pairs = set()
        for sign in (1, -1):
            target = _add(mK, _scale(sign, r))
            for a, b in combinations(range(56), 2):
                if _add(CURVE_CLASSES[a], CURVE_CLASSES[b]) == target:
                    pairs.add(tuple(sorted((bt_of[a], bt_of[b]))))
        members[k] = pairs
    fam_table: dict[str, list[int]] = {}
    for o in fam_orbits:
        kinds = Counter(_pair_key(letters[bts[i]], letters[bts[j]]) for i, j in members[o[0]])
        fam_table.setdefault(_family_kind(kinds), []).append(len(o))
    fam_table = {k: sorted(v) for k, v in sorted(fam_table.items())}
    all_pairs = Counter(p for m in members.values() for p in m)
    checks = {
        "group_order_192": G.order == 192,
        "bitangents_28": len(bts) == 28,
        "pairs_378": len(bt_pairs) == 378,
        "same_letter_4_24": all(table.get(k) == [4, 24] for k in ("AA", "BB", "CC")),
        "mixed_letters_32_32": all(table.get(k) == [32, 32] for k in ("AB", "AC", "BC")),
        "e_times_letter_12x8": all(table.get(k) == [8, 8, 8, 8] for k in ("Ae", "Be", "Ce")),
        "e_pairs_6x1": table.get("ee") == [1] * 6,
        "census_total_378": 3 * 24 + 3 * 4 + 6 * 32 + 12 * 8 + 6 * 1 == 378 == sum(len(o) for o in orbits),
        "roots_e7_126": len(E7) == 126,
        "families_63": len(reps) == 63,
        "six_pairs_per_family": all(len(m) == 6 for m in members.values()),
        "families_partition_pairs": len(all_pairs) == 378 and set(all_pairs.values()) == {1},
        "family_orbits_3x1_6x8_1x12": sorted(len(o) for o in fam_orbits) == [1, 1, 1] + [8] * 6 + [12],
        "family_total_63": 3 * 1 + 6 * 8 + 1 * 12 == 63,
    }
    return BitangentCensus(
        {bt: letters[bt] for bt in bts}, table, sorted(len(o) for o in fam_orbits), fam_table, checks
    )


def _pair_key(x: str, y: str) -> str:
    a = "e" if x.startswith("e") else x
    b = "e" if y.startswith("e") else y
    return "".join(sorted((a, b), key=lambda s: (s == "e", s)))


def _family_kind(kinds: Counter) -> str:
    if kinds.get("ee"):
        return "obvious"
    if any(k.endswith("e") for k in kinds):
        return "e-mixed"
    return "same-letter"


def _apply56(g: Sequence[int], v: Sequence[int]) -> Cls:
    """Apply the lattice map of a 56-curve permutation to a class."""
    img = {CURVE_LABELS[i]: CURVE_CLASSES[j] for i, j in enumerate(g)}
    H = _add(img["G12"], img["E1"], img["E2"])
    basis = [H] + [_neg(img[f"E{i}"]) for i in range(1, 8)]
    return _add(_scale(v[0], basis[0]), *(_scale(v[i], basis[i]) for i in range(1, 8)))
