"""Authoritative ADE data: hypersurface equations, matrix factorisations,
group metadata and Dynkin diagrams with fundamental-cycle labels.

The working normal form of each equation is ``det(phi)`` for the stored
matrix factorisation (phi, psi), e.g. ``xz - y^(n+1)`` for type A_n.
Each entry also records an exact rational coordinate change taking
``det(phi)`` to a signed variant of the classical sum-of-monomials
normal form; the residual sign flips need roots of unity and are kept
as inert text metadata, never computed with.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import Polynomial, RingContext, det2, format_poly, parse_poly
from .groebner import Ideal

GEOMETRY = RingContext(["x", "y", "z"], weights=[1, 1, 1])


class CatalogError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Dynkin diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DynkinGraph:
    """ADE tree on nodes 0..n-1 with fundamental-cycle labels.

    Canonical numbering: chains run left to right; for D_n the two fork
    nodes are n-2 and n-1 hanging off chain node n-3; for E_n the branch
    node is last, attached to the centre of the chain.
    """

    family: str
    n: int
    edges: frozenset
    labels: Tuple[int, ...]

    def neighbours(self, i: int) -> List[int]:
        out = []
        for a, b in self.edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return sorted(out)

    def degree_sequence(self) -> Tuple[int, ...]:
        return tuple(sorted(len(self.neighbours(i)) for i in range(self.n)))

    def is_tree(self) -> bool:
        if self.n == 0:
            return True
        if len(self.edges) != self.n - 1:
            return False
        seen = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in self.neighbours(i):
                if j not in seen:
                    seen.add(j)
                    frontier.append(j)
        return len(seen) == self.n


def dynkin(family: str, n: int) -> DynkinGraph:
    if family == "A":
        if n < 1:
            raise CatalogError("A_n needs n >= 1")
        edges = frozenset((i, i + 1) for i in range(n - 1))
        labels = tuple(1 for _ in range(n))
        return DynkinGraph("A", n, edges, labels)
    if family == "D":
        if n < 4:
            raise CatalogError("D_n needs n >= 4")
        chain = [(i, i + 1) for i in range(n - 3)]
        forks = [(n - 3, n - 2), (n - 3, n - 1)]
        labels = tuple([1] + [2] * (n - 3) + [1, 1])
        return DynkinGraph("D", n, frozenset(chain + forks), labels)
    if family == "E":
        if n == 6:
            chain = [(i, i + 1) for i in range(4)]
            branch = [(2, 5)]
            labels = (1, 2, 3, 2, 1, 2)
        elif n == 7:
            chain = [(i, i + 1) for i in range(5)]
            branch = [(3, 6)]
            labels = (1, 2, 3, 4, 3, 2, 2)
        elif n == 8:
            chain = [(i, i + 1) for i in range(6)]
            branch = [(4, 7)]
            labels = (2, 3, 4, 5, 6, 4, 2, 3)
        else:
            raise CatalogError("E_n needs n in {6,7,8}")
        return DynkinGraph("E", n, frozenset(chain + branch), labels)
    raise CatalogError(f"unknown family {family!r}")


def graph_isomorphisms(a: DynkinGraph, b: DynkinGraph):
    """All node bijections a -> b preserving edges (labels ignored)."""
    if a.n != b.n or len(a.edges) != len(b.edges):
        return
    if a.degree_sequence() != b.degree_sequence():
        return
    deg_a = {i: len(a.neighbours(i)) for i in range(a.n)}
    deg_b = {i: len(b.neighbours(i)) for i in range(b.n)}
    candidates = {i: [j for j in range(b.n) if deg_b[j] == deg_a[i]] for i in range(a.n)}

    assignment: Dict[int, int] = {}

    def backtrack(i: int):
        if i == a.n:
            yield dict(assignment)
            return
        used = set(assignment.values())
        for j in candidates[i]:
            if j in used:
                continue
            ok = True
            for k in range(i):
                ak = ((min(i, k), max(i, k)) in a.edges) or ((k, i) in a.edges) or ((i, k) in a.edges)
                bk = ((min(j, assignment[k]), max(j, assignment[k])) in b.edges)
                a_edge = tuple(sorted((i, k))) in {tuple(sorted(e)) for e in a.edges}
                b_edge = tuple(sorted((j, assignment[k]))) in {tuple(sorted(e)) for e in b.edges}
                if a_edge != b_edge:
                    ok = False
                    break
            if ok:
                assignment[i] = j
                yield from backtrack(i + 1)
                del assignment[i]

    yield from backtrack(0)


def match_ade(graph_edges: Sequence[Tuple[int, int]], n_nodes: int) -> Optional[Tuple[str, int]]:
    """Identify an abstract tree as an ADE diagram, or None."""
    probe = DynkinGraph("?", n_nodes, frozenset(tuple(sorted(e)) for e in graph_edges), tuple(0 for _ in range(n_nodes)))
    if not probe.is_tree():
        return None
    families: List[Tuple[str, int]] = []
    if n_nodes >= 1:
        families.append(("A", n_nodes))
    if n_nodes >= 4:
        families.append(("D", n_nodes))
    if n_nodes in (6, 7, 8):
        families.append(("E", n_nodes))
    for fam, n in families:
        target = dynkin(fam, n)
        for _ in graph_isomorphisms(probe, target):
            return (fam, n)
    return None


# ---------------------------------------------------------------------------
# matrix factorisations
# ---------------------------------------------------------------------------


@dataclass
class MatrixFactorisation:
    """(phi, psi) with phi*psi = psi*phi = f*I2 and psi = adj(phi)."""

    phi: Tuple[Tuple[Polynomial, Polynomial], Tuple[Polynomial, Polynomial]]

    @property
    def ring(self) -> RingContext:
        return self.phi[0][0].ring

    @property
    def psi(self):
        (a, b), (c, d) = self.phi
        return ((d, -b), (-c, a))

    @property
    def f(self) -> Polynomial:
        (a, b), (c, d) = self.phi
        return det2(a, b, c, d)

    def entries(self) -> List[Polynomial]:
        return [self.phi[0][0], self.phi[0][1], self.phi[1][0], self.phi[1][1]]

    def verify(self) -> bool:
        """Exact check of phi*psi = psi*phi = det(phi)*I2 and the determinants."""
        (a, b), (c, d) = self.phi
        (pa, pb), (pc, pd) = self.psi
        f = self.f
        prod1 = (
            a * pa + b * pc,
            a * pb + b * pd,
            c * pa + d * pc,
            c * pb + d * pd,
        )
        prod2 = (
            pa * a + pb * c,
            pa * b + pb * d,
            pc * a + pd * c,
            pc * b + pd * d,
        )
        zero = self.ring.zero()
        ok = (
            prod1[0] == f
            and prod1[3] == f
            and prod1[1] == zero
            and prod1[2] == zero
            and prod2[0] == f
            and prod2[3] == f
            and prod2[1] == zero
            and prod2[2] == zero
        )
        ok = ok and det2(pa, pb, pc, pd) == f
        return ok


@dataclass
class Normalization:
    """Exact rational steps taking det(phi) to a signed classical form."""

    steps: List[Dict[str, Polynomial]]
    scale: Fraction
    signed_form: Polynomial  # what the steps reach, exactly
    classical_form: Polynomial  # the sum-of-monomials normal form
    term_signs: Dict[str, int]  # monomial text -> sign used in signed_form
    residual_note: str  # the root-of-unity rescalings left over (inert)

    def apply(self, f: Polynomial) -> Polynomial:
        out = f
        for step in self.steps:
            out = out.substitute(step)
        return out * self.scale


@dataclass
class DuValType:
    family: str
    n: int
    tag: str  # representation tag, e.g. "A_n^j", "E6"
    group_name: str
    group_presentation: str
    rho: str  # inert metadata, e.g. "(-1, i, -i)"
    mf: MatrixFactorisation
    dynkin: DynkinGraph
    normalization: Normalization
    unprojection_gens: List[Polynomial]  # ordered triple generating I(phi)
    resolution_form: Polynomial  # QQ-split equation used by the resolution engine
    # preference order for dividing the syzygy rows over the triple
    # (E6 assigns y*z^2 terms to the z^2 slot, matching the displayed matrix)
    division_order: Tuple[int, int, int] = (0, 1, 2)

    @property
    def equation(self) -> Polynomial:
        return self.mf.f


def _p(text: str) -> Polynomial:
    return parse_poly(text, GEOMETRY)


def ideal_of_phi(mf: MatrixFactorisation) -> Ideal:
    return Ideal(mf.ring, mf.entries())


def _mf(a: str, b: str, c: str, d: str) -> MatrixFactorisation:
    return MatrixFactorisation(((_p(a), _p(b)), (_p(c), _p(d))))


def _half() -> Fraction:
    return Fraction(1, 2)


def lookup_case(tag: str, n: int = 0, j: int = 0, k: int = 0) -> DuValType:
    """Catalogue entry for a representation tag.

    Tags: ``An_j`` (needs n, j), ``Dn_l`` (needs n>=4), ``D2k_r`` and
    ``D2k1_r`` (need k>=2), ``E6``, ``E7``.
    """
    x, y, z = GEOMETRY.vars("x", "y", "z")
    if tag == "An_j":
        if n < 1 or j < 1 or 2 * j > n + 1:
            raise CatalogError(f"An_j needs 1 <= j <= (n+1)/2, got n={n}, j={j}")
        mf = MatrixFactorisation(((x, y**j), (y ** (n + 1 - j), z)))
        # det = xz - y^(n+1);  x->x+y, z->x-y, y->z  gives x^2 - y^2 - z^(n+1)
        steps = [{"x": x + y, "z": x - y, "y": z}]
        signed = x**2 - y**2 - z ** (n + 1)
        classical = x**2 + y**2 + z ** (n + 1)
        norm = Normalization(
            steps,
            Fraction(1),
            signed,
            classical,
            {"x^2": 1, "y^2": -1, f"z^{n+1}": -1},
            "y -> i*y and z -> w*z with w^(n+1) = -1 reach the classical form over CC",
        )
        return DuValType(
            "A",
            n,
            tag,
            f"cyclic of order {n+1}",
            "<r : r^(n+1) = e>",
            f"rho(r) = eps_{n+1}^{j}",
            mf,
            dynkin("A", n),
            norm,
            [x, y**j, z],
            x * z - y ** (n + 1),
        )
    if tag == "Dn_l":
        if n < 4:
            raise CatalogError("Dn_l needs n >= 4")
        mf = MatrixFactorisation(((x, y**2 + z ** (n - 2)), (z, x)))
        # det = x^2 - y^2 z - z^(n-1);  z -> -z
        even = n % 2 == 0
        steps = [{"z": -z}]
        signed = x**2 + y**2 * z + (z ** (n - 1) if even else -(z ** (n - 1)))
        classical = x**2 + y**2 * z + z ** (n - 1)
        norm = Normalization(
            steps,
            Fraction(1),
            signed,
            classical,
            {"x^2": 1, "y^2*z": 1, f"z^{n-1}": 1 if even else -1},
            "" if even else "z -> w*z, y -> y/w^((n-2)/2) over CC fixes the last sign",
        )
        res_form = x**2 - y**2 * z + (z ** (n - 1) if even else -(z ** (n - 1)))
        return DuValType(
            "D",
            n,
            tag,
            "binary dihedral",
            "<r,s,t : r^(n-2) = s^2 = t^2 = rst>",
            "rho = (1, -1, -1)",
            mf,
            dynkin("D", n),
            norm,
            [x, y**2 + z ** (n - 2), z],
            res_form,
        )
    if tag == "D2k_r":
        if k < 2:
            raise CatalogError("D2k_r needs k >= 2")
        n2 = 2 * k
        mf = MatrixFactorisation(((x, y * z + z**k), (y, x)))
        # det = x^2 - y^2 z - y z^k
        steps = [
            {"y": y - (z ** (k - 1)) * _half()},
            {"z": -z},
            {"x": x * _half(), "y": y * _half()},
        ]
        signed = x**2 + y**2 * z - z ** (2 * k - 1)
        classical = x**2 + y**2 * z + z ** (n2 - 1)
        norm = Normalization(
            steps,
            Fraction(4),
            signed,
            classical,
            {"x^2": 1, "y^2*z": 1, f"z^{n2-1}": -1},
            "z -> w*z, y -> y/w^(k-1) with w^(2k-1) = -1 fixes the last sign over CC",
        )
        return DuValType(
            "D",
            n2,
            tag,
            "binary dihedral",
            "<r,s,t : r^(2k-2) = s^2 = t^2 = rst>",
            "rho = (-1, 1, -1)",
            mf,
            dynkin("D", n2),
            norm,
            [x, y, z**k],
            x**2 - y**2 * z - y * z**k,
        )
    if tag == "D2k1_r":
        if k < 2:
            raise CatalogError("D2k1_r needs k >= 2")
        n2 = 2 * k + 1
        mf = MatrixFactorisation(((x, y * z), (y, x + z**k)))
        # det = x^2 + x z^k - y^2 z
        steps = [
            {"x": x - (z**k) * _half()},
            {"z": -z},
            {"x": x * _half(), "y": y * _half()},
        ]
        signed = x**2 + y**2 * z - z ** (2 * k)
        classical = x**2 + y**2 * z + z ** (n2 - 1)
        norm = Normalization(
            steps,
            Fraction(4),
            signed,
            classical,
            {"x^2": 1, "y^2*z": 1, f"z^{n2-1}": -1},
            "z -> w*z, y -> y/w^k with w^(2k) = -1 fixes the last sign over CC",
        )
        return DuValType(
            "D",
            n2,
            tag,
            "binary dihedral",
            "<r,s,t : r^(2k-1) = s^2 = t^2 = rst>",
            "rho = (-1, i, -i)",
            mf,
            dynkin("D", n2),
            norm,
            [x, y, z**k],
            x**2 + x * z**k - y**2 * z,
        )
    if tag == "E6":
        mf = MatrixFactorisation(((x, y**2), (y, x + z**2)))
        # det = x^2 + x z^2 - y^3
        steps = [
            {"x": x - (z**2) * _half()},
            {"y": -y},
            {"x": x * Fraction(1, 8), "y": y * Fraction(1, 4), "z": z * _half()},
        ]
        signed = x**2 + y**3 - z**4
        classical = x**2 + y**3 + z**4
        norm = Normalization(
            steps,
            Fraction(64),
            signed,
            classical,
            {"x^2": 1, "y^3": 1, "z^4": -1},
            "z -> w*z with w^4 = -1 fixes the last sign over CC",
        )
        return DuValType(
            "E",
            6,
            tag,
            "binary tetrahedral",
            "<r,s,t : r^2 = s^3 = t^3 = rst>",
            "rho = (1, w, w^2) with w a primitive cube root of unity",
            mf,
            dynkin("E", 6),
            norm,
            [x, y, z**2],
            x**2 + x * z**2 - y**3,
            division_order=(0, 2, 1),
        )
    if tag == "E7":
        mf = MatrixFactorisation(((x, y**2 + z**3), (y, x)))
        # det = x^2 - y^3 - y z^3;  y -> -y reaches the classical form exactly
        steps = [{"y": -y}]
        signed = x**2 + y**3 + y * z**3
        classical = x**2 + y**3 + y * z**3
        norm = Normalization(
            steps,
            Fraction(1),
            signed,
            classical,
            {"x^2": 1, "y^3": 1, "y*z^3": 1},
            "",
        )
        return DuValType(
            "E",
            7,
            tag,
            "binary octahedral",
            "<r,s,t : r^2 = s^3 = t^4 = rst>",
            "rho = (-1, 1, -1)",
            mf,
            dynkin("E", 7),
            norm,
            [x, y, z**3],
            x**2 - y**3 - y * z**3,
        )
    raise CatalogError(f"unknown representation tag {tag!r}")


ALL_TAGS = ["An_j", "Dn_l", "D2k_r", "D2k1_r", "E6", "E7"]


def representative_entries() -> List[DuValType]:
    """One concrete entry per catalogue row, smallest legal indices."""
    return [
        lookup_case("An_j", n=1, j=1),
        lookup_case("Dn_l", n=4),
        lookup_case("D2k_r", k=2),
        lookup_case("D2k1_r", k=2),
        lookup_case("E6"),
        lookup_case("E7"),
    ]


def dump_catalog() -> str:
    """Text dump of all representative entries (for docs and golden tests)."""
    lines = []
    for entry in representative_entries():
        (a, b), (c, d) = entry.mf.phi
        lines.append(f"[{entry.tag}] {entry.family}_{entry.n}  group: {entry.group_name}")
        lines.append(f"  presentation: {entry.group_presentation}")
        lines.append(f"  rho: {entry.rho}")
        lines.append(f"  phi: [[{a}, {b}], [{c}, {d}]]")
        lines.append(f"  f = det(phi): {entry.equation}")
        lines.append(f"  signed classical form: {entry.normalization.signed_form}")
        if entry.normalization.residual_note:
            lines.append(f"  over CC additionally: {entry.normalization.residual_note}")
        lines.append(f"  fundamental cycle: {list(entry.dynkin.labels)}")
        lines.append("")
    return "\n".join(lines)
