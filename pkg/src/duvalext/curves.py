"""Curve normal forms: the 2x3 presentation matrix of a curve inside a
Du Val surface section, its three equations, and the section-type
conditions that gate the extraction constructions.

A case signature fixes the shape of the appended column (g, h) and the
names of its coefficient functions.  Coefficients are materialised
either symbolically (each needed jet coefficient becomes a weight-0
parameter variable) or numerically (seeded random rationals; "in-m"
markers become random linear forms so the constant term vanishes).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .algebra import AlgebraError, Polynomial, RingContext, det2, parse_poly
from .catalog import GEOMETRY, DuValType, ideal_of_phi, lookup_case
from .groebner import Ideal


class CaseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# coefficient materialisation
# ---------------------------------------------------------------------------


@dataclass
class CoefficientSpec:
    """How one named coefficient function is bound in a run."""

    name: str
    marker: str = "generic"  # generic | in-m | zero | value | poly
    value: object = None  # Fraction for value, text for poly
    support: Tuple[str, ...] = ("x", "y", "z")  # variables it may depend on


def _random_nonzero(rng: random.Random) -> Fraction:
    num = rng.choice([n for n in range(-9, 10) if n != 0])
    den = rng.randint(1, 4)
    return Fraction(num, den)


def materialise(
    specs: Sequence[CoefficientSpec],
    mode: str,
    seed: int = 0,
    jet_order: int = 1,
) -> Tuple[RingContext, Dict[str, Polynomial]]:
    """Build the working ring and the coefficient polynomials.

    Symbolic mode adjoins one weight-0 parameter per retained jet
    coefficient; numeric mode draws seeded rationals (linear forms for
    "in-m" markers, so membership in the maximal ideal is exact).
    """
    if mode not in ("symbolic", "numeric"):
        raise CaseError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    param_names: List[str] = []
    if mode == "symbolic":
        for spec in specs:
            if spec.marker in ("generic", "in-m"):
                if spec.marker == "generic":
                    param_names.append(spec.name)
                if jet_order >= 2:
                    for v in spec.support:
                        param_names.append(f"{spec.name}_{v}")
    ring = GEOMETRY.extend(param_names, weights=[0] * len(param_names), params=[True] * len(param_names))
    coeffs: Dict[str, Polynomial] = {}
    for spec in specs:
        if spec.marker == "zero":
            coeffs[spec.name] = ring.zero()
        elif spec.marker == "value":
            coeffs[spec.name] = ring.const(Fraction(spec.value))
        elif spec.marker == "poly":
            coeffs[spec.name] = parse_poly(str(spec.value), ring)
        elif mode == "symbolic":
            p = ring.var(spec.name) if spec.marker == "generic" else ring.zero()
            if jet_order >= 2:
                for v in spec.support:
                    p = p + ring.var(f"{spec.name}_{v}") * ring.var(v)
            coeffs[spec.name] = p
        else:  # numeric
            if spec.marker == "generic":
                coeffs[spec.name] = ring.const(_random_nonzero(rng))
            else:  # in-m: random linear form over the support
                p = ring.zero()
                for v in spec.support:
                    p = p + ring.var(v) * _random_nonzero(rng)
                coeffs[spec.name] = p
    return ring, coeffs


# ---------------------------------------------------------------------------
# case signatures
# ---------------------------------------------------------------------------


@dataclass
class CaseSignature:
    tag: str
    catalog_tag: str
    catalog_args: Dict[str, int]
    coeff_specs: List[CoefficientSpec]
    # builds (g, h, column3) from the coefficient polynomials
    column: Callable[[Dict[str, Polynomial], RingContext], Tuple[Polynomial, Polynomial, Polynomial, Polynomial]]
    row_signs: Tuple[int, int] = (1, -1)  # per-case sign of the regenerated rows
    orbifold: bool = False  # A-family cases pull back to the smooth cover
    # serial tower plan beyond the first unprojection, handled in unprojection.py
    notes: str = ""


def _cs(name: str, support=("x", "y", "z"), marker: str = "generic") -> CoefficientSpec:
    return CoefficientSpec(name, marker=marker, support=tuple(support))


def _signature_table() -> Dict[str, CaseSignature]:
    def a11_col(C, R):
        y, z, x = R.var("y"), R.var("z"), R.var("x")
        g = C["c"] * y + C["d"] * z
        h = C["a"] * x + C["b"] * y
        return g, h, -g, h

    def a2_col(C, R):
        x, y, z = R.vars("x", "y", "z")
        g = C["d"] * y + C["e"] * z
        h = C["a"] * x + C["b"] * y
        return g, h, -g, h

    def a2tom_col(C, R):
        x, y, z = R.vars("x", "y", "z")
        g = C["d"] * y + C["e"] * z
        h = C["a"] * x**2 + C["b"] * x * y + C["c"] * y**2
        return g, h, -g, h

    def a32_col(C, R):
        x, y, z = R.vars("x", "y", "z")
        g = C["c"] * y**2 + C["d"] * z
        h = C["a"] * x + C["b"] * y**2
        return g, h, -g, h

    def dnl_col(n):
        def col(C, R):
            x, y, z = R.vars("x", "y", "z")
            q = y**2 + z ** (n - 2)
            g = C["a"] * q + C["b"] * y * z + C["c"] * z**2
            h = C["d"] * q + C["e"] * y * z + C["f"] * z**2
            return g, h, g, h

        return col

    def d2k_col(k):
        def col(C, R):
            x, y, z = R.vars("x", "y", "z")
            g = C["a"] * y**2 + C["b"] * y * z + C["c"] * z**k
            h = C["d"] * y**2 + C["e"] * y * z + C["f"] * z**k
            return g, h, g, h

        return col

    def e7_col(C, R):
        x, y, z = R.vars("x", "y", "z")
        g = C["a"] * y**2 + C["b"] * y * z + C["c"] * z**3
        h = C["d"] * y**2 + C["e"] * y * z + C["f"] * z**3
        return g, h, g, h

    def e6_col(C, R):
        x, y, z = R.vars("x", "y", "z")
        g = C["a"] * y**2 + C["b"] * y * z**2 + C["c"] * z**3
        h = C["d"] * y**2 + C["e"] * y * z + C["f"] * z**2
        return g, h, -g, h

    def e6s_col(C, R):
        x, y, z = R.vars("x", "y", "z")
        g = C["a"] * y**2 + C["b"] * y * z**2 + C["cp"] * z**4
        h = C["d"] * y**2 + C["e"] * y * z + C["f"] * z**2
        return g, h, -g, h

    yz = ("y", "z")
    xy = ("x", "y")
    table = {
        "PR-A1": CaseSignature(
            "PR-A1",
            "An_j",
            {"n": 1, "j": 1},
            [_cs("a", xy), _cs("b", xy), _cs("c", yz), _cs("d", yz)],
            a11_col,
            row_signs=(1, -1),
            orbifold=True,
        ),
        "A2-1": CaseSignature(
            "A2-1",
            "An_j",
            {"n": 2, "j": 1},
            [_cs("a", xy), _cs("b", xy), _cs("d", yz), _cs("e", yz)],
            a2_col,
            row_signs=(1, -1),
            orbifold=True,
        ),
        "A2-Tom1": CaseSignature(
            "A2-Tom1",
            "An_j",
            {"n": 2, "j": 1},
            [_cs("a", xy), _cs("b", xy), _cs("c", xy), _cs("d", yz), _cs("e", yz)],
            a2tom_col,
            row_signs=(1, -1),
            orbifold=True,
        ),
        "A2-Jer45": CaseSignature(
            "A2-Jer45",
            "An_j",
            {"n": 2, "j": 1},
            [
                _cs("a", xy),
                _cs("b", xy, marker="in-m"),
                _cs("d", yz, marker="in-m"),
                _cs("e", yz, marker="in-m"),
            ],
            a2_col,
            row_signs=(1, -1),
            orbifold=True,
        ),
        "A3-2": CaseSignature(
            "A3-2",
            "An_j",
            {"n": 3, "j": 2},
            [_cs("a", xy), _cs("b", xy), _cs("c", yz), _cs("d", yz)],
            a32_col,
            row_signs=(1, -1),
            orbifold=True,
        ),
        "E6": CaseSignature(
            "E6",
            "E6",
            {},
            [_cs("a", yz), _cs("b", ("z",)), _cs("c", ("z",)), _cs("d", ("y",)), _cs("e", ("y",)), _cs("f", yz)],
            e6_col,
            row_signs=(1, -1),
        ),
        "E6-special": CaseSignature(
            "E6-special",
            "E6",
            {},
            [_cs("a", yz), _cs("b", ("z",)), _cs("cp", ("z",)), _cs("d", ("y",)), _cs("e", ("y",)), _cs("f", yz)],
            e6s_col,
            row_signs=(1, -1),
        ),
        "E7": CaseSignature(
            "E7",
            "E7",
            {},
            [_cs(c, yz) for c in "abcdef"],
            e7_col,
            row_signs=(1, 1),
        ),
    }
    for n in range(4, 9):
        table[f"Dn-l-{n}"] = CaseSignature(
            f"Dn-l-{n}",
            "Dn_l",
            {"n": n},
            [_cs(c, yz) for c in "abcdef"],
            dnl_col(n),
            row_signs=(1, 1),
        )
    for k in range(2, 5):
        table[f"D2k-r-{k}"] = CaseSignature(
            f"D2k-r-{k}",
            "D2k_r",
            {"k": k},
            [_cs(c, yz) for c in "abcdef"],
            d2k_col(k),
            row_signs=(1, 1),
        )
        table[f"D2k1-r-{k}"] = CaseSignature(
            f"D2k1-r-{k}",
            "D2k1_r",
            {"k": k},
            [_cs(c, yz) for c in "abcdef"],
            d2k_col(k),
            row_signs=(1, 1),
        )
    return table


SIGNATURES = _signature_table()


# ---------------------------------------------------------------------------
# the curve family object
# ---------------------------------------------------------------------------


@dataclass
class CurveFamily:
    tag: str
    signature: CaseSignature
    duval: DuValType
    ring: RingContext  # geometry plus parameter variables
    coeffs: Dict[str, Polynomial]
    markers: Dict[str, str]
    presentation: Tuple[Tuple[Polynomial, ...], Tuple[Polynomial, ...]]  # 2 rows x 3 cols
    g: Polynomial  # unsigned column entries, as named in the construction
    h: Polynomial
    eta: Polynomial
    xi1: Polynomial
    xi2: Polynomial
    mode: str
    seed: int
    jet_order: int

    @property
    def equations(self) -> Tuple[Polynomial, Polynomial, Polynomial]:
        return (self.eta, self.xi1, self.xi2)

    def curve_ideal(self) -> Ideal:
        return Ideal(self.ring, [self.eta, self.xi1, self.xi2])

    def phi_ideal(self) -> Ideal:
        gens = [e.lift(self.ring) for e in self.duval.mf.entries()]
        return Ideal(self.ring, gens)

    def unprojection_gens(self) -> List[Polynomial]:
        return [g.lift(self.ring) for g in self.duval.unprojection_gens]

    def cramer_check(self) -> bool:
        """presentation . (xi2, -xi1, eta)^T == 0, exactly."""
        vec = (self.xi2, -self.xi1, self.eta)
        for row in self.presentation:
            s = row[0] * vec[0] + row[1] * vec[1] + row[2] * vec[2]
            if not s.is_zero():
                return False
        return True


def build_curve(
    tag: str,
    bindings: Optional[Mapping[str, object]] = None,
    mode: str = "numeric",
    seed: int = 0,
    jet_order: int = 1,
) -> CurveFamily:
    """Assemble the presentation matrix and the three equations of a case.

    ``bindings`` overrides coefficient markers/values by name, e.g.
    ``{"a": "in-m", "c": Fraction(2, 3)}``.
    """
    sig = SIGNATURES.get(tag)
    if sig is None:
        raise CaseError(f"unknown case tag {tag!r}; known: {sorted(SIGNATURES)}")
    specs = []
    markers: Dict[str, str] = {}
    for spec in sig.coeff_specs:
        spec = CoefficientSpec(spec.name, spec.marker, spec.value, spec.support)
        if bindings and spec.name in bindings:
            v = bindings[spec.name]
            if v in ("generic", "in-m", "zero"):
                spec.marker = str(v)
            elif isinstance(v, str):
                spec.marker, spec.value = "poly", v
            else:
                spec.marker, spec.value = "value", v
        specs.append(spec)
        markers[spec.name] = spec.marker
    ring, coeffs = materialise(specs, mode, seed=seed, jet_order=jet_order)
    duval = lookup_case(sig.catalog_tag, **sig.catalog_args)
    (p11, p12), (p21, p22) = duval.mf.phi
    row1 = [p11.lift(ring), p12.lift(ring)]
    row2 = [p21.lift(ring), p22.lift(ring)]
    g, h, c_top, c_bot = sig.column(coeffs, ring)
    presentation = ((row1[0], row1[1], c_top), (row2[0], row2[1], c_bot))
    eta = det2(row1[0], row1[1], row2[0], row2[1])
    xi1 = det2(row1[0], c_top, row2[0], c_bot)
    xi2 = det2(row1[1], c_top, row2[1], c_bot)
    fam = CurveFamily(
        tag,
        sig,
        duval,
        ring,
        coeffs,
        markers,
        presentation,
        g,
        h,
        eta,
        xi1,
        xi2,
        mode,
        seed,
        jet_order,
    )
    if not fam.cramer_check():
        raise CaseError(f"internal error: Cramer syzygy failed for {tag}")
    return fam


# ---------------------------------------------------------------------------
# the section pencil and its conditions
# ---------------------------------------------------------------------------


@dataclass
class SectionPencil:
    ring: RingContext  # curve ring extended by lam, mu
    h: Polynomial  # eta + lam*xi1 + mu*xi2

    def specialise(self, lam: Fraction, mu: Fraction) -> Polynomial:
        geo = self.ring  # substitute and project away lam, mu
        p = self.h.substitute({"lam": geo.const(lam), "mu": geo.const(mu)})
        return p


def section_pencil(c: CurveFamily) -> SectionPencil:
    ext = c.ring.extend(["lam", "mu"], weights=[0, 0], params=[True, True])
    lam, mu = ext.var("lam"), ext.var("mu")
    h = c.eta.lift(ext) + lam * c.xi1.lift(ext) + mu * c.xi2.lift(ext)
    return SectionPencil(ext, h)


def check_gh_in_Iphi(c: CurveFamily) -> bool:
    """Both column entries lie in the entry ideal of the factorisation."""
    ideal = c.phi_ideal()
    return ideal.contains(c.g) and ideal.contains(c.h)


def lemma_condition(c: CurveFamily) -> str:
    """'fails' iff both g and h lie in m * I(phi); else 'passes'.

    Failing means the extraction cannot be terminal: the model acquires
    a Gorenstein point of embedding dimension >= 5 over the base point.
    """
    ring = c.ring
    m = [ring.var(v) for v in ("x", "y", "z")]
    prod_gens = [mv * e for mv in m for e in c.phi_ideal().gens]
    ideal = Ideal(ring, prod_gens)
    both = ideal.contains(c.g) and ideal.contains(c.h)
    return "fails" if both else "passes"


def _quadric_matrix(p: Polynomial, names=("x", "y", "z")):
    """3x3 symmetric rational matrix of a quadric in the named variables."""
    ring = p.ring
    idx = [ring.index(n) for n in names]
    M = [[Fraction(0)] * 3 for _ in range(3)]
    for mono, coeff in p.terms.items():
        if any(e for j, e in enumerate(mono) if j not in idx):
            raise AlgebraError("quadric has stray variables")
        expos = [mono[i] for i in idx]
        if sum(expos) != 2:
            raise AlgebraError("not a quadric")
        nz = [i for i, e in enumerate(expos) if e]
        if len(nz) == 1:
            M[nz[0]][nz[0]] += coeff
        else:
            i, j = nz
            M[i][j] += coeff / 2
            M[j][i] += coeff / 2
    return M


def _matrix_rank(M) -> int:
    M = [row[:] for row in M]
    rank = 0
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for cidx in range(cols):
        pivot = None
        for ridx in range(r, rows):
            if M[ridx][cidx] != 0:
                pivot = ridx
                break
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        pv = M[r][cidx]
        for ridx in range(rows):
            if ridx != r and M[ridx][cidx] != 0:
                f = M[ridx][cidx] / pv
                M[ridx] = [a - f * b for a, b in zip(M[ridx], M[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def quadratic_rank_condition(c: CurveFamily, samples: int = 20, seed: int = 0) -> Dict[str, object]:
    """Classify the quadratic term of the section pencil for A2-type cases.

    Returns a dict with ``kind`` in {"case1", "case2", "generic-drop",
    "indeterminate"}; for the two degenerate cases the linear quotient
    of the quadratic term is included as an exact witness.
    """
    if c.signature.catalog_tag != "An_j" or c.signature.catalog_args.get("n") != 2:
        raise CaseError("quadratic rank condition applies to the A2 family")
    pencil = section_pencil(c)
    ring = pencil.ring
    h2 = pencil.h.jet(2)  # params and lam/mu carry weight 0

    zidx = ring.index("z")
    xidx = ring.index("x")
    if h2.terms and all(m[zidx] >= 1 for m in h2.terms):
        quotient = Polynomial(ring, {m[:zidx] + (m[zidx] - 1,) + m[zidx + 1 :]: v for m, v in h2.terms.items()})
        return {"kind": "case1", "factor": "z", "quotient": quotient}
    if h2.terms and all(m[xidx] >= 1 for m in h2.terms):
        quotient = Polynomial(ring, {m[:xidx] + (m[xidx] - 1,) + m[xidx + 1 :]: v for m, v in h2.terms.items()})
        return {"kind": "case2", "factor": "x", "quotient": quotient}

    # generic situation: sample (lam, mu) and the parameters, look for rank 3
    rng = random.Random(seed)
    ranks = []
    for _ in range(samples):
        subs: Dict[str, Polynomial] = {}
        vals = {}
        for name in ring.names:
            if name in ("x", "y", "z"):
                continue
            vals[name] = _random_nonzero(rng)
        spec = h2
        geo = GEOMETRY
        bind = {n: geo.const(v) for n, v in vals.items()}
        spec = h2.substitute(bind, target=geo)
        ranks.append(_matrix_rank(_quadric_matrix(spec)))
    if max(ranks) >= 3:
        return {"kind": "generic-drop", "ranks": ranks}
    return {"kind": "indeterminate", "ranks": ranks}


def de_section_conditions(c: CurveFamily) -> Dict[str, object]:
    """D/E gate: g, h in m^2; for E6 the 2-jet of g must be a multiple
    of y^2 (the perfect-cube condition on the pencil's cubic term).
    Returns {"status": "satisfied"} or a violating monomial witness.
    """
    if c.signature.catalog_tag not in ("Dn_l", "D2k_r", "D2k1_r", "E6", "E7"):
        raise CaseError("D/E section conditions apply to D and E families")
    ring = c.ring
    for name, p in (("g", c.g), ("h", c.h)):
        for mono in p.terms:
            deg = sum(e for j, e in enumerate(mono) if ring.names[j] in ("x", "y", "z"))
            if deg < 2:
                return {
                    "status": "violated",
                    "witness": str(ring.monomial(mono, p.terms[mono])),
                    "which": name,
                    "reason": "column entry not in m^2",
                }
    if c.signature.catalog_tag == "E6":
        g2 = c.g.jet(2)
        yidx = ring.index("y")
        for mono in g2.terms:
            geo_part = {ring.names[j]: e for j, e in enumerate(mono) if e and ring.names[j] in ("x", "y", "z")}
            if geo_part != {"y": 2}:
                return {
                    "status": "violated",
                    "witness": str(ring.monomial(mono, g2.terms[mono])),
                    "which": "g",
                    "reason": "2-jet of g is not a multiple of y^2",
                }
    return {"status": "satisfied"}


# ---------------------------------------------------------------------------
# orbifold pullbacks (A-family)
# ---------------------------------------------------------------------------


@dataclass
class OrbifoldCurve:
    ring: RingContext  # u, v plus the curve's parameters
    gamma: Polynomial
    cofactor_xi1: Polynomial  # xi1 pulls back to cofactor * gamma
    cofactor_xi2: Polynomial


def orbifold_pullback(c: CurveFamily) -> OrbifoldCurve:
    """Pull the curve back to the smooth cover of an A_n section.

    The cover map is (x, y, z) = (u^(n+1), u v, v^(n+1)); the equation of
    the preimage curve is u^j * h' -/+ v^(n+1-j) * g' for the signed
    column entries, and the two non-determinant equations pull back to
    u^(n+1-j) resp. v^j times it.
    """
    if not c.signature.orbifold:
        raise CaseError(f"case {c.tag} has no orbifold pullback")
    n = c.signature.catalog_args["n"]
    j = c.signature.catalog_args["j"]
    params = [nm for nm in c.ring.names if nm not in ("x", "y", "z")]
    uv = RingContext(
        ["u", "v"] + params,
        weights=[1, 1] + [0] * len(params),
        params=[False, False] + [True] * len(params),
    )
    u, v = uv.var("u"), uv.var("v")
    cover = {"x": u ** (n + 1), "y": u * v, "z": v ** (n + 1)}
    c_top = c.presentation[0][2]
    c_bot = c.presentation[1][2]
    top = c_top.substitute(cover, target=uv)
    bot = c_bot.substitute(cover, target=uv)
    gamma = (u**j) * bot - (v ** (n + 1 - j)) * top
    return OrbifoldCurve(uv, gamma, u ** (n + 1 - j), v**j)


def gamma_from_roots(c: CurveFamily, roots: Sequence[Fraction], leading: Fraction = Fraction(1)) -> Dict[str, Fraction]:
    """Coefficient bindings for PR-A1 giving gamma = leading*prod(u - r*v).

    Useful for forcing double/triple tangent directions with rational
    coordinates.
    """
    if c.tag != "PR-A1":
        raise CaseError("root-controlled gamma is wired for the PR-A1 signature")
    if len(roots) != 3:
        raise CaseError("need exactly 3 roots")
    r1, r2, r3 = [Fraction(r) for r in roots]
    a = leading
    b = -leading * (r1 + r2 + r3)
    cc = leading * (r1 * r2 + r1 * r3 + r2 * r3)
    d = -leading * (r1 * r2 * r3)
    return {"a": a, "b": b, "c": cc, "d": d}
