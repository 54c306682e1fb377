"""Reference data for the worked cases: the displayed 5x5 matrices, the
serial right-hand sides, the headline equation of the codimension-5
tower, central-fibre lines, and decorated-diagram expectations.

These are transcriptions, kept separate from the construction code on
purpose: the engines must reproduce them, and any discrepancy is
surfaced as a first-class failure, never auto-reconciled.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .algebra import Polynomial, RingContext
from .curves import CurveFamily


def _cv(ring: RingContext, curve: CurveFamily, name: str) -> Polynomial:
    return curve.coeffs[name].lift(ring)


# ---------------------------------------------------------------------------
# 5x5 matrices (upper triangle rows, as displayed)
# ---------------------------------------------------------------------------


def matrix_upper(tag: str, ring: RingContext, curve: CurveFamily) -> List[List[Polynomial]]:
    """Upper-triangle rows [M12..M15], [M23..M25], [M34, M35], [M45]."""
    x, y, z = ring.vars("x", "y", "z")
    eta, xi1, xi2, zeta = ring.vars("eta", "xi1", "xi2", "zeta")

    def c(nm: str) -> Polynomial:
        return _cv(ring, curve, nm)

    if tag == "PR-A1":
        a, b, cc, d = c("a"), c("b"), c("c"), c("d")
        return [
            [zeta, xi2, xi1 + cc * eta, -d * eta],
            [-a * eta, xi2 + b * eta, xi1],
            [z, y],
            [x],
        ]
    if tag == "A3-2":
        a, b, cc, d = c("a"), c("b"), c("c"), c("d")
        return [
            [zeta, xi2, xi1 + cc * eta, -d * eta],
            [-a * eta, xi2 + b * eta, xi1],
            [z, y**2],
            [x],
        ]
    if tag == "A2-Tom1":
        a, b, cc, d, e = c("a"), c("b"), c("c"), c("d"), c("e")
        return [
            [zeta, xi2, xi1 + d * eta, -e * eta],
            [-(a * x + b * y) * eta, y * (xi2 + cc * eta), xi1],
            [z, y],
            [x],
        ]
    if tag.startswith("Dn-l"):
        n = curve.signature.catalog_args["n"]
        a, b, cc, d, e, f = (c(k) for k in "abcdef")
        q = y**2 + z ** (n - 2)
        return [
            [zeta, xi2, xi1 - a * eta, (b * y + cc * z) * eta],
            [-xi1, -d * eta, xi2 + (e * y + f * z) * eta],
            [z, q],
            [x],
        ]
    if tag in ("E6", "E6-special"):
        a, b, d, e, f = c("a"), c("b"), c("d"), c("e"), c("f")
        gz = c("c") * z if tag == "E6" else c("cp") * z**2
        return [
            [zeta, xi2, y * (xi1 + a * eta), -(b * y + gz) * eta],
            [xi1, xi2 + (d * y + e * z) * eta, xi1 - f * eta],
            [z**2, y],
            [x],
        ]
    raise KeyError(f"no reference matrix for case {tag!r}")


# ---------------------------------------------------------------------------
# serial right-hand sides (g_i * var = rhs_i, in the displayed order)
# ---------------------------------------------------------------------------


def reference_rhs(key: str, ring: RingContext, curve: CurveFamily) -> List[Polynomial]:
    x, y, z = ring.vars("x", "y", "z")
    eta, xi1, xi2, zeta = ring.vars("eta", "xi1", "xi2", "zeta")

    def c(nm: str) -> Polynomial:
        return _cv(ring, curve, nm)

    if key == "a2-tom1-theta":
        a, b, cc, d, e = (c(k) for k in "abcde")
        return [
            (zeta + b * e * eta**2) * (xi1 + d * eta) + e * xi2 * (xi2 + cc * eta) * eta,
            xi2 * zeta - a * e * (xi1 + d * eta) * eta**2,
            xi2**2 * (xi2 + cc * eta) + b * xi2 * (xi1 + d * eta) * eta + a * (xi1 + d * eta) ** 2 * eta,
            zeta * (zeta + b * e * eta**2) + a * e**2 * (xi2 + cc * eta) * eta**3,
        ]
    if key == "e6-special-theta":
        a, b, cp, d, e, f = (c(k) for k in ("a", "b", "cp", "d", "e", "f"))
        w = xi2 + (d * y + e * z) * eta
        return [
            (xi1 + a * eta) * (xi1 - f * eta) ** 2 + b * (xi1 - f * eta) * w * eta + cp * w**2 * eta,
            zeta * (xi1 - f * eta) + cp * xi1 * w * eta,
            (zeta - b * xi1 * eta) * w - xi1 * (xi1 + a * eta) * (xi1 - f * eta),
            zeta * (zeta - b * xi1 * eta) + cp * xi1**2 * (xi1 + a * eta) * eta,
        ]
    raise KeyError(f"no reference right-hand sides under key {key!r}")


def e6_general_kappa_headline(ring: RingContext, curve: CurveFamily) -> Tuple[Polynomial, Polynomial]:
    """(lhs, rhs) of the displayed weight-6 equation of the
    codimension-5 tower:  xi1(xi1 + a eta) * kappa = ...  """
    eta, xi1, zeta, theta, kappa = ring.vars("eta", "xi1", "zeta", "theta", "kappa")

    def c(nm: str) -> Polynomial:
        return _cv(ring, curve, nm)

    a, b, cc, d, e, f = (c(k) for k in "abcdef")
    lhs = xi1 * (xi1 + a * eta) * kappa
    rhs = (
        zeta * (zeta - b * xi1 * eta) ** 2
        - theta * (theta - cc * d * xi1 * eta**2)
        + e * theta * (zeta - b * xi1 * eta) * eta
        + d * zeta * (xi1 - f * eta) * (zeta - b * xi1 * eta) * eta
    )
    return lhs, rhs


# ---------------------------------------------------------------------------
# central-fibre lines
# ---------------------------------------------------------------------------


def fibre_line_ideals(tag: str, ring: RingContext, curve: CurveFamily) -> Dict[str, List[Polynomial]]:
    """Defining ideals of the documented fibre components, in the ring of
    the relevant model."""
    x, y, z = ring.vars("x", "y", "z")
    eta, xi1, xi2 = ring.vars("eta", "xi1", "xi2")

    def c(nm: str) -> Polynomial:
        return _cv(ring, curve, nm)

    if tag.startswith("Dn-l"):
        a = c("a")
        return {
            "L1": [x, y, z, xi1, xi2],
            "L2": [x, y, z, xi1 - a * eta, xi2],
        }
    if tag == "A2-Tom1":
        d = c("d")
        return {"L1": [x, y, z, xi2, xi1 + d * eta]}
    if tag == "E6-special":
        zeta = ring.var("zeta")
        a, b, cp, f = c("a"), c("b"), c("cp"), c("f")
        return {
            # L1 u L2: the weight-2 variable satisfies a quadratic on xi1 = f*eta
            "L12": [x, y, z, xi2, xi1 - f * eta,
                    zeta**2 - b * f * zeta * eta**2 + cp * f**2 * (a + f) * eta**4],
            "L3": [x, y, z, xi2, xi1 + a * eta, zeta],
        }
    raise KeyError(f"no documented fibre lines for case {tag!r}")
