"""Ideal computations: Buchberger bases, normal forms, membership,
saturation, elimination and combinatorial dimension.

Everything is exact over QQ.  The ideals in this project are tiny (at
most a handful of generators in at most ~15 variables), so the engine is
a plain Buchberger loop with the normal selection strategy and the two
classical pair-skipping criteria; no modular or signature shortcuts.

Runs are deterministic: generators are sorted before pairing and all
iteration orders are fixed.  Resource limits are explicit — exceeding
them raises :class:`BudgetExceeded`, which is a reported failure state,
never a mathematical answer.
"""

from __future__ import annotations

import itertools
import os
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .algebra import AlgebraError, Monomial, Polynomial, RingContext

DEFAULT_MAX_BASIS = int(os.environ.get("CASEBOOK_GB_MAX_BASIS", "500"))
DEFAULT_MAX_REDUCTIONS = int(os.environ.get("CASEBOOK_GB_MAX_REDUCTIONS", "1000000"))


class BudgetExceeded(RuntimeError):
    """A Groebner computation ran past its configured resource budget."""

    def __init__(self, kind: str, limit: int):
        super().__init__(f"groebner budget exceeded: {kind} > {limit}")
        self.kind = kind
        self.limit = limit


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


class MonomialOrder:
    """Total multiplicative monomial order, given by a sort key.

    Kinds:
      * ``degrevlex()``             degree then reverse lexicographic
      * ``lex()``                   plain lexicographic in context order
      * ``block(elim, inner)``      eliminate the variable block ``elim``
    """

    def __init__(self, kind: str, data=None):
        self.kind = kind
        self.data = data

    @staticmethod
    def degrevlex() -> "MonomialOrder":
        return MonomialOrder("degrevlex")

    @staticmethod
    def lex() -> "MonomialOrder":
        return MonomialOrder("lex")

    @staticmethod
    def block(elim_names: Sequence[str], inner: Optional["MonomialOrder"] = None) -> "MonomialOrder":
        inner = inner or MonomialOrder.degrevlex()
        return MonomialOrder("block", (tuple(elim_names), inner))

    @staticmethod
    def weighted_degrevlex(weights: Sequence[int]) -> "MonomialOrder":
        """Weighted degree first (ties by plain degrevlex); the right
        order for ideals homogeneous under a non-standard grading."""
        return MonomialOrder("wdegrevlex", tuple(int(w) for w in weights))

    def key_function(self, ring: RingContext):
        if self.kind == "degrevlex":

            def key(m: Monomial):
                return (sum(m), tuple(-e for e in reversed(m)))

            return key
        if self.kind == "lex":

            def key(m: Monomial):
                return m

            return key
        if self.kind == "block":
            elim_names, inner = self.data
            idx = tuple(ring.index(n) for n in elim_names)
            rest = tuple(i for i in range(ring.arity) if i not in idx)
            inner_key = inner.key_function(ring)

            def key(m: Monomial):
                head = tuple(m[i] for i in idx)
                tail = tuple(m[i] for i in rest)
                return (
                    (sum(head), tuple(-e for e in reversed(head))),
                    inner_key(tail + (0,) * (ring.arity - len(tail))),
                )

            return key
        if self.kind == "wdegrevlex":
            ws = self.data
            if len(ws) != ring.arity:
                raise AlgebraError("weight vector arity mismatch")

            def key(m: Monomial):
                return (
                    sum(e * w for e, w in zip(m, ws)),
                    sum(m),
                    tuple(-e for e in reversed(m)),
                )

            return key
        raise AlgebraError(f"unknown order kind {self.kind}")

    def __repr__(self) -> str:
        return f"MonomialOrder({self.kind})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and self.kind == other.kind and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.kind, self.data))


def leading_monomial(p: Polynomial, key) -> Monomial:
    return max(p.terms, key=key)


def leading_term(p: Polynomial, key) -> Tuple[Monomial, Fraction]:
    m = max(p.terms, key=key)
    return m, p.terms[m]


def monic(p: Polynomial, key) -> Polynomial:
    if not p.terms:
        return p
    _, c = leading_term(p, key)
    return p * (Fraction(1) / c)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# division / normal form
# ---------------------------------------------------------------------------


class _Budget:
    __slots__ = ("reductions", "max_reductions")

    def __init__(self, max_reductions: int):
        self.reductions = 0
        self.max_reductions = max_reductions

    def tick(self, n: int = 1) -> None:
        self.reductions += n
        if self.reductions > self.max_reductions:
            raise BudgetExceeded("reductions", self.max_reductions)


# -- integer (fraction-free) reduction core --------------------------------
#
# Buchberger loops run on primitive integer coefficient dictionaries;
# reductions are pseudo-reductions (the polynomial may get multiplied by
# a positive integer), which is harmless for basis building and for
# zero-tests and avoids per-operation gcd work on Fractions.

ZTerms = Dict[Monomial, int]


def _z_of(p: Polynomial) -> ZTerms:
    """Primitive integer form of a polynomial (positive leading content)."""
    from math import gcd, lcm

    if not p.terms:
        return {}
    denom = 1
    for c in p.terms.values():
        denom = lcm(denom, c.denominator)
    out = {m: int(c * denom) for m, c in p.terms.items()}
    g = 0
    for v in out.values():
        g = gcd(g, v)
    if g > 1:
        out = {m: v // g for m, v in out.items()}
    return out


def _z_primitive(d: ZTerms) -> ZTerms:
    from math import gcd

    g = 0
    for v in d.values():
        g = gcd(g, v)
        if g == 1:
            return d
    if g > 1:
        return {m: v // g for m, v in d.items()}
    return d


def _z_of_with_denominator(p: Polynomial) -> Tuple[ZTerms, Fraction]:
    """Integer form together with the factor it was scaled by:
    returns (zterms, s) with  zterms == s * p  and s > 0."""
    from math import lcm

    if not p.terms:
        return {}, Fraction(1)
    denom = 1
    for c in p.terms.values():
        denom = lcm(denom, c.denominator)
    return {m: int(c * denom) for m, c in p.terms.items()}, Fraction(denom)


def _z_to_poly(ring: RingContext, d: ZTerms) -> Polynomial:
    return Polynomial(ring, {m: Fraction(v) for m, v in d.items()})


def _z_reduce(
    work: ZTerms,
    lead: Sequence[Tuple[Monomial, int, ZTerms]],
    key,
    budget: Optional[_Budget] = None,
    top_only: bool = False,
    scale_out: Optional[List[int]] = None,
) -> ZTerms:
    """Pseudo-reduce ``work`` by the prepared divisors (lm, lc, terms).

    The result equals a positive integer multiple of the true remainder;
    if ``scale_out`` is given the multiplier is appended to it, so exact
    remainders can be recovered.  With ``top_only`` the loop stops once
    the leading term is irreducible.
    """
    from math import gcd

    work = dict(work)
    done: ZTerms = {}
    total_scale = 1
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = False
        for lm, lc, terms in lead:
            if _divides(lm, m):
                q = _mono_div(m, lm)
                g = gcd(c, lc)
                scale = abs(lc // g)
                factor = c // g if lc > 0 else -(c // g)
                # work := scale*work - factor * q * divisor   (kills m)
                if budget is not None:
                    budget.tick(len(terms))
                if scale != 1:
                    total_scale *= scale
                    for k in work:
                        work[k] *= scale
                    for k in done:
                        done[k] *= scale
                for dm, dc in terms.items():
                    if dm == lm:
                        continue
                    mm = _mono_mul(q, dm)
                    val = work.get(mm, 0) - factor * dc
                    if val:
                        work[mm] = val
                    elif mm in work:
                        del work[mm]
                hit = True
                break
        if not hit:
            done[m] = c
            if top_only:
                for k, v in work.items():
                    done[k] = v
                if scale_out is not None:
                    scale_out.append(total_scale)
                return done
    if scale_out is not None:
        scale_out.append(total_scale)
    return done


def _z_lead(d: ZTerms, key) -> Tuple[Monomial, int, ZTerms]:
    lm = max(d, key=key)
    return (lm, d[lm], d)


def reduce_top(
    p: Polynomial,
    divisors: Sequence[Polynomial],
    key,
    budget: Optional[_Budget] = None,
) -> Polynomial:
    """Head reduction only (up to a positive scalar); used where only the
    vanishing or the leading monomial of the result matters."""
    lead = [_z_lead(_z_of(d), key) for d in divisors if not d.is_zero()]
    out = _z_reduce(_z_of(p), lead, key, budget, top_only=True)
    return _z_to_poly(p.ring, _z_primitive(out))


def reduce_full(
    p: Polynomial,
    divisors: Sequence[Polynomial],
    key,
    budget: Optional[_Budget] = None,
    quotients: Optional[List[Polynomial]] = None,
) -> Polynomial:
    """Full multivariate division: every term of the remainder is
    reduced.  If ``quotients`` is given it accumulates the cofactors so
    that  p = sum(quotients[i]*divisors[i]) + remainder.
    """
    ring = p.ring
    if quotients is not None and len(quotients) != len(divisors):
        raise AlgebraError("quotient accumulator has wrong length")
    lead = [leading_term(d, key) for d in divisors]
    rem_terms: Dict[Monomial, Fraction] = {}
    work = dict(p.terms)
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        hit = False
        for i, (lm, lc) in enumerate(lead):
            if _divides(lm, m):
                q = _mono_div(m, lm)
                factor = c / lc
                if budget is not None:
                    budget.tick(len(divisors[i].terms))
                for dm, dc in divisors[i].terms.items():
                    if dm == lm:
                        continue
                    mm = _mono_mul(q, dm)
                    val = work.get(mm, Fraction(0)) - factor * dc
                    if val:
                        work[mm] = val
                    elif mm in work:
                        del work[mm]
                if quotients is not None:
                    quotients[i] = quotients[i] + ring.monomial(q, factor)
                hit = True
                break
        if not hit:
            rem_terms[m] = c
    return Polynomial(ring, rem_terms)


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------


def buchberger(
    gens: Sequence[Polynomial],
    order: MonomialOrder,
    max_basis: int = DEFAULT_MAX_BASIS,
    max_reductions: int = DEFAULT_MAX_REDUCTIONS,
) -> List[Polynomial]:
    """Reduced Groebner basis of the given generators.

    Normal selection strategy (smallest lcm degree first), with the
    coprimality and chain criteria; the loop runs fraction-free over
    primitive integer coefficients.  Deterministic for fixed input.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    key = order.key_function(ring)
    budget = _Budget(max_reductions)

    basis: List[ZTerms] = []
    leads: List[Tuple[Monomial, int, ZTerms]] = []

    def push(d: ZTerms) -> None:
        d = _z_primitive(d)
        basis.append(d)
        leads.append(_z_lead(d, key))

    for g in sorted(gens, key=lambda p: (p.total_degree(), sorted(p.terms))):
        r = _z_reduce(_z_of(g), leads, key, budget)
        if r:
            push(r)

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def lcm_of(ij) -> Monomial:
        return _lcm(leads[ij[0]][0], leads[ij[1]][0])

    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(lcm_of(ij)), key(lcm_of(ij)), ij))
        pairs.discard((i, j))
        lmi, ci, ti = leads[i]
        lmj, cj, tj = leads[j]
        lcm = _lcm(lmi, lmj)
        # criterion 1: coprime leading monomials
        if all(a + b == c for a, b, c in zip(lmi, lmj, lcm)):
            continue
        # chain criterion: some k with lt(k) | lcm and both pairs done
        skip = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if _divides(leads[k][0], lcm):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        # integer S-polynomial
        from math import gcd as igcd

        g0 = igcd(ci, cj)
        ui = _mono_div(lcm, lmi)
        uj = _mono_div(lcm, lmj)
        fi_scaled = {_mono_mul(m, ui): v * (cj // g0) for m, v in ti.items()}
        s: ZTerms = fi_scaled
        for m, v in tj.items():
            mm = _mono_mul(m, uj)
            val = s.get(mm, 0) - v * (ci // g0)
            if val:
                s[mm] = val
            elif mm in s:
                del s[mm]
        r = _z_reduce(s, leads, key, budget, top_only=True)
        if r:
            push(r)
            if len(basis) > max_basis:
                raise BudgetExceeded("basis", max_basis)
            t = len(basis) - 1
            for k in range(t):
                pairs.add((k, t))

    return _z_interreduce(ring, basis, key, budget)


def _z_interreduce(ring: RingContext, basis: List[ZTerms], key, budget: _Budget) -> List[Polynomial]:
    """Minimalize and tail-reduce an integer basis; emit monic Fractions."""
    if not basis:
        return []
    lms = [max(d, key=key) for d in basis]
    kept_idx: List[int] = []
    for i in range(len(basis)):
        lm = lms[i]
        redundant = False
        for j in range(len(basis)):
            if j == i:
                continue
            if _divides(lms[j], lm) and (lms[j] != lm or j < i):
                redundant = True
                break
        if not redundant:
            kept_idx.append(i)
    kept = [basis[i] for i in kept_idx]
    out: List[Polynomial] = []
    for i, d in enumerate(kept):
        lead = [_z_lead(q, key) for j, q in enumerate(kept) if j != i]
        r = _z_reduce(d, lead, key, budget)
        if r:
            r = _z_primitive(r)
            lm = max(r, key=key)
            lc = Fraction(r[lm])
            out.append(Polynomial(ring, {m: Fraction(v) / lc for m, v in r.items()}))
    return sorted(out, key=lambda p: key(leading_monomial(p, key)))


# ---------------------------------------------------------------------------
# public wrappers
# ---------------------------------------------------------------------------


class Ideal:
    """A finitely generated ideal in a fixed ring context."""

    def __init__(self, ring: RingContext, gens: Sequence[Polynomial]):
        for g in gens:
            if g.ring != ring:
                raise AlgebraError("ideal generators in mixed contexts")
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        self._gb_cache: Dict[MonomialOrder, "GroebnerBasis"] = {}

    def groebner(self, order: Optional[MonomialOrder] = None) -> "GroebnerBasis":
        order = order or MonomialOrder.degrevlex()
        gb = self._gb_cache.get(order)
        if gb is None:
            gb = GroebnerBasis(self.ring, buchberger(self.gens, order), order)
            self._gb_cache[order] = gb
        return gb

    def contains(self, p: Polynomial) -> bool:
        if p.is_zero():
            return True
        return self.groebner().normal_form(p).is_zero()

    def __repr__(self) -> str:
        return f"Ideal({', '.join(str(g) for g in self.gens)})"


class GroebnerBasis:
    def __init__(self, ring: RingContext, basis: Sequence[Polynomial], order: MonomialOrder):
        self.ring = ring
        self.basis = list(basis)
        self.order = order
        self._key = order.key_function(ring)
        self._z_leads: Optional[List[Tuple[Monomial, int, ZTerms]]] = None

    def _leads(self) -> List[Tuple[Monomial, int, ZTerms]]:
        if self._z_leads is None:
            self._z_leads = [_z_lead(_z_of(b), self._key) for b in self.basis]
        return self._z_leads

    def normal_form(self, p: Polynomial) -> Polynomial:
        """The exact canonical remainder of p modulo the basis."""
        if p.is_zero() or not self.basis:
            return p
        scale: List[int] = []
        num = _z_of_with_denominator(p)
        rem = _z_reduce(num[0], self._leads(), self._key, scale_out=scale)
        denom = Fraction(scale[0]) * num[1]
        return Polynomial(self.ring, {m: Fraction(v) / denom for m, v in rem.items()})

    def normal_form_with_quotients(self, p: Polynomial) -> Tuple[Polynomial, List[Polynomial]]:
        qs = [self.ring.zero() for _ in self.basis]
        r = reduce_full(p, self.basis, self._key, quotients=qs)
        return r, qs

    def leading_monomials(self) -> List[Monomial]:
        return [leading_monomial(p, self._key) for p in self.basis]

    def is_unit_ideal(self) -> bool:
        return any(p.is_constant() and not p.is_zero() for p in self.basis)

    def check_buchberger_criterion(self) -> bool:
        """Re-verify that every S-polynomial reduces to zero."""
        key = self._key
        for i in range(len(self.basis)):
            for j in range(i + 1, len(self.basis)):
                fi, fj = self.basis[i], self.basis[j]
                lmi, ci = leading_term(fi, key)
                lmj, cj = leading_term(fj, key)
                lcm = _lcm(lmi, lmj)
                s = fi * fi.ring.monomial(_mono_div(lcm, lmi), Fraction(1) / ci) - fj * fj.ring.monomial(
                    _mono_div(lcm, lmj), Fraction(1) / cj
                )
                if not self.normal_form(s).is_zero():
                    return False
        return True

    def __repr__(self) -> str:
        return f"GroebnerBasis[{len(self.basis)}]"


def ideal_membership(p: Polynomial, ideal: Ideal) -> bool:
    return ideal.contains(p)


def staircase_dimension(gb: GroebnerBasis) -> int:
    """Krull dimension of the affine scheme cut out by ideal(gb).

    Combinatorial definition: the maximum size of a variable subset S
    such that no leading monomial is supported inside S.  Returns -1
    for the unit ideal (empty scheme).
    """
    if gb.is_unit_ideal():
        return -1
    lms = gb.leading_monomials()
    n = gb.ring.arity
    if not lms:
        return n
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    best = -1
    for r in range(n, -1, -1):
        if r <= best:
            break
        for combo in itertools.combinations(range(n), r):
            s = frozenset(combo)
            if all(not sup <= s for sup in supports):
                best = r
                break
        if best >= 0:
            break
    return best


def saturation(ideal: Ideal, p: Polynomial, order: Optional[MonomialOrder] = None) -> Ideal:
    """(I : p^infinity) by the auxiliary-variable elimination trick."""
    if p.is_zero():
        raise AlgebraError("cannot saturate by the zero polynomial")
    ring = ideal.ring
    aux = "_sat"
    while aux in ring:
        aux += "_"
    ext = ring.extend([aux], weights=[0], params=[False])
    gens = [g.lift(ext) for g in ideal.gens]
    gens.append(p.lift(ext) * ext.var(aux) - ext.one())
    basis = buchberger(gens, MonomialOrder.block([aux]))
    iaux = ext.index(aux)
    kept = []
    for b in basis:
        if all(m[iaux] == 0 for m in b.terms):
            kept.append(_project_out(b, ext, ring, iaux))
    return Ideal(ring, kept)


def eliminate(ideal: Ideal, names: Sequence[str]) -> Ideal:
    """Generators of the elimination ideal  I ∩ QQ[vars outside names]."""
    ring = ideal.ring
    idx = tuple(ring.index(n) for n in names)
    basis = buchberger(ideal.gens, MonomialOrder.block(list(names)))
    kept = [b for b in basis if all(all(m[i] == 0 for i in idx) for m in b.terms)]
    return Ideal(ring, kept)


def _project_out(p: Polynomial, src: RingContext, dst: RingContext, drop_index: int) -> Polynomial:
    terms = {}
    for m, c in p.terms.items():
        mm = m[:drop_index] + m[drop_index + 1 :]
        terms[mm] = c
    return Polynomial(dst, terms)


# ---------------------------------------------------------------------------
# extended Buchberger: cofactor-tracking basis for membership certificates
# ---------------------------------------------------------------------------


class CofactorBasis:
    """Groebner basis remembering how each element sits over the input
    generators, so normal forms come with explicit membership cofactors.

    ``track`` restricts the bookkeeping to the cofactors of the listed
    generator indices (all by default); untracked cofactors are reported
    as None.  Tracking only what is needed keeps the representation
    arithmetic cheap.
    """

    def __init__(self, gens: Sequence[Polynomial], order: Optional[MonomialOrder] = None,
                 max_basis: int = DEFAULT_MAX_BASIS, max_reductions: int = DEFAULT_MAX_REDUCTIONS,
                 track: Optional[Sequence[int]] = None):
        gens = list(gens)
        if not gens:
            raise AlgebraError("empty generator list")
        self.ring = gens[0].ring
        self.gens = gens
        self.track = list(range(len(gens))) if track is None else sorted(track)
        self.order = order or MonomialOrder.degrevlex()
        self._key = self.order.key_function(self.ring)
        self._budget = _Budget(max_reductions)
        self._max_basis = max_basis
        self.basis: List[Polynomial] = []
        self.reps: List[List[Polynomial]] = []  # tracked cofactors per basis element
        self._build()

    def _reduce_tracked(self, p: Polynomial, rep: List[Polynomial]) -> Tuple[Polynomial, List[Polynomial]]:
        key = self._key
        qs = [self.ring.zero() for _ in self.basis]
        r = reduce_full(p, self.basis, key, self._budget, quotients=qs)
        out = list(rep)
        for i, q in enumerate(qs):
            if q.is_zero():
                continue
            for t, cof in enumerate(self.reps[i]):
                if not cof.is_zero():
                    out[t] = out[t] - q * cof
        # r = p - sum q_i*basis_i, so rep(r) = rep(p) - sum q_i*reps_i
        return r, out

    def _build(self) -> None:
        key = self._key
        n = len(self.gens)
        zero = self.ring.zero()
        one = self.ring.one()

        def unit(j: int) -> List[Polynomial]:
            return [one if j == t else zero for t in self.track]

        order_idx = sorted(range(n), key=lambda j: (self.gens[j].total_degree(), sorted(self.gens[j].terms)))
        for j in order_idx:
            g = self.gens[j]
            if g.is_zero():
                continue
            r, rep = self._reduce_tracked(g, unit(j))
            if not r.is_zero():
                lc = leading_term(r, key)[1]
                inv = Fraction(1) / lc
                self.basis.append(r * inv)
                self.reps.append([c * inv for c in rep])

        pairs = {(i, j) for i in range(len(self.basis)) for j in range(i + 1, len(self.basis))}
        while pairs:
            def lcm_of(ij):
                return _lcm(leading_monomial(self.basis[ij[0]], key), leading_monomial(self.basis[ij[1]], key))
            i, j = min(pairs, key=lambda ij: (sum(lcm_of(ij)), key(lcm_of(ij)), ij))
            pairs.discard((i, j))
            fi, fj = self.basis[i], self.basis[j]
            lmi, ci = leading_term(fi, key)
            lmj, cj = leading_term(fj, key)
            lcm = _lcm(lmi, lmj)
            if all(a + b == c for a, b, c in zip(lmi, lmj, lcm)):
                continue
            mi = self.ring.monomial(_mono_div(lcm, lmi), Fraction(1) / ci)
            mj = self.ring.monomial(_mono_div(lcm, lmj), Fraction(1) / cj)
            s = fi * mi - fj * mj
            rep = [mi * a - mj * b for a, b in zip(self.reps[i], self.reps[j])]
            r, rep = self._reduce_tracked(s, rep)
            if not r.is_zero():
                lc = leading_term(r, key)[1]
                inv = Fraction(1) / lc
                self.basis.append(r * inv)
                self.reps.append([c * inv for c in rep])
                if len(self.basis) > self._max_basis:
                    raise BudgetExceeded("basis", self._max_basis)
                t = len(self.basis) - 1
                for k in range(t):
                    pairs.add((k, t))

    def normal_form_with_certificate(self, p: Polynomial) -> Tuple[Polynomial, List[Optional[Polynomial]]]:
        """Return (remainder, cofactors over the original generators):
        p = sum cof[j]*gens[j] + remainder, with None for untracked j."""
        r, rep = self._reduce_tracked(p, [self.ring.zero() for _ in self.track])
        out: List[Optional[Polynomial]] = [None] * len(self.gens)
        for t, j in enumerate(self.track):
            out[j] = -rep[t]
        return r, out

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form_with_certificate(p)[0].is_zero()


# ---------------------------------------------------------------------------
# univariate utilities and distinct-point counting
# ---------------------------------------------------------------------------


def univariate_coefficients(p: Polynomial, name: str) -> List[Fraction]:
    """Coefficient list (ascending) of a polynomial using only ``name``."""
    i = p.ring.index(name)
    deg = 0
    for m in p.terms:
        for j, e in enumerate(m):
            if e and j != i:
                raise AlgebraError(f"{p} is not univariate in {name}")
        deg = max(deg, m[i])
    out = [Fraction(0)] * (deg + 1)
    for m, c in p.terms.items():
        out[m[i]] = c
    return out


def _uni_trim(c: List[Fraction]) -> List[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def uni_gcd(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    """Monic gcd of univariate coefficient lists over QQ."""
    a = _uni_trim(list(a))
    b = _uni_trim(list(b))
    while b:
        a, b = b, _uni_rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _uni_rem(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and a:
        factor = a[-1] / lb
        shift = len(a) - 1 - db
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        a = _uni_trim(a)
        if not a:
            break
    return a


def uni_derivative(a: List[Fraction]) -> List[Fraction]:
    return _uni_trim([a[i] * i for i in range(1, len(a))])


def distinct_root_count(a: List[Fraction]) -> int:
    """Number of distinct roots in QQbar of a nonzero univariate poly."""
    a = _uni_trim(list(a))
    if not a:
        raise AlgebraError("zero polynomial has no root count")
    if len(a) == 1:
        return 0
    g = uni_gcd(a, uni_derivative(a))
    return (len(a) - 1) - (len(g) - 1)


def rational_roots(a: List[Fraction]) -> List[Fraction]:
    """All rational roots of a univariate coefficient list."""
    a = _uni_trim(list(a))
    if not a or len(a) == 1:
        return []
    # strip powers of the variable (root 0)
    roots = []
    k = 0
    while a[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        a = a[k:]
    if len(a) == 1:
        return roots
    from math import gcd as igcd

    denom = 1
    for c in a:
        denom = denom * c.denominator // igcd(denom, c.denominator)
    ints = [int(c * denom) for c in a]
    a0, an = ints[0], ints[-1]

    def divisors(n: int) -> List[int]:
        n = abs(n)
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))

    cands = set()
    for p in divisors(a0):
        for q in divisors(an):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    for r in sorted(cands):
        val = Fraction(0)
        for c in reversed(ints):
            val = val * r + c
        if val == 0:
            roots.append(r)
    return sorted(set(roots))


def distinct_point_count(ideal: Ideal, names: Sequence[str], seed: int = 0) -> int:
    """Number of distinct QQbar points of a 0-dimensional affine scheme.

    Projects along a random (seeded) linear form in the given variables
    and counts distinct roots of the eliminant; repeated with fresh
    coefficients if the projection degenerates.
    """
    import random

    ring = ideal.ring
    rng = random.Random(seed)
    gb = ideal.groebner()
    if gb.is_unit_ideal():
        return 0
    aux = "_proj"
    while aux in ring:
        aux += "_"
    ext = ring.extend([aux], weights=[0], params=[False])
    others = [n for n in ring.names]
    best = None
    for attempt in range(6):
        coeffs = [Fraction(rng.randint(1, 19), rng.randint(1, 7)) for _ in names]
        if attempt == 0:
            coeffs = [Fraction(1 + 3 * i) for i in range(len(names))]
        form = ext.zero()
        for c, n in zip(coeffs, names):
            form = form + ext.var(n) * c
        gens = [g.lift(ext) for g in ideal.gens]
        gens.append(ext.var(aux) - form)
        elim = buchberger(gens, MonomialOrder.block(others))
        uni = [b for b in elim if _is_univariate_in(b, ext, aux)]
        if not uni:
            continue
        counts = []
        for b in uni:
            coeffs_list = univariate_coefficients(b, aux)
            counts.append(distinct_root_count(coeffs_list))
        n = min(counts)
        best = n if best is None else min(best, n)
        if attempt >= 1 and best is not None:
            return best
    if best is None:
        raise AlgebraError("could not form an eliminant; scheme not finite?")
    return best


def _is_univariate_in(p: Polynomial, ring: RingContext, name: str) -> bool:
    i = ring.index(name)
    return all(all(e == 0 for j, e in enumerate(m) if j != i) for m in p.terms)
