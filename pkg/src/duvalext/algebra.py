"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a dictionary mapping exponent tuples to ``Fraction``
coefficients, attached to a :class:`RingContext` that fixes the variable
names, their weights and which of them are formal parameters.  All
arithmetic is exact; zero coefficients are never stored, so equality of
term maps is equality of polynomials.

The ring of a typical extraction model looks like

    QQ[x, y, z, eta, xi1, xi2, zeta | a, b, c, d]

where x, y, z are ambient coordinates, eta/xi1/xi2/zeta are model
coordinates with positive weights, and a..d are weight-0 parameters.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]

_SUPERSCRIPTS = {"−": "-"}  # unicode minus accepted by the parser


class AlgebraError(ValueError):
    """Raised on malformed ring operations (context mismatch, bad names)."""


class RingContext:
    """An ordered list of named, weighted variables.

    ``weights[i]`` is the non-negative integer weight of variable ``i``
    and ``params[i]`` marks formal coefficient parameters (weight 0).
    Contexts are immutable and hashable; polynomials in different
    contexts never mix.
    """

    __slots__ = ("names", "weights", "params", "_index", "_hash")

    def __init__(
        self,
        names: Sequence[str],
        weights: Sequence[int] | None = None,
        params: Sequence[bool] | None = None,
    ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate variable names in {names}")
        if weights is None:
            weights = tuple(1 for _ in names)
        if params is None:
            params = tuple(False for _ in names)
        weights = tuple(int(w) for w in weights)
        params = tuple(bool(p) for p in params)
        if len(weights) != len(names) or len(params) != len(names):
            raise AlgebraError("names/weights/params length mismatch")
        if any(w < 0 for w in weights):
            raise AlgebraError("weights must be non-negative")
        self.names = names
        self.weights = weights
        self.params = params
        self._index = {n: i for i, n in enumerate(names)}
        self._hash = hash((names, weights, params))

    @property
    def arity(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError(f"unknown variable {name!r} in {self.names}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingContext)
            and self.names == other.names
            and self.weights == other.weights
            and self.params == other.params
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        vs = ", ".join(
            f"{n}:{w}{'*' if p else ''}"
            for n, w, p in zip(self.names, self.weights, self.params)
        )
        return f"RingContext({vs})"

    # -- constructors ------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, value) -> "Polynomial":
        c = Fraction(value)
        if c == 0:
            return Polynomial(self, {})
        return Polynomial(self, {(0,) * self.arity: c})

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        expo = [0] * self.arity
        expo[i] = 1
        return Polynomial(self, {tuple(expo): Fraction(1)})

    def vars(self, *names: str) -> Tuple["Polynomial", ...]:
        return tuple(self.var(n) for n in names)

    def monomial(self, expo: Sequence[int], coeff=1) -> "Polynomial":
        expo = tuple(int(e) for e in expo)
        if len(expo) != self.arity:
            raise AlgebraError("exponent arity mismatch")
        c = Fraction(coeff)
        if c == 0:
            return self.zero()
        return Polynomial(self, {expo: c})

    def extend(
        self,
        names: Sequence[str],
        weights: Sequence[int] | None = None,
        params: Sequence[bool] | None = None,
    ) -> "RingContext":
        """Context with extra variables appended after the existing ones."""
        if weights is None:
            weights = tuple(1 for _ in names)
        if params is None:
            params = tuple(False for _ in names)
        return RingContext(
            self.names + tuple(names),
            self.weights + tuple(weights),
            self.params + tuple(params),
        )

    def weight_vector(self, overrides: Mapping[str, int] | None = None) -> Tuple[int, ...]:
        """The context weights, optionally overridden per variable name."""
        if not overrides:
            return self.weights
        ws = list(self.weights)
        for name, w in overrides.items():
            ws[self.index(name)] = int(w)
        return tuple(ws)


class Polynomial:
    """Immutable sparse polynomial over QQ in a fixed :class:`RingContext`."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingContext, terms: Dict[Monomial, Fraction]):
        self.ring = ring
        self.terms = terms  # invariant: no zero values

    # -- basics ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.arity, Fraction(0))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise AlgebraError("polynomials from different ring contexts")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    # -- arithmetic --------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + self._coerce(other)

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Polynomial(self.ring, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        out: Dict[Monomial, Fraction] = {}
        get = out.get
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                s = get(m)
                if s is None:
                    out[m] = ca * cb
                else:
                    s = s + ca * cb
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise AlgebraError("negative polynomial power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __truediv__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                raise AlgebraError("division by zero scalar")
            return self * (Fraction(1) / c)
        return NotImplemented

    def scale(self, c) -> "Polynomial":
        return self * Fraction(c)

    # -- structure ---------------------------------------------------

    def monomials(self) -> Iterator[Monomial]:
        return iter(self.terms)

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def degree(self, weights: Sequence[int] | None = None) -> int:
        """Maximum weighted degree of the terms (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        ws = self.ring.weights if weights is None else tuple(weights)
        return max(sum(e * w for e, w in zip(m, ws)) for m in self.terms)

    def total_degree(self) -> int:
        """Maximum sum of exponents, all variables counted with weight 1."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.ring.index(name)
        return max(m[i] for m in self.terms)

    def coefficients_in(self, name: str) -> Dict[int, "Polynomial"]:
        """Split p = sum_k  v^k * p_k  for variable v; returns {k: p_k}."""
        i = self.ring.index(name)
        out: Dict[int, Dict[Monomial, Fraction]] = {}
        for m, c in self.terms.items():
            k = m[i]
            mm = m[:i] + (0,) + m[i + 1 :]
            out.setdefault(k, {})[mm] = c
        return {k: Polynomial(self.ring, t) for k, t in out.items()}

    def jet(self, degree: int, weights: Sequence[int] | None = None) -> "Polynomial":
        """Sum of the terms of weighted degree exactly ``degree``."""
        if degree < 0:
            raise AlgebraError("jet degree must be non-negative")
        ws = self.ring.weights if weights is None else tuple(weights)
        out = {
            m: c
            for m, c in self.terms.items()
            if sum(e * w for e, w in zip(m, ws)) == degree
        }
        return Polynomial(self.ring, out)

    def jet_up_to(self, degree: int, weights: Sequence[int] | None = None) -> "Polynomial":
        """Sum of the terms of weighted degree at most ``degree``."""
        ws = self.ring.weights if weights is None else tuple(weights)
        out = {
            m: c
            for m, c in self.terms.items()
            if sum(e * w for e, w in zip(m, ws)) <= degree
        }
        return Polynomial(self.ring, out)

    def partial_derivative(self, name: str) -> "Polynomial":
        i = self.ring.index(name)
        out: Dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            mm = m[:i] + (e - 1,) + m[i + 1 :]
            prev = out.get(mm)
            val = c * e if prev is None else prev + c * e
            if val:
                out[mm] = val
            elif prev is not None:
                del out[mm]
        return Polynomial(self.ring, out)

    def weighted_homogeneous(
        self, weights: Sequence[int] | None = None
    ) -> Tuple[bool, object]:
        """Report (True, d) if every term has weighted degree d.

        The zero polynomial is homogeneous with the degree flag "zero";
        otherwise the second entry is None when inhomogeneous.
        """
        if not self.terms:
            return (True, "zero")
        ws = self.ring.weights if weights is None else tuple(weights)
        degs = {sum(e * w for e, w in zip(m, ws)) for m in self.terms}
        if len(degs) == 1:
            return (True, degs.pop())
        return (False, None)

    # -- substitution ------------------------------------------------

    def substitute(
        self,
        bindings: Mapping[str, "Polynomial"],
        target: RingContext | None = None,
    ) -> "Polynomial":
        """Image under the ring map fixing every unbound variable.

        Bound variables map to the given polynomials, which must all live
        in a single context; unbound variables must exist (by name) in
        that target context.  With no bindings and no target this is the
        identity.
        """
        if not bindings and target is None:
            return self
        if target is None:
            target = next(iter(bindings.values())).ring
        for name, val in bindings.items():
            self.ring.index(name)
            if val.ring != target:
                raise AlgebraError("substitution bindings in mixed contexts")
        images = []
        for i, name in enumerate(self.ring.names):
            if name in bindings:
                images.append(bindings[name])
            elif name in target:
                images.append(target.var(name))
            else:
                images.append(None)  # only legal if the variable never occurs
        out = target.zero()
        pow_cache: Dict[Tuple[int, int], Polynomial] = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e == 0:
                    continue
                img = images[i]
                if img is None:
                    raise AlgebraError(
                        f"variable {self.ring.names[i]!r} has no image in target context"
                    )
                key = (i, e)
                p = pow_cache.get(key)
                if p is None:
                    p = img**e
                    pow_cache[key] = p
                term = term * p
            out = out + term
        return out

    def lift(self, target: RingContext) -> "Polynomial":
        """Reinterpret in a larger context containing all used variables."""
        return self.substitute({}, target=target)

    def evaluate(self, values: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at a full rational point."""
        point = []
        for name in self.ring.names:
            if name not in values:
                raise AlgebraError(f"no value for variable {name!r}")
            point.append(Fraction(values[name]))
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x**e
            total += v
        return total

    # -- text form ---------------------------------------------------

    def __repr__(self) -> str:
        return f"<{format_poly(self)}>"

    def __str__(self) -> str:
        return format_poly(self)


# ---------------------------------------------------------------------------
# text serialization:  "x^2*y - 1/2*y*z + 3"
# ---------------------------------------------------------------------------


def format_poly(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    names = p.ring.names

    def mono_key(m: Monomial):
        return (-sum(m), tuple(-e for e in m))

    parts = []
    for m in sorted(p.terms, key=mono_key):
        c = p.terms[m]
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        coeff_str = str(c) if c.denominator != 1 else str(c.numerator)
        if factors:
            body = "*".join(factors)
            if c == 1:
                text = body
            elif c == -1:
                text = f"-{body}"
            else:
                text = f"{coeff_str}*{body}"
        else:
            text = coeff_str
        parts.append(text)
    out = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            out += " - " + part[1:]
        else:
            out += " + " + part
    return out


def parse_poly(text: str, ring: RingContext) -> Polynomial:
    """Parse the grammar emitted by :func:`format_poly`.

    Terms are joined by '+'/'-', a coefficient is an integer or 'n/d',
    a monomial is '*'-joined powers like 'x^2*y'.  Whitespace is free.
    """
    s = text.strip()
    for bad, good in _SUPERSCRIPTS.items():
        s = s.replace(bad, good)
    if not s:
        raise AlgebraError("empty polynomial text")
    # split into signed chunks
    chunks: list[Tuple[int, str]] = []
    sign, buf, depth = 1, [], 0
    i = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and (i == 0 or s[i - 1] not in "^*/"):
            chunks.append((sign, "".join(buf)))
            buf = []
            sign = -1 if ch == "-" else 1
        else:
            buf.append(ch)
        i += 1
    chunks.append((sign, "".join(buf)))

    result = ring.zero()
    for sgn, chunk in chunks:
        chunk = chunk.strip()
        if not chunk:
            raise AlgebraError(f"malformed polynomial text {text!r}")
        coeff = Fraction(sgn)
        expo = [0] * ring.arity
        for factor in chunk.split("*"):
            factor = factor.strip()
            if not factor:
                raise AlgebraError(f"empty factor in {chunk!r}")
            if factor[0].isdigit() or factor[0] in "+-" or "/" in factor and factor.split("/")[0].strip().lstrip("+-").isdigit():
                coeff *= Fraction(factor.replace(" ", ""))
                continue
            if "^" in factor:
                base, _, power = factor.partition("^")
                e = int(power)
            else:
                base, e = factor, 1
            expo[ring.index(base.strip())] += e
        mono = tuple(expo)
        if coeff:
            result = result + ring.monomial(mono, coeff)
    return result


# ---------------------------------------------------------------------------
# small helpers shared across modules
# ---------------------------------------------------------------------------


def poly_sum(ring: RingContext, ps: Iterable[Polynomial]) -> Polynomial:
    total = ring.zero()
    for p in ps:
        total = total + p
    return total


def det2(a: Polynomial, b: Polynomial, c: Polynomial, d: Polynomial) -> Polynomial:
    """Determinant of [[a, b], [c, d]]."""
    return a * d - b * c
