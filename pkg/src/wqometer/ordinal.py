"""Ordinals below epsilon_0 in Cantor normal form, and the arithmetic the
invariant calculator needs on them.

An ordinal is a finite sum  w^e1 * c1 + ... + w^ek * ck  with exponents
e1 > e2 > ... > ek (themselves ordinals) and coefficients ci >= 1.  We store
exactly that: a tuple of (exponent, coefficient) pairs, strictly decreasing
in the exponent.  Zero is the empty tuple.  Everything here stays below
epsilon_0, so exponent towers are always finite and structural recursion
terminates.

Besides the classical operations (comparison, sum, product, left
subtraction, Hessenberg natural sum/product) this module implements the
more exotic functions the composition tables call for: base-2
exponentiation, the "hat" variant of the natural sum used for heights of
Cartesian products, the height-star closure, the product-like `odot` used
for widths of lexicographic products, and sums of initial segments of
omega-powers.

Text syntax (used by `parse_ordinal` and `str()`), round-trip safe::

    ordinal := term ('+' term)*
    term    := 'w' ['^' atom] ['*' nat] | nat
    atom    := nat | 'w' | '(' ordinal ')'

e.g. ``0``, ``7``, ``w``, ``w^2*8``, ``w^(w^2)*3+w*2+5``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

from .errors import ParseError, UnsupportedComputation

__all__ = [
    "Ordinal",
    "OrdinalClass",
    "ZERO",
    "ONE",
    "OMEGA",
    "cmp",
    "add",
    "left_subtract",
    "mul",
    "nat_sum",
    "nat_prod",
    "omega_pow",
    "two_pow",
    "decompose_omega",
    "hat_nat_sum",
    "pm",
    "oprim",
    "hat",
    "hstar",
    "odot",
    "sum_omega_powers",
    "classify",
    "parse_ordinal",
]

# 2^n blows past any reasonable use well before this; refuse rather than
# silently allocate megabyte integers.
_NAT_EXP_LIMIT = 1_000_000


class Ordinal:
    """Immutable ordinal below epsilon_0, in Cantor normal form."""

    __slots__ = ("terms", "_hash")

    terms: tuple[tuple["Ordinal", int], ...]

    def __init__(self, terms: tuple[tuple["Ordinal", int], ...] = ()):
        for i, (e, c) in enumerate(terms):
            if not isinstance(e, Ordinal) or c < 1:
                raise ValueError(f"bad CNF term {(e, c)!r}")
            if i and cmp(terms[i - 1][0], e) <= 0:
                raise ValueError("CNF exponents must strictly decrease")
        object.__setattr__(self, "terms", tuple(terms))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("Ordinal is immutable")

    @staticmethod
    def from_nat(n: int) -> "Ordinal":
        if n < 0:
            raise ValueError("ordinals are not negative")
        return ZERO if n == 0 else Ordinal(((ZERO, n),))

    # -- structural predicates ------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero)

    @property
    def nat(self) -> int:
        """The integer value of a finite ordinal."""
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    @property
    def is_additively_indecomposable(self) -> bool:
        """True for the omega-powers w^g: a single CNF term with coefficient 1."""
        return len(self.terms) == 1 and self.terms[0][1] == 1

    @property
    def is_multiplicatively_indecomposable(self) -> bool:
        """True for ordinals of shape w^(w^g) (this rules out 0, 1 and 2)."""
        return (
            self.is_additively_indecomposable
            and self.terms[0][0].is_additively_indecomposable
        )

    @property
    def leading_exponent(self) -> "Ordinal":
        if self.is_zero:
            raise ValueError("0 has no leading exponent")
        return self.terms[0][0]

    def pred(self) -> "Ordinal":
        """Predecessor of a successor ordinal."""
        if not self.is_successor:
            raise ValueError(f"{self} is not a successor")
        e, c = self.terms[-1]
        rest = self.terms[:-1]
        return Ordinal(rest if c == 1 else rest + ((e, c - 1),))

    # -- operators -------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Ordinal) and self.terms == other.terms

    def __ne__(self, other):
        return not self.__eq__(other)

    def __lt__(self, other):
        return cmp(self, other) < 0

    def __le__(self, other):
        return cmp(self, other) <= 0

    def __gt__(self, other):
        return cmp(self, other) > 0

    def __ge__(self, other):
        return cmp(self, other) >= 0

    def __hash__(self):
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash(self.terms)
            object.__setattr__(self, "_hash", h)
        return h

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return "+".join(_term_str(e, c) for e, c in self.terms)

    def __repr__(self):
        return f"Ordinal[{self}]"


def _coerce(x) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, int):
        return Ordinal.from_nat(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


def _term_str(e: Ordinal, c: int) -> str:
    if e.is_zero:
        return str(c)
    s = "w"
    if e != ONE:
        if e.is_finite:
            s += f"^{e.nat}"
        elif e == OMEGA:
            s += "^w"
        else:
            s += f"^({e})"
    if c > 1:
        s += f"*{c}"
    return s


ZERO = Ordinal()
ONE = Ordinal.from_nat(1)
OMEGA = Ordinal(((ONE, 1),))


# ---------------------------------------------------------------------------
# classical arithmetic
# ---------------------------------------------------------------------------


def cmp(a: Ordinal, b: Ordinal) -> int:
    """Three-way comparison: -1, 0 or 1."""
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        k = cmp(ea, eb)
        if k:
            return k
        if ca != cb:
            return -1 if ca < cb else 1
    na, nb = len(a.terms), len(b.terms)
    return 0 if na == nb else (-1 if na < nb else 1)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a + b (absorbs a's terms below b's leading exponent)."""
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    lead = b.terms[0][0]
    keep = 0
    while keep < len(a.terms) and cmp(a.terms[keep][0], lead) > 0:
        keep += 1
    if keep < len(a.terms) and cmp(a.terms[keep][0], lead) == 0:
        merged = (lead, a.terms[keep][1] + b.terms[0][1])
        return Ordinal(a.terms[:keep] + (merged,) + b.terms[1:])
    return Ordinal(a.terms[:keep] + b.terms)


def left_subtract(a: Ordinal, b: Ordinal) -> Ordinal:
    """The unique c with a + c = b, for a <= b."""
    if cmp(a, b) > 0:
        raise ValueError(f"left_subtract: {a} > {b}")
    i = 0
    while i < len(a.terms) and a.terms[i] == b.terms[i]:
        i += 1
    if i == len(a.terms):
        # a is a prefix of b; left-cancel it
        return Ordinal(b.terms[i:])
    ea, ca = a.terms[i]
    eb, cb = b.terms[i]
    if cmp(ea, eb) == 0:
        # ca < cb here, otherwise a > b
        return Ordinal(((eb, cb - ca),) + b.terms[i + 1 :])
    # ea < eb: the remainder of b swallows a's tail
    return Ordinal(b.terms[i:])


def mul(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal product a * b."""
    if a.is_zero or b.is_zero:
        return ZERO
    lead_e, lead_c = a.terms[0]
    out: list[tuple[Ordinal, int]] = []
    for f, d in b.terms:
        if f.is_zero:
            # a * d for finite d scales the leading coefficient only
            out.append((lead_e, lead_c * d))
            out.extend(a.terms[1:])
        else:
            out.append((add(lead_e, f), d))
    # blocks arrive with strictly decreasing exponents, so this is valid CNF
    return Ordinal(tuple(out))


def omega_pow(e: Ordinal, coeff: int = 1) -> Ordinal:
    """w^e (times an optional positive coefficient)."""
    if coeff < 1:
        raise ValueError("coefficient must be >= 1")
    return Ordinal(((e, coeff),))


# ---------------------------------------------------------------------------
# natural (Hessenberg) arithmetic
# ---------------------------------------------------------------------------


def nat_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Natural sum: merge the two normal forms, adding equal-exponent
    coefficients.  Commutative, associative, strictly monotone."""
    out: list[tuple[Ordinal, int]] = []
    i = j = 0
    ta, tb = a.terms, b.terms
    while i < len(ta) and j < len(tb):
        k = cmp(ta[i][0], tb[j][0])
        if k > 0:
            out.append(ta[i])
            i += 1
        elif k < 0:
            out.append(tb[j])
            j += 1
        else:
            out.append((ta[i][0], ta[i][1] + tb[j][1]))
            i += 1
            j += 1
    out.extend(ta[i:])
    out.extend(tb[j:])
    return Ordinal(tuple(out))


def nat_prod(a: Ordinal, b: Ordinal) -> Ordinal:
    """Natural product: distribute over both normal forms, natural-summing
    the exponents termwise."""
    acc: dict[Ordinal, int] = {}
    for e, c in a.terms:
        for f, d in b.terms:
            g = nat_sum(e, f)
            acc[g] = acc.get(g, 0) + c * d
    exps = sorted(acc, key=cmp_to_key(cmp), reverse=True)
    return Ordinal(tuple((e, acc[e]) for e in exps))


# ---------------------------------------------------------------------------
# base-2 exponentiation
# ---------------------------------------------------------------------------


def decompose_omega(a: Ordinal) -> tuple[Ordinal, int]:
    """Write a = w*q + n with n < w; returns (q, n).

    q is obtained termwise: an infinite-part term w^e*c contributes
    w^(e-1)*c when e is finite (since w*w^(e-1) = w^e) and w^e*c unchanged
    when e is infinite (since 1+e = e there).
    """
    n = 0
    quo: list[tuple[Ordinal, int]] = []
    for e, c in a.terms:
        if e.is_zero:
            n = c
        elif e.is_finite:
            quo.append((Ordinal.from_nat(e.nat - 1), c))
        else:
            quo.append((e, c))
    return Ordinal(tuple(quo)), n


def two_pow(a: Ordinal) -> Ordinal:
    """2^a.  With a = w*q + n this is w^q * 2^n; in particular 2^w = w and
    2^(w^2) = w^w."""
    q, n = decompose_omega(a)
    if n > _NAT_EXP_LIMIT:
        raise UnsupportedComputation(
            "two-pow-finite-too-large", f"refusing 2^{n} (limit {_NAT_EXP_LIMIT})"
        )
    if q.is_zero:
        return Ordinal.from_nat(2**n)
    return mul(omega_pow(q), Ordinal.from_nat(2**n))


# ---------------------------------------------------------------------------
# the table functions
# ---------------------------------------------------------------------------


def hat_nat_sum(a: Ordinal, b: Ordinal, plus_one: bool = True) -> Ordinal:
    """The natural-sum variant used for heights of Cartesian products.

    With the default ``plus_one=True`` this computes
    sup{(a' (+) b') + 1 : a' < a, b' < b}  (sup of the empty set being 0),
    which is what height composition needs: finite chains give
    hat_nat_sum(n, m) = n + m - 1, and successor arguments generally give
    pred(a) (+) pred(b) + 1.  ``plus_one=False`` computes the bare
    sup{a' (+) b'}; the two agree whenever either argument is a limit,
    the sup absorbing the +1 there.

    Closed form, writing (+) for the natural sum: if either argument is 0
    the sup is empty.  If both are successors the sup is attained at the
    predecessors.  Otherwise let each successor argument contribute its
    predecessor, each limit argument x = g + w^e*c (e >= 1 its smallest
    exponent) contribute g + w^e*(c-1) together with the candidate cut e;
    with M the natural sum of contributions and E the largest cut,
    the value is (M truncated to terms >= w^E) + w^E: terms below w^E are
    swallowed by suprema of the form sup_{r < w^E} (M' (+) r) = w^E.
    """
    if a.is_zero or b.is_zero:
        return ZERO
    if a.is_successor and b.is_successor:
        s = nat_sum(a.pred(), b.pred())
        return add(s, ONE) if plus_one else s
    parts: list[Ordinal] = []
    cut: Ordinal | None = None
    for x in (a, b):
        if x.is_successor:
            parts.append(x.pred())
        else:
            e = x.terms[-1][0]  # smallest exponent, >= 1 since x is a limit
            parts.append(_dec_last(x))
            if cut is None or cmp(e, cut) > 0:
                cut = e
    assert cut is not None
    merged = nat_sum(parts[0], parts[1])
    kept = Ordinal(tuple(t for t in merged.terms if cmp(t[0], cut) >= 0))
    return add(kept, omega_pow(cut))


def _dec_last(x: Ordinal) -> Ordinal:
    """x with its last CNF coefficient lowered by one."""
    e, c = x.terms[-1]
    rest = x.terms[:-1]
    return Ordinal(rest if c == 1 else rest + ((e, c - 1),))


def pm(a: Ordinal) -> Ordinal:
    """a-minus: a - 1 for finite a > 0, otherwise a itself.

    (The definition also special-cases epsilon-number neighbourhoods, which
    cannot occur below epsilon_0, so that branch is unreachable here.)
    """
    if a.is_zero:
        raise ValueError("pm(0) is undefined")
    if a.is_finite:
        return Ordinal.from_nat(a.nat - 1)
    return a


def oprim(a: Ordinal) -> Ordinal:
    """a-prime: a + 1 when a sits just above an epsilon number, else a.
    Below epsilon_0 there are no epsilon numbers, so this is the identity."""
    return a


def hat(a: Ordinal) -> Ordinal:
    """Rebuild a with every exponent sent through `oprim`; the identity
    below epsilon_0 (kept explicit so the construction reads like the
    definition it implements)."""
    return Ordinal(tuple((oprim(e), c) for e, c in a.terms))


def hstar(h: Ordinal) -> Ordinal:
    """Height closure: h if h is additively indecomposable and infinite,
    otherwise h * w."""
    if h.is_additively_indecomposable and not h.is_finite:
        return h
    return mul(h, OMEGA)


def odot(a: Ordinal, b: Ordinal) -> Ordinal:
    """Width composition for lexicographic products.

    Only defined here for additively indecomposable a = w^e.  Unrolling b's
    coefficients into unit omega-powers b = w^f1 + w^f2 + ..., the value is
    w^(e+f1) + w^(e+f2) + ...; when both arguments are additively
    indecomposable this coincides with the ordinal product.  Anything with
    a decomposable left operand has no closed form and is refused.
    """
    if not a.is_additively_indecomposable:
        raise UnsupportedComputation(
            "unsupported-odot", f"left operand {a} is additively decomposable"
        )
    e = a.terms[0][0]
    # exponents e+f inherit b's strict ordering, so this is already CNF
    return Ordinal(tuple((add(e, f), c) for f, c in b.terms))


def sum_omega_powers(a: Ordinal) -> Ordinal:
    """The ordinal sum of w^b over all b < a, for a > 0.

    Equals w^(a-1) when a is a successor of a successor (or of 0), and
    w^g * 2 when a = g + 1 with g a limit; at limit a the partial sums
    converge to w^a.
    """
    if a.is_zero:
        raise ValueError("sum_omega_powers needs a > 0")
    if a.is_successor:
        g = a.pred()
        return mul(omega_pow(g), Ordinal.from_nat(2)) if g.is_limit else omega_pow(g)
    return omega_pow(a)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrdinalClass:
    is_zero: bool
    is_finite: bool
    is_successor: bool
    is_limit: bool
    is_additively_indecomposable: bool
    is_multiplicatively_indecomposable: bool


def classify(a: Ordinal) -> OrdinalClass:
    return OrdinalClass(
        is_zero=a.is_zero,
        is_finite=a.is_finite,
        is_successor=a.is_successor,
        is_limit=a.is_limit,
        is_additively_indecomposable=a.is_additively_indecomposable,
        is_multiplicatively_indecomposable=a.is_multiplicatively_indecomposable,
    )


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def parse_ordinal(text: str) -> Ordinal:
    """Parse the textual ordinal syntax (see module docstring)."""
    value, pos = parse_ordinal_prefix(text, 0)
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise ParseError(text, pos, "end of ordinal")
    return value


def parse_ordinal_prefix(text: str, pos: int) -> tuple[Ordinal, int]:
    """Parse an ordinal starting at `pos`; returns (value, next position).

    Exposed so the expression parser can read ordinal arguments in place.
    Sums are folded left with ordinal addition, so non-normal spellings
    like ``1+w`` are accepted and normalised.
    """
    value, pos = _parse_term(text, pos)
    while True:
        p = _skip_ws(text, pos)
        # a lone '+' continues the sum; '++' belongs to the expression layer
        if text.startswith("+", p) and not text.startswith("++", p):
            term, pos = _parse_term(text, p + 1)
            value = add(value, term)
        else:
            return value, pos


def _parse_term(text: str, pos: int) -> tuple[Ordinal, int]:
    pos = _skip_ws(text, pos)
    if pos < len(text) and text[pos] == "w":
        pos += 1
        exponent = ONE
        if pos < len(text) and text[pos] == "^":
            exponent, pos = _parse_atom(text, pos + 1)
        coeff = 1
        p = _skip_ws(text, pos)
        if text.startswith("*", p):
            coeff, pos = _parse_nat(text, p + 1)
        return omega_pow(exponent, coeff), pos
    if pos < len(text) and text[pos].isdigit():
        n, pos = _parse_nat(text, pos)
        return Ordinal.from_nat(n), pos
    raise ParseError(text, pos, "'w' or a natural number")


def _parse_atom(text: str, pos: int) -> tuple[Ordinal, int]:
    pos = _skip_ws(text, pos)
    if pos < len(text) and text[pos].isdigit():
        n, pos = _parse_nat(text, pos)
        return Ordinal.from_nat(n), pos
    if pos < len(text) and text[pos] == "w":
        return OMEGA, pos + 1
    if pos < len(text) and text[pos] == "(":
        value, pos = parse_ordinal_prefix(text, pos + 1)
        pos = _skip_ws(text, pos)
        if not text.startswith(")", pos):
            raise ParseError(text, pos, "')'")
        return value, pos + 1
    raise ParseError(text, pos, "a natural number, 'w' or '('")


def _parse_nat(text: str, pos: int) -> tuple[int, int]:
    pos = _skip_ws(text, pos)
    start = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if start == pos:
        raise ParseError(text, pos, "a natural number")
    return int(text[start:pos]), pos


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos] in " \t":
        pos += 1
    return pos
