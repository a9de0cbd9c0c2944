"""Invariant engine: computes the maximal order type ``o``, the height
``h`` and the width ``w`` of a wqo expression.

Results are :class:`InvariantResult` values because the three invariants
are not always expressible compositionally: depending on the shape of the
expression a component comes out

* exact            -- a single ordinal,
* interval         -- sound lower and upper bounds,
* lower            -- only a lower bound is known,
* unsupported      -- no sound rule applies (the reason says which
                      hypothesis failed or which rule is missing).

The engine picks the strongest applicable strategy per subtree:

1. *elementary* subtrees (union / product / words / multisets / powerset
   over multiplicatively indecomposable ordinal leaves >= w^w) are
   normalised by the rewrite system and evaluated exactly, including the
   weakened order type used for powerset heights;
2. *omega-elementary* subtrees (same constructors over the single leaf w)
   get their height pinned to exactly w;
3. everything else goes through the general compositional rules, with
   powersets handled by the sound bound table (1 + x <= f(Pf(A)) <= 2^x
   style) and conditional rules reporting ``unsupported`` when their
   hypothesis cannot be verified.

The module also exposes the two bound-attaining families ``Phi`` (all
three invariants prescribed by the index) and ``Sim`` (realising the
powerset height bound) both as expression nodes and as direct helpers.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import comb

from .errors import HypothesisNotMet, UnsupportedComputation
from .expr import (
    CartProd,
    DisjUnion,
    Gamma,
    LexProd,
    LexSum,
    Multisets,
    MultisetsN,
    Ord,
    Pf,
    PfPlus,
    Phi,
    Sim,
    SimExt,
    Words,
    WqoExpr,
    is_elementary,
    is_omega_elementary,
    print_expr,
)
from .ordinal import (
    ONE,
    OMEGA,
    ZERO,
    Ordinal,
    add,
    cmp,
    hat,
    hat_nat_sum,
    hstar,
    left_subtract,
    mul,
    nat_prod,
    nat_sum,
    odot,
    omega_pow,
    pm,
    two_pow,
)
from .rewrite import eliminate_pf, normalize_elementary

_TWO = Ordinal.from_nat(2)

# the handful of product widths that are known exactly without being an
# instance of a general rule; keyed by the (smaller, larger) factor pair
_PRODUCT_WIDTH_TABLE: dict[tuple[Ordinal, Ordinal], Ordinal] = {
    (mul(OMEGA, _TWO), mul(OMEGA, _TWO)): mul(OMEGA, Ordinal.from_nat(3)),
}


# ---------------------------------------------------------------------------
# result and report types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantResult:
    """One invariant component, as precise as the rules allow.

    ``finite_multiple`` marks an upper bound of the form ``upper * m`` for
    some unspecified finite ``m`` (this is how the powerset height bound
    behaves at successor heights).
    """

    lower: Ordinal | None = None
    upper: Ordinal | None = None
    finite_multiple: bool = False
    reason: str | None = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def exact(cls, value: Ordinal) -> "InvariantResult":
        return cls(lower=value, upper=value)

    @classmethod
    def interval(
        cls, lower: Ordinal, upper: Ordinal, finite_multiple: bool = False
    ) -> "InvariantResult":
        if not finite_multiple:
            assert cmp(lower, upper) <= 0, "inverted bound interval"
        return cls(lower=lower, upper=upper, finite_multiple=finite_multiple)

    @classmethod
    def lower_only(cls, lower: Ordinal) -> "InvariantResult":
        return cls(lower=lower)

    @classmethod
    def unsupported(cls, reason: str) -> "InvariantResult":
        return cls(reason=reason)

    # -- views -------------------------------------------------------------

    @property
    def kind(self) -> str:
        if self.reason is not None:
            return "unsupported"
        if self.upper is None:
            return "lower"
        if self.lower == self.upper and not self.finite_multiple:
            return "exact"
        return "interval"

    @property
    def value(self) -> Ordinal:
        """The exact value; only meaningful when ``kind == "exact"``."""
        if self.kind != "exact":
            raise ValueError(f"no exact value for a {self.kind} result")
        return self.lower

    def admits(self, v: Ordinal) -> bool:
        """Whether the ordinal ``v`` is consistent with this result."""
        if self.reason is not None:
            return True
        if cmp(v, self.lower) < 0:
            return False
        if self.upper is None:
            return True
        if self.finite_multiple:
            # upper * m for some finite m, i.e. strictly below upper * w
            return cmp(v, mul(self.upper, OMEGA)) < 0
        return cmp(v, self.upper) <= 0

    def to_json(self) -> dict:
        k = self.kind
        if k == "unsupported":
            return {"kind": "unsupported", "reason": self.reason}
        if k == "exact":
            return {"kind": "exact", "value": str(self.value)}
        if k == "lower":
            return {"kind": "lower", "lower": str(self.lower)}
        out = {"kind": "interval", "lower": str(self.lower), "upper": str(self.upper)}
        if self.finite_multiple:
            out["upper_modifier"] = "finite-multiple"
        return out

    def __str__(self) -> str:
        k = self.kind
        if k == "exact":
            return str(self.value)
        if k == "lower":
            return f">= {self.lower}"
        if k == "interval":
            tail = " * m, m finite" if self.finite_multiple else ""
            return f"[{self.lower}, {self.upper}{tail}]"
        return f"unsupported ({self.reason})"


@dataclass(frozen=True)
class InvariantReport:
    """The three invariants of one expression, plus the weakened order
    type (elementary expressions only) and human-readable notes about
    which rules fired."""

    mot: InvariantResult
    height: InvariantResult
    width: InvariantResult
    weak_mot: Ordinal | None = None
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "mot": self.mot.to_json(),
            "height": self.height.to_json(),
            "width": self.width.to_json(),
            "weak_mot": None if self.weak_mot is None else str(self.weak_mot),
            "notes": list(self.notes),
        }


_Triple = tuple[InvariantResult, InvariantResult, InvariantResult]


def _exact3(o: Ordinal, h: Ordinal, w: Ordinal) -> _Triple:
    return (
        InvariantResult.exact(o),
        InvariantResult.exact(h),
        InvariantResult.exact(w),
    )


_EMPTY: _Triple = _exact3(ZERO, ZERO, ZERO)
_SINGLETON: _Triple = _exact3(ONE, ONE, ONE)


def _omax(*xs: Ordinal) -> Ordinal:
    return max(xs)


def _lift(fn, *parts: InvariantResult) -> InvariantResult:
    """Apply a monotone ordinal function componentwise to bound results."""
    for p in parts:
        if p.reason is not None:
            return InvariantResult.unsupported(p.reason)
    lo = fn(*(p.lower for p in parts))
    if all(p.kind == "exact" for p in parts):
        return InvariantResult.exact(lo)
    if all(p.upper is not None and not p.finite_multiple for p in parts):
        return InvariantResult.interval(lo, fn(*(p.upper for p in parts)))
    return InvariantResult.lower_only(lo)


def _dedup(notes: list[str]) -> tuple[str, ...]:
    seen: set[str] = set()
    out: list[str] = []
    for n in notes:
        if n not in seen:
            seen.add(n)
            out.append(n)
    return tuple(out)


# ---------------------------------------------------------------------------
# exact evaluation of elementary expressions
# ---------------------------------------------------------------------------


def _elem_eval(e: WqoExpr) -> tuple[Ordinal, Ordinal, Ordinal, Ordinal]:
    """Exact (o, h, w, weakened-o) of a *normalised* elementary expression.

    The weakened order type stays multiplicatively indecomposable at every
    step; this invariant is what makes the powerset-height column sound.
    """
    if isinstance(e, Ord):
        a = e.value
        assert a.is_multiplicatively_indecomposable
        return a, a, ONE, a
    if isinstance(e, DisjUnion):
        o1, h1, w1, s1 = _elem_eval(e.left)
        o2, h2, w2, s2 = _elem_eval(e.right)
        return nat_sum(o1, o2), _omax(h1, h2), nat_sum(w1, w2), _omax(s1, s2)
    if isinstance(e, CartProd):
        o1, h1, w1, s1 = _elem_eval(e.left)
        o2, h2, w2, s2 = _elem_eval(e.right)
        o = nat_prod(o1, o2)
        return o, hat_nat_sum(h1, h2), o, _omax(s1, s2)
    if isinstance(e, Words):
        o1, h1, w1, s1 = _elem_eval(e.arg)
        o = omega_pow(omega_pow(pm(o1)))
        return o, hstar(h1), o, s1
    if isinstance(e, Multisets):
        o1, h1, w1, s1 = _elem_eval(e.arg)
        o = omega_pow(hat(o1))
        return o, hstar(h1), o, s1
    if isinstance(e, Pf):
        o1, h1, w1, s1 = _elem_eval(e.arg)
        assert s1.is_multiplicatively_indecomposable
        o = two_pow(o1)
        return o, s1, o, two_pow(s1)
    raise UnsupportedComputation("not-elementary", print_expr(e))


def weak_mot(e: WqoExpr) -> Ordinal:
    """The weakened maximal order type of an elementary expression (the
    invariant that equals the powerset height of the expression)."""
    if not is_elementary(e):
        raise UnsupportedComputation("weak-mot-requires-elementary", print_expr(e))
    nf, _ = normalize_elementary(e)
    return _elem_eval(nf)[3]


# ---------------------------------------------------------------------------
# the bound-attaining families
# ---------------------------------------------------------------------------


def phi_invariants(a: Ordinal) -> InvariantReport:
    """Invariants of the family member with o = w = a and h = w^a1 where
    a1 is the leading exponent of a (an ordinal-indexed lexicographic sum
    of antichains)."""
    if a.is_zero:
        raise HypothesisNotMet("phi-family", "index must be >= 1")
    h = omega_pow(a.leading_exponent)
    return InvariantReport(
        mot=InvariantResult.exact(a),
        height=InvariantResult.exact(h),
        width=InvariantResult.exact(a),
        notes=("family:phi",),
    )


def pf_phi_invariants(a: Ordinal) -> InvariantReport:
    """Invariants of the powerset of the Phi family member: both o and w
    equal 2^a exactly (binomial at finite indices), while h is only known
    inside the general powerset bounds."""
    if a.is_zero:
        raise HypothesisNotMet("phi-family", "index must be >= 1")
    if a.is_finite:
        k = a.nat
        o = InvariantResult.exact(Ordinal.from_nat(2**k))
        w = InvariantResult.exact(Ordinal.from_nat(comb(k, k // 2)))
        h = InvariantResult.interval(_TWO, _TWO, finite_multiple=True)
    else:
        t = two_pow(a)
        o = InvariantResult.exact(t)
        w = InvariantResult.exact(t)
        hl = omega_pow(a.leading_exponent)
        h = InvariantResult.interval(hl, two_pow(hl))
    return InvariantReport(mot=o, height=h, width=w, notes=("family:phi-powerset",))


def _sim_desugar(a: Ordinal) -> WqoExpr:
    """The Sim family member as a plain expression, checking the index
    precondition (a = w, or a >= w^w multiplicatively indecomposable)."""
    if a == OMEGA:
        return Ord(OMEGA)
    if a.is_multiplicatively_indecomposable and cmp(a, omega_pow(OMEGA)) >= 0:
        return Pf(Words(Ord(a)))
    raise HypothesisNotMet(
        "sim-family", "index must be w, or >= w^w and multiplicatively indecomposable"
    )


def sim_invariants(a: Ordinal, ext: int | None = None) -> InvariantReport:
    """Invariants of the Sim family member with index ``a`` (height equals
    ``a``); with ``ext=m`` the extended member with height exactly
    ``a + 1`` and powerset height at least ``2^a * m``."""
    base = _sim_desugar(a)
    if ext is None:
        return invariants(base)
    if ext < 1:
        raise ValueError("ext needs m >= 1")
    rep = invariants(CartProd(LexSum(base, Ord(ONE)), Gamma(ext)))
    bound = mul(two_pow(a), Ordinal.from_nat(ext))
    extra = f"powerset-height-lower-bound: {bound}"
    return replace(rep, notes=_dedup(list(rep.notes) + [extra]))


# ---------------------------------------------------------------------------
# powerset bounds
# ---------------------------------------------------------------------------


def _pf_table_parts(base: _Triple, notes: list[str]) -> _Triple:
    """Sound bounds for the invariants of Pf(A) from the invariants of A:
    o and h land in [1 + x, 2^x] (the height upper bound only up to a
    finite multiple at successor heights), while w only has lower bounds
    (binomial at finite widths, 2^w at infinite ones)."""
    bo, bh, bw = base
    notes.append("powerset-bounds")

    if bo.reason is not None:
        o = InvariantResult.unsupported(bo.reason)
    else:
        lo = add(ONE, bo.lower)
        hi = None
        if bo.upper is not None and not bo.finite_multiple:
            try:
                hi = two_pow(bo.upper)
            except UnsupportedComputation:
                hi = None
        o = InvariantResult.interval(lo, hi) if hi is not None else InvariantResult.lower_only(lo)

    if bh.reason is not None:
        h = InvariantResult.unsupported(bh.reason)
    else:
        lo = add(ONE, bh.lower)
        hi = None
        if bh.upper is not None:
            try:
                hi = two_pow(bh.upper)
            except UnsupportedComputation:
                hi = None
        if hi is None:
            h = InvariantResult.lower_only(lo)
        else:
            if bh.kind == "exact":
                fm = bh.value.is_successor or bh.value.is_zero
            else:
                fm = True  # cannot rule out a successor height
            h = InvariantResult.interval(lo, hi, finite_multiple=fm)

    if bw.reason is not None:
        w = InvariantResult.unsupported(bw.reason)
    else:
        v = bw.lower
        if v.is_finite:
            w = InvariantResult.lower_only(Ordinal.from_nat(comb(v.nat, v.nat // 2)))
        else:
            w = InvariantResult.lower_only(two_pow(v))
        if bo.kind == "exact":
            try:
                notes.append(f"width-cap: w <= 2^o = {two_pow(bo.value)}")
            except UnsupportedComputation:
                pass

    return o, h, w


def pf_bounds(e: WqoExpr) -> InvariantReport:
    """Bound report for Pf(e), derived from the invariants of ``e`` via
    the powerset bound table."""
    rep = invariants(e)
    notes: list[str] = []
    o, h, w = _pf_table_parts((rep.mot, rep.height, rep.width), notes)
    return InvariantReport(mot=o, height=h, width=w, notes=_dedup(notes))


# ---------------------------------------------------------------------------
# general evaluation
# ---------------------------------------------------------------------------


def invariants(e: WqoExpr) -> InvariantReport:
    """Compute (o, h, w) of ``e``, together with the weakened order type
    when ``e`` simplifies to an elementary expression."""
    e2 = eliminate_pf(e)
    notes: list[str] = []
    if e2 != e:
        notes.append("simplification-applied")
    o, h, w = _eval(e2, notes)
    wm = None
    if is_elementary(e2):
        nf, _ = normalize_elementary(e2)
        wm = _elem_eval(nf)[3]
    _sanity(o, h, w)
    return InvariantReport(mot=o, height=h, width=w, weak_mot=wm, notes=_dedup(notes))


def _sanity(o: InvariantResult, h: InvariantResult, w: InvariantResult) -> None:
    if o.kind == h.kind == w.kind == "exact":
        assert cmp(h.value, o.value) <= 0, "height exceeds order type"
        assert cmp(w.value, o.value) <= 0, "width exceeds order type"
        assert cmp(o.value, nat_prod(h.value, w.value)) <= 0 or o.value.is_zero, (
            "order type exceeds natural product of height and width"
        )


def _eval(e: WqoExpr, notes: list[str]) -> _Triple:
    if is_elementary(e):
        nf, _ = normalize_elementary(e)
        o, h, w, _wm = _elem_eval(nf)
        notes.append("elementary-exact")
        return _exact3(o, h, w)
    if is_omega_elementary(e):
        o, h, w = _eval_general(e, notes)
        if h.kind == "exact":
            assert h.value == OMEGA, "height rule disagrees on an omega-elementary term"
        notes.append("omega-elementary-height")
        return o, InvariantResult.exact(OMEGA), w
    return _eval_general(e, notes)


def _eval_general(e: WqoExpr, notes: list[str]) -> _Triple:
    if isinstance(e, Ord):
        a = e.value
        if a.is_zero:
            return _EMPTY
        return (
            InvariantResult.exact(a),
            InvariantResult.exact(a),
            InvariantResult.exact(ONE),
        )

    if isinstance(e, Gamma):
        k = Ordinal.from_nat(e.size)
        return (
            InvariantResult.exact(k),
            InvariantResult.exact(ONE),
            InvariantResult.exact(k),
        )

    if isinstance(e, Phi):
        rep = phi_invariants(e.value)
        notes.append("family:phi")
        return rep.mot, rep.height, rep.width

    if isinstance(e, Sim):
        notes.append("family:sim")
        return _eval(_sim_desugar(e.value), notes)

    if isinstance(e, SimExt):
        notes.append("family:sim-extended")
        desugared = CartProd(LexSum(_sim_desugar(e.value), Ord(ONE)), Gamma(e.copies))
        return _eval(desugared, notes)

    if isinstance(e, DisjUnion):
        lo, lh, lw = _eval(e.left, notes)
        ro, rh, rw = _eval(e.right, notes)
        return (
            _lift(nat_sum, lo, ro),
            _lift(_omax, lh, rh),
            _lift(nat_sum, lw, rw),
        )

    if isinstance(e, LexSum):
        lo, lh, lw = _eval(e.left, notes)
        ro, rh, rw = _eval(e.right, notes)
        return (
            _lift(add, lo, ro),
            _lift(add, lh, rh),
            _lift(_omax, lw, rw),
        )

    if isinstance(e, CartProd):
        special = _unit_or_empty(e, notes)
        if special is not None:
            return special
        left = _eval(e.left, notes)
        right = _eval(e.right, notes)
        o = _lift(nat_prod, left[0], right[0])
        h = _lift(hat_nat_sum, left[1], right[1])
        w = _product_width(e, left, right, notes)
        return o, h, w

    if isinstance(e, LexProd):
        special = _unit_or_empty(e, notes)
        if special is not None:
            return special
        left = _eval(e.left, notes)
        right = _eval(e.right, notes)
        ro = right[0]
        if ro.reason is not None:
            o = InvariantResult.unsupported(ro.reason)
        elif ro.kind != "exact":
            o = InvariantResult.unsupported("needs-exact-value:lex-product-mot")
        elif ro.value.is_limit:
            o = _lift(mul, left[0], ro)
        else:
            o = InvariantResult.unsupported(
                HypothesisNotMet("lex-product-mot", "o(B) is a limit ordinal").reason
            )
        h = _lift(mul, left[1], right[1])
        w = _lex_prod_width(left[2], right[2])
        return o, h, w

    if isinstance(e, Words):
        return _words_parts(e, notes)

    if isinstance(e, Multisets):
        return _multisets_parts(e, notes)

    if isinstance(e, MultisetsN):
        if e.size == 0:
            notes.append("fixed-size-multisets: only the empty multiset")
            return _SINGLETON
        u = InvariantResult.unsupported("fixed-size-multisets-no-rule")
        return u, u, u

    if isinstance(e, Pf):
        return _pf_parts(e, notes)

    if isinstance(e, PfPlus):
        return _pf_plus_parts(e, notes)

    raise TypeError(f"unknown expression node {type(e).__name__}")


def _unit_or_empty(e: WqoExpr, notes: list[str]) -> _Triple | None:
    """Structural special cases shared by both products: a factor that is
    the empty order makes the product empty, a singleton factor leaves the
    other factor unchanged."""
    for mine, other in ((e.left, e.right), (e.right, e.left)):
        if isinstance(mine, Ord) and mine.value.is_zero:
            notes.append("product-with-empty-factor")
            return _EMPTY
    for mine, other in ((e.left, e.right), (e.right, e.left)):
        if isinstance(mine, Ord) and mine.value == ONE:
            notes.append("product-with-singleton-factor")
            return _eval(other, notes)
    return None


def _product_width(e: CartProd, left: _Triple, right: _Triple, notes: list[str]) -> _Triple:
    """Width of a Cartesian product: not a function of the factor
    invariants in general, but several special shapes are known."""
    if isinstance(e.left, Ord) and isinstance(e.right, Ord):
        a, b = e.left.value, e.right.value
        for x, y in ((a, b), (b, a)):
            if x == OMEGA:
                notes.append("product-width: w(w x b) = b")
                return InvariantResult.exact(y)
        key = (a, b) if cmp(a, b) <= 0 else (b, a)
        if key in _PRODUCT_WIDTH_TABLE:
            notes.append("product-width: catalogued value")
            return InvariantResult.exact(_PRODUCT_WIDTH_TABLE[key])

    for r in (left[2], right[2], left[0], right[0]):
        if r.reason is not None:
            return InvariantResult.unsupported(r.reason)

    # width lower bound: an additively indecomposable infinite factor
    # width multiplies with the other factor's order type
    best: Ordinal | None = None
    for (xo, _xh, _xw), (_yo, _yh, yw) in ((left, right), (right, left)):
        if (
            yw.kind == "exact"
            and not yw.value.is_finite
            and yw.value.is_additively_indecomposable
            and not xo.lower.is_zero
        ):
            cand = mul(yw.value, xo.lower)
            if best is None or cmp(cand, best) > 0:
                best = cand
    if best is not None:
        notes.append("product-width: lower bound w(B) * o(A)")
        return InvariantResult.lower_only(best)
    return InvariantResult.unsupported("width-of-product-non-functional")


def _lex_prod_width(wa: InvariantResult, wb: InvariantResult) -> InvariantResult:
    for r in (wa, wb):
        if r.reason is not None:
            return InvariantResult.unsupported(r.reason)
    if wa.kind == "exact" and wb.kind == "exact":
        try:
            return InvariantResult.exact(odot(wa.value, wb.value))
        except UnsupportedComputation as exc:
            return InvariantResult.unsupported(exc.reason)
    return InvariantResult.unsupported("needs-exact-value:lex-product-width")


def _words_parts(e: Words, notes: list[str]) -> _Triple:
    base = _eval(e.arg, notes)
    bo, bh, _bw = base
    if bo.kind == "exact":
        if bo.value.is_zero:
            notes.append("words-over-empty-alphabet")
            return _SINGLETON
        if bo.value == ONE:
            notes.append("words-over-singleton-alphabet")
            return (
                InvariantResult.exact(OMEGA),
                InvariantResult.exact(OMEGA),
                InvariantResult.exact(ONE),
            )
    if bo.reason is not None:
        o = InvariantResult.unsupported(bo.reason)
    elif bo.lower.is_zero:
        # the alphabet might be empty; all we know is that the empty word exists
        o = InvariantResult.lower_only(ONE)
    else:
        o = _lift(lambda x: omega_pow(omega_pow(pm(x))), bo)
    h = _lift(hstar, bh)
    if o.reason is not None:
        w = InvariantResult.unsupported(o.reason)
    elif bo.reason is None and cmp(bo.lower, _TWO) >= 0:
        w = o
        notes.append("words-width-equals-mot")
    else:
        w = InvariantResult.unsupported(
            HypothesisNotMet("words-width", "o(A) > 1").reason
        )
    return o, h, w


def _multisets_parts(e: Multisets, notes: list[str]) -> _Triple:
    base = _eval(e.arg, notes)
    bo, bh, _bw = base
    if bo.kind == "exact":
        if bo.value.is_zero:
            notes.append("multisets-over-empty-order")
            return _SINGLETON
        if bo.value == ONE:
            notes.append("multisets-over-singleton-order")
            return (
                InvariantResult.exact(OMEGA),
                InvariantResult.exact(OMEGA),
                InvariantResult.exact(ONE),
            )
    o = _lift(lambda x: omega_pow(hat(x)), bo)
    h = _lift(hstar, bh)
    if o.reason is not None:
        w = InvariantResult.unsupported(o.reason)
    elif (
        bo.kind == "exact"
        and not bo.value.is_finite
        and bo.value.is_additively_indecomposable
    ):
        w = o
        notes.append("multisets-width-equals-mot")
    elif bo.kind == "exact":
        w = InvariantResult.unsupported(
            HypothesisNotMet(
                "multisets-width", "o(A) is additively indecomposable and infinite"
            ).reason
        )
    else:
        w = InvariantResult.unsupported("needs-exact-value:multisets-width")
    return o, h, w


def _pf_parts(e: Pf, notes: list[str]) -> _Triple:
    x = e.arg
    if isinstance(x, Phi):
        rep = pf_phi_invariants(x.value)
        notes.append("family:phi-powerset")
        return rep.mot, rep.height, rep.width
    if isinstance(x, Sim):
        notes.append("family:sim-powerset")
        return _eval(eliminate_pf(Pf(_sim_desugar(x.value))), notes)
    if isinstance(x, SimExt):
        notes.append("family:sim-extended-powerset")
        desugared = CartProd(
            LexSum(_sim_desugar(x.value), Ord(ONE)), Gamma(x.copies)
        )
        base = _eval(desugared, notes)
        o, h, w = _pf_table_parts(base, notes)
        # this family attains the powerset height bound: h >= 2^a * m
        bound = mul(two_pow(x.value), Ordinal.from_nat(x.copies))
        h = InvariantResult.lower_only(bound)
        notes.append("powerset-height: family lower bound 2^a * m")
        return o, h, w
    base = _eval(x, notes)
    if base[0].kind == "exact" and base[0].value.is_zero:
        notes.append("powerset-of-empty-order")
        return _SINGLETON
    return _pf_table_parts(base, notes)


def _pf_plus_parts(e: PfPlus, notes: list[str]) -> _Triple:
    notes.append("nonempty-powerset: derived from Pf minus its bottom")
    bo, bh, bw = _eval(eliminate_pf(Pf(e.arg)), notes)
    if bo.kind == "exact" and bo.value == ONE:
        # Pf(X) is the singleton {empty set}, so X is empty and so is Pf+(X)
        return _EMPTY

    def drop_one(r: InvariantResult) -> InvariantResult:
        if r.reason is not None:
            return r
        lo = left_subtract(ONE, r.lower)
        if r.upper is None:
            return InvariantResult.lower_only(lo)
        hi = r.upper if r.finite_multiple else left_subtract(ONE, r.upper)
        return InvariantResult.interval(lo, hi, finite_multiple=r.finite_multiple)

    return drop_one(bo), drop_one(bh), bw
