"""Rewrite system for elementary expressions, plus powerset elimination.

The elementary fragment (union, product, words, multisets, powerset over
multiplicatively indecomposable ordinal leaves >= w^w) is confluent and
terminating under the rules below; `normalize_elementary` reduces to the
unique normal form, in which no union sits under a product, multiset or
powerset constructor and no powerset wraps a bare ordinal.

`eliminate_pf` is a separate bottom-up pass used by the invariant engine:
it pushes every finite-powerset constructor down through unions and
lexicographic sums until it either disappears into an ordinal leaf or gets
stuck on a constructor with no elimination rule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnsupportedComputation
from .expr import (
    CartProd,
    DisjUnion,
    LexProd,
    LexSum,
    Multisets,
    Ord,
    Pf,
    PfPlus,
    WqoExpr,
    expr_size,
    is_elementary,
    print_expr,
)
from .ordinal import ONE, add, mul

__all__ = [
    "RewriteStep",
    "RewriteTrace",
    "step",
    "is_normal",
    "normalize_elementary",
    "eliminate_pf",
]


@dataclass(frozen=True)
class RewriteStep:
    rule: str
    path: tuple[int, ...]
    before: str
    after: str

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "path": list(self.path),
            "before": self.before,
            "after": self.after,
        }


@dataclass
class RewriteTrace:
    steps: list[RewriteStep]

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    def __len__(self):
        return len(self.steps)


# ---------------------------------------------------------------------------
# the elementary rules
# ---------------------------------------------------------------------------


def _raw_match(e: WqoExpr):
    """Return (rule name, reduct) when a rule pattern matches the root."""
    if isinstance(e, Pf) and isinstance(e.arg, Ord):
        # over an additively indecomposable infinite ordinal, 1 + a = a
        return "powerset-of-ordinal", e.arg
    if isinstance(e, CartProd) and isinstance(e.left, DisjUnion):
        u = e.left
        return (
            "product-over-union-left",
            DisjUnion(CartProd(u.left, e.right), CartProd(u.right, e.right)),
        )
    if isinstance(e, CartProd) and isinstance(e.right, DisjUnion):
        u = e.right
        return (
            "product-over-union-right",
            DisjUnion(CartProd(e.left, u.left), CartProd(e.left, u.right)),
        )
    if isinstance(e, Multisets) and isinstance(e.arg, DisjUnion):
        u = e.arg
        return "multisets-over-union", CartProd(Multisets(u.left), Multisets(u.right))
    if isinstance(e, Pf) and isinstance(e.arg, DisjUnion):
        u = e.arg
        return "powerset-over-union", CartProd(Pf(u.left), Pf(u.right))
    return None


def _pattern_free(e: WqoExpr) -> bool:
    if _raw_match(e) is not None:
        return False
    return all(_pattern_free(k) for k in e.children())


def _match_elementary(e: WqoExpr):
    """A rule applies at the root only once every child subtree is normal.

    The union-splitting rules duplicate or reorder subterms, so firing one
    on a child that can still rewrite would make the result depend on the
    traversal order.  Guarding on child normality keeps the redex content
    identical under any strategy, which is what makes innermost and
    outermost reductions land on the same normal form.  A term admits no
    guarded step iff no rule pattern occurs anywhere in it, so the set of
    normal forms is unchanged by the guard.
    """
    m = _raw_match(e)
    if m is None:
        return None
    if not all(_pattern_free(k) for k in e.children()):
        return None
    return m


def step(e: WqoExpr, strategy: str = "innermost"):
    """One rewrite step under the given strategy, or None if `e` is normal.

    Returns (rule name, path from the root, new expression).  `innermost`
    picks the leftmost-innermost redex, `outermost` the leftmost-outermost.
    """
    if strategy not in ("innermost", "outermost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    return _step_at(e, strategy)


def _step_at(e: WqoExpr, strategy: str):
    if strategy == "outermost":
        m = _match_elementary(e)
        if m is not None:
            return m[0], (), m[1]
    kids = e.children()
    for i, k in enumerate(kids):
        got = _step_at(k, strategy)
        if got is not None:
            rule, path, nk = got
            new_kids = list(kids)
            new_kids[i] = nk
            return rule, (i,) + path, e.with_children(tuple(new_kids))
    if strategy == "innermost":
        m = _match_elementary(e)
        if m is not None:
            return m[0], (), m[1]
    return None


def is_normal(e: WqoExpr) -> bool:
    return _step_at(e, "outermost") is None


def normalize_elementary(e: WqoExpr, strategy: str = "innermost"):
    """Reduce an elementary expression to normal form.

    Returns (normal form, RewriteTrace).  The fuel bound 4**size is a
    safety net only; the system terminates well before it.
    """
    if not is_elementary(e):
        raise UnsupportedComputation(
            "normalize-requires-elementary", print_expr(e)
        )
    fuel = 4 ** expr_size(e)
    steps: list[RewriteStep] = []
    cur = e
    while True:
        got = _step_at(cur, strategy)
        if got is None:
            return cur, RewriteTrace(steps)
        rule, path, new = got
        steps.append(RewriteStep(rule, path, print_expr(cur), print_expr(new)))
        cur = new
        if len(steps) > fuel:  # pragma: no cover
            raise RuntimeError(f"rewrite fuel exhausted on {print_expr(e)}")


# ---------------------------------------------------------------------------
# powerset elimination
# ---------------------------------------------------------------------------


def eliminate_pf(e: WqoExpr) -> WqoExpr:
    """Push Pf down through unions and lexicographic sums.

    Rules: Pf(a) = 1 + a over an ordinal, Pf(X | Y) = Pf(X) * Pf(Y),
    Pf(X ++ Y) = Pf(X) ++ Pf+(Y), and for the empty-set-less variant
    Pf+(a) = a and Pf+(X ++ Y) = Pf+(X) ++ Pf+(Y).  Sums and lexicographic
    products of raw ordinals fuse into a single ordinal leaf along the way.
    """
    cur = e
    while True:
        new, changed = _elim_pass(cur)
        if not changed:
            return new
        cur = new


def _elim_pass(e: WqoExpr):
    kids = e.children()
    changed = False
    if kids:
        new_kids = []
        for k in kids:
            nk, ch = _elim_pass(k)
            changed = changed or ch
            new_kids.append(nk)
        if changed:
            e = e.with_children(tuple(new_kids))
    while True:
        r = _elim_local(e)
        if r is None:
            return e, changed
        e = r
        changed = True


def _elim_local(e: WqoExpr):
    if isinstance(e, Pf):
        x = e.arg
        if isinstance(x, Ord):
            return Ord(add(ONE, x.value))
        if isinstance(x, DisjUnion):
            return CartProd(Pf(x.left), Pf(x.right))
        if isinstance(x, LexSum):
            return LexSum(Pf(x.left), PfPlus(x.right))
    if isinstance(e, PfPlus):
        x = e.arg
        if isinstance(x, Ord):
            return x
        if isinstance(x, LexSum):
            return LexSum(PfPlus(x.left), PfPlus(x.right))
    if isinstance(e, LexSum) and isinstance(e.left, Ord) and isinstance(e.right, Ord):
        return Ord(add(e.left.value, e.right.value))
    if isinstance(e, LexProd) and isinstance(e.left, Ord) and isinstance(e.right, Ord):
        return Ord(mul(e.left.value, e.right.value))
    return None
