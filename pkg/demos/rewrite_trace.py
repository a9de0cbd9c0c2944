"""Watch the rewrite system push unions out of products and powersets.

Run with:  python3 demos/rewrite_trace.py
"""

from wqometer import normalize_elementary, parse_expr, print_expr


def trace(src: str, strategy: str = "innermost") -> None:
    e = parse_expr(src)
    nf, tr = normalize_elementary(e, strategy)
    print(f"  {src}   [{strategy}]")
    for i, s in enumerate(tr.steps, 1):
        where = ".".join(map(str, s.path)) or "root"
        print(f"    {i}. {s.rule} at {where}")
        print(f"       {s.before}")
        print(f"    -> {s.after}")
    print(f"  normal form: {print_expr(nf)}\n")


def main() -> None:
    print("A powerset over a union splits into a product of powersets,")
    print("then each powerset of an ordinal collapses (1 + a = a):")
    trace("Pf(o(w^w)|o(w^(w^2)))")

    print("Products distribute over unions, pulling every union to the")
    print("top of the expression:")
    trace("o(w^w)*(o(w^w)|o(w^(w^2)))")

    print("Both reduction strategies stop at the same normal form:")
    src = "M((o(w^w)|o(w^w))*o(w^(w^2)))"
    e = parse_expr(src)
    for strategy in ("innermost", "outermost"):
        nf, tr = normalize_elementary(e, strategy)
        print(f"  {strategy:>9}: {len(tr.steps)} steps -> {print_expr(nf)}")
    print()

    print("Word arguments are opaque to the distribution rules, so this")
    print("union stays put and the expression is already normal:")
    trace("Pf((o(w^w)|o(w^(w^2)))^<w)")


if __name__ == "__main__":
    main()
