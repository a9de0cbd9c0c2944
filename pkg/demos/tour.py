"""A guided tour: invariants of increasingly spicy well-quasi-orders.

Run with:  python3 demos/tour.py
"""

from wqometer import invariants, parse_expr, pf_bounds, weak_mot


def show(src: str) -> None:
    rep = invariants(parse_expr(src))
    print(f"  {src}")
    print(f"    o = {rep.mot}   h = {rep.height}   w = {rep.width}")
    if rep.weak_mot is not None:
        print(f"    weakened o = {rep.weak_mot}")
    for note in rep.notes:
        print(f"    ({note})")
    print()


def main() -> None:
    print("Finite orders are computed exactly (cross-check any of these")
    print("with `wqometer check <expr>`):")
    show("G(4)")
    show("o(2)|G(3)")

    print("Two classic infinite examples with the same o and h but")
    print("different powersets:")
    show("(w+w)|(w+w)")
    show("Pf((w+w)|(w+w))")
    show("(w|w)++(w|w)")
    show("Pf((w|w)++(w|w))")

    print("Elementary expressions evaluate exactly through the rewrite")
    print("system; note the weakened maximal order type on the report:")
    show("Pf(M(o(w^w)|o(w^w)))")
    show("(w^w*w^(w^2))^<w")

    print("Outside every exact rule the engine degrades honestly to")
    print("intervals or lower bounds instead of guessing; the interval")
    print("marked `* m, m finite` allows an unknown finite multiplier:")
    show("Pf(G(4))")
    show("o(3)*o(4)")

    print("Symbolic families come with their own closed forms:")
    show("Phi(w^2+1)")
    show("Pf(Phi(w^2+1))")
    show("Sim(w^(w^2))")

    print("The generic powerset bound table can be queried directly, and")
    print("is often beaten by structure the engine recognises -- here it")
    print("knows Pf of a chain is again a chain:")
    rep = pf_bounds(parse_expr("o(w+1)"))
    print(f"  bound table for Pf(o(w+1)): o = {rep.mot}   h = {rep.height}")
    show("Pf(o(w+1))")

    print("The weakened maximal order type drives the height of powersets:")
    e = parse_expr("w^w^<w")
    print(f"  weak-o({'w^w^<w'}) = {weak_mot(e)}")
    print(f"  h(Pf(w^w^<w))  = {invariants(parse_expr('Pf(w^w^<w)')).height}")


if __name__ == "__main__":
    main()
