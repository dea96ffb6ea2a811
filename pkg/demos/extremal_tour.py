"""A guided tour: fixtures, home-base recognition and the S8 counterexample.

Run with ``python3 demos/extremal_tour.py``.
"""

from ryser import (
    hom_connectivity_of_line,
    nu_hypergraph,
    recognize_home_base,
    tau_hypergraph,
)
from ryser.gen import Blueprint, RSpec, fixture, from_blueprint


def describe(name, H):
    nu, tau = nu_hypergraph(H).size, tau_hypergraph(H).size
    P = recognize_home_base(H)
    verdict = "home-base" if P is not None else "not home-base"
    print(f"{name:11s} nu={nu} tau={tau} extremal={tau == 2 * nu}  {verdict}")
    if P is not None:
        print(f"{'':11s} F blocks {len(P.F)}, R blocks {len(P.R)}, W vertices {len(P.W)}")


def main():
    print("== fixtures")
    for name in ("FANO", "FANO_MINUS", "MIN_R", "UNMATCH", "MIXED3", "S8"):
        describe(name, fixture(name).hypergraph)

    print("\n== S8: not extremal, and its matching complex is disconnected")
    rep = hom_connectivity_of_line(fixture("S8").hypergraph)
    print(f"reduced Betti numbers {rep.betti}, hom_conn {rep.describe()}")

    print("\n== building a home-base instance block by block")
    b = Blueprint(
        fano=((1, 1, 2, 1),),
        r_blocks=(RSpec(((1,), (1, 2), (1,)), (("R1", "F1.1", "R1"),)), RSpec(((2,), (2,), (2,)))),
    )
    H, P = from_blueprint(b)
    print(f"{H.num_edges} edges on classes of sizes {H.sizes}")
    describe("blueprint", H)


if __name__ == "__main__":
    main()
