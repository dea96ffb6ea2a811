"""Links of extremal instances: decompose a link into C4/P4 pieces and rebuild.

Run with ``python3 demos/link_round_trip.py``.
"""

from ryser import link_graph
from ryser.exact import max_matching_bipartite, nu_hypergraph, tau_hypergraph
from ryser.formats import serialize
from ryser.gen import from_cp_decomposition, random_cp_graph
from ryser.homebase import verify_home_base
from ryser.linkstruct import find_cp_decomposition
from ryser.topo import hom_connectivity_of_line


def main():
    G, planted = random_cp_graph(seed=3, n_c4=1, n_p4=2, extra=3)
    print("bipartite graph:")
    print(serialize(G), end="")
    print(f"matching number {max_matching_bipartite(G).size}")
    print(f"matching complex connectivity {hom_connectivity_of_line(G).describe()}")

    D = find_cp_decomposition(G)
    print("\nCP-decomposition found by search:")
    print(serialize(D, G.sizes), end="")
    print(f"(the generator planted {len(planted.pieces)} pieces)")

    H, P = from_cp_decomposition(G, D)
    nu, tau = nu_hypergraph(H).size, tau_hypergraph(H).size
    print(f"\nrebuilt hypergraph: {H.num_edges} edges, nu={nu}, tau={tau}")
    print(f"partition verifies as home-base: {bool(verify_home_base(H, P))}")
    same = sorted(link_graph(H, 3).edges) == sorted(G.edges)
    print(f"link over class 3 equals the input graph: {same}")


if __name__ == "__main__":
    main()
