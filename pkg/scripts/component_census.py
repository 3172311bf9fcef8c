"""Component structure of one finite class, slot pair by slot pair.

For every slot pair (i, j): connected components of the subgraph kept
to type-(i, j) edges, against the fibers of contracting slot i into j.
For every slot i: components of the subgraph avoiding slot i, against
the blocks of the i-th eigenspace.  Ends with global connectivity.

    python scripts/component_census.py
    python scripts/component_census.py --p 2 --e 2 --sigma 0,2 --dims 1,2
"""

import argparse
from itertools import combinations

from opgraphs.graphs import LabeledGraph
from opgraphs.spectral import ClassSignature
from opgraphs.starfield import galois_field


def partition_profile(parts):
    sizes = {}
    for p in parts:
        sizes[len(p)] = sizes.get(len(p), 0) + 1
    return " + ".join(f"{n}x{s}" for s, n in sorted(sizes.items()))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=3)
    ap.add_argument("--e", type=int, default=1)
    ap.add_argument("--sigma", default="0,1,2")
    ap.add_argument("--dims", default="1,1,1")
    args = ap.parse_args()

    field = galois_field(args.p, args.e)
    sigma = tuple(field.parse_fixed(t) for t in args.sigma.split(","))
    dims = tuple(int(t) for t in args.dims.split(","))
    sig = ClassSignature(field, sigma, dims)
    graph = LabeledGraph.build(sig)
    k = len(dims)
    print(f"class on {graph.n} vertices, {len(graph.edges)} edges")

    for i, j in combinations(range(k), 2):
        comps = graph.ij_components(i, j)
        if k == 2:
            # a two-slot class has no contraction, hence no fibers
            print(f"pair ({i},{j}): components {partition_profile(comps)}; "
                  f"no fibers (two slots)")
            continue
        fibers = graph.fiber_partition(i, j)
        owner = {v: t for t, part in enumerate(fibers) for v in part}
        inside = all(len({owner[v] for v in c}) == 1 for c in comps)
        print(f"pair ({i},{j}): components {partition_profile(comps)}; "
              f"fibers {partition_profile(fibers)}; "
              f"inside={inside} equal={comps == fibers}")

    for i in range(k):
        comps = graph.avoiding_components(i)
        blocks = sorted(graph.eigenspace_blocks(i).values())
        print(f"avoid {i}:   components {partition_profile(comps)}; "
              f"blocks {partition_profile(blocks)}; "
              f"equal={sorted(comps) == blocks}")

    print(f"global:    {len(graph.components())} component(s)")


if __name__ == "__main__":
    main()
