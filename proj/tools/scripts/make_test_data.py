"""Regenerates the graph6 fixtures in tests/data with networkx as the
independent encoder."""

import json
import random
import sys
from pathlib import Path

import networkx as nx

out = Path(sys.argv[1] if len(sys.argv) > 1 else "tests/data")


def g6(g):
    return nx.to_graph6_bytes(g, header=False).decode().strip()


family = [
    g
    for g in nx.graph_atlas_g()
    if 0 < g.number_of_nodes() <= 6
    and g.number_of_edges() == g.number_of_nodes() + 1
    and nx.is_connected(g)
    and min(d for _, d in g.degree()) >= 2
]
(out / "falsify_family.g6").write_text("".join(g6(g) + "\n" for g in family))

rng = random.Random(20240611)
cases = []
sizes = [(rng.randint(1, 20), 0.6) for _ in range(80)] + [(rng.randint(60, 110), 0.08) for _ in range(20)]
for n, pmax in sizes:
    g = nx.gnp_random_graph(n, rng.uniform(0.02, pmax), seed=rng.randrange(1 << 30))
    cases.append({"graph6": g6(g), "n": n, "edges": sorted([min(u, v), max(u, v)] for u, v in g.edges())})
(out / "graph6_oracle.json").write_text(json.dumps(cases) + "\n")
print(len(family), "family graphs,", len(cases), "oracle graphs")
