"""Colorings and nowhere-zero flows of a four-edge hypergraph, counted by brute
force and by the polymatroid formulas."""
from groupmatroid.groups import construct_group
from groupmatroid.hypergraph import (
    chromatic_value,
    components,
    count_colorings,
    count_nzflows,
    example_hypergraph,
    flow_value,
    hyper_polymatroid,
    star_graph,
)

H = example_hypergraph()
print("edges:", H.edge_names())
print("star-graph matrix:\n", star_graph(H).matrix)
P = hyper_polymatroid(H)
print("components:", components(H), " rank of E:", round(P.rank(P.full)))

print("\n λ  brute force  formula")
for lam in range(2, 7):
    print(f"{lam:2}  {count_colorings(H, lam):11}  {chromatic_value(H, lam):7}")

print("\ngroup        brute force  formula")
for spec in ("cyclic:2", "cyclic:3", "abelian:2x2", "cyclic:6"):
    G = construct_group(spec)
    print(f"{spec:12} {count_nzflows(H, G):11}  {flow_value(H, G):7}")
