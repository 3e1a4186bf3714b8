"""
Building a branching system from a directed graph
==================================================

A branching system is the measure-theoretic shadow of a finite directed
graph on the real line: every edge e owns an interval R_e, every vertex
v owns an interval set D_v, and every edge carries an affine bijection
f_e from the interval of its range vertex onto R_e.
"""

from branchsys import build_default, parse_graph, save_system, validate_system

# The running example: three vertices, one edge v1 -> v2, one edge
# v1 -> v3, and two parallel self-loops at v3.
graph = parse_graph(
    """
    {
      "vertices": ["v1", "v2", "v3"],
      "edges": [
        {"id": "e1", "src": "v1", "dst": "v2"},
        {"id": "e2", "src": "v1", "dst": "v3"},
        {"id": "e3", "src": "v3", "dst": "v3"},
        {"id": "e4", "src": "v3", "dst": "v3"}
      ]
    }
    """
)

# The default layout is fully deterministic: edges sorted by id receive
# R = [0,1), [1,2), ...; sinks receive negative unit intervals; a regular
# vertex collects the intervals of its outgoing edges.
system = build_default(graph)

print("total space X =", system.X)
for v in graph.vertices:
    print(f"  D_{v} =", system.D[v])
for e in graph.edges:
    print(f"  R_{e.id} =", system.R[e.id], "   f =", system.f[e.id])

# The sink v2 sits on [-1, 0); v1 owns [0, 2) = R_e1 u R_e2; the two
# self-loops tile D_v3 = [2, 4).  Each self-loop map halves: f(x) = x/2 + c.

# Validation decides the branching-system axioms *exactly* (rational
# interval arithmetic, no tolerances).  The default build is always valid.
violations = validate_system(system)
print("violations:", violations if violations else "none")

# Systems serialize to JSON with exact "p/q" endpoints; the file round
# trips bit-for-bit and feeds every other tool in the package.
print(save_system(system)[:120], "...")
