"""
Condition (K): loops that cannot be told apart from their powers
================================================================

Condition (K) asks each vertex to lie on no loop at all, or on two loops
neither of which is an initial segment of the other.  The decision runs
on first-return paths; when only one simple return path exists, a cycle
hanging off it still rescues the vertex (detour around the cycle).
"""

from branchsys import check_condition_k, parse_graph


def show(name, doc):
    report = check_condition_k(parse_graph(doc))
    print(f"{name}: satisfied={report.satisfied}")
    for v, status in report.per_vertex.items():
        line = f"  {v}: {status}"
        if v in report.witnesses:
            a, c = report.witnesses[v]
            line += f"   witnesses {list(a)} / {list(c)}"
        print(line)


# Two parallel self-loops: two one-edge return paths, neither a prefix
# of the other -> satisfied.
show(
    "double self-loop",
    '{"vertices": ["v"], "edges": ['
    '{"id": "a", "src": "v", "dst": "v"}, {"id": "b", "src": "v", "dst": "v"}]}',
)

# A single self-loop: every return path is a power of the loop, so each
# is an initial segment of the next -> violated.
show(
    "single self-loop",
    '{"vertices": ["v"], "edges": [{"id": "a", "src": "v", "dst": "v"}]}',
)

# A plain 2-cycle fails the same way (one loop up to powers at each
# vertex), but adding a second petal rescues *every* vertex: the petal
# vertices detour through the other petal.
show(
    "two-cycle",
    '{"vertices": ["a", "b"], "edges": ['
    '{"id": "e1", "src": "a", "dst": "b"}, {"id": "e2", "src": "b", "dst": "a"}]}',
)
show(
    "figure-eight",
    '{"vertices": ["a", "b", "c"], "edges": ['
    '{"id": "e1", "src": "a", "dst": "b"}, {"id": "e2", "src": "b", "dst": "a"},'
    '{"id": "e3", "src": "a", "dst": "c"}, {"id": "e4", "src": "c", "dst": "a"}]}',
)

# Acyclic graphs satisfy the condition vacuously.
show(
    "path graph",
    '{"vertices": ["a", "b", "c"], "edges": ['
    '{"id": "e1", "src": "a", "dst": "b"}, {"id": "e2", "src": "b", "dst": "c"}]}',
)
