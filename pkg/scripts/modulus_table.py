"""Annulus moduli of A-type chains next to two local-algebra invariants of XY = t^n.

Columns: chain length m, classified fiber, 1 + Tjurina number of XY - t^(m+1),
and the least i > 0 where dim M^i/M^(i+1) falls below the polynomial-ring value.
The last column is 2 for every m >= 1, which is why the modulus is read from the
Tjurina number instead.
"""

from nalink.dualgraph import DualGraph, Vertex
from nalink.local_algebra import a_type_equation, a_type_modulus, first_graded_drop
from nalink.space import VertexSet, classify


def a_chain_graph(m: int) -> DualGraph:
    verts = [Vertex("A1", "Boundary", 1, 0, False), Vertex("A2", "Boundary", 1, 0, False)]
    verts += [Vertex(f"C{i}", "Exceptional", 1, -2, True) for i in range(1, m + 1)]
    edges = [("A1", "C1"), (f"C{m}", "A2")] + [(f"C{i}", f"C{i + 1}") for i in range(1, m)]
    return DualGraph.build(verts, edges, ("A1", "A2"))


def main():
    print(f"{'m':>3} {'fiber':>16} {'1+tjurina':>10} {'graded drop':>12}")
    for m in range(0, 8):
        if m == 0:
            fiber = "StandardAnnulus"
        else:
            g = a_chain_graph(m)
            (_, cls), = classify(VertexSet.make(g, ["A1", "A2"]))
            fiber = str(cls)
        n = m + 1
        print(f"{m:>3} {fiber:>16} {a_type_modulus(n):>10} {first_graded_drop([a_type_equation(n)], 3):>12}")


if __name__ == "__main__":
    main()
