import random

from crown.graphs import graph_new


def random_graph(rng: random.Random, max_vertices=6, min_vertices=2, p_edge=0.4):
    """A random small graph with integer vertex labels."""
    nv = rng.randint(min_vertices, max_vertices)
    vertices = list(range(nv))
    edges = [
        (a, b)
        for a in range(nv)
        for b in range(a + 1, nv)
        if rng.random() < p_edge
    ]
    return graph_new(vertices, edges)
