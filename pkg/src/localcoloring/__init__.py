"""LOCAL-model graph coloring simulator and algorithm library."""
from .kernels import BACKEND
from .graph import (Graph, EdgeLabeledGraph, RootedBall, GrowthBound, gen_graph,
                    power, line_graph, ball, girth, check_growth, union_labeled,
                    read_graph, write_graph)

__version__ = "0.1.0"

__all__ = ["BACKEND", "Graph", "EdgeLabeledGraph", "RootedBall", "GrowthBound", "gen_graph",
           "power", "line_graph", "ball", "girth", "check_growth", "union_labeled",
           "read_graph", "write_graph"]
