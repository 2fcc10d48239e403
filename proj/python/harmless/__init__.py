"""Harmless Set toolkit: exact solvers, kernelization and hardness gadgets."""

import json

from ._harmless import (
    Graph,
    Instance,
    ParseError,
    ResourceLimit,
    SolveResult,
    __version__,
    brute_force_max,
    cap_thresholds,
    compute_core,
    construct_clique_solution,
    count_profiles,
    greedy_vertex_cover,
    is_2_spider_forest,
    is_harmless,
    load_instance,
    projection_closure,
    r_projection,
    reduction_target_size,
    residual_budget,
    vc_solve,
    x_avoiding_distance,
)
from . import _harmless


def domination_scattered(graph, x, r):
    return json.loads(_harmless._domination_scattered(graph, list(x), r))


def build_waterlily(graph, a, radius=2, depth=1, target=1, c_close=4, s_max=4):
    """Returns {"waterlily": {...} or None, "report": {...}}."""
    return json.loads(_harmless._build_waterlily(graph, list(a), radius, depth, target, c_close, s_max))


def kernelize(instance, p=None, plain=False):
    """Returns {"decision", "report", "kernel"}; the kernel is a structured instance document."""
    return json.loads(_harmless._kernelize(instance, p, plain))


def build_reduction(k, n, edges):
    """Edges are (colour_a, index_a, colour_b, index_b), 0-based. Returns (H, roles)."""
    h, roles = _harmless._build_reduction(k, n, list(edges))
    return h, json.loads(roles)


def verify_reduction(k, n, edges, cap=64):
    return json.loads(_harmless._verify_reduction(k, n, list(edges), cap))


__all__ = [
    "Graph",
    "Instance",
    "ParseError",
    "ResourceLimit",
    "SolveResult",
    "__version__",
    "brute_force_max",
    "build_reduction",
    "build_waterlily",
    "cap_thresholds",
    "compute_core",
    "construct_clique_solution",
    "count_profiles",
    "domination_scattered",
    "greedy_vertex_cover",
    "is_2_spider_forest",
    "is_harmless",
    "kernelize",
    "load_instance",
    "projection_closure",
    "r_projection",
    "reduction_target_size",
    "residual_budget",
    "vc_solve",
    "verify_reduction",
    "x_avoiding_distance",
]
