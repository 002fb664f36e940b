"""Learned roadmap sampling for motion planning.

Thin Python surface over the C++ core: world generation, Halton roadmaps,
node-extraction oracles, a conditional VAE sampler and roadmap assembly.
"""

from legoplan._core import (
    CvaeModel,
    Graph,
    OracleConfig,
    Path,
    PlanningProblem,
    World,
    assemble_roadmap,
    build_halton_graph,
    corrupt_world,
    diverse_pathset,
    draw_samples,
    extract_features,
    generate_world,
    halton_points,
    is_config_free,
    is_edge_free,
    k_shortest_paths,
    lego_nodes,
    sample_cvae,
    shortest_path,
    sp_nodes,
    train_cvae,
)

__all__ = [
    "CvaeModel",
    "Graph",
    "OracleConfig",
    "Path",
    "PlanningProblem",
    "World",
    "assemble_roadmap",
    "build_halton_graph",
    "corrupt_world",
    "diverse_pathset",
    "draw_samples",
    "extract_features",
    "generate_world",
    "halton_points",
    "is_config_free",
    "is_edge_free",
    "k_shortest_paths",
    "lego_nodes",
    "sample_cvae",
    "shortest_path",
    "sp_nodes",
    "train_cvae",
]
