"""Curvilinear triangulation and nerve/spoke decomposition of image shapes."""

from ._deltashape import (
    BSplineCurve,
    Cell,
    Complex,
    ComplexKind,
    CurvedMesh,
    DeltaShapeError,
    GrayImage,
    Keypoint,
    KnotVector,
    Mesh,
    bspline_basis,
    build_complex,
    clamped_uniform_knots,
    complex_from_json,
    curvilinear,
    delaunay,
    delaunay_bruteforce,
    detect_keypoints,
    graded_strong_near,
    identify_vertices,
    lodato_near,
    make_clamped_curve,
    max_nerve_cluster,
    max_nerve_nuclei,
    mesh_complex,
    nerve,
    object_space,
    run_pipeline,
    sew,
    spoke_chain,
    spoke_levels,
    strong_near,
    theorem_suite,
)

__all__ = [
    "BSplineCurve",
    "Cell",
    "Complex",
    "ComplexKind",
    "CurvedMesh",
    "DeltaShapeError",
    "GrayImage",
    "Keypoint",
    "KnotVector",
    "Mesh",
    "bspline_basis",
    "build_complex",
    "clamped_uniform_knots",
    "complex_from_json",
    "curvilinear",
    "delaunay",
    "delaunay_bruteforce",
    "detect_keypoints",
    "graded_strong_near",
    "identify_vertices",
    "lodato_near",
    "make_clamped_curve",
    "max_nerve_cluster",
    "max_nerve_nuclei",
    "mesh_complex",
    "nerve",
    "object_space",
    "run_pipeline",
    "sew",
    "spoke_chain",
    "spoke_levels",
    "strong_near",
    "theorem_suite",
]

__version__ = "0.1.0"
