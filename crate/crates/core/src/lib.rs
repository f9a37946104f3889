//! Persistence diagrams of planar point sets, kernel embeddings of diagrams
//! into a reproducing-kernel Hilbert space, and the statistics built on top:
//! bootstrap uniform confidence bands for the expected PWK vector and kernel
//! two-sample tests between distributions of diagrams.
//!
//! The crate is organized along the pipeline:
//!
//! * [`point_processes`] draws the random point sets (perturbed lattices,
//!   Poisson, Matérn hard-core thinnings);
//! * [`geometry`] computes exact ball-model persistence via the alpha complex
//!   plus the bottleneck and Hausdorff distances of the stability theorems;
//! * [`vectorization`] embeds diagrams in the RKHS (PWK vectors) and provides
//!   the competitor diagram kernels (landscape, scale-space, sliced
//!   Wasserstein) with the median parameter heuristics;
//! * [`inference`] runs the bootstrap band and the MMD two-sample machinery.
//!
//! Everything randomized is seeded through [`rng::substream`] and is
//! bit-reproducible regardless of thread count.

pub mod error;
pub mod geometry;
pub mod inference;
pub mod io;
pub mod point_processes;
pub mod rng;
pub mod vectorization;

pub use error::{Error, Result};
pub use geometry::{
    alpha_filtration, alpha_persistence, bottleneck_distance, delaunay, hausdorff_distance,
    persistence, EssentialClasses, FilteredComplex, PersistenceDiagram, PersistencePair,
    PointSet, Triangulation,
};
pub use inference::{
    bootstrap_band, error_rate, mmd_u, permutation_null_quantile, spectral_null_quantile,
    subsample_rejection_rate, ConfidenceBand, EvaluationGrid, NullMethod, TwoSampleReport,
};
pub use point_processes::{
    matern_process, matern_thin, perturbed_lattice, poisson_process, LatticeNoise, LatticeSpec,
    MaternSpec, MaternVariant,
};
pub use vectorization::{
    diagram_gram, landscape, landscape_kernel, median_heuristics, plane_kernel, pssk,
    pwk_diagram_kernel, pwk_distance_median, pwk_vector, rkhs_inner, rkhs_mean,
    sliced_wasserstein, sw_kernel, upssk, weight, DiagramGram, DiagramKernel, KernelParams,
    KernelSpec, MedianParams, RkhsExpansion, WeightFamily, WeightSpec, DEFAULT_P_ARC,
    DEFAULT_SW_DIRECTIONS,
};
