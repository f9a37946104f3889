//! Kernel embeddings of persistence diagrams: plane kernels, weight
//! functions, PWK expansions, and the competitor diagram representations
//! (persistence landscape, scale-space kernels, sliced Wasserstein).

mod diagram_kernels;
mod expansion;
mod heuristics;
mod kernel;
mod landscape;
mod weight;

pub use diagram_kernels::{
    diagram_gram, pssk, pwk_diagram_kernel, sliced_wasserstein, sw_kernel, upssk, DiagramGram,
    DiagramKernel, KernelParams, DEFAULT_SW_DIRECTIONS,
};
pub use expansion::{pwk_vector, rkhs_inner, rkhs_mean, RkhsExpansion};
pub use heuristics::{median_heuristics, pwk_distance_median, MedianParams, WeightFamily};
pub use kernel::{plane_kernel, KernelFamily, KernelSpec};
pub use landscape::{landscape, landscape_kernel, landscape_kernel_profiles, LandscapeProfiles};
pub use weight::{weight, WeightSpec, DEFAULT_P_ARC};
