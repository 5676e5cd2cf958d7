//! Heron triangle and rational-angle rhombus pairs with a common area and a
//! common perimeter.
//!
//! - [`exact`]: rational arithmetic and perfect-square tests.
//! - [`shapes`]: triangles, rhombi, pairs, scaling.
//! - [`family`]: the closed-form infinite family built by Fermat's tangent method.
//! - [`isosceles`]: why no isosceles triangle pairs with a rhombus.
//! - [`oracle`]: exhaustive search over integer triangles.
//! - [`record`]: flat record serialization and verification.
#![allow(clippy::result_large_err)]

pub mod exact;
pub mod family;
pub mod isosceles;
pub mod oracle;
pub mod record;
pub mod shapes;

pub use exact::{ArithmeticError, Rational};
pub use family::{pair_from_u, FamilyParameter};
pub use shapes::{minimal_integral_scale, scale_pair, Pair, Provenance, Rhombus, Triangle};

/// Runs `f` on a dedicated rayon pool of `threads` workers, or on the global
/// pool when `threads` is `None`.
pub fn run_with_threads<R: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> R + Send,
) -> Result<R, rayon::ThreadPoolBuildError> {
    match threads {
        None => Ok(f()),
        Some(n) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()?
            .install(f)),
    }
}
