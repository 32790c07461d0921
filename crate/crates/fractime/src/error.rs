use thiserror::Error;

/// Errors surfaced by the numerical layers.
///
/// The CLI maps these onto its exit-code contract: config problems exit 2,
/// tolerance failures exit 1 and method failures (notably
/// [`Error::InversionDisagreement`]) exit 3.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A Lévy density failed the integrability probe near zero.
    #[error("integrability check failed: {0}")]
    Integrability(String),

    /// The Lévy tail is not integrable at the origin, so the convolution
    /// derivative integral diverges for smooth inputs.
    #[error("Lévy tail not integrable at 0: {0}")]
    NonIntegrableTail(String),

    /// The two Laplace-inversion methods disagree beyond tolerance.
    #[error(
        "inversion methods disagree at t={t}: contour={contour:.12e}, accelerated-real={real:.12e}"
    )]
    InversionDisagreement { t: f64, contour: f64, real: f64 },

    /// The transform could not be evaluated where the method requested it.
    #[error("transform evaluation failed: {0}")]
    TransformEvaluation(String),

    /// A truncation certificate could not be met.
    #[error("truncation certificate failed: {0}")]
    Truncation(String),

    /// A quadrature routine did not converge within its budget.
    #[error("quadrature failed to converge: {0}")]
    QuadratureNonConvergence(String),

    /// Exponential-tilting rejection sampler exceeded its iteration guard.
    #[error("rejection sampler exceeded {max_iters} iterations (tilt too extreme)")]
    RejectionGuard { max_iters: usize },

    /// A cumulative intensity is not a valid time change for arrival times.
    #[error("intensity precondition violated: {0}")]
    IntensityPrecondition(String),

    /// Goodness-of-fit binning left no usable cells.
    #[error("degenerate binning: {0}")]
    DegenerateBins(String),
}

pub type Result<T> = std::result::Result<T, Error>;
