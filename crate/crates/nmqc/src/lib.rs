//! Synthesis, feasibility and Bell-bound analysis for non-adaptive
//! measurement-based computation with linear side-processing.
//!
//! The crate is organized around exact arithmetic: angles are dyadic
//! multiples of pi, spectra and bounds are big rationals, and mod-2
//! feasibility is decided over integer lattices. Floating point only
//! appears at the optimizer and simulation surfaces.

pub mod bitstring;
pub mod boolfn;
pub mod bounds;
pub mod dyadic;
pub mod error;
pub mod families;
pub mod gf2;
pub mod lattice;
pub mod numfmt;
pub mod sim;
pub mod synth;

pub use bitstring::BitString;
pub use boolfn::{parse_anf, AnfPolynomial, BooleanFunction, ParityDecomposition, WalshSpectrum};
pub use bounds::{
    classical_bound, classical_bound_bruteforce, functional_from_game, game_from_functional,
    quantum_bound, BellFunctional, BoundsReport, PriorDistribution, QuantumOptions,
};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use families::{
    closed_form_bounds, make_family, verify_suite, ClosedFormBounds, FamilyKind, FamilySpec,
    Scope, SuiteConfig, SuiteReport,
};
pub use gf2::Gf2Matrix;
pub use sim::{
    ghz_parity_expectation, outcome_distribution, sample_run, statevector_distribution,
    success_probability, success_probability_statevector, GhzResource, MeasurementSetting,
    NsBoxResource, Resource,
};
pub use synth::{
    alternating_sum_certificate, apply_equivalence, canonicalize_p, decide_feasibility,
    minimal_sites_search, synthesize_protocol, verify_deterministic, Certificate,
    FeasibilityVerdict, Protocol, SearchOptions, SearchOutcome,
};
