//! Exact symbolic reduction and numerical verification of the Fermi Golden
//! Rule constant Γ for the pure-power NLS at exponent 3.
//!
//! The constant arises as a sum of inner products Γ = γ₁ + γ₂ + γ₃ + γ₄
//! whose integrands are built from sech, tanh, x, log∘sech, the convolution
//! kernel T = e^{−√2|·|} ∗ sech² and a single cos/sin factor. This crate
//!
//! * expands those inner products exactly over Q(√2)[log 2] into ten
//!   families of basis integrals ([`funcalg`], [`exactfield`]),
//! * rewrites the result to the core basis {p₁, q₁, a₁, r₁, s₁} with
//!   integration-by-parts recurrences and proves the cancellation that
//!   leaves Γ = p₁/√2 = π/(√2·cosh(π/2)) ([`basisreduce`]),
//! * cross-checks every intermediate identity against an adaptive
//!   quadrature oracle that never touches the symbolic path
//!   ([`quadrature`]), and
//! * compares each step against a fixture table of expected coefficient
//!   combinations, producing machine-readable reports ([`pipeline`]).

pub mod basisreduce;
pub mod exactfield;
pub mod funcalg;
pub mod pipeline;
pub mod parse;
pub mod quadrature;
