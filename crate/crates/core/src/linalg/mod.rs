//! Dense symmetric eigensolver, PSD test, and the one-variable κ kernel.

mod eigh;
mod kappa;
mod psd;

pub use eigh::{eigh, EigenDecomposition};
pub use kappa::{min_kappa, KappaResult, KappaStatus};
pub use psd::{is_psd, PsdCheck, TolPolicy};
