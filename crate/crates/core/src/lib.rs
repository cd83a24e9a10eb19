//! Abelian extensions with constant local degree.
//!
//! For a base field `K` (the rationals or an imaginary quadratic field) and a
//! prime power `n = ell^r`, this crate builds an abelian extension `L/K` of
//! exponent `n` whose local degree is exactly `n` at every finite prime up to
//! a chosen norm bound (and `2` at the real place of `Q` when `ell = 2`). The
//! extension is a composite of a cyclotomic seed field and cyclic pieces cut
//! out of ray class fields of prime conductor; it is never written down as a
//! polynomial. All splitting information is computed through power residues
//! in finite fields.
//!
//! The result is an [`ExtensionCertificate`]
//! that the [`verifier`] re-checks from its serialized form alone. Constant
//! local degree `n` means `L` splits every Brauer class of order dividing
//! `n`; for `n = 2` over `Q` the verifier checks this against quaternion
//! algebras directly.
//!
//! Module map:
//! - [`arith`]: modular arithmetic, primality, factoring, `F_p` / `F_{p^2}`.
//! - [`quadfield`]: ideals, binary quadratic forms, class groups.
//! - [`classfield`]: conductor admissibility, the splitting map, Frobenius
//!   orders in the seed field and the ray pieces, the prime search.
//! - [`constructor`]: the greedy construction and the composite-`n` reduction.
//! - [`verifier`]: certificate re-verification, Hilbert symbols.
//! - [`cli`]: the `locdeg` command line.

pub mod arith;
pub mod certificate;
pub mod classfield;
pub mod cli;
pub mod constructor;
pub mod error;
pub mod quadfield;
pub mod verifier;

pub use certificate::{CertificateFile, CompositeCertificate, ExtensionCertificate};
pub use constructor::{compose_for_n, construct, ConstructConfig};
pub use error::{Error, Result};
pub use quadfield::BaseField;
