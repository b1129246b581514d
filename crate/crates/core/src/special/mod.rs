//! Special functions evaluated on the real line.

pub mod appell;
pub mod confluent;
pub mod expint;
pub mod gamma;
pub mod hermite;
pub mod hyp2f1;
pub mod hyp3f2;
pub mod mills;

pub use appell::{appell_f1, appell_f1_complement};
pub use confluent::{kummer_phi, tricomi_psi, tricomi_psi_scaled};
pub use expint::{expint_e1, expint_e1_scaled, macdonald_k0, macdonald_k0_scaled};
pub use gamma::{beta_fn, cos_pi, gamma, gamma_ln, gamma_p, ln_beta, rgamma, sin_pi};
pub use hermite::{hermite_h_neg, hermite_h_neg_scaled, parabolic_d};
pub use hyp2f1::{gauss_2f1, gauss_2f1_complement, gauss_sum};
pub use hyp3f2::{hyp3f2, hyp3f2_direct, hyp_3f2, HypArgs};
pub use mills::{mills_ratio, mills_ratio_deriv, mills_ratio_derivs};
