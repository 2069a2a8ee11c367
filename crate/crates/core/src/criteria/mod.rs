//! Inclusion-level criteria and the theorem verifiers built on them.

mod appendix;
mod inclusion;
mod theorems;

pub use appendix::{
    eta_theta, random_subgroupoid, verify_eta_positivity, verify_open_subgroupoid_isometry, EtaReport, IsometryReport,
    PositiveDefiniteFunction,
};
pub use inclusion::{Inclusion, EXHAUSTIVE_BLOCKS};
pub use theorems::{
    augmentation_certificate, verify_aug_ideal, verify_central_norm_ideal, verify_reg_simple, verify_simple_dom,
    verify_simplicity_theorems, AugCertificate, AugReport, CentralNormReport, RegSimpleReport, SimpleDomReport,
    SimplicityReport,
};
