//! Poisson brackets on the symplectic torus and on Danielewski surfaces.

pub mod dan;
pub mod torus;

pub use dan::{
    codimension, dan_vf_bracket, div_dan, div_dan_basis, e_omega_member, hamiltonian_dan,
    is_constant_jac, jac_localized, pb_dan, width2_dan_deg2, Codimension, DanVectorField,
    DanWidthTwo, EOmegaWitness, Infeasible, Membership,
};
pub use torus::{
    ideal_reduction_torus, pb_torus, torus_space, width1_torus, ReductionChain, ReductionStep,
    ReductionStepRecord, TorusWidthOne,
};
