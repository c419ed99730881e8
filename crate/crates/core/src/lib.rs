//! braidkit: exact symbolic computation in finitely presented algebras with
//! Laurent-polynomial coefficients, with (braided) Hopf structure checking,
//! adjoint coactions, transmutation tables, and a coefficient-ansatz solver.

pub mod ansatz;
pub mod coaction;
pub mod files;
pub mod hopf;
pub mod ncalg;
pub mod presentations;
pub mod report;
pub mod scalar;
pub mod structures;
pub mod tensor;
pub mod text;
