pub mod diagram_algebra;
pub mod diagrams;
pub mod exact_linalg;
pub mod invariants;
mod par;
pub mod scalars;
pub mod symplectic_space;
pub mod tensor_rep;
pub mod verification;
