//! Graph isomorphism relaxations: exact algebraic deciders (2-WL coherent
//! algebras, partially coherent algebras, fractional isomorphism), conic
//! theta SDP relaxations solved by ADMM, and Choi-matrix certificates for
//! the maps witnessing each relaxation.

pub mod closure;
pub mod conic;
pub mod exact;
pub mod graphs;
pub mod io;
pub mod isomaps;
pub mod relations;
pub mod spectral;
pub mod wl;
