//! Exact computation of critical ideals and the algebraic co-rank of
//! signed multidigraphs, together with the twin-vertex (duplication,
//! replication, blowup) constructions and their stabilized ideal
//! descriptions.

pub mod builtins;
pub mod critical;
pub mod enumerate;
pub mod groebner;
pub mod polyring;
pub mod sgraph;
pub mod suites;
