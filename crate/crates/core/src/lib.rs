pub mod congruence;
pub mod curve;
pub mod exact;
pub mod identities;
pub mod modular;
pub mod theta;
