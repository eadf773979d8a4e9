//! Based root data from possibly non-integral generalized Cartan matrices and
//! bounded root generation.

mod datum;
mod ngcm;
mod slice;
mod subgroup;

pub use datum::{symmetrizing_scale, BasedRootDatum, DatumProperties, ValidationReport};
pub use ngcm::{coxeter_order, Ngcm};
pub use slice::{cone2, generate_roots, is_between_real, reflect, RootPair, RootSlice};
pub use subgroup::{is_real_root_basis, reflection_subgroup_basis, satisfies_pairwise_criterion};
