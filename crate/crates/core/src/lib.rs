//! Combinatorics of complex hyperplane arrangements over cyclotomic fields:
//! rank-2 flats, mod-p cocycle spaces and Aomoto-Betti numbers, the degree-2
//! Orlik–Solomon product, multinets, and bounds on the Milnor fibre
//! monodromy.

pub mod arrangement;
pub mod catalog;
pub mod cyclo;
pub mod error;
pub mod field;
pub mod flats;
pub mod io;
pub mod linalg;
pub mod matroid;
pub mod monodromy;
pub mod multinet;
pub mod os;
pub mod reproduce;
pub mod resonance;
pub mod search;
mod util;

pub use arrangement::{Arrangement, Hyperplane, Metadata, Violation};
pub use catalog::{build, FamilySpec};
pub use cyclo::{CycElem, CyclotomicField, IntPoly};
pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use flats::{compute_flat_table, Flat2, FlatTable};
pub use monodromy::{char_poly, monodromy_profile, CharPoly, MonodromyProfile, Status};
pub use multinet::{verify, Multinet, MultinetReport};
pub use os::{aomoto_h1, cup, is_isotropic, nabla_check};
pub use resonance::{beta_p, cocycle_space, BettiNumber, CocycleSpace};
pub use search::{search_nets, SearchOptions};
