//! Exact algorithms for Thompson's group F, realised as PL₂ homeomorphisms of dyadic
//! intervals: point reachability, conjugacy with witnesses, roots, centralizers and
//! simultaneous conjugacy.

pub mod central;
pub mod conj;
pub mod error;
pub mod exactnum;
pub mod fixtures;
pub mod obstruction;
pub mod plmap;
pub mod random;
pub mod simconj;
pub mod pwl;
pub mod reach;
pub mod stair;

pub use error::{Error, Result};
pub use exactnum::{Dyadic, Pow2, Rat};
pub use plmap::{Interval, PLMap};
