//! Automata for the coefficients of products of linear factors over `F_q`.

mod build;
mod field;
mod series;
mod verify;

pub use build::build_co;
pub use field::FqField;
pub use series::{cartier, denominator, MPoly, SeriesState};
pub use verify::{
    check_identities, check_tuples, identity_scripts, tuples_up_to, verify_co, CoReport, Mismatch,
};

use crate::error::Result;
use crate::numeration::NumerationSystem;
use crate::words::Word;

/// [`build_co`] wrapped as the word `co{q}` over `lsd_q`.
pub fn co_word(q: u32) -> Result<Word> {
    Word::new(format!("co{q}"), NumerationSystem::Lsd(q), build_co(q)?)
}
