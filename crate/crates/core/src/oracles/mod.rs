//! Brute-force generators and analyzers, written without the automata code.

mod antinacci;
mod kernel;
mod periodicity;
mod poly;
mod subsumfree;
mod wythoff;

pub use antinacci::{
    anti_nacci, remainder_bounds, remainder_sequence, remainders, sum_defect, AntiNacci, Remainder,
};
pub use kernel::{kernel_classes, kernel_evidence};
pub use periodicity::{detect_periodicity, Modulus, Periodicity};
pub use poly::{all_nonzero_mod3, co3_all_nonzero_degrees, expand_poly_fq, SmallField};
pub use subsumfree::{differences, stephan_failures, subsumfree};
pub use wythoff::{fibonacci_word, floor_phi, gaps, markers, palindrome_blocks, unsums, upper_wythoff, PalindromeBlocks};
