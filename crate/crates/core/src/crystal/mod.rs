//! The Cartier operator on the first de Rham cohomology of `x^3 - x - c t`, Griffiths
//! reduction, formal expansions at infinity and residue periods.

pub mod cartier;
pub mod form;
pub mod formal;
pub mod linalg;
pub mod periods;
pub mod poly;

pub use cartier::{cartier_form, cartier_matrix, cartier_matrix_twisted_raw, cubic, frobenius_split, lambda_twisted, lambda_untwisted};
pub use form::{bezout_solve, griffiths_reduce, DiffForm};
pub use formal::{formal_expand, FormalExpansion, KatzCheck};
pub use periods::{form_period, residue_closed_form, residues, table_size, PeriodVariant, ResidueKind, ResidueTable};
pub use poly::Poly;
