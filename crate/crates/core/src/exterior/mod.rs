//! Bigraded exterior algebra on a complex coframe, the differential defined
//! by structure equations, and the text format.

mod form;
mod parse;
mod presentation;

pub use form::{Form, Key, MAX_GENERATORS};
pub use parse::{
    lookup_var, parse_form, parse_presentation, parse_scalar, parse_substitution, Symbols,
};
pub use presentation::{GeneratorCheck, Presentation, Rationality, TwistCheck, ValidationReport};
