//! Text formats: the element expression language, presentation files and
//! serializable result summaries.

mod expr;
mod presentation;
pub mod report;

pub use expr::{parse_expression, parse_rational, ParseError, ParseErrorKind};
pub use presentation::{
    dump_presentation, load, load_str, GeneratorSpec, LoadError, Presentation, PresentationFile,
};
