pub mod catalog;
pub mod derive;
pub mod expr;
pub mod kinds;

pub use kinds::ExtremeKind;
