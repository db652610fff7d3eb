//! Words in a finitely presented group, the group ring, and evaluation of
//! both under integer matrix representations.

mod presentation;
mod rep;
mod ring;
mod syntax;
mod word;

pub use presentation::{Presentation, PresentationError, Relation};
pub use rep::{check_duality, check_relations, Augmentation, Coefficients, RepError, Representation};
pub use ring::GroupRingElement;
pub use syntax::{parse_linear_combination, parse_ring_element, parse_word, SyntaxError, SyntaxErrorKind};
pub use word::{Letter, Word};
