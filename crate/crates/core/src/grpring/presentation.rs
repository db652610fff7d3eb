use thiserror::Error;

use super::Word;

/// A defining relation `lhs = rhs`, stored as written and as the relator
/// `lhs·rhs⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Relation { lhs, rhs }
    }

    pub fn relator(&self) -> Word {
        self.lhs.mul(&self.rhs.inverse())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("relation uses generator index {0} outside the presentation")]
    ForeignGenerator(usize),
}

/// Finitely presented group. Words are only ever compared freely; relations
/// matter once a representation evaluates them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Presentation {
    generators: Vec<String>,
    relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(generators: Vec<String>) -> Result<Self, PresentationError> {
        for (i, g) in generators.iter().enumerate() {
            let valid = g.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && g.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(PresentationError::InvalidName(g.clone()));
            }
            if generators[..i].contains(g) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        Ok(Presentation { generators, relations: Vec::new() })
    }

    pub fn add_relation(&mut self, r: Relation) -> Result<(), PresentationError> {
        for w in [&r.lhs, &r.rhs] {
            if let Some(g) = w.max_generator().filter(|g| *g >= self.generators.len()) {
                return Err(PresentationError::ForeignGenerator(g));
            }
        }
        self.relations.push(r);
        Ok(())
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Relators `lhs·rhs⁻¹`, each freely reduced.
    pub fn relators(&self) -> Vec<Word> {
        self.relations.iter().map(Relation::relator).collect()
    }
}
