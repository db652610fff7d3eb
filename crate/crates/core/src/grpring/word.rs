use std::cmp::Ordering;
use std::fmt;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// A freely reduced word. Ordering is shortlex: by length, then letter by
/// letter (generator index, positive before inverse).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        Word::from_letters(self.0.iter().chain(rhs.0.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// Highest generator index used, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator).max()
    }

    /// Renders with generator names: `1`, `a*b^-1`, `c^3`.
    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let run = letters[i..].iter().take_while(|x| **x == l).count();
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self.names.get(l.generator).map_or("?", String::as_str);
            match (run, l.inverse) {
                (1, false) => write!(f, "{name}")?,
                (1, true) => write!(f, "{name}^-1")?,
                (n, false) => write!(f, "{name}^{n}")?,
                (n, true) => write!(f, "{name}^-{n}")?,
            }
            i += run;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn reduction_and_display() {
        let a = Word::generator(0);
        let b = Word::generator(1);
        assert!(a.mul(&a.inverse()).is_identity());
        let w = a.mul(&b.inverse()).mul(&b).mul(&a);
        assert_eq!(w.display(&names()).to_string(), "a^2");
        assert_eq!(b.pow(-3).display(&names()).to_string(), "b^-3");
        assert_eq!(Word::identity().display(&names()).to_string(), "1");
    }

    #[test]
    fn shortlex() {
        let a = Word::generator(0);
        let c = Word::generator(2);
        assert!(Word::identity() < c);
        assert!(c < a.mul(&a));
        assert!(a < a.inverse());
    }
}
