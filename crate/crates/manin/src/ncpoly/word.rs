use smallvec::SmallVec;
use std::cmp::Ordering;

/// Ring-local generator index.
pub type Gen = u16;

/// A finite sequence of generators. Ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct Word(pub SmallVec<[Gen; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(g: Gen) -> Self {
        let mut v = SmallVec::new();
        v.push(g);
        Word(v)
    }

    pub fn from_slice(s: &[Gen]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &[Gen]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn pushed(&self, g: Gen) -> Word {
        let mut v = self.0.clone();
        v.push(g);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A word together with an exponent of the central parameter q.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono {
    pub word: Word,
    pub q: i32,
}

impl Mono {
    pub fn new(word: Word, q: i32) -> Self {
        Mono { word, q }
    }
}
