use std::cmp::Ordering;

/// A Coxeter group element stored as its ShortLex normal form.
///
/// Elements are only created by [`super::CoxeterGroup`], so the word is always
/// reduced and equality of elements is equality of words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub(crate) word: Vec<usize>,
    pub(crate) group: u64,
}

impl GroupElement {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Fingerprint of the Coxeter matrix this element belongs to.
    pub fn group_id(&self) -> u64 {
        self.group
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| self.group.cmp(&other.group))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
