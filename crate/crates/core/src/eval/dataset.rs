use std::collections::HashMap;

use crate::reaction::ReactionCounts;

/// An in-memory evaluation corpus with interned words.
///
/// Each entry keeps its sorted, de-duplicated word ids and its raw counts,
/// so every model can normalize (and exclude) entries on its own terms.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    vocabulary: HashMap<String, u32>,
    words: Vec<Box<[u32]>>,
    counts: Vec<ReactionCounts>,
}

impl Dataset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push<'a, I>(&mut self, words: I, counts: ReactionCounts)
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut ids: Vec<u32> = words.into_iter().map(|w| self.intern(w)).collect();
        ids.sort_unstable();
        ids.dedup();
        self.words.push(ids.into_boxed_slice());
        self.counts.push(counts);
    }

    fn intern(&mut self, word: &str) -> u32 {
        if let Some(&id) = self.vocabulary.get(word) {
            return id;
        }
        let id = u32::try_from(self.vocabulary.len()).expect("vocabulary exceeds u32 ids");
        self.vocabulary.insert(word.to_owned(), id);
        id
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn vocabulary_size(&self) -> usize {
        self.vocabulary.len()
    }

    pub fn words(&self, index: usize) -> &[u32] {
        &self.words[index]
    }

    pub fn counts(&self, index: usize) -> &ReactionCounts {
        &self.counts[index]
    }
}

impl<'a, W> FromIterator<(W, ReactionCounts)> for Dataset
where
    W: IntoIterator<Item = &'a str>,
{
    fn from_iter<T: IntoIterator<Item = (W, ReactionCounts)>>(iter: T) -> Self {
        let mut ds = Dataset::new();
        for (words, counts) in iter {
            ds.push(words, counts);
        }
        ds
    }
}
