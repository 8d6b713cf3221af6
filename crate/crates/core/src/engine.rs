//! Reaction normalization and the word lexicon.
//!
//! A lexicon maps each word to the mean vector of the training entries whose
//! unique-word set contains it. A message is predicted as the mean of the
//! lexicon vectors of its known words, or the training mean when none are
//! known. The same fold serves the core, all and star schemas.
//!
//! Building is a commutative fold over `(sum, count)` pairs, so shards built
//! independently can be [merged](LexiconBuilder::merge) before finalizing.

use std::borrow::Borrow;
use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::reaction::{ReactionCounts, ReactionVector, Schema};

/// Normalizes raw counts over the reactions of `schema`.
///
/// Fails with [`Error::ZeroReactionTotal`] when the schema's reactions sum
/// to zero; such entries are excluded from training and evaluation.
pub fn normalize(counts: &ReactionCounts, schema: Schema) -> Result<ReactionVector> {
    let reactions = schema.reactions().ok_or_else(|| {
        Error::SchemaMismatch(format!("schema {schema} is not a reaction distribution"))
    })?;
    let total: u64 = reactions.iter().map(|&r| counts.get(r)).sum();
    if total == 0 {
        return Err(Error::ZeroReactionTotal(schema));
    }
    let total = total as f64;
    Ok(reactions
        .iter()
        .map(|&r| counts.get(r) as f64 / total)
        .collect::<Vec<_>>()
        .into())
}

/// Compensated (Neumaier) running sums, one per component.
#[derive(Debug, Clone)]
struct CompensatedSums {
    sums: Vec<f64>,
    carry: Vec<f64>,
}

impl CompensatedSums {
    fn zeros(len: usize) -> Self {
        CompensatedSums {
            sums: vec![0.0; len],
            carry: vec![0.0; len],
        }
    }

    fn grow(&mut self, len: usize) {
        self.sums.resize(len, 0.0);
        self.carry.resize(len, 0.0);
    }

    fn add_at(&mut self, offset: usize, values: &[f64]) {
        for (i, &x) in values.iter().enumerate() {
            let s = self.sums[offset + i];
            let t = s + x;
            if s.abs() >= x.abs() {
                self.carry[offset + i] += (s - t) + x;
            } else {
                self.carry[offset + i] += (x - t) + s;
            }
            self.sums[offset + i] = t;
        }
    }

    fn total(&self, index: usize) -> f64 {
        self.sums[index] + self.carry[index]
    }
}

/// Accumulates training entries into per-word `(sum, count)` pairs.
#[derive(Debug, Clone)]
pub struct LexiconBuilder<K> {
    schema: Schema,
    index: HashMap<K, usize>,
    words: Vec<K>,
    sums: CompensatedSums,
    counts: Vec<u64>,
    mean_sum: CompensatedSums,
    entries: u64,
    scratch: Vec<usize>,
}

impl<K: Hash + Eq + Clone> LexiconBuilder<K> {
    pub fn new(schema: Schema) -> Self {
        LexiconBuilder {
            schema,
            index: HashMap::new(),
            words: Vec::new(),
            sums: CompensatedSums::zeros(0),
            counts: Vec::new(),
            mean_sum: CompensatedSums::zeros(schema.dim()),
            entries: 0,
            scratch: Vec::new(),
        }
    }

    pub fn schema(&self) -> Schema {
        self.schema
    }

    /// Number of training entries folded in so far.
    pub fn entries(&self) -> u64 {
        self.entries
    }

    /// Folds in one training entry. Repeated words count once.
    pub fn add_entry<'a, Q, I>(&mut self, words: I, vector: &[f64]) -> Result<()>
    where
        I: IntoIterator<Item = &'a Q>,
        K: Borrow<Q>,
        Q: Hash + Eq + ToOwned<Owned = K> + ?Sized + 'a,
    {
        self.schema.check_dim(vector.len())?;
        let dim = self.schema.dim();
        let mut slots = std::mem::take(&mut self.scratch);
        slots.clear();
        for word in words {
            let slot = match self.index.get(word) {
                Some(&slot) => slot,
                None => self.insert(word.to_owned()),
            };
            slots.push(slot);
        }
        slots.sort_unstable();
        slots.dedup();
        for &slot in &slots {
            self.sums.add_at(slot * dim, vector);
            self.counts[slot] += 1;
        }
        self.scratch = slots;
        self.mean_sum.add_at(0, vector);
        self.entries += 1;
        Ok(())
    }

    fn insert(&mut self, word: K) -> usize {
        let slot = self.words.len();
        self.index.insert(word.clone(), slot);
        self.words.push(word);
        self.counts.push(0);
        self.sums.grow((slot + 1) * self.schema.dim());
        slot
    }

    /// Combines two builders over the same schema.
    pub fn merge(mut self, other: LexiconBuilder<K>) -> Result<Self> {
        if self.schema != other.schema {
            return Err(Error::LexiconSchemaMismatch {
                expected: self.schema,
                found: other.schema,
            });
        }
        let dim = self.schema.dim();
        for (other_slot, word) in other.words.into_iter().enumerate() {
            let slot = match self.index.get(&word) {
                Some(&slot) => slot,
                None => self.insert(word),
            };
            let range = other_slot * dim..(other_slot + 1) * dim;
            self.sums.add_at(slot * dim, &other.sums.sums[range.clone()]);
            self.sums.add_at(slot * dim, &other.sums.carry[range]);
            self.counts[slot] += other.counts[other_slot];
        }
        self.mean_sum.add_at(0, &other.mean_sum.sums);
        self.mean_sum.add_at(0, &other.mean_sum.carry);
        self.entries += other.entries;
        Ok(self)
    }

    /// Turns the running sums into averaged vectors.
    ///
    /// An empty builder still finalizes, but the resulting lexicon has no
    /// training mean and refuses to predict.
    pub fn finalize(self) -> Lexicon<K> {
        let dim = self.schema.dim();
        let mut vectors = Vec::with_capacity(self.words.len() * dim);
        for (slot, &count) in self.counts.iter().enumerate() {
            let n = count as f64;
            vectors.extend((0..dim).map(|i| self.sums.total(slot * dim + i) / n));
        }
        let train_mean = (self.entries > 0).then(|| {
            let n = self.entries as f64;
            (0..dim).map(|i| self.mean_sum.total(i) / n).collect()
        });
        Lexicon {
            schema: self.schema,
            index: self.index,
            words: self.words,
            vectors,
            counts: self.counts,
            train_mean,
            train_entries: self.entries,
        }
    }
}

/// Finalized word lexicon. Immutable and shareable across prediction workers.
#[derive(Debug, Clone)]
pub struct Lexicon<K = String> {
    schema: Schema,
    index: HashMap<K, usize>,
    words: Vec<K>,
    vectors: Vec<f64>,
    counts: Vec<u64>,
    train_mean: Option<Vec<f64>>,
    train_entries: u64,
}

/// A predicted vector with the fraction of message words the lexicon knew.
#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub vector: ReactionVector,
    pub coverage: f64,
}

impl<K: Hash + Eq + Clone> Lexicon<K> {
    /// Builds a lexicon from `(unique words, vector)` training pairs.
    pub fn build<'a, Q, W, I>(schema: Schema, training: I) -> Result<Self>
    where
        I: IntoIterator<Item = (W, &'a [f64])>,
        W: IntoIterator<Item = &'a Q>,
        K: Borrow<Q>,
        Q: Hash + Eq + ToOwned<Owned = K> + ?Sized + 'a,
    {
        let mut builder = LexiconBuilder::new(schema);
        for (words, vector) in training {
            builder.add_entry(words, vector)?;
        }
        Ok(builder.finalize())
    }

    /// Reassembles a finalized lexicon from stored parts.
    pub fn from_parts(
        schema: Schema,
        entries: Vec<(K, u64, Vec<f64>)>,
        train_mean: Option<Vec<f64>>,
        train_entries: u64,
    ) -> Result<Self> {
        let dim = schema.dim();
        if let Some(mean) = &train_mean {
            schema.check_dim(mean.len())?;
        }
        let mut lexicon = Lexicon {
            schema,
            index: HashMap::with_capacity(entries.len()),
            words: Vec::with_capacity(entries.len()),
            vectors: Vec::with_capacity(entries.len() * dim),
            counts: Vec::with_capacity(entries.len()),
            train_mean,
            train_entries,
        };
        for (word, count, vector) in entries {
            schema.check_dim(vector.len())?;
            if lexicon.index.insert(word.clone(), lexicon.words.len()).is_some() {
                return Err(Error::CorruptArtifact("duplicate lexicon word".into()));
            }
            lexicon.words.push(word);
            lexicon.counts.push(count);
            lexicon.vectors.extend(vector);
        }
        Ok(lexicon)
    }

    pub fn schema(&self) -> Schema {
        self.schema
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn train_mean(&self) -> Option<&[f64]> {
        self.train_mean.as_deref()
    }

    pub fn train_entries(&self) -> u64 {
        self.train_entries
    }

    pub fn get<Q>(&self, word: &Q) -> Option<&[f64]>
    where
        K: Borrow<Q>,
        Q: Hash + Eq + ?Sized,
    {
        self.index.get(word).map(|&slot| self.slot_vector(slot))
    }

    /// Number of training entries that contained `word`.
    pub fn count<Q>(&self, word: &Q) -> Option<u64>
    where
        K: Borrow<Q>,
        Q: Hash + Eq + ?Sized,
    {
        self.index.get(word).map(|&slot| self.counts[slot])
    }

    /// `(word, entry count, averaged vector)` in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (&K, u64, &[f64])> + '_ {
        self.words
            .iter()
            .enumerate()
            .map(move |(slot, w)| (w, self.counts[slot], self.slot_vector(slot)))
    }

    fn slot_vector(&self, slot: usize) -> &[f64] {
        let dim = self.schema.dim();
        &self.vectors[slot * dim..(slot + 1) * dim]
    }

    /// Predicts a message vector from its words.
    ///
    /// Averages over the distinct known words only; unknown words do not
    /// dilute the result. With no known word the training mean is returned
    /// with coverage 0.
    pub fn predict<'a, Q, I>(&self, words: I) -> Result<Prediction>
    where
        I: IntoIterator<Item = &'a Q>,
        K: Borrow<Q>,
        Q: Hash + Eq + ?Sized + 'a,
    {
        let train_mean = self.train_mean.as_ref().ok_or(Error::EmptyTrainingSet)?;
        let mut seen: HashSet<&Q> = HashSet::new();
        let mut found = Vec::new();
        for word in words {
            if seen.insert(word) {
                if let Some(&slot) = self.index.get(word) {
                    found.push(slot);
                }
            }
        }
        let distinct = seen.len();
        if found.is_empty() {
            return Ok(Prediction {
                vector: train_mean.clone().into(),
                coverage: 0.0,
            });
        }
        let dim = self.schema.dim();
        let mut acc = CompensatedSums::zeros(dim);
        for &slot in &found {
            acc.add_at(0, self.slot_vector(slot));
        }
        let n = found.len() as f64;
        Ok(Prediction {
            vector: (0..dim).map(|i| acc.total(i) / n).collect::<Vec<_>>().into(),
            coverage: found.len() as f64 / distinct as f64,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reaction::Reaction;

    fn counts(pairs: &[(Reaction, u64)]) -> ReactionCounts {
        let mut c = ReactionCounts::default();
        for &(r, n) in pairs {
            c.set(r, n);
        }
        c
    }

    #[test]
    fn normalize_core() {
        use Reaction::*;
        let v = normalize(&counts(&[(Love, 2), (Wow, 1), (Haha, 1)]), Schema::Core).unwrap();
        assert_eq!(v.values(), &[0.5, 0.25, 0.25, 0.0, 0.0]);
    }

    #[test]
    fn normalize_core_ignores_like() {
        let c = counts(&[(Reaction::Like, 100)]);
        assert!(matches!(
            normalize(&c, Schema::Core),
            Err(Error::ZeroReactionTotal(Schema::Core))
        ));
        assert_eq!(normalize(&c, Schema::All).unwrap()[0], 1.0);
    }

    #[test]
    fn normalize_all() {
        use Reaction::*;
        let c = counts(&[(Like, 95), (Love, 2), (Wow, 1), (Haha, 1), (Sad, 1)]);
        let v = normalize(&c, Schema::All).unwrap();
        assert_eq!(v.values(), &[0.95, 0.02, 0.01, 0.01, 0.01, 0.0, 0.0]);
    }

    #[test]
    fn normalize_rejects_star_schema() {
        assert!(normalize(&ReactionCounts::default(), Schema::Star4).is_err());
    }

    fn two_entry_lexicon() -> Lexicon {
        let e1 = [1.0, 0.0, 0.0, 0.0, 0.0];
        let e2 = [0.0, 1.0, 0.0, 0.0, 0.0];
        Lexicon::build(
            Schema::Core,
            [(["a", "b"], &e1[..]), (["b", "c"], &e2[..])],
        )
        .unwrap()
    }

    #[test]
    fn two_entry_average() {
        let lex = two_entry_lexicon();
        assert_eq!(lex.get("a").unwrap(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(lex.get("b").unwrap(), &[0.5, 0.5, 0.0, 0.0, 0.0]);
        assert_eq!(lex.get("c").unwrap(), &[0.0, 1.0, 0.0, 0.0, 0.0]);
        assert_eq!(lex.count("b"), Some(2));
        assert_eq!(lex.train_mean().unwrap(), &[0.5, 0.5, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn repeated_tokens_count_once() {
        let v = [0.0, 0.0, 1.0, 0.0, 0.0];
        let w = [1.0, 0.0, 0.0, 0.0, 0.0];
        let lex: Lexicon = Lexicon::build(
            Schema::Core,
            [(vec!["a", "a", "b"], &v[..]), (vec!["a"], &w[..])],
        )
        .unwrap();
        assert_eq!(lex.count("a"), Some(2));
        assert_eq!(lex.get("a").unwrap(), &[0.5, 0.0, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn predict_examples() {
        let lex = two_entry_lexicon();
        let p = lex.predict(["a", "c"]).unwrap();
        assert_eq!(p.vector.values(), &[0.5, 0.5, 0.0, 0.0, 0.0]);
        assert_eq!(p.coverage, 1.0);

        let p = lex.predict(["a"]).unwrap();
        assert_eq!(p.vector.values(), lex.get("a").unwrap());

        let p = lex.predict(["zzz", "yyy"]).unwrap();
        assert_eq!(p.vector.values(), lex.train_mean().unwrap());
        assert_eq!(p.coverage, 0.0);

        let p = lex.predict(["a", "zzz", "a"]).unwrap();
        assert_eq!(p.vector.values(), lex.get("a").unwrap());
        assert_eq!(p.coverage, 0.5);
    }

    #[test]
    fn empty_training_set_refuses_prediction() {
        let lex = LexiconBuilder::<String>::new(Schema::Core).finalize();
        assert!(lex.is_empty());
        assert!(matches!(lex.predict(["a"]), Err(Error::EmptyTrainingSet)));
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let mut b = LexiconBuilder::<String>::new(Schema::Core);
        let err = b.add_entry(["a"], &[1.0, 0.0]).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { expected: 5, found: 2, .. }));
    }

    #[test]
    fn merge_requires_same_schema() {
        let a = LexiconBuilder::<String>::new(Schema::Core);
        let b = LexiconBuilder::<String>::new(Schema::All);
        assert!(a.merge(b).is_err());
    }

    #[test]
    fn integer_keys_work() {
        let v = [0.25, 0.75, 0.0, 0.0, 0.0];
        let lex: Lexicon<u32> = Lexicon::build(Schema::Core, [([1u32, 2].iter(), &v[..])]).unwrap();
        assert_eq!(lex.get(&2).unwrap(), &v);
        assert_eq!(lex.predict(&[2u32, 9]).unwrap().coverage, 0.5);
    }
}
