//! Test-only reference implementations. They follow the defining formulas
//! literally (loops over words × entries) and share no code with the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A training or test entry: token list (may repeat) and raw counts in
/// like, love, wow, haha, sad, angry, thankful order.
#[derive(Debug, Clone)]
pub struct OracleEntry {
    pub tokens: Vec<String>,
    pub counts: [u64; 7],
}

pub const CORE_IDX: [usize; 5] = [1, 2, 3, 4, 5];
pub const ALL_IDX: [usize; 7] = [0, 1, 2, 3, 4, 5, 6];

/// `n_r / T` over the given count indices; `None` when `T = 0`.
pub fn oracle_normalize(counts: &[u64; 7], idx: &[usize]) -> Option<Vec<f64>> {
    let mut total = 0u64;
    for &i in idx {
        total += counts[i];
    }
    if total == 0 {
        return None;
    }
    let mut out = Vec::new();
    for &i in idx {
        out.push(counts[i] as f64 / total as f64);
    }
    Some(out)
}

fn contains(tokens: &[String], word: &str) -> bool {
    tokens.iter().any(|t| t == word)
}

/// Word vector: sum of R_i over entries containing W, divided by the number
/// of entries containing W.
pub fn oracle_lexicon(entries: &[(Vec<String>, Vec<f64>)]) -> BTreeMap<String, Vec<f64>> {
    let mut vocabulary: Vec<String> = entries.iter().flat_map(|(t, _)| t.iter().cloned()).collect();
    vocabulary.sort();
    vocabulary.dedup();
    let dim = entries.first().map_or(0, |(_, v)| v.len());
    let mut lexicon = BTreeMap::new();
    for word in vocabulary {
        let mut numerator = vec![0.0; dim];
        let mut denominator = 0.0;
        for (tokens, vector) in entries {
            if contains(tokens, &word) {
                for k in 0..dim {
                    numerator[k] += vector[k];
                }
                denominator += 1.0;
            }
        }
        lexicon.insert(word, numerator.iter().map(|x| x / denominator).collect());
    }
    lexicon
}

pub fn oracle_train_mean(entries: &[(Vec<String>, Vec<f64>)]) -> Vec<f64> {
    let dim = entries[0].1.len();
    let mut sum = vec![0.0; dim];
    for (_, v) in entries {
        for k in 0..dim {
            sum[k] += v[k];
        }
    }
    sum.iter().map(|s| s / entries.len() as f64).collect()
}

/// Message vector: mean of the known distinct words' vectors, or the train
/// mean when no word is known.
pub fn oracle_predict(
    tokens: &[String],
    lexicon: &BTreeMap<String, Vec<f64>>,
    train_mean: &[f64],
) -> Vec<f64> {
    let mut distinct: Vec<&String> = tokens.iter().collect();
    distinct.sort();
    distinct.dedup();
    let known: Vec<&Vec<f64>> = distinct.iter().filter_map(|w| lexicon.get(*w)).collect();
    if known.is_empty() {
        return train_mean.to_vec();
    }
    let dim = train_mean.len();
    let mut sum = vec![0.0; dim];
    for v in &known {
        for k in 0..dim {
            sum[k] += v[k];
        }
    }
    sum.iter().map(|s| s / known.len() as f64).collect()
}

/// Positive and negative mass over love, wow, sad, angry.
pub fn oracle_polarity(counts: &[u64; 7]) -> Option<(f64, f64)> {
    let t = counts[1] + counts[2] + counts[4] + counts[5];
    if t == 0 {
        return None;
    }
    let t = t as f64;
    let (nl, nw, ns, na) = (
        counts[1] as f64 / t,
        counts[2] as f64 / t,
        counts[4] as f64 / t,
        counts[5] as f64 / t,
    );
    Some((nl + nw, ns + na))
}

/// Nearest point of {1.0, 1.5, ..., 5.0} by exhaustive scan; ties go up.
pub fn oracle_discretize(s: f64) -> f64 {
    let mut best = 1.0;
    let mut best_d = f64::INFINITY;
    for k in 0..=8 {
        let c = 1.0 + 0.5 * k as f64;
        let d = (s - c).abs();
        if d <= best_d {
            best = c;
            best_d = d;
        }
    }
    best
}

/// `[E_P, E_N, S', S]` for every entry, scaled over the entries' own range.
pub fn oracle_star_vectors(polarities: &[(f64, f64)]) -> Vec<[f64; 4]> {
    let e: Vec<f64> = polarities.iter().map(|(p, n)| p - n).collect();
    let mut min = e[0];
    let mut max = e[0];
    for &x in &e {
        if x < min {
            min = x;
        }
        if x > max {
            max = x;
        }
    }
    polarities
        .iter()
        .zip(&e)
        .map(|(&(p, n), &ei)| {
            let s = 4.0 * ((ei - min) / (max - min)) + 1.0;
            [p, n, oracle_discretize(s), s]
        })
        .collect()
}

/// Overlap metrics of one component, straight from the definitions.
pub fn oracle_metrics(actual: f64, predicted: f64) -> [f64; 4] {
    let a = if actual < predicted { actual } else { predicted };
    let r = if actual == 0.0 { 1.0 } else { a / actual };
    let p = if predicted == 0.0 { 1.0 } else { a / predicted };
    let f = if r + p == 0.0 { 0.0 } else { 2.0 * r * p / (r + p) };
    [a, r, p, f]
}

/// Random small corpus over a tiny vocabulary so words repeat across entries.
pub fn random_entries(seed: u64, n: usize, vocab: usize) -> Vec<OracleEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let len = rng.random_range(0..8);
            let tokens = (0..len).map(|_| format!("w{}", rng.random_range(0..vocab))).collect();
            let mut counts = [0u64; 7];
            for c in counts.iter_mut() {
                *c = if rng.random_bool(0.3) { 0 } else { rng.random_range(0..50) };
            }
            OracleEntry { tokens, counts }
        })
        .collect()
}

pub fn assert_close(a: &[f64], b: &[f64], tol: f64, what: &str) {
    assert_eq!(a.len(), b.len(), "{what}: length");
    for (x, y) in a.iter().zip(b) {
        assert!((x - y).abs() <= tol, "{what}: {a:?} vs {b:?}");
    }
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
