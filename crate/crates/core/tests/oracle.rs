mod common;

use common::*;
use reaction_lens::{
    build_star_vectors, discretize_star, entry_metrics, normalize, star_normalize, Lexicon, ReactionCounts, Schema,
};

fn training_pairs(entries: &[OracleEntry], schema: Schema) -> Vec<(Vec<String>, Vec<f64>)> {
    let idx: &[usize] = match schema {
        Schema::Core => &CORE_IDX,
        _ => &ALL_IDX,
    };
    entries
        .iter()
        .filter_map(|e| oracle_normalize(&e.counts, idx).map(|v| (e.tokens.clone(), v)))
        .collect()
}

#[test]
fn normalization_matches_oracle() {
    for e in random_entries(11, 500, 10) {
        let counts = ReactionCounts::from_array(e.counts);
        for (schema, idx) in [(Schema::Core, &CORE_IDX[..]), (Schema::All, &ALL_IDX[..])] {
            match (normalize(&counts, schema), oracle_normalize(&e.counts, idx)) {
                (Ok(v), Some(o)) => assert_eq!(v.values(), &o[..]),
                (Err(_), None) => {}
                (got, want) => panic!("{schema}: {got:?} vs {want:?}"),
            }
        }
    }
}

#[test]
fn lexicon_and_prediction_match_brute_force() {
    for seed in 0..20 {
        let entries = random_entries(seed, 200, 12);
        let (train, test) = entries.split_at(150);
        for schema in [Schema::Core, Schema::All] {
            let pairs = training_pairs(train, schema);
            let lexicon: Lexicon = Lexicon::build(
                schema,
                pairs.iter().map(|(t, v)| (t.iter().map(String::as_str), v.as_slice())),
            )
            .unwrap();
            let oracle = oracle_lexicon(&pairs);
            assert_eq!(lexicon.len(), oracle.len());
            for (word, vector) in &oracle {
                assert_close(lexicon.get(word.as_str()).unwrap(), vector, 1e-12, word);
            }
            let mean = oracle_train_mean(&pairs);
            assert_close(lexicon.train_mean().unwrap(), &mean, 1e-12, "train mean");

            for e in test {
                let p = lexicon.predict(e.tokens.iter().map(String::as_str)).unwrap();
                let o = oracle_predict(&e.tokens, &oracle, &mean);
                assert_close(p.vector.values(), &o, 1e-12, "prediction");
                assert!((p.vector.sum() - 1.0).abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn fifty_small_entries() {
    let entries = random_entries(99, 50, 6);
    let pairs = training_pairs(&entries, Schema::Core);
    let lexicon: Lexicon =
        Lexicon::build(Schema::Core, pairs.iter().map(|(t, v)| (t.iter().map(String::as_str), v.as_slice())))
            .unwrap();
    for (word, vector) in oracle_lexicon(&pairs) {
        assert_close(lexicon.get(word.as_str()).unwrap(), &vector, 1e-12, &word);
    }
}

#[test]
fn star_vectors_match_literal_formulas() {
    for seed in 0..10 {
        let entries = random_entries(1000 + seed, 20, 5);
        let counts: Vec<_> = entries.iter().map(|e| e.counts).collect();
        let polar: Vec<(f64, f64)> = counts.iter().filter_map(oracle_polarity).collect();
        let lib: Vec<_> = counts
            .iter()
            .filter_map(|c| star_normalize(&ReactionCounts::from_array(*c)).ok())
            .collect();
        assert_eq!(polar.len(), lib.len());
        let (vectors, _) = build_star_vectors(&lib).unwrap();
        for (v, o) in vectors.iter().zip(oracle_star_vectors(&polar)) {
            assert_close(&v.to_array(), &o, 1e-12, "star vector");
        }
    }
}

#[test]
fn discretization_scan() {
    for k in 100..=500 {
        let s = k as f64 / 100.0;
        assert_eq!(discretize_star(s), oracle_discretize(s), "{s}");
    }
    for (x, want) in [(4.2, 4.0), (4.25, 4.5), (1.0, 1.0), (2.75, 3.0), (4.74, 4.5)] {
        assert_eq!(discretize_star(x), want);
        assert_eq!(oracle_discretize(x), want);
    }
}

#[test]
fn metrics_match_oracle() {
    let cases = [(0.5, 0.4), (0.0, 0.3), (0.3, 0.0), (0.0, 0.0), (0.2, 0.2), (1.0, 0.1)];
    for (n, m) in cases {
        let lib = entry_metrics(&[n], &[m]).unwrap().components[0].as_array();
        assert_close(&lib, &oracle_metrics(n, m), 1e-15, "metrics");
    }
    let m = oracle_metrics(0.5, 0.4);
    assert_close(&m, &[0.4, 0.8, 1.0, 8.0 / 9.0], 1e-12, "worked example");
    assert_close(&oracle_metrics(0.0, 0.3), &[0.0, 1.0, 0.0, 0.0], 0.0, "one-sided zero");
}
