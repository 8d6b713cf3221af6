use proptest::prelude::*;
use reaction_lens::eval::{split_indices, MetricAccumulator};
use reaction_lens::{
    discretize_star, entry_metrics, load_lexicon, normalize, save_lexicon, star_normalize, star_scale, Lexicon,
    LexiconBuilder, ReactionCounts, Schema,
};

fn counts() -> impl Strategy<Value = ReactionCounts> {
    prop::array::uniform7(prop_oneof![Just(0u64), 0u64..20, 0u64..1_000_000]).prop_map(ReactionCounts::from_array)
}

fn distribution(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1.0], dim).prop_filter_map("zero mass", |raw| {
        let s: f64 = raw.iter().sum();
        (s > 0.0).then(|| raw.iter().map(|x| x / s).collect())
    })
}

type Entry = (Vec<String>, Vec<f64>);

fn entries(dim: usize) -> impl Strategy<Value = Vec<Entry>> {
    prop::collection::vec(
        (prop::collection::vec("[a-f]{1,2}", 0..6), distribution(dim)),
        1..40,
    )
}

fn build(schema: Schema, entries: &[Entry]) -> LexiconBuilder<String> {
    let mut b = LexiconBuilder::new(schema);
    for (words, v) in entries {
        b.add_entry(words.iter().map(String::as_str), v).unwrap();
    }
    b
}

proptest! {
    #[test]
    fn normalized_vectors_are_distributions(c in counts()) {
        for schema in [Schema::Core, Schema::All] {
            match normalize(&c, schema) {
                Ok(v) => prop_assert!(v.is_distribution(1e-9)),
                Err(_) => {
                    let total: u64 = schema.reactions().unwrap().iter().map(|&r| c.get(r)).sum();
                    prop_assert_eq!(total, 0);
                }
            }
        }
    }

    #[test]
    fn like_never_increases_other_shares(c in counts()) {
        if let (Ok(core), Ok(all)) = (normalize(&c, Schema::Core), normalize(&c, Schema::All)) {
            for i in 0..5 {
                prop_assert!(all[i + 1] <= core[i] + 1e-15);
            }
        }
    }

    #[test]
    fn predictions_stay_distributions(es in entries(5), probe in prop::collection::vec("[a-h]{1,2}", 0..6)) {
        let lexicon = build(Schema::Core, &es).finalize();
        for (_, _, v) in lexicon.iter() {
            prop_assert!((v.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        }
        let p = lexicon.predict(probe.iter().map(String::as_str)).unwrap();
        prop_assert!(p.vector.is_distribution(1e-9));
        prop_assert!((0.0..=1.0).contains(&p.coverage));
    }

    #[test]
    fn sharded_build_matches_single_pass(es in entries(7), cuts in prop::collection::vec(any::<prop::sample::Index>(), 0..4)) {
        let single = build(Schema::All, &es).finalize();
        let mut bounds: Vec<usize> = cuts.iter().map(|i| i.index(es.len() + 1)).collect();
        bounds.push(0);
        bounds.push(es.len());
        bounds.sort_unstable();
        let merged = bounds
            .windows(2)
            .map(|w| build(Schema::All, &es[w[0]..w[1]]))
            .rev()
            .reduce(|a, b| a.merge(b).unwrap())
            .unwrap()
            .finalize();
        prop_assert_eq!(single.len(), merged.len());
        prop_assert_eq!(single.train_entries(), merged.train_entries());
        for (word, count, v) in single.iter() {
            prop_assert_eq!(merged.count(word.as_str()), Some(count));
            for (a, b) in v.iter().zip(merged.get(word.as_str()).unwrap()) {
                prop_assert!((a - b).abs() <= 1e-12);
            }
        }
        for (a, b) in single.train_mean().unwrap().iter().zip(merged.train_mean().unwrap()) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn lexicon_persistence_is_bit_exact(es in entries(5), star in any::<bool>()) {
        let lexicon: Lexicon = if star {
            let es: Vec<Entry> = es
                .into_iter()
                .map(|(w, v)| (w, vec![v[0], v[1], 1.0 + 4.0 * v[2], -3.25 * v[3] + 1e-300]))
                .collect();
            build(Schema::Star4, &es).finalize()
        } else {
            build(Schema::Core, &es).finalize()
        };
        let mut bytes = Vec::new();
        save_lexicon(&lexicon, &mut bytes, &[]).unwrap();
        let back = load_lexicon(&bytes[..], Some(lexicon.schema())).unwrap();
        prop_assert_eq!(back.len(), lexicon.len());
        for (word, count, v) in lexicon.iter() {
            prop_assert_eq!(back.count(word.as_str()), Some(count));
            let bits: Vec<u64> = v.iter().map(|x| x.to_bits()).collect();
            let back_bits: Vec<u64> = back.get(word.as_str()).unwrap().iter().map(|x| x.to_bits()).collect();
            prop_assert_eq!(bits, back_bits);
        }
        let mean_bits = |l: &Lexicon| l.train_mean().map(|m| m.iter().map(|x| x.to_bits()).collect::<Vec<_>>());
        prop_assert_eq!(mean_bits(&back), mean_bits(&lexicon));
        let mut again = Vec::new();
        save_lexicon(&back, &mut again, &[]).unwrap();
        prop_assert_eq!(again, bytes);
    }

    #[test]
    fn metric_contracts(a in distribution(5), b in distribution(5)) {
        let ab = entry_metrics(&a, &b).unwrap();
        let ba = entry_metrics(&b, &a).unwrap();
        prop_assert!(ab.accuracy_sum() <= 1.0 + 1e-12);
        for (i, m) in ab.components.iter().enumerate() {
            prop_assert_eq!(m.accuracy, a[i].min(b[i]));
            prop_assert_eq!(m.accuracy, ba.components[i].accuracy);
            for v in [m.recall, m.precision, m.f1] {
                prop_assert!((0.0..=1.0 + 1e-12).contains(&v));
            }
            if a[i] > 0.0 || b[i] > 0.0 {
                prop_assert_eq!(m.f1 == 0.0, m.accuracy == 0.0);
            }
        }
        let same = entry_metrics(&a, &a).unwrap();
        for (i, m) in same.components.iter().enumerate() {
            if a[i] > 0.0 {
                prop_assert_eq!(m.f1, 1.0);
            }
        }
    }

    #[test]
    fn run_means_ignore_entry_order(pairs in prop::collection::vec((distribution(5), distribution(5)), 1..60), seed in any::<u64>()) {
        let mean = |order: &[usize]| {
            let mut acc = MetricAccumulator::new(5);
            for &i in order {
                acc.add(&entry_metrics(&pairs[i].0, &pairs[i].1).unwrap().components);
            }
            acc.means()
        };
        let forward: Vec<usize> = (0..pairs.len()).collect();
        let (mut shuffled, rest) = split_indices(pairs.len() + 1, 0.5, seed).unwrap_or((vec![], vec![]));
        shuffled.extend(rest);
        let shuffled: Vec<usize> = shuffled.into_iter().filter(|&i| i < pairs.len()).rev().collect();
        for (x, y) in mean(&forward).iter().zip(mean(&shuffled)) {
            for (p, q) in x.as_array().iter().zip(y.as_array()) {
                prop_assert!((p - q).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn star_polarities_sum_to_one(c in counts()) {
        if let Ok(p) = star_normalize(&c) {
            prop_assert!((p.positive + p.negative - 1.0).abs() <= 1e-12);
            prop_assert!((-1.0..=1.0).contains(&p.aggregate()));
        }
    }

    #[test]
    fn star_scale_is_monotone(mut es in prop::collection::vec(-1.0f64..=1.0, 2..30)) {
        let min = es.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = es.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assume!(max > min);
        es.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let stars: Vec<f64> = es.iter().map(|&e| star_scale(e, min, max).unwrap()).collect();
        for w in stars.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        prop_assert_eq!(stars[0], 1.0);
        prop_assert_eq!(*stars.last().unwrap(), 5.0);
    }

    #[test]
    fn clamping_agrees_with_unclamped_inside_range(e in -3.0f64..3.0, lo in -1.0f64..0.0, hi in 0.1f64..1.0) {
        let unclamped = 4.0 * ((e - lo) / (hi - lo)) + 1.0;
        let s = star_scale(e, lo, hi).unwrap();
        prop_assert_eq!(s, unclamped.clamp(1.0, 5.0));
        if (lo..=hi).contains(&e) {
            prop_assert!((s - unclamped).abs() <= 1e-12);
        }
    }

    #[test]
    fn discretization_error_is_bounded(s in 1.0f64..=5.0) {
        let d = discretize_star(s);
        prop_assert!((s - d).abs() <= 0.25 + 1e-12);
        prop_assert_eq!((d * 2.0).fract(), 0.0);
        prop_assert!((1.0..=5.0).contains(&d));
    }

    #[test]
    fn splits_are_deterministic(n in 2usize..500, f in 0.01f64..0.99, seed in any::<u64>()) {
        let (a, b) = split_indices(n, f, seed).unwrap();
        prop_assert_eq!(split_indices(n, f, seed).unwrap(), (a.clone(), b.clone()));
        prop_assert_eq!(a.len() + b.len(), n);
        prop_assert!((a.len() as f64 - f * n as f64).abs() <= 1.0);
    }
}
