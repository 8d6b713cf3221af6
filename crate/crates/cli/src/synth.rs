//! Synthetic reaction corpora with known word affinities.
//!
//! Every word carries a latent distribution over the five core reactions.
//! A post samples its words, mixes their affinities, and draws core reaction
//! counts from the mixture; Like and Thankful are layered on top.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Binomial, Distribution, Gamma, LogNormal, Zipf};
use reaction_lens::{PostRecord, ReactionCounts};
use serde::Serialize;

use crate::config::SynthSettings;
use crate::error::{CliError, CliResult};

/// Core reaction shares of the reference corpus (love, wow, haha, sad, angry).
pub const BASE_SHARES: [f64; 5] = [0.4956, 0.0754, 0.2581, 0.1182, 0.0526];

const CONSONANTS: &[char] = &[
    'ක', 'ඛ', 'ග', 'ඝ', 'ච', 'ජ', 'ඤ', 'ට', 'ඩ', 'ණ', 'ත', 'ථ', 'ද', 'ධ', 'න', 'ප', 'බ', 'භ', 'ම', 'ය',
    'ර', 'ල', 'ව', 'ශ', 'ෂ', 'ස', 'හ', 'ළ', 'ෆ',
];
const SIGNS: &[Option<char>] =
    &[None, Some('ා'), Some('ි'), Some('ී'), Some('ු'), Some('ෙ'), Some('ො'), Some('්')];

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Affinities {
    /// Each word draws from Dirichlet(5 · concentration · base shares).
    Dirichlet { concentration: f64 },
    /// Word `i` uses row `i`; the vocabulary size is the number of rows.
    Fixed(Vec<[f64; 5]>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthSpec {
    pub rows: usize,
    pub vocab: usize,
    pub affinities: Affinities,
    pub min_words: usize,
    pub max_words: usize,
    pub zipf: f64,
    pub reaction_scale: f64,
    pub reaction_spread: f64,
    pub like_dominance: f64,
    pub like_concentration: f64,
    pub thankful_fraction: f64,
    pub noise_rate: f64,
    pub seed: u64,
}

impl Default for SynthSpec {
    fn default() -> Self {
        SynthSpec {
            rows: 10_000,
            vocab: 2_000,
            affinities: Affinities::Dirichlet { concentration: 1.0 },
            min_words: 3,
            max_words: 12,
            zipf: 1.0,
            reaction_scale: 150.0,
            reaction_spread: 1.0,
            like_dominance: 0.95,
            like_concentration: 10.0,
            thankful_fraction: 2.5e-5,
            noise_rate: 0.05,
            seed: 0,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidSpec(msg.into())
}

impl SynthSpec {
    pub fn from_settings(s: &SynthSettings) -> CliResult<Self> {
        let d = SynthSpec::default();
        let affinities = match (&s.affinities, s.concentration) {
            (Some(_), Some(_)) => return Err(invalid("set either `affinities` or `concentration`, not both")),
            (Some(rows), None) => Affinities::Fixed(rows.clone()),
            (None, Some(concentration)) => Affinities::Dirichlet { concentration },
            (None, None) => d.affinities,
        };
        let vocab = match &affinities {
            Affinities::Fixed(rows) => {
                if s.vocab.is_some_and(|v| v != rows.len()) {
                    return Err(invalid("`vocab` disagrees with the number of fixed affinities"));
                }
                rows.len()
            }
            Affinities::Dirichlet { .. } => s.vocab.unwrap_or(d.vocab),
        };
        let spec = SynthSpec {
            rows: s.rows.unwrap_or(d.rows),
            vocab,
            affinities,
            min_words: s.min_words.unwrap_or(d.min_words),
            max_words: s.max_words.unwrap_or(d.max_words),
            zipf: s.zipf.unwrap_or(d.zipf),
            reaction_scale: s.reaction_scale.unwrap_or(d.reaction_scale),
            reaction_spread: s.reaction_spread.unwrap_or(d.reaction_spread),
            like_dominance: s.like_dominance.unwrap_or(d.like_dominance),
            like_concentration: s.like_concentration.unwrap_or(d.like_concentration),
            thankful_fraction: s.thankful_fraction.unwrap_or(d.thankful_fraction),
            noise_rate: s.noise_rate.unwrap_or(d.noise_rate),
            seed: s.seed.unwrap_or(d.seed),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.vocab == 0 {
            return Err(invalid("vocabulary must not be empty"));
        }
        match &self.affinities {
            Affinities::Dirichlet { concentration } if !(*concentration > 0.0 && concentration.is_finite()) => {
                return Err(invalid(format!("concentration must be positive, got {concentration}")));
            }
            Affinities::Fixed(rows) => {
                if rows.len() != self.vocab {
                    return Err(invalid("vocabulary size must equal the number of fixed affinities"));
                }
                for (i, row) in rows.iter().enumerate() {
                    let sum: f64 = row.iter().sum();
                    if row.iter().any(|x| x.is_nan() || *x < 0.0) || (sum - 1.0).abs() > 1e-9 {
                        return Err(invalid(format!("affinity row {i} is not a distribution")));
                    }
                }
            }
            _ => {}
        }
        if self.min_words == 0 || self.min_words > self.max_words {
            return Err(invalid("need 1 <= min_words <= max_words"));
        }
        if !(self.zipf >= 0.0 && self.zipf.is_finite()) {
            return Err(invalid("zipf exponent must be non-negative"));
        }
        if !(self.reaction_scale >= 1.0 && self.reaction_scale.is_finite()) {
            return Err(invalid("reaction_scale must be at least 1"));
        }
        if !(self.reaction_spread >= 0.0 && self.reaction_spread.is_finite()) {
            return Err(invalid("reaction_spread must be non-negative"));
        }
        if !(0.0..1.0).contains(&self.like_dominance) {
            return Err(invalid("like_dominance must lie in [0, 1)"));
        }
        if !(self.like_concentration > 0.0 && self.like_concentration.is_finite()) {
            return Err(invalid("like_concentration must be positive"));
        }
        for (name, p) in [("thankful_fraction", self.thankful_fraction), ("noise_rate", self.noise_rate)] {
            if !(0.0..=1.0).contains(&p) {
                return Err(invalid(format!("{name} must lie in [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Deterministic word for index `i`: Sinhala syllables spelling `i` in a
/// mixed radix, at least two syllables long.
pub fn word(i: usize) -> String {
    let radix = CONSONANTS.len() * SIGNS.len();
    let mut n = i;
    let mut out = String::new();
    let mut syllables = 0;
    while n > 0 || syllables < 2 {
        let digit = n % radix;
        n /= radix;
        out.push(CONSONANTS[digit / SIGNS.len()]);
        if let Some(sign) = SIGNS[digit % SIGNS.len()] {
            out.push(sign);
        }
        syllables += 1;
    }
    out
}

pub struct Generator {
    spec: SynthSpec,
    rng: ChaCha8Rng,
    words: Vec<String>,
    affinities: Vec<[f64; 5]>,
    zipf: Zipf<f64>,
    total: LogNormal<f64>,
    like_share: Option<Beta<f64>>,
    emitted: usize,
}

impl Generator {
    pub fn new(spec: SynthSpec) -> CliResult<Self> {
        spec.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let affinities = match &spec.affinities {
            Affinities::Fixed(rows) => rows.clone(),
            Affinities::Dirichlet { concentration } => {
                let gammas: Vec<Gamma<f64>> = BASE_SHARES
                    .iter()
                    .map(|b| Gamma::new(5.0 * concentration * b, 1.0).map_err(|e| invalid(e.to_string())))
                    .collect::<CliResult<_>>()?;
                (0..spec.vocab)
                    .map(|_| {
                        let draw: Vec<f64> = gammas.iter().map(|g| g.sample(&mut rng)).collect();
                        let sum: f64 = draw.iter().sum();
                        if sum > 0.0 && sum.is_finite() {
                            std::array::from_fn(|r| draw[r] / sum)
                        } else {
                            BASE_SHARES
                        }
                    })
                    .collect()
            }
        };
        let zipf = Zipf::new(spec.vocab as f64, spec.zipf).map_err(|e| invalid(e.to_string()))?;
        let total = LogNormal::new(spec.reaction_scale.ln(), spec.reaction_spread).map_err(|e| invalid(e.to_string()))?;
        let like_share = (spec.like_dominance > 0.0)
            .then(|| {
                let c = spec.like_concentration;
                Beta::new(c * spec.like_dominance, c * (1.0 - spec.like_dominance))
            })
            .transpose()
            .map_err(|e| invalid(e.to_string()))?;
        Ok(Generator {
            words: (0..spec.vocab).map(word).collect(),
            spec,
            rng,
            affinities,
            zipf,
            total,
            like_share,
            emitted: 0,
        })
    }

    pub fn spec(&self) -> &SynthSpec {
        &self.spec
    }

    /// Writes `word<TAB>love<TAB>wow<TAB>haha<TAB>sad<TAB>angry` per word.
    pub fn write_truth<W: Write>(&self, mut sink: W) -> std::io::Result<()> {
        writeln!(sink, "word\tlove\twow\thaha\tsad\tangry")?;
        for (w, a) in self.words.iter().zip(&self.affinities) {
            writeln!(sink, "{w}\t{}\t{}\t{}\t{}\t{}", a[0], a[1], a[2], a[3], a[4])?;
        }
        Ok(())
    }

    fn binomial(&mut self, n: u64, p: f64) -> u64 {
        if n == 0 || p <= 0.0 {
            return 0;
        }
        if p >= 1.0 {
            return n;
        }
        Binomial::new(n, p).expect("valid binomial").sample(&mut self.rng)
    }

    fn noise_token(&mut self, word: &str) -> String {
        let n: u32 = self.rng.random_range(1..100_000);
        match self.rng.random_range(0..7) {
            0 => format!("https://news.example.lk/p/{n}"),
            1 => format!("www.site{n}.lk"),
            2 => n.to_string(),
            3 => format!("#{word}"),
            4 => format!("@user{n}"),
            5 => format!("user{n}@mail.lk"),
            _ => {
                // The same word again with a zero-width joiner inside it.
                let split = word.char_indices().nth(1).map_or(word.len(), |(i, _)| i);
                format!("{}\u{200D}{}", &word[..split], &word[split..])
            }
        }
    }

    fn post(&mut self) -> PostRecord {
        let len = self.rng.random_range(self.spec.min_words..=self.spec.max_words);
        let mut mixture = [0.0; 5];
        let mut tokens = Vec::with_capacity(len * 2);
        for _ in 0..len {
            let rank = self.zipf.sample(&mut self.rng) as usize;
            let w = rank.clamp(1, self.spec.vocab) - 1;
            for (m, a) in mixture.iter_mut().zip(&self.affinities[w]) {
                *m += a / len as f64;
            }
            let word = self.words[w].clone();
            if self.spec.noise_rate > 0.0 && self.rng.random_bool(self.spec.noise_rate) {
                let noise = self.noise_token(&word);
                tokens.push(word);
                tokens.push(noise);
            } else {
                tokens.push(word);
            }
        }

        let total = (self.total.sample(&mut self.rng).round() as u64).clamp(2, 1 << 40);
        let like_share = match self.like_share {
            Some(beta) => beta.sample(&mut self.rng),
            None => 0.0,
        };
        let core_total = 1 + self.binomial(total - 1, 1.0 - like_share);
        let pool = total - core_total;
        let thankful = self.binomial(pool, self.spec.thankful_fraction);

        let mut counts = ReactionCounts { like: pool - thankful, thankful, ..Default::default() };
        let mut left = core_total;
        let mut mass_left = 1.0;
        let mut core = [0u64; 5];
        for r in 0..5 {
            let k = if r == 4 || mass_left <= 0.0 {
                left
            } else {
                self.binomial(left, (mixture[r] / mass_left).min(1.0))
            };
            core[r] = k;
            left -= k;
            mass_left -= mixture[r];
        }
        [counts.love, counts.wow, counts.haha, counts.sad, counts.angry] = core;

        self.emitted += 1;
        PostRecord { id: Some(format!("p{}", self.emitted)), message: tokens.join(" "), reactions: counts }
    }
}

impl Iterator for Generator {
    type Item = PostRecord;

    fn next(&mut self) -> Option<PostRecord> {
        (self.emitted < self.spec.rows).then(|| self.post())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.spec.rows - self.emitted;
        (left, Some(left))
    }
}
