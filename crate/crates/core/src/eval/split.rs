use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub(crate) fn check_fraction(fraction: f64) -> Result<()> {
    if fraction > 0.0 && fraction < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "train fraction must lie in (0, 1), got {fraction}"
        )))
    }
}

/// Shuffles `0..n` with a seeded generator and cuts it at
/// `round(fraction * n)`, clamped so neither side is empty. Both sides come
/// back in ascending order.
pub fn split_indices(n: usize, train_fraction: f64, seed: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    check_fraction(train_fraction)?;
    match n {
        0 => return Err(Error::EmptySide("train")),
        1 => return Err(Error::EmptySide("test")),
        _ => {}
    }
    let n_train = ((train_fraction * n as f64).round() as usize).clamp(1, n - 1);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut test = order.split_off(n_train);
    order.sort_unstable();
    test.sort_unstable();
    Ok((order, test))
}

/// Random train/test partition of `items`.
pub fn split<T: Clone>(items: &[T], train_fraction: f64, seed: u64) -> Result<(Vec<T>, Vec<T>)> {
    let (train, test) = split_indices(items.len(), train_fraction, seed)?;
    Ok((
        train.into_iter().map(|i| items[i].clone()).collect(),
        test.into_iter().map(|i| items[i].clone()).collect(),
    ))
}
