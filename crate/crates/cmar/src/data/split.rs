//! Seed-deterministic stratified train/dev/test splitting.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{DataError, Dataset, Story, VeracityLabel};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitRatios {
    pub train: f64,
    pub dev: f64,
    pub test: f64,
}

impl SplitRatios {
    pub fn new(train: f64, dev: f64, test: f64) -> Self {
        SplitRatios { train, dev, test }
    }

    fn as_array(self) -> [f64; 3] {
        [self.train, self.dev, self.test]
    }

    fn validate(self) -> Result<(), DataError> {
        let r = self.as_array();
        if r.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(DataError::InvalidRatios);
        }
        if (r.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(DataError::InvalidRatios);
        }
        Ok(())
    }
}

impl Default for SplitRatios {
    fn default() -> Self {
        SplitRatios::new(0.8, 0.1, 0.1)
    }
}

/// Largest-remainder rounding of `total * ratio_s` to integer sizes that sum
/// to `total`. Ties go to the earlier split.
fn global_sizes(total: usize, ratios: [f64; 3]) -> [usize; 3] {
    let quotas: Vec<f64> = ratios.iter().map(|r| total as f64 * r).collect();
    let mut sizes: Vec<usize> = quotas.iter().map(|q| q.floor() as usize).collect();
    let mut remainder = total - sizes.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..3).collect();
    order.sort_by(|&a, &b| {
        let fa = quotas[a] - quotas[a].floor();
        let fb = quotas[b] - quotas[b].floor();
        fb.partial_cmp(&fa).unwrap().then(a.cmp(&b))
    });
    for &s in order.iter().cycle() {
        if remainder == 0 {
            break;
        }
        sizes[s] += 1;
        remainder -= 1;
    }
    [sizes[0], sizes[1], sizes[2]]
}

/// Per-class allocation matrix: rows are classes, columns are splits. Column
/// sums hit the global split sizes exactly; each row follows its class quota
/// `n_c * S_s / total` to within one story.
fn allocation_matrix(
    class_counts: [usize; VeracityLabel::COUNT],
    sizes: [usize; 3],
    total: usize,
) -> [[usize; 3]; VeracityLabel::COUNT] {
    let mut alloc = [[0usize; 3]; VeracityLabel::COUNT];
    let mut stock = class_counts;
    for s in 0..3 {
        if s == 2 {
            // Last split absorbs whatever is left; the earlier columns were
            // rounded so the leftovers match its size.
            for c in 0..VeracityLabel::COUNT {
                alloc[c][s] = stock[c];
            }
            break;
        }
        let mut fracs = [0f64; VeracityLabel::COUNT];
        let mut taken = 0usize;
        for c in 0..VeracityLabel::COUNT {
            let quota = class_counts[c] as f64 * sizes[s] as f64 / total as f64;
            let base = (quota.floor() as usize).min(stock[c]);
            alloc[c][s] = base;
            fracs[c] = quota - quota.floor();
            taken += base;
        }
        let mut remainder = sizes[s].saturating_sub(taken);
        let mut order: Vec<usize> = (0..VeracityLabel::COUNT).collect();
        order.sort_by(|&a, &b| fracs[b].partial_cmp(&fracs[a]).unwrap().then(a.cmp(&b)));
        while remainder > 0 {
            let mut placed = false;
            for &c in &order {
                if remainder == 0 {
                    break;
                }
                if stock[c] > alloc[c][s] {
                    alloc[c][s] += 1;
                    remainder -= 1;
                    placed = true;
                }
            }
            if !placed {
                break;
            }
        }
        for c in 0..VeracityLabel::COUNT {
            stock[c] -= alloc[c][s];
        }
    }
    alloc
}

/// Stratified three-way split. Membership is decided by a seeded shuffle
/// within each class; each split keeps its stories in original dataset order.
pub fn split(
    dataset: &Dataset,
    ratios: SplitRatios,
    seed: u64,
) -> Result<(Dataset, Dataset, Dataset), DataError> {
    ratios.validate()?;
    let total = dataset.len();
    let sizes = global_sizes(total, ratios.as_array());

    let mut by_class: [Vec<usize>; VeracityLabel::COUNT] = Default::default();
    for (i, story) in dataset.stories.iter().enumerate() {
        by_class[story.label.index()].push(i);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for group in by_class.iter_mut() {
        group.shuffle(&mut rng);
    }

    let class_counts = dataset.label_histogram();
    let alloc = allocation_matrix(class_counts, sizes, total);

    let mut membership = vec![0usize; total];
    for (c, group) in by_class.iter().enumerate() {
        let mut cursor = 0usize;
        for (s, &count) in alloc[c].iter().enumerate() {
            for &story_idx in &group[cursor..cursor + count] {
                membership[story_idx] = s;
            }
            cursor += count;
        }
    }

    let pick = |s: usize| -> Vec<Story> {
        dataset
            .stories
            .iter()
            .enumerate()
            .filter(|(i, _)| membership[*i] == s)
            .map(|(_, story)| story.clone())
            .collect()
    };
    let make = |stories: Vec<Story>| Dataset {
        stories,
        provenance: dataset.provenance.clone(),
    };
    Ok((make(pick(0)), make(pick(1)), make(pick(2))))
}
