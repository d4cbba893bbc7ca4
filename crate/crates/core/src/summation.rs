//! Compensated accumulation with a fixed reduction order.
//!
//! Every reduction in the crate goes through [`stable_sum`] on a slice whose
//! order is fixed by the caller, so results do not depend on how many worker
//! threads produced the slice.

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    /// Folds another accumulator into this one.
    pub fn merge(&mut self, other: Neumaier) {
        self.add(other.sum);
        self.add(other.comp);
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Extend<f64> for Neumaier {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

const BLOCK: usize = 128;

fn pairwise(values: &[f64]) -> Neumaier {
    if values.len() <= BLOCK {
        let mut acc = Neumaier::new();
        acc.extend(values.iter().copied());
        return acc;
    }
    // split on a block boundary so the tree shape depends only on the length
    let blocks = values.len().div_ceil(BLOCK);
    let mid = (blocks / 2) * BLOCK;
    let mut left = pairwise(&values[..mid]);
    left.merge(pairwise(&values[mid..]));
    left
}

/// Pairwise reduction of Neumaier-summed blocks.
pub fn stable_sum(values: &[f64]) -> f64 {
    pairwise(values).total()
}
