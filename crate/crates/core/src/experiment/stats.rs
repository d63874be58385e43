use crate::cost::Cost;
use crate::error::{Error, Result};

/// Box-plot summary of a sample.
///
/// Quartiles are Tukey hinges and whiskers follow the 1.5·IQR rule.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxStats<C = i64> {
    pub count: usize,
    pub min: C,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: C,
    /// Smallest observation not below `q1 - 1.5 * iqr`.
    pub lo_whisker: C,
    /// Largest observation not above `q3 + 1.5 * iqr`.
    pub hi_whisker: C,
    /// Observations outside the whiskers, ascending.
    pub outliers: Vec<C>,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator); 0 for one value.
    pub stddev: f64,
}

impl<C: Cost> BoxStats<C> {
    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }
}

fn median_sorted<C: Cost>(xs: &[C]) -> f64 {
    let k = xs.len();
    if k % 2 == 1 {
        xs[k / 2].as_f64()
    } else {
        (xs[k / 2 - 1].as_f64() + xs[k / 2].as_f64()) / 2.0
    }
}

pub fn summarize<C: Cost>(values: &[C]) -> Result<BoxStats<C>> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut xs = values.to_vec();
    xs.sort_unstable();
    let k = xs.len();

    let median = median_sorted(&xs);
    // Both halves include the middle element when the count is odd.
    let (lower, upper) = if k % 2 == 1 {
        (&xs[..=k / 2], &xs[k / 2..])
    } else {
        (&xs[..k / 2], &xs[k / 2..])
    };
    let q1 = median_sorted(lower);
    let q3 = median_sorted(upper);
    let iqr = q3 - q1;
    let lo_fence = q1 - 1.5 * iqr;
    let hi_fence = q3 + 1.5 * iqr;

    let inside = |v: &C| {
        let v = v.as_f64();
        v >= lo_fence && v <= hi_fence
    };
    let lo_whisker = *xs
        .iter()
        .find(|v| inside(v))
        .expect("q1 neighbourhood is inside");
    let hi_whisker = *xs
        .iter()
        .rev()
        .find(|v| inside(v))
        .expect("q3 neighbourhood is inside");
    let outliers = xs.iter().copied().filter(|v| !inside(v)).collect();

    let mean = xs.iter().map(|v| v.as_f64()).sum::<f64>() / k as f64;
    let stddev = if k > 1 {
        let ss: f64 = xs.iter().map(|v| (v.as_f64() - mean).powi(2)).sum();
        (ss / (k - 1) as f64).sqrt()
    } else {
        0.0
    };

    Ok(BoxStats {
        count: k,
        min: xs[0],
        q1,
        median,
        q3,
        max: xs[k - 1],
        lo_whisker,
        hi_whisker,
        outliers,
        mean,
        stddev,
    })
}
