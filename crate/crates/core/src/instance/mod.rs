//! Problem instances: the data model, the four random instance models and
//! the canonical text format.

mod format;
mod rng;

use std::fmt;
use std::str::FromStr;

pub use format::{parse_instance, read_instance, write_instance};
pub use rng::Rng64;

use crate::cost::Cost;
use crate::error::{Error, Result};

/// Opening costs `f[i]` and the facility-by-customer service cost matrix
/// `c[i][j]`.
///
/// Immutable once built. The matrix is kept in both facility-major and
/// customer-major order so that row scans (opening a facility) and column
/// scans (re-assigning a customer) are both contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance<C = i64> {
    n: usize,
    m: usize,
    opening: Vec<C>,
    by_facility: Vec<C>,
    by_customer: Vec<C>,
}

impl<C: Cost> Instance<C> {
    /// Builds an instance from opening costs and one service-cost row per
    /// facility.
    pub fn new(opening: Vec<C>, service: Vec<Vec<C>>) -> Result<Self> {
        let n = opening.len();
        let m = service.first().map_or(0, Vec::len);
        if service.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{} opening costs but {} service rows",
                n,
                service.len()
            )));
        }
        if let Some((i, row)) = service.iter().enumerate().find(|(_, r)| r.len() != m) {
            return Err(Error::InvalidInstance(format!(
                "service row {} has {} entries, expected {}",
                i + 1,
                row.len(),
                m
            )));
        }
        Self::from_row_major(n, m, opening, service.into_iter().flatten().collect())
    }

    /// Builds an instance from a flat facility-major cost matrix.
    pub fn from_row_major(n: usize, m: usize, opening: Vec<C>, service: Vec<C>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidDimensions { n, m });
        }
        if opening.len() != n || service.len() != n * m {
            return Err(Error::InvalidInstance(format!(
                "expected {} opening costs and {} service costs, got {} and {}",
                n,
                n * m,
                opening.len(),
                service.len()
            )));
        }
        if let Some(i) = opening.iter().position(|f| *f < C::zero()) {
            return Err(Error::InvalidInstance(format!(
                "opening cost of facility {} is negative",
                i + 1
            )));
        }
        if let Some(k) = service.iter().position(|c| *c < C::one()) {
            return Err(Error::InvalidInstance(format!(
                "service cost c[{}][{}] is below 1",
                k / m + 1,
                k % m + 1
            )));
        }
        let mut by_customer = Vec::with_capacity(n * m);
        for j in 0..m {
            by_customer.extend((0..n).map(|i| service[i * m + j]));
        }
        Ok(Self {
            n,
            m,
            opening,
            by_facility: service,
            by_customer,
        })
    }

    /// Number of candidate facilities.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of customers.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn opening_cost(&self, i: usize) -> C {
        self.opening[i]
    }

    pub fn opening_costs(&self) -> &[C] {
        &self.opening
    }

    /// Cost of serving customer `j` from facility `i`.
    #[inline]
    pub fn service_cost(&self, i: usize, j: usize) -> C {
        self.by_facility[i * self.m + j]
    }

    /// Service costs from facility `i` to every customer.
    #[inline]
    pub fn facility_row(&self, i: usize) -> &[C] {
        &self.by_facility[i * self.m..(i + 1) * self.m]
    }

    /// Service costs of customer `j` from every facility.
    #[inline]
    pub fn customer_column(&self, j: usize) -> &[C] {
        &self.by_customer[j * self.n..(j + 1) * self.n]
    }

    pub fn service_costs(&self) -> &[C] {
        &self.by_facility
    }
}

/// One of the four random instance models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    /// Unit opening costs, service costs uniform on 1..=10.
    Model1,
    /// Opening costs in {1, 2}; service cost 1 with probability 0.1, else 10.
    Model2,
    /// Opening and service costs uniform on {1, 2}.
    Model3,
    /// Unit opening costs; service cost is 1 plus a binomial count of
    /// successes over `trials` trials with success probability
    /// `lambda / trials`.
    Model4 { trials: u32, lambda: u32 },
}

impl ModelId {
    pub const MODEL4_DEFAULT: ModelId = ModelId::Model4 {
        trials: 10,
        lambda: 1,
    };

    pub fn all() -> [ModelId; 4] {
        [
            ModelId::Model1,
            ModelId::Model2,
            ModelId::Model3,
            ModelId::MODEL4_DEFAULT,
        ]
    }

    pub fn number(self) -> u8 {
        match self {
            ModelId::Model1 => 1,
            ModelId::Model2 => 2,
            ModelId::Model3 => 3,
            ModelId::Model4 { .. } => 4,
        }
    }

    pub fn from_number(k: u8) -> Option<Self> {
        match k {
            1 => Some(ModelId::Model1),
            2 => Some(ModelId::Model2),
            3 => Some(ModelId::Model3),
            4 => Some(ModelId::MODEL4_DEFAULT),
            _ => None,
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl FromStr for ModelId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix("model")
            .or_else(|| t.strip_prefix("Model"))
            .unwrap_or(t);
        t.parse::<u8>()
            .ok()
            .and_then(ModelId::from_number)
            .ok_or_else(|| Error::Config(format!("unknown model {s:?}, expected 1..4")))
    }
}

/// Draws an instance of the given model.
///
/// All values come from one [`Rng64`] seeded with `seed`: first the opening
/// costs in facility order, then the service costs facility by facility,
/// customers in ascending order within each facility.
pub fn generate<C: Cost>(model: ModelId, n: usize, m: usize, seed: u64) -> Result<Instance<C>> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidDimensions { n, m });
    }
    let mut rng = Rng64::new(seed);
    let mut draw = |lo: i64, hi: i64| -> u32 {
        rng.uniform_int(lo, hi).expect("static range is valid") as u32
    };

    let opening: Vec<C> = (0..n)
        .map(|_| match model {
            ModelId::Model1 | ModelId::Model4 { .. } => C::one(),
            ModelId::Model2 | ModelId::Model3 => C::small(draw(1, 2)),
        })
        .collect();

    let service: Vec<C> = match model {
        ModelId::Model1 => (0..n * m).map(|_| C::small(draw(1, 10))).collect(),
        ModelId::Model2 => (0..n * m)
            .map(|_| C::small(if draw(1, 10) == 1 { 1 } else { 10 }))
            .collect(),
        ModelId::Model3 => (0..n * m).map(|_| C::small(draw(1, 2))).collect(),
        ModelId::Model4 { trials, lambda } => {
            if trials == 0 || lambda > trials {
                return Err(Error::InvalidInstance(format!(
                    "model 4 needs 0 <= lambda <= trials, got lambda {lambda}, trials {trials}"
                )));
            }
            let hi = i64::from(trials) - 1;
            (0..n * m)
                .map(|_| {
                    let successes = (0..trials).filter(|_| draw(0, hi) < lambda).count();
                    C::small(1 + successes as u32)
                })
                .collect()
        }
    };

    Instance::from_row_major(n, m, opening, service)
}
