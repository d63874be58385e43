use crate::error::{Error, Result};
use crate::instance::ModelId;
use crate::search::Algorithm;

/// One model's benchmark grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub model: ModelId,
    /// Customers per instance.
    pub m: usize,
    pub facility_counts: Vec<usize>,
    pub instances_per_cell: usize,
    pub runs_per_algorithm: usize,
    pub master_seed: u64,
    pub algorithms: Vec<Algorithm>,
}

impl ExperimentConfig {
    /// 1000 customers, 50 to 140 facilities in steps of 10, 10 instances per
    /// size, 1000 runs of each algorithm.
    pub fn full(model: ModelId) -> Self {
        Self {
            model,
            m: 1000,
            facility_counts: (50..=140).step_by(10).collect(),
            instances_per_cell: 10,
            runs_per_algorithm: 1000,
            master_seed: 0,
            algorithms: vec![Algorithm::Ls, Algorithm::Rls],
        }
    }

    /// Desk-scale variant of [`ExperimentConfig::full`].
    pub fn small(model: ModelId) -> Self {
        Self {
            model,
            m: 100,
            facility_counts: vec![10, 15, 20],
            instances_per_cell: 5,
            runs_per_algorithm: 100,
            master_seed: 0,
            algorithms: vec![Algorithm::Ls, Algorithm::Rls],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.to_string()));
        if self.m == 0 {
            return bad("customers must be at least 1");
        }
        if self.facility_counts.is_empty() || self.facility_counts.contains(&0) {
            return bad("facilities must be a non-empty list of positive counts");
        }
        if self.instances_per_cell == 0 {
            return bad("instances must be at least 1");
        }
        if self.runs_per_algorithm == 0 {
            return bad("runs must be at least 1");
        }
        if self.algorithms.is_empty() {
            return bad("algorithms must name at least one of ls, rls");
        }
        Ok(())
    }

    /// Parses a `key=value` config file into one config per listed model.
    ///
    /// Keys: `model` (comma list of 1..4), `customers`, `facilities` (comma
    /// list), `instances`, `runs`, `seed`, `algorithms` (comma list of
    /// ls/rls). Missing keys take the values of [`ExperimentConfig::full`];
    /// a missing `model` means all four. Blank lines and `#` comments are
    /// ignored.
    pub fn parse(text: &str) -> Result<Vec<ExperimentConfig>> {
        let mut models: Vec<ModelId> = ModelId::all().to_vec();
        let mut base = Self::full(ModelId::Model1);
        for (k, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key=value", k + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let at = |e: Error| Error::Config(format!("line {}: {key}: {e}", k + 1));
            match key {
                "model" | "models" => {
                    models = list(value, |s| s.parse::<ModelId>()).map_err(at)?;
                }
                "customers" => base.m = number(value).map_err(at)?,
                "facilities" => base.facility_counts = list(value, number).map_err(at)?,
                "instances" => base.instances_per_cell = number(value).map_err(at)?,
                "runs" => base.runs_per_algorithm = number(value).map_err(at)?,
                "seed" => base.master_seed = number(value).map_err(at)?,
                "algorithms" => base.algorithms = list(value, |s| s.parse()).map_err(at)?,
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key {other:?}",
                        k + 1
                    )))
                }
            }
        }
        if models.is_empty() {
            return Err(Error::Config("model list is empty".into()));
        }
        base.validate()?;
        Ok(models
            .into_iter()
            .map(|model| ExperimentConfig {
                model,
                ..base.clone()
            })
            .collect())
    }
}

fn number<T: std::str::FromStr>(s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Config(format!("{s:?} is not a non-negative integer")))
}

fn list<T>(s: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(item)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_grid() {
        let cfg = ExperimentConfig::full(ModelId::Model2);
        assert_eq!(cfg.facility_counts.len(), 10);
        assert_eq!(cfg.facility_counts[0], 50);
        assert_eq!(*cfg.facility_counts.last().unwrap(), 140);
        cfg.validate().unwrap();
    }

    #[test]
    fn parse_file() {
        let text = "# desk run\nmodel = 1, 3\ncustomers=100\nfacilities=10,15\ninstances=2\nruns=5\nseed=42\nalgorithms=rls\n";
        let cfgs = ExperimentConfig::parse(text).unwrap();
        assert_eq!(cfgs.len(), 2);
        assert_eq!(cfgs[1].model, ModelId::Model3);
        assert_eq!(cfgs[0].m, 100);
        assert_eq!(cfgs[0].facility_counts, vec![10, 15]);
        assert_eq!(cfgs[0].instances_per_cell, 2);
        assert_eq!(cfgs[0].runs_per_algorithm, 5);
        assert_eq!(cfgs[0].master_seed, 42);
        assert_eq!(cfgs[0].algorithms, vec![Algorithm::Rls]);
    }

    #[test]
    fn defaults_to_all_models() {
        assert_eq!(ExperimentConfig::parse("runs=3").unwrap().len(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ExperimentConfig::parse("runs 3").is_err());
        assert!(ExperimentConfig::parse("colour=blue").is_err());
        assert!(ExperimentConfig::parse("runs=0").is_err());
        assert!(ExperimentConfig::parse("facilities=10,0").is_err());
        assert!(ExperimentConfig::parse("model=7").is_err());
        assert!(ExperimentConfig::parse("algorithms=sa").is_err());
        assert!(ExperimentConfig::parse("customers=-4").is_err());
    }
}
