use std::str::FromStr;

use crate::error::{Error, Result};

/// Size limits for the operations whose cost grows exponentially.
///
/// Every limit can be overridden at runtime; the defaults keep the exhaustive
/// sweeps of the test suite well under a minute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest poset whose down-sets may be enumerated.
    pub ideal_elements: usize,
    /// Largest lattice `ideal_lattice` will materialize.
    pub lattice_elements: usize,
    /// Largest lattice checked triple-by-triple for distributivity.
    pub distributive_check: usize,
    /// Largest poset accepted by the brute-force isomorphism test.
    pub isomorphism: usize,
    /// Largest order canonicalized for lattice isomorphism.
    pub lattice_isomorphism: usize,
    /// Largest poset accepted by the Hilbert-series oracle.
    pub oracle_elements: usize,
    /// Hilbert function degrees allowed beyond `|P|`.
    pub oracle_degree_slack: usize,
    /// Largest size handled by the poset census.
    pub census_elements: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ideal_elements: 20,
            lattice_elements: 4096,
            distributive_check: 512,
            isomorphism: 10,
            lattice_isomorphism: 128,
            oracle_elements: 8,
            oracle_degree_slack: 4,
            census_elements: 8,
        }
    }
}

impl Caps {
    /// Applies `key=value` overrides separated by commas, e.g. `ideals=16,oracle=7`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("cap override `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cap `{key}` needs a positive integer")))?;
            if value == 0 {
                return Err(Error::Parse(format!("cap `{key}` must be positive")));
            }
            let slot = match key.trim() {
                "ideals" => &mut self.ideal_elements,
                "lattice" => &mut self.lattice_elements,
                "distributive" => &mut self.distributive_check,
                "iso" => &mut self.isomorphism,
                "lattice-iso" => &mut self.lattice_isomorphism,
                "oracle" => &mut self.oracle_elements,
                "oracle-slack" => &mut self.oracle_degree_slack,
                "census" => &mut self.census_elements,
                other => return Err(Error::Parse(format!("unknown cap `{other}`"))),
            };
            *slot = value;
        }
        Ok(self)
    }
}

impl FromStr for Caps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Caps::default().with_overrides(s)
    }
}
