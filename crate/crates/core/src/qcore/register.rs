//! Labeled tensor-product registers.
//!
//! A register is an ordered list of subsystems. Every matrix and vector in
//! the crate is expressed with the leftmost subsystem as the most
//! significant tensor factor.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which party holds a subsystem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Owner {
    Alice,
    Bob,
    Shared,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawLabel")]
pub struct SubsystemLabel {
    name: String,
    dimension: usize,
    owner: Owner,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabel {
    name: String,
    dimension: usize,
    owner: Owner,
}

impl TryFrom<RawLabel> for SubsystemLabel {
    type Error = Error;

    fn try_from(raw: RawLabel) -> Result<Self> {
        SubsystemLabel::new(raw.name, raw.dimension, raw.owner)
    }
}

impl SubsystemLabel {
    /// Only qubits and qutrits are supported.
    pub fn new(name: impl Into<String>, dimension: usize, owner: Owner) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidArgument("subsystem name must not be empty".into()));
        }
        if !(2..=3).contains(&dimension) {
            return Err(Error::UnsupportedDimension(dimension));
        }
        Ok(Self { name, dimension, owner })
    }

    pub fn qubit(name: impl Into<String>, owner: Owner) -> Self {
        Self::new(name, 2, owner).expect("qubit label with non-empty name")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn owner(&self) -> Owner {
        self.owner
    }
}

/// Ordered list of subsystems with unique names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<SubsystemLabel>", into = "Vec<SubsystemLabel>")]
pub struct Register {
    labels: Vec<SubsystemLabel>,
}

impl TryFrom<Vec<SubsystemLabel>> for Register {
    type Error = Error;

    fn try_from(labels: Vec<SubsystemLabel>) -> Result<Self> {
        Register::new(labels)
    }
}

impl From<Register> for Vec<SubsystemLabel> {
    fn from(reg: Register) -> Self {
        reg.labels
    }
}

impl Register {
    pub fn new(labels: Vec<SubsystemLabel>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidArgument("register must not be empty".into()));
        }
        for (i, a) in labels.iter().enumerate() {
            if labels[..i].iter().any(|b| b.name == a.name) {
                return Err(Error::DuplicateSubsystem(a.name.clone()));
            }
        }
        Ok(Self { labels })
    }

    pub fn labels(&self) -> &[SubsystemLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.labels.iter().map(|l| l.dimension).collect()
    }

    /// Dimension of the full tensor-product space.
    pub fn dimension(&self) -> usize {
        self.labels.iter().map(|l| l.dimension).product()
    }

    pub fn names(&self) -> Vec<&str> {
        self.labels.iter().map(|l| l.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&SubsystemLabel> {
        self.labels.iter().find(|l| l.name == name)
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l.name == name)
            .ok_or_else(|| Error::UnknownSubsystem(name.to_string()))
    }

    /// Positions of `names`, in the order given. Rejects unknown and repeated names.
    pub fn positions(&self, names: &[&str]) -> Result<Vec<usize>> {
        if names.is_empty() {
            return Err(Error::InvalidArgument("subsystem selection must not be empty".into()));
        }
        let mut out = Vec::with_capacity(names.len());
        for name in names {
            let p = self.position(name)?;
            if out.contains(&p) {
                return Err(Error::DuplicateSubsystem(name.to_string()));
            }
            out.push(p);
        }
        Ok(out)
    }

    pub fn subset(&self, positions: &[usize]) -> Register {
        Register { labels: positions.iter().map(|&p| self.labels[p].clone()).collect() }
    }

    pub fn concat(&self, other: &Register) -> Result<Register> {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Register::new(labels)
    }

    /// Names of the subsystems held by `owner`, in register order.
    pub fn owned_by(&self, owner: Owner) -> Vec<&str> {
        self.labels.iter().filter(|l| l.owner == owner).map(|l| l.name.as_str()).collect()
    }

    /// True when both registers have the same subsystem dimensions in the same order.
    pub fn same_shape(&self, other: &Register) -> bool {
        self.dims() == other.dims()
    }
}

/// Lookup table splitting a flat register index into (rest, selected) parts.
///
/// `table[r * selected_dim + s]` is the flat index whose selected subsystems
/// (in the order given) have combined index `s` and whose remaining
/// subsystems (in register order) have combined index `r`.
pub(crate) struct IndexTable {
    pub table: Vec<usize>,
    pub selected_dim: usize,
    pub rest_dim: usize,
}

impl IndexTable {
    pub fn new(dims: &[usize], selected: &[usize]) -> Self {
        let total: usize = dims.iter().product();
        let selected_dim: usize = selected.iter().map(|&p| dims[p]).product();
        let rest: Vec<usize> = (0..dims.len()).filter(|p| !selected.contains(p)).collect();
        let rest_dim = total / selected_dim;
        let mut table = vec![0; total];
        let mut digits = vec![0usize; dims.len()];
        for flat in 0..total {
            let mut rem = flat;
            for p in (0..dims.len()).rev() {
                digits[p] = rem % dims[p];
                rem /= dims[p];
            }
            let s = selected.iter().fold(0, |acc, &p| acc * dims[p] + digits[p]);
            let r = rest.iter().fold(0, |acc, &p| acc * dims[p] + digits[p]);
            table[r * selected_dim + s] = flat;
        }
        Self { table, selected_dim, rest_dim }
    }

    #[inline]
    pub fn at(&self, rest: usize, selected: usize) -> usize {
        self.table[rest * self.selected_dim + selected]
    }
}
