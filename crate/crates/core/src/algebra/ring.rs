use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::monomial::{Monomial, MAX_VARS};
use crate::error::{Error, Result};

/// The graded polynomial ring `F_p[x_1, ..., x_d]` with grevlex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    var_names: Vec<String>,
    field: Field,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Shared handle to a [`RingSpec`]. Cloning is cheap.
#[derive(Clone)]
pub struct Ring(Arc<RingSpec>);

impl Ring {
    pub fn new<S: AsRef<str>>(var_names: &[S], field: Field) -> Result<Self> {
        if var_names.is_empty() {
            return Err(Error::InvalidRing("need at least one variable".into()));
        }
        if var_names.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!("at most {MAX_VARS} variables")));
        }
        let names: Vec<String> = var_names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Ring(Arc::new(RingSpec { var_names: names, field })))
    }

    /// Ring with the given variable names over F_p.
    pub fn with_char<S: AsRef<str>>(var_names: &[S], p: u32) -> Result<Self> {
        Ring::new(var_names, Field::new(p)?)
    }

    pub fn nvars(&self) -> usize {
        self.0.var_names.len()
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.var_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.var_names.iter().position(|n| n == name)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    /// Same ring with a different characteristic.
    pub fn with_field(&self, field: Field) -> Ring {
        Ring(Arc::new(RingSpec { var_names: self.0.var_names.clone(), field }))
    }

    pub fn ensure_same(&self, other: &Ring) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}[{}]",
            self.0.field.characteristic(),
            self.0.var_names.join(",")
        )
    }
}
