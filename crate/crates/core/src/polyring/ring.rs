use std::fmt;
use std::sync::Arc;

use super::monomial::{Monomial, MAX_VARS};
use super::order::MonomialOrder;
use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// Polynomial ring `k[x1..xd, T1..Tn]`, optionally extended by auxiliary
/// variables used internally for elimination.
///
/// Variables are positional: `x_i` is index `i-1`, `T_j` is index `d+j-1`,
/// auxiliary variable `k` is index `d+n+k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    x_count: usize,
    t_count: usize,
    aux_count: usize,
    field: FieldSpec,
    default_order: MonomialOrder,
}

impl RingSpec {
    pub fn new(x_count: usize, t_count: usize, field: FieldSpec) -> Result<Arc<Self>> {
        Self::with_aux(x_count, t_count, 0, field)
    }

    fn with_aux(x_count: usize, t_count: usize, aux_count: usize, field: FieldSpec) -> Result<Arc<Self>> {
        if x_count == 0 {
            return Err(Error::InvalidRing("at least one x-variable is required".into()));
        }
        if x_count + t_count + aux_count > MAX_VARS {
            return Err(Error::InvalidRing(format!(
                "{} variables exceed the supported maximum of {MAX_VARS}",
                x_count + t_count + aux_count
            )));
        }
        if let FieldSpec::Prime(p) = field {
            FieldSpec::prime(p)?;
        }
        // grevlex, T-variables above x-variables, auxiliaries last
        let ranking: Vec<usize> = (x_count..x_count + t_count)
            .chain(0..x_count)
            .chain(x_count + t_count..x_count + t_count + aux_count)
            .collect();
        Ok(Arc::new(RingSpec {
            x_count,
            t_count,
            aux_count,
            field,
            default_order: MonomialOrder::grevlex(ranking),
        }))
    }

    /// The same ring with `extra` more auxiliary variables appended.
    pub fn extended(&self, extra: usize) -> Result<Arc<Self>> {
        Self::with_aux(self.x_count, self.t_count, self.aux_count + extra, self.field)
    }

    /// The ring with all auxiliary variables dropped.
    pub fn base(&self) -> Result<Arc<Self>> {
        Self::with_aux(self.x_count, self.t_count, 0, self.field)
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn t_count(&self) -> usize {
        self.t_count
    }

    pub fn aux_count(&self) -> usize {
        self.aux_count
    }

    pub fn nvars(&self) -> usize {
        self.x_count + self.t_count + self.aux_count
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn default_order(&self) -> &MonomialOrder {
        &self.default_order
    }

    pub fn x_var(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.x_count);
        i - 1
    }

    pub fn t_var(&self, j: usize) -> usize {
        assert!(j >= 1 && j <= self.t_count);
        self.x_count + j - 1
    }

    pub fn aux_var(&self, k: usize) -> usize {
        assert!(k >= 1 && k <= self.aux_count);
        self.x_count + self.t_count + k - 1
    }

    pub fn x_vars(&self) -> std::ops::Range<usize> {
        0..self.x_count
    }

    pub fn t_vars(&self) -> std::ops::Range<usize> {
        self.x_count..self.x_count + self.t_count
    }

    pub fn aux_vars(&self) -> std::ops::Range<usize> {
        self.x_count + self.t_count..self.nvars()
    }

    pub fn var_name(&self, v: usize) -> String {
        if v < self.x_count {
            format!("x{}", v + 1)
        } else if v < self.x_count + self.t_count {
            format!("T{}", v - self.x_count + 1)
        } else {
            format!("u{}", v - self.x_count - self.t_count + 1)
        }
    }

    /// Index of a variable given its display name.
    pub fn var_index(&self, name: &str) -> Option<usize> {
        let (head, num) = name.split_at(1);
        if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) || num.starts_with('0') {
            return None;
        }
        let k: usize = num.parse().ok()?;
        match head {
            "x" if k <= self.x_count => Some(k - 1),
            "T" if k <= self.t_count => Some(self.x_count + k - 1),
            "u" if k <= self.aux_count => Some(self.x_count + self.t_count + k - 1),
            _ => None,
        }
    }

    /// x-degree and T-degree of a monomial (auxiliary variables ignored).
    pub fn bidegree_of(&self, m: &Monomial) -> (u32, u32) {
        (m.partial_degree(self.x_vars()), m.partial_degree(self.t_vars()))
    }

    /// True iff the monomial uses no auxiliary variable.
    pub fn is_base_monomial(&self, m: &Monomial) -> bool {
        self.aux_vars().all(|v| m.exp(v) == 0)
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = match self.field {
            FieldSpec::Rational => "QQ".to_string(),
            FieldSpec::Prime(p) => format!("ZZ/{p}"),
        };
        let names: Vec<String> = (0..self.nvars()).map(|v| self.var_name(v)).collect();
        write!(f, "{field}[{}]", names.join(","))
    }
}
