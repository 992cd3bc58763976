use std::collections::{BTreeMap, HashMap};
use std::fmt;

use bcov_fields::{apply, VectorFieldOT};
use bcov_numeric::Rational;
use bcov_polyring::OTElement;

use crate::AnomalyError;

/// A free ambiguity coefficient introduced while solving genus `genus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamId {
    pub genus: u32,
    pub index: usize,
}

impl fmt::Display for ParamId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}_{}", self.genus, self.index)
    }
}

/// `constant + sum_p p * coeff_p` with O_T coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: OTElement,
    pub params: BTreeMap<ParamId, OTElement>,
}

impl LinearForm {
    pub fn constant(c: OTElement) -> Self {
        LinearForm { constant: c, params: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        Self::constant(OTElement::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.params.values().all(OTElement::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.params.values().all(OTElement::is_zero)
    }

    fn map(&self, f: impl Fn(&OTElement) -> OTElement) -> Self {
        let mut params = BTreeMap::new();
        for (p, v) in &self.params {
            let w = f(v);
            if !w.is_zero() {
                params.insert(*p, w);
            }
        }
        LinearForm { constant: f(&self.constant), params }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.constant = out.constant.add(&o.constant);
        for (p, v) in &o.params {
            let e = out.params.entry(*p).or_insert_with(OTElement::zero);
            *e = e.add(v);
            if e.is_zero() {
                out.params.remove(p);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(OTElement::neg)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|v| v.scale(c))
    }

    pub fn mul_ot(&self, f: &OTElement) -> Self {
        self.map(|v| v.mul(f))
    }

    /// Product of two forms; at most one may depend on parameters.
    pub fn mul(&self, o: &Self) -> Result<Self, AnomalyError> {
        match (self.is_constant(), o.is_constant()) {
            (true, _) => Ok(o.mul_ot(&self.constant)),
            (_, true) => Ok(self.mul_ot(&o.constant)),
            _ => Err(AnomalyError::NonlinearAmbiguity),
        }
    }

    pub fn apply(&self, x: &VectorFieldOT) -> Self {
        self.map(|v| apply(x, v))
    }

    pub fn eval(&self, values: &HashMap<ParamId, Rational>) -> Result<OTElement, AnomalyError> {
        let mut acc = self.constant.clone();
        for (p, v) in &self.params {
            let c = values.get(p).ok_or(AnomalyError::MissingParameter(*p))?;
            acc = acc.add(&v.scale(c));
        }
        Ok(acc)
    }

    pub fn param_ids(&self) -> Vec<ParamId> {
        self.params.keys().copied().collect()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.constant)?;
        for (p, v) in &self.params {
            write!(f, " + {p}*[{v}]")?;
        }
        Ok(())
    }
}
